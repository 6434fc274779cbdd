#pragma once

// Arbitrary-precision integers and rationals, plus the handful of
// number-theoretic helpers (square-free decomposition, exact square roots)
// the rest of the library is built on.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace clusterlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const Int& x) { return x.sign(); }
inline int sign_of(const Rat& x) { return x.sign(); }

inline Int abs_of(const Int& x) { return boost::multiprecision::abs(x); }
inline Rat abs_of(const Rat& x) { return boost::multiprecision::abs(x); }

inline Int gcd_of(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_of(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Largest s with s*s <= n (n >= 0).
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

// Exact integer square root, if n is a perfect square.
inline std::optional<Int> exact_sqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int s = isqrt(n);
  if (s * s == n) return s;
  return std::nullopt;
}

// Exact rational square root, if r is a square in Q.
inline std::optional<Rat> exact_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  auto p = exact_sqrt(num(r));
  if (!p) return std::nullopt;
  auto q = exact_sqrt(den(r));
  if (!q) return std::nullopt;
  return Rat(*p, *q);
}

// n = s^2 * r with r square-free; returns (s, r). Trial division; inputs are
// desk-scale.
inline std::pair<Int, Int> square_free_split(Int n) {
  if (n < 0) throw std::invalid_argument("square_free_split: negative argument");
  if (n == 0) return {0, 0};
  Int s = 1, r = 1;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) r *= p;
  }
  r *= n;  // leftover prime
  return {s, r};
}

inline bool is_square_free(const Int& n) {
  if (n <= 0) return false;
  return square_free_split(n).first == 1;
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline double to_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace clusterlab
