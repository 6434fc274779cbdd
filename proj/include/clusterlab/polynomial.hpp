#pragma once

// Dense univariate polynomials over Q: ring operations, Sturm sequences for
// exact real-root isolation, interval evaluation, and the Chebyshev-derived
// minimal polynomials of 2cos(pi/m).

#include "clusterlab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace clusterlab {

// coeffs[i] is the coefficient of x^i; invariant: no trailing zeros.
using Poly = std::vector<Rat>;

inline Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline bool poly_is_zero(const Poly& p) { return p.empty(); }

inline Poly poly_from_ints(const std::vector<Int>& c) {
  Poly p(c.begin(), c.end());
  return poly_trim(std::move(p));
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(std::move(r));
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(std::move(r));
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return poly_trim(std::move(r));
}

inline Poly poly_scale(const Poly& a, const Rat& s) {
  if (s == 0) return {};
  Poly r = a;
  for (auto& c : r) c *= s;
  return r;
}

// Euclidean division over Q; returns (quotient, remainder).
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  if (b.empty()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
  while (a.size() >= b.size()) {
    Rat c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return {poly_trim(std::move(q)), std::move(a)};
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rat(static_cast<long>(i));
  return poly_trim(std::move(r));
}

inline Rat poly_eval(const Poly& p, const Rat& x) {
  Rat acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline bool poly_has_rational_root_at(const Poly& p, const Rat& x) { return poly_eval(p, x) == 0; }

// ---------------------------------------------------------------------------
// Interval arithmetic over Q, used for the algebraic sign oracle.

struct RatInterval {
  Rat lo, hi;  // lo <= hi
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

inline RatInterval iv_add(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

// Horner evaluation of p over the box [x.lo, x.hi].
inline RatInterval poly_eval_interval(const Poly& p, const RatInterval& x) {
  RatInterval acc{Rat(0), Rat(0)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = iv_mul(acc, x);
    acc = iv_add(acc, RatInterval{*it, *it});
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Sturm sequences. Exact count of distinct real roots in (a, b].

inline std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq;
  if (poly_is_zero(p)) return seq;
  seq.push_back(p);
  Poly d = poly_derivative(p);
  if (poly_is_zero(d)) return seq;
  seq.push_back(d);
  while (true) {
    const Poly& a = seq[seq.size() - 2];
    const Poly& b = seq[seq.size() - 1];
    Poly r = poly_divmod(a, b).second;
    if (poly_is_zero(r)) break;
    seq.push_back(poly_scale(r, Rat(-1)));
  }
  return seq;
}

inline int sturm_sign_changes(const std::vector<Poly>& seq, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sign_of(poly_eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Number of distinct real roots of p in the half-open interval (a, b].
inline int sturm_count_roots(const std::vector<Poly>& seq, const Rat& a, const Rat& b) {
  if (seq.empty()) return 0;
  return sturm_sign_changes(seq, a) - sturm_sign_changes(seq, b);
}

inline int sturm_count_roots(const Poly& p, const Rat& a, const Rat& b) {
  return sturm_count_roots(sturm_sequence(p), a, b);
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and minimal polynomials of 2cos(pi/m).

inline Poly cyclotomic(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: n >= 1 required");
  // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
  Poly xn(static_cast<std::size_t>(n) + 1, Rat(0));
  xn[0] = -1;
  xn[static_cast<std::size_t>(n)] = 1;
  Poly acc = {Rat(1)};
  for (int d = 1; d < n; ++d)
    if (n % d == 0) acc = poly_mul(acc, cyclotomic(d));
  auto [q, r] = poly_divmod(xn, acc);
  if (!poly_is_zero(r)) throw std::logic_error("cyclotomic: non-exact division");
  return q;
}

// Minimal polynomial of 2cos(2pi/n) for n >= 3, via the palindromic
// substitution y = x + 1/x applied to Phi_n. Integer coefficients, monic,
// degree phi(n)/2.
inline Poly two_cos_2pi_over_n_min_poly(int n) {
  if (n < 3) throw std::invalid_argument("two_cos_2pi_over_n_min_poly: n >= 3 required");
  Poly phi = cyclotomic(n);
  int deg = poly_deg(phi);
  if (deg % 2 != 0) throw std::logic_error("cyclotomic degree must be even for n >= 3");
  int d = deg / 2;
  // x^{-d} Phi(x) = c_d + sum_{j>=1} c_{d+j} (x^j + x^{-j}),  x^j + x^{-j} = p_j(y)
  // with p_0 = 2, p_1 = y, p_{j+1} = y p_j - p_{j-1}.
  Poly result = {phi[static_cast<std::size_t>(d)]};
  Poly p_prev = {Rat(2)};        // p_0
  Poly p_cur = {Rat(0), Rat(1)}; // p_1
  for (int j = 1; j <= d; ++j) {
    result = poly_add(result, poly_scale(p_cur, phi[static_cast<std::size_t>(d + j)]));
    Poly p_next = poly_sub(poly_mul({Rat(0), Rat(1)}, p_cur), p_prev);
    p_prev = std::move(p_cur);
    p_cur = std::move(p_next);
  }
  return result;
}

// Minimal polynomial of 2cos(pi/m) = 2cos(2pi/(2m)), m >= 2.
inline Poly chebyshev_min_poly(int m) {
  if (m < 2) throw std::invalid_argument("chebyshev_min_poly: m >= 2 required");
  return two_cos_2pi_over_n_min_poly(2 * m);
}

// Isolating interval for the largest real root of p (all real roots assumed
// inside (-bound, bound)); endpoints are rational non-roots and the interval
// contains exactly one root of p.
inline RatInterval isolate_largest_root(const Poly& p, const Rat& bound) {
  auto seq = sturm_sequence(p);
  Rat hi = bound;
  while (poly_eval(p, hi) == 0) hi += 1;
  int total = sturm_count_roots(seq, -hi, hi);
  if (total == 0) throw std::invalid_argument("isolate_largest_root: no real root");
  Rat lo = -hi;
  // Shrink [lo, hi] keeping exactly the top root inside, then tighten.
  while (sturm_count_roots(seq, lo, hi) > 1) {
    Rat mid = (lo + hi) / 2;
    if (poly_eval(p, mid) == 0) { mid = (mid + hi) / 2; continue; }
    if (sturm_count_roots(seq, mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  for (int i = 0; i < 8; ++i) {
    Rat mid = (lo + hi) / 2;
    if (poly_eval(p, mid) == 0) break;
    if (sturm_count_roots(seq, mid, hi) == 1)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

inline std::string poly_to_string(const Poly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (int i = poly_deg(p); i >= 0; --i) {
    const Rat& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    Rat a = abs_of(c);
    if (a != 1 || i == 0) s += to_string(a);
    if (i > 0) {
      if (a != 1) s += "*";
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace clusterlab
