#pragma once

// Exact ordered-field scalars: rationals, quadratic irrationals c0 + c1*sqrt(d),
// and real algebraic numbers given by an integer minimal polynomial together
// with an isolating interval for the chosen root. Every matrix entry in the
// library is one of these.
//
// Arithmetic is closed within one field. Rationals embed everywhere. The one
// deliberate extension: pure surds m*sqrt(a) from different quadratic fields
// may be multiplied (the product is again a pure surd), which is what keeps
// mutation of quasi-integer quivers inside the tower. Anything else that
// would leave the tower raises UnsupportedTower.

#include "clusterlab/error.hpp"
#include "clusterlab/polynomial.hpp"
#include "clusterlab/rational.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace clusterlab {

// ---------------------------------------------------------------------------
// Algebraic number fields Q(alpha). Scalars are shared across threads, so the
// cached isolating interval is guarded; refinement works on local copies and
// publishes improvements.

struct AlgebraicField {
  std::vector<Int> minpoly;  // integer coefficients, degree >= 2
  Poly minpoly_q;            // same polynomial over Q
  std::vector<Poly> sturm;   // cached Sturm sequence of minpoly

  AlgebraicField(std::vector<Int> mp, Rat lo_, Rat hi_)
      : minpoly(std::move(mp)), lo_(std::move(lo_)), hi_(std::move(hi_)) {
    minpoly_q = poly_from_ints(minpoly);
    if (poly_deg(minpoly_q) < 2)
      fail(Errc::UnsupportedTower, "algebraic field needs minpoly of degree >= 2");
    sturm = sturm_sequence(minpoly_q);
    if (poly_eval(minpoly_q, lo_) == 0 || poly_eval(minpoly_q, hi_) == 0)
      fail(Errc::ParseError, "isolating interval endpoints must not be roots");
    if (sturm_count_roots(sturm, lo_, hi_) != 1)
      fail(Errc::ParseError, "interval does not isolate exactly one root");
  }

  int degree() const { return poly_deg(minpoly_q); }

  RatInterval interval() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {lo_, hi_};
  }

  // Publish a tighter isolating interval found by a caller.
  void publish(const RatInterval& iv) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (iv.hi - iv.lo < hi_ - lo_) {
      lo_ = iv.lo;
      hi_ = iv.hi;
    }
  }

  // One bisection step on a local copy, keeping the root inside.
  RatInterval refine_step(const RatInterval& iv) const {
    Rat mid = (iv.lo + iv.hi) / 2;
    // The minimal polynomial has no rational roots (degree >= 2, irreducible
    // by contract); nudge just in case the contract is violated.
    while (poly_eval(minpoly_q, mid) == 0) mid = (mid + iv.hi) / 2;
    if (sturm_count_roots(sturm, iv.lo, mid) == 1) return {iv.lo, mid};
    return {mid, iv.hi};
  }

 private:
  mutable std::mutex mu_;
  mutable Rat lo_, hi_;  // isolating interval; p(lo), p(hi) != 0, one root inside
};

using FieldPtr = std::shared_ptr<const AlgebraicField>;

// Same field = same minimal polynomial isolating the same real root.
inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->minpoly != b->minpoly) return false;
  RatInterval ia = a->interval(), ib = b->interval();
  Rat ilo = std::max(ia.lo, ib.lo), ihi = std::min(ia.hi, ib.hi);
  if (ilo > ihi) return false;
  // A root in the intersection lies in both intervals, hence is both isolated
  // roots at once.
  return sturm_count_roots(a->sturm, ilo, ihi) == 1;
}

// q = m * sqrt(a), a square-free; (0,0) encodes q = 0.
struct SquareFreePair {
  Int m;
  Int a;
  bool operator==(const SquareFreePair&) const = default;
};

// ---------------------------------------------------------------------------

class Scalar {
 public:
  struct Quad {
    Rat c0, c1;  // c1 != 0 after normalization
    Int d;       // square-free, >= 2
  };
  struct Alg {
    FieldPtr field;
    Poly coeffs;  // degree >= 1 after normalization, reduced mod minpoly
  };

  Scalar() : v_(Rat(0)) {}
  Scalar(long n) : v_(Rat(n)) {}
  Scalar(const Int& n) : v_(Rat(n)) {}
  Scalar(Rat r) : v_(std::move(r)) {}

  static Scalar rational(const Int& p, const Int& q) {
    if (q == 0) fail(Errc::ParseError, "rational with zero denominator");
    return Scalar(Rat(p, q));
  }

  // c0 + c1*sqrt(d); d >= 0, square part of d folded into c1.
  static Scalar quadratic(Rat c0, Rat c1, Int d) {
    if (d < 0) fail(Errc::UnsupportedTower, "negative radicand");
    auto [s, r] = square_free_split(d);
    c1 *= Rat(s);
    if (r == 0 || c1 == 0) return Scalar(std::move(c0));
    if (r == 1) return Scalar(c0 + c1);
    Scalar x;
    x.v_ = Quad{std::move(c0), std::move(c1), std::move(r)};
    return x;
  }

  static Scalar algebraic(FieldPtr field, Poly coeffs) {
    Scalar x;
    x.v_ = Alg{std::move(field), std::move(coeffs)};
    x.normalize_alg();
    return x;
  }

  bool is_rational() const { return std::holds_alternative<Rat>(v_); }
  bool is_quadratic() const { return std::holds_alternative<Quad>(v_); }
  bool is_algebraic() const { return std::holds_alternative<Alg>(v_); }

  const Rat& rat() const { return std::get<Rat>(v_); }
  const Quad& quad() const { return std::get<Quad>(v_); }
  const Alg& alg() const { return std::get<Alg>(v_); }

  bool is_zero() const { return is_rational() && rat() == 0; }
  bool is_integer() const { return is_rational() && den(rat()) == 1; }

  // Pure surd c1*sqrt(d) (includes rationals as sqrt(1)-multiples).
  bool is_pure_surd() const { return is_rational() || (is_quadratic() && quad().c0 == 0); }

  int sign() const {
    if (is_rational()) return sign_of(rat());
    if (is_quadratic()) {
      const Quad& q = quad();
      return quad_sign(q.c0, q.c1, q.d);
    }
    return alg_sign(alg());
  }

  Scalar operator-() const {
    Scalar x = *this;
    std::visit([](auto& v) { negate(v); }, x.v_);
    return x;
  }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, -b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return mul(a, b.inverse()); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar inverse() const {
    if (is_rational()) {
      if (rat() == 0) fail(Errc::Internal, "division by zero");
      return Scalar(Rat(1) / rat());
    }
    if (is_quadratic()) {
      const Quad& q = quad();
      Rat nrm = q.c0 * q.c0 - q.c1 * q.c1 * Rat(q.d);
      Scalar x;
      x.v_ = Quad{q.c0 / nrm, -q.c1 / nrm, q.d};
      return x;
    }
    const Alg& a = alg();
    // Extended Euclid in Q[x]: u*coeffs + v*minpoly = gcd.
    Poly r0 = a.field->minpoly_q, r1 = a.coeffs;
    Poly s0 = {}, s1 = {Rat(1)};  // s tracks the coefficient of `coeffs`
    while (!poly_is_zero(r1)) {
      auto [q, r] = poly_divmod(r0, r1);
      Poly s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (poly_deg(r0) != 0)
      fail(Errc::Internal, "non-invertible algebraic element; minpoly not irreducible?");
    return algebraic(a.field, poly_scale(s0, Rat(1) / r0[0]));
  }

  // Total order by real value. Throws FieldMismatch only for genuinely
  // incomparable pairs (distinct algebraic fields, algebraic vs quadratic).
  friend int compare(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

  // Certified rational enclosure of width <= eps.
  RatInterval enclosure(const Rat& eps) const;

  double to_double() const {
    if (is_rational()) return clusterlab::to_double(rat());
    RatInterval iv = enclosure(Rat(1, Int(1) << 60));
    return clusterlab::to_double((iv.lo + iv.hi) / 2);
  }

  std::string to_string() const;

 private:
  std::variant<Rat, Quad, Alg> v_;

  static void negate(Rat& r) { r = -r; }
  static void negate(Quad& q) { q.c0 = -q.c0; q.c1 = -q.c1; }
  static void negate(Alg& a) { a.coeffs = poly_scale(a.coeffs, Rat(-1)); }

  void normalize_quad() {
    Quad& q = std::get<Quad>(v_);
    if (q.c1 == 0) {
      Rat c0 = std::move(q.c0);  // move out before the variant re-seats
      v_ = std::move(c0);
    }
  }

  void normalize_alg() {
    Alg& a = std::get<Alg>(v_);
    a.coeffs = poly_divmod(a.coeffs, a.field->minpoly_q).second;
    if (poly_deg(a.coeffs) < 1) {
      Rat c = a.coeffs.empty() ? Rat(0) : std::move(a.coeffs[0]);
      v_ = std::move(c);
    }
  }

  static int quad_sign(const Rat& c0, const Rat& c1, const Int& d) {
    if (c1 == 0) return sign_of(c0);
    if (c0 == 0) return sign_of(c1);
    int s0 = sign_of(c0), s1 = sign_of(c1);
    if (s0 == s1) return s0;
    return s0 * sign_of(c0 * c0 - c1 * c1 * Rat(d));
  }

  static int alg_sign(const Alg& a) {
    // Normalized Alg is nonzero by irreducibility; the interval refinement
    // below terminates. The cap guards against a non-minimal input polynomial.
    RatInterval box = a.field->interval();
    for (int iter = 0; iter < 4096; ++iter) {
      RatInterval val = poly_eval_interval(a.coeffs, box);
      if (!val.contains_zero()) {
        a.field->publish(box);
        return sign_of(val.lo) != 0 ? sign_of(val.lo) : sign_of(val.hi);
      }
      box = a.field->refine_step(box);
    }
    fail(Errc::Internal, "algebraic sign did not resolve; minpoly not minimal?");
  }

  static Scalar add(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return Scalar(a.rat() + b.rat());
    if (a.is_rational()) return add(b, a);
    if (a.is_quadratic()) {
      const Quad& qa = a.quad();
      if (b.is_rational()) {
        Scalar x;
        x.v_ = Quad{qa.c0 + b.rat(), qa.c1, qa.d};
        return x;  // c1 != 0 preserved
      }
      if (b.is_quadratic()) {
        const Quad& qb = b.quad();
        if (qa.d != qb.d)
          fail(Errc::UnsupportedTower,
               "sum of quadratic irrationals from different fields (sqrt(" +
                   clusterlab::to_string(qa.d) + ") vs sqrt(" + clusterlab::to_string(qb.d) + "))");
        Scalar x;
        x.v_ = Quad{qa.c0 + qb.c0, qa.c1 + qb.c1, qa.d};
        x.normalize_quad();
        return x;
      }
      fail(Errc::UnsupportedTower, "sum of quadratic and algebraic scalars");
    }
    // a algebraic
    const Alg& aa = a.alg();
    if (b.is_rational()) {
      Poly c = aa.coeffs;
      if (c.empty()) c.push_back(Rat(0));
      c[0] += b.rat();
      return algebraic(aa.field, std::move(c));
    }
    if (b.is_algebraic()) {
      const Alg& ab = b.alg();
      if (!same_field(aa.field, ab.field))
        fail(Errc::FieldMismatch, "sum of elements of different algebraic fields");
      return algebraic(aa.field, poly_add(aa.coeffs, ab.coeffs));
    }
    fail(Errc::UnsupportedTower, "sum of algebraic and quadratic scalars");
  }

  static Scalar mul(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return Scalar(a.rat() * b.rat());
    if (a.is_rational()) return mul(b, a);
    if (a.is_quadratic()) {
      const Quad& qa = a.quad();
      if (b.is_rational()) {
        if (b.rat() == 0) return Scalar(Rat(0));
        Scalar x;
        x.v_ = Quad{qa.c0 * b.rat(), qa.c1 * b.rat(), qa.d};
        return x;
      }
      if (b.is_quadratic()) {
        const Quad& qb = b.quad();
        if (qa.d == qb.d) {
          Scalar x;
          x.v_ = Quad{qa.c0 * qb.c0 + qa.c1 * qb.c1 * Rat(qa.d), qa.c0 * qb.c1 + qa.c1 * qb.c0,
                      qa.d};
          x.normalize_quad();
          return x;
        }
        if (qa.c0 == 0 && qb.c0 == 0)  // pure surds multiply across fields
          return quadratic(Rat(0), qa.c1 * qb.c1, qa.d * qb.d);
        fail(Errc::UnsupportedTower, "product of quadratic irrationals from different fields");
      }
      fail(Errc::UnsupportedTower, "product of quadratic and algebraic scalars");
    }
    const Alg& aa = a.alg();
    if (b.is_rational()) {
      if (b.rat() == 0) return Scalar(Rat(0));
      return algebraic(aa.field, poly_scale(aa.coeffs, b.rat()));
    }
    if (b.is_algebraic()) {
      const Alg& ab = b.alg();
      if (!same_field(aa.field, ab.field))
        fail(Errc::FieldMismatch, "product of elements of different algebraic fields");
      return algebraic(aa.field, poly_mul(aa.coeffs, ab.coeffs));
    }
    fail(Errc::UnsupportedTower, "product of algebraic and quadratic scalars");
  }
};

inline int compare(const Scalar& a, const Scalar& b) {
  // fast paths for the dominant cases
  if (a.is_rational() && b.is_rational()) return sign_of(Rat(a.rat() - b.rat()));
  if (a.is_quadratic() && b.is_quadratic()) {
    const auto& qa = a.quad();
    const auto& qb = b.quad();
    if (qa.d == qb.d && qa.c0 == qb.c0 && qa.c1 == qb.c1) return 0;
  }
  if (a.is_algebraic() || b.is_algebraic()) {
    if (a.is_quadratic() || b.is_quadratic())
      fail(Errc::FieldMismatch, "cannot compare algebraic and quadratic scalars");
    if (a.is_rational() || b.is_rational() ||
        same_field(a.alg().field, b.alg().field)) {
      Scalar diff = a - b;
      return diff.sign();
    }
    fail(Errc::FieldMismatch, "cannot compare elements of different algebraic fields");
  }
  // Both live in Q or a quadratic field; always decidable.
  Rat a0 = a.is_rational() ? a.rat() : a.quad().c0;
  Rat a1 = a.is_rational() ? Rat(0) : a.quad().c1;
  Int da = a.is_rational() ? Int(1) : a.quad().d;
  Rat b0 = b.is_rational() ? b.rat() : b.quad().c0;
  Rat b1 = b.is_rational() ? Rat(0) : b.quad().c1;
  Int db = b.is_rational() ? Int(1) : b.quad().d;
  if (a1 == 0 && b1 == 0) return sign_of(a0 - b0);
  if (b1 == 0) return Scalar::quadratic(a0 - b0, a1, da).sign();
  if (a1 == 0) return -Scalar::quadratic(b0 - a0, b1, db).sign();
  if (da == db) return Scalar::quadratic(a0 - b0, a1 - b1, da).sign();
  // Distinct fields, both irrational parts nonzero: decide
  // sign(u - w) with u = (a0-b0) + a1*sqrt(da) and w = b1*sqrt(db) by
  // comparing signs, then squares; u^2 - w^2 lies back in Q(sqrt(da)).
  int su = Scalar::quadratic(a0 - b0, a1, da).sign();
  int sw = sign_of(b1);
  if (su != sw) return su > sw ? 1 : -1;
  if (su == 0) return 0;
  Rat p0 = (a0 - b0) * (a0 - b0) + a1 * a1 * Rat(da) - b1 * b1 * Rat(db);
  Rat p1 = 2 * (a0 - b0) * a1;
  return su * Scalar::quadratic(p0, p1, da).sign();
}

inline RatInterval Scalar::enclosure(const Rat& eps) const {
  if (is_rational()) return {rat(), rat()};
  if (is_quadratic()) {
    const Quad& q = quad();
    // bracket sqrt(d) by bisection
    Rat lo = Rat(isqrt(q.d)), hi = lo + 1;
    Rat scale = abs_of(q.c1);
    while ((hi - lo) * scale > eps / 2) {
      Rat mid = (lo + hi) / 2;
      if (mid * mid <= Rat(q.d))
        lo = mid;
      else
        hi = mid;
    }
    RatInterval s = q.c1 > 0 ? RatInterval{q.c0 + q.c1 * lo, q.c0 + q.c1 * hi}
                             : RatInterval{q.c0 + q.c1 * hi, q.c0 + q.c1 * lo};
    return s;
  }
  const Alg& a = alg();
  RatInterval box = a.field->interval();
  for (int iter = 0; iter < 100000; ++iter) {
    RatInterval val = poly_eval_interval(a.coeffs, box);
    if (val.hi - val.lo <= eps) {
      a.field->publish(box);
      return val;
    }
    box = a.field->refine_step(box);
  }
  fail(Errc::Internal, "enclosure did not converge");
}

inline std::string Scalar::to_string() const {
  if (is_rational()) return clusterlab::to_string(rat());
  if (is_quadratic()) {
    const Quad& q = quad();
    std::string s;
    if (q.c0 != 0) s += clusterlab::to_string(q.c0);
    if (q.c1 == 1)
      s += (q.c0 != 0 ? "+" : "");
    else if (q.c1 == -1)
      s += "-";
    else
      s += (q.c0 != 0 && q.c1 > 0 ? "+" : "") + clusterlab::to_string(q.c1) + "*";
    s += "sqrt(" + clusterlab::to_string(q.d) + ")";
    return s;
  }
  const Alg& a = alg();
  std::string s = "alg[";
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (i) s += ",";
    s += clusterlab::to_string(a.coeffs[i]);
  }
  s += "]";
  return s;
}

// ---------------------------------------------------------------------------
// Named operations of the scalar module.

inline int sign(const Scalar& x) { return x.sign(); }

// sqrt of a rational r >= 0, as a tower scalar.
inline Scalar sqrt_of_rational(const Rat& r) {
  if (r < 0) fail(Errc::UnsupportedTower, "sqrt of negative rational");
  if (r == 0) return Scalar(Rat(0));
  Int p = num(r), q = den(r);
  auto [s, f] = square_free_split(p * q);
  return Scalar::quadratic(Rat(0), Rat(s, q), f);
}

inline Scalar sqrt_nonneg(const Scalar& x) {
  int sx = x.sign();
  if (sx < 0) fail(Errc::UnsupportedTower, "sqrt of negative scalar");
  if (sx == 0) return Scalar(Rat(0));
  if (x.is_rational()) return sqrt_of_rational(x.rat());
  if (x.is_quadratic()) {
    const auto& q = x.quad();
    // y = a + b*sqrt(d) with y^2 = x requires a^2, b^2 d to be the roots of
    // z^2 - c0 z + c1^2 d / 4, so the norm c0^2 - c1^2 d must be a rational
    // square.
    Rat nrm = q.c0 * q.c0 - q.c1 * q.c1 * Rat(q.d);
    if (nrm < 0) fail(Errc::UnsupportedTower, "sqrt leaves the quadratic field");
    auto e = exact_sqrt(nrm);
    if (!e) fail(Errc::UnsupportedTower, "sqrt leaves the quadratic field");
    for (const Rat& z : {Rat((q.c0 + *e) / 2), Rat((q.c0 - *e) / 2)}) {
      if (z <= 0) continue;
      auto a = exact_sqrt(z);
      if (!a || *a == 0) continue;
      Rat b = q.c1 / (2 * *a);
      Scalar y = Scalar::quadratic(*a, b, q.d);
      if (y * y == x) return y.sign() >= 0 ? y : -y;
    }
    fail(Errc::UnsupportedTower, "sqrt leaves the quadratic field");
  }
  fail(Errc::UnsupportedTower, "sqrt of a general algebraic scalar is outside the tower");
}

// q = m*sqrt(a) with a square-free, provided q^2 is a non-negative integer.
inline SquareFreePair square_free_decompose(const Scalar& q) {
  if (q.is_zero()) return {0, 0};
  if (q.is_rational()) {
    if (den(q.rat()) != 1)
      fail(Errc::NotQuasiWeight, "square of " + q.to_string() + " is not an integer");
    return {num(q.rat()), 1};
  }
  if (q.is_quadratic()) {
    const auto& qq = q.quad();
    if (qq.c0 != 0 || den(qq.c1) != 1)
      fail(Errc::NotQuasiWeight, "square of " + q.to_string() + " is not an integer");
    return {num(qq.c1), qq.d};
  }
  Scalar sq = q * q;
  if (sq.is_rational() && den(sq.rat()) == 1) {
    auto [m, a] = square_free_split(num(sq.rat()));
    return {q.sign() >= 0 ? m : -m, a};
  }
  fail(Errc::NotQuasiWeight, "square of " + q.to_string() + " is not an integer");
}

// The exact value [m] = 2cos(pi/m).
inline Scalar chebyshev_value(int m) {
  if (m < 2) fail(Errc::ParseError, "chebyshev_value: m >= 2 required");
  switch (m) {
    case 2: return Scalar(Rat(0));
    case 3: return Scalar(Rat(1));
    case 4: return Scalar::quadratic(Rat(0), Rat(1), 2);
    case 5: return Scalar::quadratic(Rat(1, 2), Rat(1, 2), 5);
    case 6: return Scalar::quadratic(Rat(0), Rat(1), 3);
    default: break;
  }
  Poly mp = chebyshev_min_poly(m);
  std::vector<Int> coeffs;
  coeffs.reserve(mp.size());
  for (const Rat& c : mp) {
    if (den(c) != 1) fail(Errc::Internal, "chebyshev minimal polynomial not integral");
    coeffs.push_back(num(c));
  }
  RatInterval iv = isolate_largest_root(mp, Rat(2));
  auto field = std::make_shared<AlgebraicField>(std::move(coeffs), iv.lo, iv.hi);
  return Scalar::algebraic(std::move(field), Poly{Rat(0), Rat(1)});
}

// Evaluate an integer-coefficient polynomial at a scalar (Horner).
inline Scalar eval_int_poly(const std::vector<Int>& coeffs, const Scalar& x) {
  Scalar acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Scalar(*it);
  return acc;
}

inline Scalar eval_poly(const Poly& p, const Scalar& x) {
  Scalar acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Scalar(*it);
  return acc;
}

}  // namespace clusterlab
