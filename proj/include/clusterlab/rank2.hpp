#pragma once

// Rank-2 closed forms: the Chebyshev-style recursion u_{n+2} = p u_{n+1} - u_n,
// the explicit C-matrices along both branches of the rank-2 tree, the
// sign-coherence classification, and rank-2 G-fans with an SVG rendering.

#include "clusterlab/explore.hpp"
#include "clusterlab/geometry.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace clusterlab {

// u_{-2} = -1, u_{-1} = 0, u_{n+2} = p u_{n+1} - u_n.
inline Scalar chebyshev_u(int n, const Scalar& p) {
  if (n < -2) fail(Errc::ParseError, "chebyshev_u: n >= -2 required");
  Scalar prev(-1), cur(0);  // u_{-2}, u_{-1}
  if (n == -2) return prev;
  if (n == -1) return cur;
  for (int i = 0; i < n + 1; ++i) {
    Scalar next = p * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

struct ChebyshevSeq {
  Scalar p;
  std::vector<Scalar> values;  // values[k] = u_{k-2}

  explicit ChebyshevSeq(Scalar p_) : p(std::move(p_)), values{Scalar(-1), Scalar(0)} {}

  // By value: extending the memo reallocates, so references would not survive
  // a later u() call in the same expression.
  Scalar u(int n) {
    while (static_cast<int>(values.size()) - 3 < n)
      values.push_back(p * values[values.size() - 1] - values[values.size() - 2]);
    return values[static_cast<std::size_t>(n + 2)];
  }
};

enum class Rank2Branch { T2, T1 };  // words 2,1,2,... and 1,2,1,... (1-based)

namespace detail {

inline Mat closed_form_c_unchecked(int i, Rank2Branch branch, ChebyshevSeq& seq) {
  auto M = [&](const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
    return Mat::from_rows({{a, b}, {c, d}});
  };
  if (branch == Rank2Branch::T2) {
    if (i % 2 == 0) return M(-seq.u(i - 2), seq.u(i - 1), -seq.u(i - 1), seq.u(i));
    return M(seq.u(i - 1), -seq.u(i - 2), seq.u(i), -seq.u(i - 1));
  }
  if (i == 0) return Mat::identity(2);
  if (i == 1) return M(Scalar(-1), Scalar(0), Scalar(0), Scalar(1));
  if (i % 2 == 0) return M(-seq.u(i - 2), seq.u(i - 3), -seq.u(i - 3), seq.u(i - 4));
  return M(seq.u(i - 3), -seq.u(i - 2), seq.u(i - 4), -seq.u(i - 3));
}

// Expected tropical sign pattern (eps_1, eps_2) at step j of each branch.
inline std::pair<int, int> expected_signs(int j, Rank2Branch branch) {
  if (branch == Rank2Branch::T2) {
    if (j == 0) return {1, 1};
    return j % 2 ? std::pair<int, int>{1, -1} : std::pair<int, int>{-1, 1};
  }
  if (j == 0) return {1, 1};
  if (j == 1) return {-1, 1};
  if (j == 2) return {-1, -1};
  return j % 2 ? std::pair<int, int>{1, -1} : std::pair<int, int>{-1, 1};
}

}  // namespace detail

// The closed-form C-matrix at vertex t_i of the chosen branch for the
// skew-symmetric initial matrix [[0,-p],[p,0]]. The hypothesis (the stated
// tropical-sign sequence up to i-1) is checked exactly; HypothesisFails
// carries the first step where it breaks.
inline Mat closed_form_c(int i, Rank2Branch branch, const Scalar& p) {
  if (i < 0) fail(Errc::ParseError, "closed_form_c: i >= 0 required");
  ChebyshevSeq seq(p);
  for (int j = 1; j < i; ++j) {
    Mat cj = detail::closed_form_c_unchecked(j, branch, seq);
    auto [e1, e2] = detail::expected_signs(j, branch);
    auto s1 = tropical_eps(cj, 0), s2 = tropical_eps(cj, 1);
    if (!s1 || !s2 || *s1 != e1 || *s2 != e2)
      fail(Errc::HypothesisFails,
           "tropical-sign hypothesis fails at step " + std::to_string(j));
  }
  return detail::closed_form_c_unchecked(i, branch, seq);
}

inline Word rank2_branch_word(int i, Rank2Branch branch) {
  Word w;
  int first = branch == Rank2Branch::T2 ? 1 : 0;  // 0-based directions
  for (int j = 0; j < i; ++j) w.push_back((first + j) % 2);
  return w;
}

// ---------------------------------------------------------------------------
// Classification of the sign-coherent class of rank 2.

struct Rank2Verdict {
  enum class Kind { CoxeterFinite, CoherentInfinite, Incoherent } kind;
  int m = 0;                 // CoxeterFinite parameter
  Word witness_word;         // first incoherent word (BFS order)
  Vec witness_cvector;       // the offending c-vector there
  int witness_depth = 0;
};

// sqrt(ab) = 2cos(pi/m)  <=>  ab is the largest root of the minimal
// polynomial of [m]^2 = 2 + 2cos(2pi/m). Exact: evaluate that integer
// polynomial at ab and gate with a rational bound isolating the top root.
inline std::optional<int> coxeter_parameter(const Scalar& ab, int max_m = 30) {
  if (ab.is_zero()) return 2;
  for (int m = 3; m <= max_m; ++m) {
    Poly psi = two_cos_2pi_over_n_min_poly(m);
    // shift: P(y) = Psi(y - 2)
    Poly shifted = {Rat(0)};
    Poly ym2 = {Rat(-2), Rat(1)};
    Poly pow = {Rat(1)};
    for (std::size_t k = 0; k < psi.size(); ++k) {
      shifted = poly_add(shifted, poly_scale(pow, psi[k]));
      pow = poly_mul(pow, ym2);
    }
    if (!eval_poly(shifted, ab).is_zero()) continue;
    RatInterval top = isolate_largest_root(shifted, Rat(5));
    if ((ab - Scalar(top.lo)).sign() > 0) return m;
  }
  return std::nullopt;
}

inline Rank2Verdict classify_rank2(const Scalar& a, const Scalar& b, int depth_cap = 512) {
  if (a.sign() < 0 || b.sign() < 0) fail(Errc::ParseError, "classify_rank2 expects a, b >= 0");
  if ((a.is_zero()) != (b.is_zero()))
    fail(Errc::NotSignSkewSymmetric, "exactly one of a, b is zero");
  Scalar ab = a * b;  // UnsupportedTower if the fields are incompatible
  Rank2Verdict v{};
  if ((ab - Scalar(4)).sign() >= 0) {
    // monotone closed-form argument: u_{n+1} >= u_n >= 1 for p >= 2, so every
    // closed-form entry keeps its sign and no enumeration is needed
    v.kind = Rank2Verdict::Kind::CoherentInfinite;
    return v;
  }
  if (auto m = coxeter_parameter(ab)) {
    v.kind = Rank2Verdict::Kind::CoxeterFinite;
    v.m = *m;
    return v;
  }
  // Guaranteed incoherent within m+1 steps where pi/(m+1) < theta < pi/m:
  // walk both branches by depth and report the first incoherent C-matrix.
  Mat B0 = Mat::from_rows({{Scalar(0), -a}, {b, Scalar(0)}});
  PatternNode left = initial_node(B0), right = initial_node(B0);  // words 1..., 2...
  for (int depth = 1; depth <= depth_cap; ++depth) {
    left = mutate_node(left, B0, depth % 2 ? 0 : 1);
    right = mutate_node(right, B0, depth % 2 ? 1 : 0);
    for (const PatternNode* node : {&left, &right}) {
      for (int i = 0; i < 2; ++i) {
        if (tropical_eps(node->C, i)) continue;
        v.kind = Rank2Verdict::Kind::Incoherent;
        v.witness_word = node->word;
        v.witness_cvector = node->C.col(i);
        v.witness_depth = depth;
        return v;
      }
    }
  }
  fail(Errc::Internal, "rank-2 classification did not terminate within the depth cap");
}

// ---------------------------------------------------------------------------
// Rank-2 fans and their SVG rendering.

inline int compare_by_angle(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) {
    int sy = v[1].sign();
    if (sy > 0) return 0;
    if (sy == 0) return v[0].sign() > 0 ? 0 : 1;
    return 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  Scalar cross = a[0] * b[1] - a[1] * b[0];
  return -cross.sign();  // positive cross: a before b (counterclockwise)
}

struct Rank2Fan {
  Rank2Verdict verdict;
  Fan fan;
  std::vector<Vec> sorted_rays;  // all fan rays, sorted by angle from (1,0)
  bool closes_plane = false;     // finite case: consecutive rays span cones
};

inline Rank2Fan rank2_fan(const Scalar& a, const Scalar& b, int depth = 0) {
  Rank2Fan out;
  out.verdict = classify_rank2(a, b);
  if (out.verdict.kind == Rank2Verdict::Kind::Incoherent)
    fail(Errc::IncoherentInput, "rank-2 fan of an incoherent pattern");
  int run_depth = depth;
  if (out.verdict.kind == Rank2Verdict::Kind::CoxeterFinite)
    run_depth = std::max(run_depth, out.verdict.m + 3);
  if (run_depth <= 0) run_depth = 12;
  Mat B0 = Mat::from_rows({{Scalar(0), -a}, {b, Scalar(0)}});
  Exploration ex = enumerate_c_pattern(B0, run_depth);
  out.fan = build_fan(ex);
  for (const Ray& r : out.fan.rays) out.sorted_rays.push_back(r.v);
  std::sort(out.sorted_rays.begin(), out.sorted_rays.end(),
            [](const Vec& x, const Vec& y) { return compare_by_angle(x, y) < 0; });
  if (out.verdict.kind == Rank2Verdict::Kind::CoxeterFinite) {
    // full coverage: every consecutive ray pair (cyclically) spans a cone
    out.closes_plane = true;
    std::size_t nr = out.sorted_rays.size();
    for (std::size_t i = 0; i < nr && out.closes_plane; ++i) {
      Ray r1 = make_ray(out.sorted_rays[i]);
      Ray r2 = make_ray(out.sorted_rays[(i + 1) % nr]);
      bool spanned = false;
      for (const GCone& c : out.fan.cones) {
        if ((ray_equal(c.rays[0], r1) && ray_equal(c.rays[1], r2)) ||
            (ray_equal(c.rays[0], r2) && ray_equal(c.rays[1], r1))) {
          spanned = true;
          break;
        }
      }
      out.closes_plane = spanned;
    }
  }
  return out;
}

// Deterministic SVG: fixed viewport, rays sorted by angle, uncovered wedge of
// the affine/non-affine cases drawn from the explicit limit rays
// v_{1,2} = (p -+ sqrt(p^2-4), -2).
inline std::string rank2_fan_svg(const Rank2Fan& rf, const Scalar& a, const Scalar& b) {
  const double CX = 260.0, CY = 260.0, R = 240.0;
  char buf[256];
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" "
         "viewBox=\"0 0 520 520\">\n";
  svg += "<rect width=\"520\" height=\"520\" fill=\"white\"/>\n";
  auto line = [&](double x1, double y1, double x2, double y2, const char* style) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.4f\" y1=\"%.4f\" x2=\"%.4f\" y2=\"%.4f\" %s/>\n", x1, y1, x2, y2,
                  style);
    svg += buf;
  };
  line(CX - R, CY, CX + R, CY, "stroke=\"#cccccc\" stroke-width=\"1\"");
  line(CX, CY - R, CX, CY + R, "stroke=\"#cccccc\" stroke-width=\"1\"");

  double p;
  try {
    p = sqrt_nonneg(a * b).to_double();
  } catch (const Error&) {
    p = std::sqrt(a.to_double() * b.to_double());
  }
  if (rf.verdict.kind == Rank2Verdict::Kind::CoherentInfinite) {
    double disc = p * p - 4.0;
    double s = disc > 0 ? std::sqrt(disc) : 0.0;
    double v1x = p - s, v2x = p + s;
    auto norm = [&](double x, double y, double& ox, double& oy) {
      double l = std::sqrt(x * x + y * y);
      ox = CX + R * x / l;
      oy = CY - R * y / l;
    };
    double x1, y1, x2, y2;
    norm(v1x, -2.0, x1, y1);
    norm(v2x, -2.0, x2, y2);
    if (disc > 0) {
      std::snprintf(buf, sizeof buf,
                    "<polygon points=\"%.4f,%.4f %.4f,%.4f %.4f,%.4f\" fill=\"#dddddd\"/>\n", CX,
                    CY, x1, y1, x2, y2);
      svg += buf;
    } else {
      line(CX, CY, x1, y1, "stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
    }
  }
  for (const Vec& r : rf.sorted_rays) {
    double x = r[0].to_double(), y = r[1].to_double();
    double l = std::sqrt(x * x + y * y);
    line(CX, CY, CX + R * x / l, CY - R * y / l, "stroke=\"black\" stroke-width=\"1.5\"");
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"13\">cones: %zu, "
                "rays: %zu</text>\n",
                rf.fan.cones.size(), rf.sorted_rays.size());
  svg += buf;
  svg += "</svg>\n";
  return svg;
}

inline void write_rank2_fan_svg(const std::string& path, const Rank2Fan& rf, const Scalar& a,
                                const Scalar& b) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot open " + path + " for writing");
  out << rank2_fan_svg(rf, a, b);
}

}  // namespace clusterlab
