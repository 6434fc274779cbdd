#pragma once

// G-cones with exact halfspace descriptions, fan verification via
// Fourier-Motzkin elimination over the scalar field, modified-pattern
// equivalence without irrational square roots, and the five exchange graphs.

#include "clusterlab/explore.hpp"
#include "clusterlab/matrix.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace clusterlab {

// ---------------------------------------------------------------------------
// Rays: nonzero vectors up to a positive scalar. Canonical representative has
// first nonzero coordinate +1 or -1.

struct Ray {
  Vec v;
};

inline Ray make_ray(const Vec& x) {
  for (const Scalar& e : x) {
    if (e.is_zero()) continue;
    Scalar s = e.abs().inverse();
    Ray r;
    r.v.reserve(x.size());
    for (const Scalar& y : x) r.v.push_back(y * s);
    return r;
  }
  fail(Errc::Internal, "zero vector is not a ray");
}

inline int compare_vec(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

struct RayLess {
  bool operator()(const Ray& a, const Ray& b) const { return compare_vec(a.v, b.v) < 0; }
};

inline bool ray_equal(const Ray& a, const Ray& b) { return compare_vec(a.v, b.v) == 0; }

// ---------------------------------------------------------------------------
// G-cones. Generators are the g-vectors, normals the c-vectors; x lies in the
// cone iff <x, c_j>_D >= 0 for all j.

struct GCone {
  Word word;
  Mat G;  // generator columns
  Mat C;  // normal columns
  std::vector<Ray> rays;  // canonical generator rays, sorted
};

inline GCone g_cone(const PatternNode& node, const std::vector<Rat>& /*D*/) {
  if (!column_sign_coherent(node.C) || !row_sign_coherent(node.G))
    fail(Errc::IncoherentNode, "G-cone requires a sign-coherent node");
  GCone cone{node.word, node.G, node.C, {}};
  for (int i = 0; i < node.G.n(); ++i) cone.rays.push_back(make_ray(node.G.col(i)));
  std::sort(cone.rays.begin(), cone.rays.end(), RayLess{});
  return cone;
}

inline Scalar inner_d(const Vec& a, const Vec& b, const std::vector<Rat>& D) {
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Scalar(D[i]) * b[i];
  return s;
}

inline bool cone_contains(const GCone& cone, const Vec& x, const std::vector<Rat>& D) {
  for (int j = 0; j < cone.C.n(); ++j)
    if (inner_d(x, cone.C.col(j), D).sign() < 0) return false;
  return true;
}

inline bool cone_equal(const GCone& a, const GCone& b) {
  if (a.rays.size() != b.rays.size()) return false;
  for (std::size_t i = 0; i < a.rays.size(); ++i)
    if (!ray_equal(a.rays[i], b.rays[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Fan data from a (coherent) exploration: deduplicated maximal cones and the
// distinct rays among their generators.

struct Fan {
  std::vector<GCone> cones;
  std::vector<Ray> rays;
  std::vector<Rat> D;
  int distinct_g_vectors = 0;  // distinct generator vectors (not up to scaling)
};

inline Fan build_fan(const Exploration& ex) {
  if (!ex.coherent()) fail(Errc::IncoherentPattern, "fan of an incoherent pattern");
  Fan fan;
  fan.D = ex.D;
  std::set<Ray, RayLess> rays;
  std::map<Vec, int, KeyLess> vectors;
  for (const PatternNode& node : ex.all_nodes()) {
    GCone cone = g_cone(node, ex.D);
    bool dup = false;
    for (const GCone& c : fan.cones)
      if (cone_equal(c, cone)) { dup = true; break; }
    if (!dup) fan.cones.push_back(cone);
    for (const Ray& r : cone.rays) rays.insert(r);
    for (int i = 0; i < node.G.n(); ++i) vectors.emplace(node.G.col(i), 1);
  }
  fan.rays.assign(rays.begin(), rays.end());
  fan.distinct_g_vectors = static_cast<int>(vectors.size());
  return fan;
}

inline int count_rays(const Fan& fan) { return static_cast<int>(fan.rays.size()); }

// ---------------------------------------------------------------------------
// Fourier-Motzkin feasibility of a homogeneous system of strict and weak
// inequalities a.x > 0 / a.x >= 0. Exact over the scalar field.

struct LinIneq {
  Vec a;
  bool strict;
};

inline bool fm_feasible(std::vector<LinIneq> sys, int n) {
  auto normalize = [](LinIneq& q) {
    for (const Scalar& e : q.a) {
      if (e.is_zero()) continue;
      Scalar s = e.abs().inverse();
      for (Scalar& y : q.a) y = y * s;
      return;
    }
  };
  for (int var = 0; var < n; ++var) {
    std::vector<LinIneq> pos, negs, zero;
    for (auto& q : sys) {
      int s = q.a[static_cast<std::size_t>(var)].sign();
      if (s > 0)
        pos.push_back(std::move(q));
      else if (s < 0)
        negs.push_back(std::move(q));
      else
        zero.push_back(std::move(q));
    }
    std::vector<LinIneq> next = std::move(zero);
    for (const auto& p : pos)
      for (const auto& q : negs) {
        LinIneq combo;
        combo.strict = p.strict || q.strict;
        combo.a.resize(p.a.size());
        const Scalar& pc = p.a[static_cast<std::size_t>(var)];
        const Scalar& qc = q.a[static_cast<std::size_t>(var)];
        for (std::size_t i = 0; i < p.a.size(); ++i)
          combo.a[i] = p.a[i] * (-qc) + q.a[i] * pc;
        next.push_back(std::move(combo));
      }
    // prune: constant rows decide or drop; duplicates collapse
    std::vector<LinIneq> pruned;
    std::map<Vec, bool, KeyLess> seen;  // row -> strict
    for (auto& q : next) {
      bool all_zero = true;
      for (const Scalar& e : q.a)
        if (!e.is_zero()) { all_zero = false; break; }
      if (all_zero) {
        if (q.strict) return false;  // 0 > 0
        continue;
      }
      normalize(q);
      auto it = seen.find(q.a);
      if (it != seen.end()) {
        it->second = it->second || q.strict;
        continue;
      }
      seen.emplace(q.a, q.strict);
    }
    for (auto& [vec, strict] : seen) pruned.push_back({vec, strict});
    sys = std::move(pruned);
  }
  for (const auto& q : sys)
    if (q.strict) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Fan verification: every pair of maximal cones must intersect in the common
// face spanned by their shared rays.

enum class FanVerdict { Pass, Fail, Partial };

struct FanCheck {
  FanVerdict verdict = FanVerdict::Pass;
  std::optional<std::pair<int, int>> witness;  // offending cone pair
};

namespace detail {

// <x, c>_D as a coefficient row (d_r c_r).
inline Vec halfspace_row(const Vec& c, const std::vector<Rat>& D) {
  Vec row(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) row[i] = Scalar(D[i]) * c[i];
  return row;
}

inline bool pair_intersects_in_common_face(const GCone& P, const GCone& Q,
                                           const std::vector<Rat>& D) {
  int n = P.G.n();
  auto shared = [&](const GCone& A, const GCone& B, int i) {
    Ray r = make_ray(A.G.col(i));
    for (const Ray& s : B.rays)
      if (ray_equal(r, s)) return true;
    return false;
  };
  std::vector<LinIneq> base;
  for (int j = 0; j < n; ++j) {
    base.push_back({detail::halfspace_row(P.C.col(j), D), false});
    base.push_back({detail::halfspace_row(Q.C.col(j), D), false});
  }
  auto check_side = [&](const GCone& A, const GCone& B) {
    for (int j = 0; j < n; ++j) {
      if (shared(A, B, j)) continue;
      // x in P cap Q with <x, c^A_j>_D > 0 must be infeasible
      std::vector<LinIneq> sys = base;
      // the normal paired with generator j of A
      sys.push_back({detail::halfspace_row(A.C.col(j), D), true});
      if (fm_feasible(std::move(sys), n)) return false;
    }
    return true;
  };
  return check_side(P, Q) && check_side(Q, P);
}

}  // namespace detail

inline FanCheck fan_verify(const Fan& fan) {
  FanCheck check;
  int n = fan.cones.empty() ? 0 : fan.cones.front().G.n();
  if (n > 4) {
    // sampled containment only; report a partial verdict
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coeff(0, 3);
    for (std::size_t a = 0; a < fan.cones.size(); ++a)
      for (std::size_t b = a + 1; b < fan.cones.size(); ++b) {
        const GCone& P = fan.cones[a];
        const GCone& Q = fan.cones[b];
        for (int t = 0; t < 24; ++t) {
          Vec x(static_cast<std::size_t>(n), Scalar(0));
          for (int i = 0; i < n; ++i) {
            Scalar lam(coeff(rng));
            for (int r = 0; r < n; ++r) x[static_cast<std::size_t>(r)] += lam * P.G(r, i);
          }
          if (!cone_contains(Q, x, fan.D)) continue;
          // sampled point of the intersection: must lie on every non-shared wall
          for (int j = 0; j < n; ++j) {
            Ray rj = make_ray(P.G.col(j));
            bool is_shared = false;
            for (const Ray& s : Q.rays)
              if (ray_equal(rj, s)) { is_shared = true; break; }
            if (!is_shared && inner_d(x, P.C.col(j), fan.D).sign() > 0) {
              check.verdict = FanVerdict::Fail;
              check.witness = {static_cast<int>(a), static_cast<int>(b)};
              return check;
            }
          }
        }
      }
    check.verdict = FanVerdict::Partial;
    return check;
  }
  for (std::size_t a = 0; a < fan.cones.size(); ++a)
    for (std::size_t b = a + 1; b < fan.cones.size(); ++b)
      if (!detail::pair_intersects_in_common_face(fan.cones[a], fan.cones[b], fan.D)) {
        check.verdict = FanVerdict::Fail;
        check.witness = {static_cast<int>(a), static_cast<int>(b)};
        return check;
      }
  return check;
}

// ---------------------------------------------------------------------------
// Modified-pattern equivalence, square-root-free: sigma with
// c_{sigma(i);B} = lambda_i c_{i;A}, lambda_i > 0, lambda_i^2 d_i = d_sigma(i).

inline std::optional<Perm> modified_equal(const PatternNode& a, const PatternNode& b,
                                          const std::vector<Rat>& D) {
  int n = a.C.n();
  Perm sigma(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<Scalar> lambda(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int found = -1;
    Scalar lam;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      // b column j = lambda * a column i with lambda > 0?
      int r0 = -1;
      for (int r = 0; r < n; ++r)
        if (!a.C(r, i).is_zero()) { r0 = r; break; }
      if (r0 < 0) return std::nullopt;
      if (b.C(r0, j).is_zero()) continue;
      Scalar cand = b.C(r0, j) / a.C(r0, i);
      if (cand.sign() <= 0) continue;
      bool proportional = true;
      for (int r = 0; r < n && proportional; ++r)
        if (b.C(r, j) != cand * a.C(r, i)) proportional = false;
      if (!proportional) continue;
      if (cand * cand * Scalar(D[static_cast<std::size_t>(i)]) != Scalar(D[static_cast<std::size_t>(j)]))
        continue;
      found = j;
      lam = cand;
      break;
    }
    if (found < 0) return std::nullopt;
    sigma[static_cast<std::size_t>(i)] = found;
    used[static_cast<std::size_t>(found)] = true;
    lambda[static_cast<std::size_t>(i)] = lam;
  }
  // The modified G-relation must agree with the same sigma and lambdas.
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r)
      if (b.G(r, sigma[static_cast<std::size_t>(i)]) != lambda[static_cast<std::size_t>(i)] * a.G(r, i))
        fail(Errc::Internal, "modified C- and G-periodicity disagree");
  return sigma;
}

// Cluster equality up to positive rescaling of members (the ray-proportional
// relation of the quotient construction).
inline bool ray_cluster_equal(const Mat& A, const Mat& B) {
  int n = A.n();
  std::multiset<Ray, RayLess> ra, rb;
  for (int i = 0; i < n; ++i) {
    ra.insert(make_ray(A.col(i)));
    rb.insert(make_ray(B.col(i)));
  }
  auto ita = ra.begin();
  auto itb = rb.begin();
  for (; ita != ra.end(); ++ita, ++itb)
    if (!ray_equal(*ita, *itb)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exchange graphs: quotients of the explored ball by one of five
// equivalences. Vertices carry their defining class of pair-classes, so
// "canonical isomorphism" is equality of partitions.

enum class EGKind { C, G, Fan, ModC, ModG };

inline const char* eg_kind_name(EGKind k) {
  switch (k) {
    case EGKind::C: return "C";
    case EGKind::G: return "G";
    case EGKind::Fan: return "fan";
    case EGKind::ModC: return "modC";
    case EGKind::ModG: return "modG";
  }
  return "?";
}

struct ExchangeGraph {
  EGKind kind;
  int rank = 0;
  std::vector<int> class_of;               // pair-class id -> vertex id
  std::vector<Word> vertex_rep;            // first word per vertex
  std::set<std::pair<int, int>> edges;     // undirected, first < second
  int vertex_count() const { return static_cast<int>(vertex_rep.size()); }
};

inline ExchangeGraph build_exchange_graph(const Exploration& ex, EGKind kind) {
  if (kind == EGKind::Fan && !ex.coherent())
    fail(Errc::IncoherentPattern, "fan exchange graph of an incoherent pattern");
  ExchangeGraph g;
  g.kind = kind;
  g.rank = ex.B0.n();

  auto equivalent = [&](const ClassRec& a, const ClassRec& b) -> bool {
    PatternNode na{a.word, a.B, a.C, a.G}, nb{b.word, b.B, b.C, b.G};
    switch (kind) {
      case EGKind::C: return find_sigma_tilde(a.C, b.C).has_value();
      case EGKind::G: return find_sigma_tilde(a.G, b.G).has_value();
      case EGKind::ModC:
      case EGKind::ModG: return modified_equal(na, nb, ex.D).has_value();
      case EGKind::Fan: {
        GCone ca = g_cone(na, ex.D), cb = g_cone(nb, ex.D);
        return cone_equal(ca, cb);
      }
    }
    return false;
  };

  int k = static_cast<int>(ex.classes.size());
  g.class_of.assign(static_cast<std::size_t>(k), -1);
  for (int i = 0; i < k; ++i) {
    if (g.class_of[static_cast<std::size_t>(i)] >= 0) continue;
    int id = g.vertex_count();
    g.class_of[static_cast<std::size_t>(i)] = id;
    g.vertex_rep.push_back(ex.classes[static_cast<std::size_t>(i)].word);
    for (int j = i + 1; j < k; ++j) {
      if (g.class_of[static_cast<std::size_t>(j)] >= 0) continue;
      if (equivalent(ex.classes[static_cast<std::size_t>(i)], ex.classes[static_cast<std::size_t>(j)]))
        g.class_of[static_cast<std::size_t>(j)] = id;
    }
  }
  for (const EdgeRec& e : ex.edges) {
    int u = g.class_of[static_cast<std::size_t>(e.from_class)];
    int v = g.class_of[static_cast<std::size_t>(e.to_class)];
    if (u != v) g.edges.insert({std::min(u, v), std::max(u, v)});
  }
  return g;
}

// Canonical isomorphism: the two graphs quotient the same ball by the same
// partition. Returns the vertex bijection when the partitions coincide.
inline std::optional<std::vector<int>> graphs_isomorphic(const ExchangeGraph& a,
                                                         const ExchangeGraph& b) {
  if (a.class_of.size() != b.class_of.size()) return std::nullopt;
  std::vector<int> map(static_cast<std::size_t>(a.vertex_count()), -1);
  std::vector<int> back(static_cast<std::size_t>(b.vertex_count()), -1);
  for (std::size_t i = 0; i < a.class_of.size(); ++i) {
    int u = a.class_of[i], v = b.class_of[i];
    if (map[static_cast<std::size_t>(u)] == -1) {
      if (back[static_cast<std::size_t>(v)] != -1) return std::nullopt;
      map[static_cast<std::size_t>(u)] = v;
      back[static_cast<std::size_t>(v)] = u;
    } else if (map[static_cast<std::size_t>(u)] != v) {
      return std::nullopt;
    }
  }
  for (int m : map)
    if (m == -1) return std::nullopt;
  // edge sets must correspond under the mapping
  std::set<std::pair<int, int>> mapped;
  for (const auto& [u, v] : a.edges) {
    int mu = map[static_cast<std::size_t>(u)], mv = map[static_cast<std::size_t>(v)];
    mapped.insert({std::min(mu, mv), std::max(mu, mv)});
  }
  if (mapped != b.edges) return std::nullopt;
  return map;
}

// The ray-proportional quotient of an EG(C)/EG(G): vertices merge when their
// clusters match up to positive scalars.
inline ExchangeGraph quotient_by_ray_proportional(const ExchangeGraph& g, const Exploration& ex,
                                                  bool use_g_matrices) {
  ExchangeGraph q;
  q.kind = EGKind::Fan;
  q.rank = g.rank;
  int k = static_cast<int>(ex.classes.size());
  q.class_of.assign(static_cast<std::size_t>(k), -1);
  for (int i = 0; i < k; ++i) {
    if (q.class_of[static_cast<std::size_t>(i)] >= 0) continue;
    int id = q.vertex_count();
    q.class_of[static_cast<std::size_t>(i)] = id;
    q.vertex_rep.push_back(ex.classes[static_cast<std::size_t>(i)].word);
    for (int j = i + 1; j < k; ++j) {
      if (q.class_of[static_cast<std::size_t>(j)] >= 0) continue;
      const Mat& A = use_g_matrices ? ex.classes[static_cast<std::size_t>(i)].G : ex.classes[static_cast<std::size_t>(i)].C;
      const Mat& B = use_g_matrices ? ex.classes[static_cast<std::size_t>(j)].G : ex.classes[static_cast<std::size_t>(j)].C;
      if (ray_cluster_equal(A, B)) q.class_of[static_cast<std::size_t>(j)] = id;
    }
  }
  for (const EdgeRec& e : ex.edges) {
    int u = q.class_of[static_cast<std::size_t>(e.from_class)];
    int v = q.class_of[static_cast<std::size_t>(e.to_class)];
    if (u != v) q.edges.insert({std::min(u, v), std::max(u, v)});
  }
  return q;
}

// Every vertex of a fully-explored quotient has exactly `rank` distinct
// neighbours.
inline bool is_n_regular(const ExchangeGraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& [u, v] : g.edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  for (int d : deg)
    if (d != g.rank) return false;
  return true;
}

}  // namespace clusterlab
