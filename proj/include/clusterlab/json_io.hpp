#pragma once

// JSON encodings of scalars, matrices, pattern nodes, quivers, certificates,
// exploration reports, fans and exchange graphs. Integers that do not fit in
// 64 bits are emitted as decimal strings; both forms are accepted on input.
// Mutation words and vertex indices are 1-based on the wire.

#include "clusterlab/explore.hpp"
#include "clusterlab/geometry.hpp"
#include "clusterlab/matrix.hpp"
#include "clusterlab/quasiint.hpp"
#include "clusterlab/rank2.hpp"
#include "clusterlab/scalar.hpp"

#include <json.hpp>

#include <string>

namespace clusterlab {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Integers and rationals.

inline Json int_to_json(const Int& x) {
  static const Int lo = Int(std::numeric_limits<long long>::min());
  static const Int hi = Int(std::numeric_limits<long long>::max());
  if (x >= lo && x <= hi) return Json(static_cast<long long>(x));
  return Json(x.str());
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return Int(j.get<std::string>());
  fail(Errc::ParseError, "expected an integer (number or decimal string), got " + j.dump());
}

inline Json rat_to_json(const Rat& r) { return Json::array({int_to_json(num(r)), int_to_json(den(r))}); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return Rat(int_from_json(j));
  if (j.is_array() && j.size() == 2) {
    Int q = int_from_json(j[1]);
    if (q == 0) fail(Errc::ParseError, "rational with zero denominator");
    return Rat(int_from_json(j[0]), q);
  }
  fail(Errc::ParseError, "expected a rational [p, q], got " + j.dump());
}

// ---------------------------------------------------------------------------
// Scalars: {"rat":[p,q]} | {"quad":{"c0":[p,q],"c1":[p,q],"d":d}} | {"cos":m}
//        | {"alg":{"minpoly":[...],"coeffs":[[p,q],...],"interval":[[p,q],[p,q]]}}

inline Json scalar_to_json(const Scalar& x) {
  if (x.is_rational()) return Json{{"rat", rat_to_json(x.rat())}};
  if (x.is_quadratic()) {
    const auto& q = x.quad();
    return Json{{"quad", Json{{"c0", rat_to_json(q.c0)}, {"c1", rat_to_json(q.c1)}, {"d", int_to_json(q.d)}}}};
  }
  const auto& a = x.alg();
  Json coeffs = Json::array();
  for (const Rat& c : a.coeffs) coeffs.push_back(rat_to_json(c));
  Json minpoly = Json::array();
  for (const Int& c : a.field->minpoly) minpoly.push_back(int_to_json(c));
  RatInterval iv = a.field->interval();
  return Json{{"alg", Json{{"minpoly", minpoly},
                           {"coeffs", coeffs},
                           {"interval", Json::array({rat_to_json(iv.lo), rat_to_json(iv.hi)})}}}};
}

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return Scalar(Rat(int_from_json(j)));
  if (j.is_array()) return Scalar(rat_from_json(j));
  if (!j.is_object()) fail(Errc::ParseError, "bad scalar: " + j.dump());
  if (j.contains("rat")) return Scalar(rat_from_json(j.at("rat")));
  if (j.contains("cos")) return chebyshev_value(static_cast<int>(int_from_json(j.at("cos"))));
  if (j.contains("quad")) {
    const Json& q = j.at("quad");
    return Scalar::quadratic(rat_from_json(q.at("c0")), rat_from_json(q.at("c1")),
                             int_from_json(q.at("d")));
  }
  if (j.contains("alg")) {
    const Json& a = j.at("alg");
    std::vector<Int> mp;
    for (const Json& c : a.at("minpoly")) mp.push_back(int_from_json(c));
    Rat lo = rat_from_json(a.at("interval").at(0)), hi = rat_from_json(a.at("interval").at(1));
    auto field = std::make_shared<AlgebraicField>(std::move(mp), std::move(lo), std::move(hi));
    Poly coeffs;
    for (const Json& c : a.at("coeffs")) coeffs.push_back(rat_from_json(c));
    return Scalar::algebraic(std::move(field), std::move(coeffs));
  }
  fail(Errc::ParseError, "bad scalar: " + j.dump());
}

// ---------------------------------------------------------------------------
// Matrices, words, permutations.

inline Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(Errc::ParseError, "matrix must be a nonempty array of rows");
  int n = static_cast<int>(j.size());
  Mat m(n);
  for (int i = 0; i < n; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_array() || static_cast<int>(j[static_cast<std::size_t>(i)].size()) != n)
      fail(Errc::ParseError, "matrix rows must all have length " + std::to_string(n));
    for (int k = 0; k < n; ++k) m(i, k) = scalar_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  }
  return m;
}

inline Json word_to_json(const Word& w) {
  Json a = Json::array();
  for (int k : w) a.push_back(k + 1);
  return a;
}

inline Word word_from_json(const Json& j) {
  Word w;
  for (const Json& k : j) {
    int v = static_cast<int>(int_from_json(k));
    if (v < 1) fail(Errc::ParseError, "mutation directions are 1-based");
    w.push_back(v - 1);
  }
  return w;
}

inline Json perm_to_json(const Perm& p) {
  Json a = Json::array();
  for (int v : p) a.push_back(v + 1);
  return a;
}

inline Json rats_to_json(const std::vector<Rat>& d) {
  Json a = Json::array();
  for (const Rat& x : d) a.push_back(rat_to_json(x));
  return a;
}

inline Json node_to_json(const PatternNode& node, const std::vector<Rat>& D) {
  return Json{{"word", word_to_json(node.word)},
              {"B", matrix_to_json(node.B)},
              {"C", matrix_to_json(node.C)},
              {"G", matrix_to_json(node.G)},
              {"D", rats_to_json(D)}};
}

// ---------------------------------------------------------------------------
// Quivers: {"n":n,"arrows":[{"from":i,"to":j,"weight":scalar}...]} with the
// convention b_ij > 0 iff there is an arrow i -> j of weight b_ij.

inline Json quiver_to_json(const Mat& q) {
  Json arrows = Json::array();
  for (int i = 0; i < q.n(); ++i)
    for (int j = 0; j < q.n(); ++j)
      if (q(i, j).sign() > 0)
        arrows.push_back(Json{{"from", i + 1}, {"to", j + 1}, {"weight", scalar_to_json(q(i, j))}});
  return Json{{"n", q.n()}, {"arrows", std::move(arrows)}};
}

inline Mat quiver_from_json(const Json& j) {
  int n = static_cast<int>(int_from_json(j.at("n")));
  if (n < 1) fail(Errc::ParseError, "quiver rank must be positive");
  Mat q(n);
  for (const Json& a : j.at("arrows")) {
    int from = static_cast<int>(int_from_json(a.at("from"))) - 1;
    int to = static_cast<int>(int_from_json(a.at("to"))) - 1;
    if (from < 0 || from >= n || to < 0 || to >= n || from == to)
      fail(Errc::ParseError, "arrow endpoints out of range: " + a.dump());
    Scalar w = scalar_from_json(a.at("weight"));
    if (w.sign() <= 0) fail(Errc::ParseError, "arrow weights must be positive");
    if (!q(from, to).is_zero()) fail(Errc::ParseError, "duplicate arrow in quiver");
    q(from, to) = w;
    q(to, from) = -w;
  }
  return q;
}

// Accepts a matrix (array of rows), {"B": rows} or quiver {"n","arrows"}.
inline Mat exchange_matrix_from_json(const Json& j) {
  if (j.is_array()) return matrix_from_json(j);
  if (j.is_object() && j.contains("B")) return matrix_from_json(j.at("B"));
  if (j.is_object() && j.contains("arrows")) return quiver_from_json(j);
  fail(Errc::ParseError, "expected a matrix, {\"B\":...} or a quiver object");
}

// ---------------------------------------------------------------------------
// Reports.

inline std::string finiteness_phrase(const Exploration& ex) {
  if (ex.finite) return "finite, maximum depth = " + std::to_string(ex.max_new_depth);
  return "undeterminable";
}

inline std::string coherence_phrase(const Exploration& ex) {
  if (ex.coherent()) return "sign-coherent up to " + std::to_string(ex.depth_limit);
  return "incoherent";
}

inline Json exploration_to_json(const Exploration& ex, bool with_coherence) {
  Json matrices = Json::array();
  for (const auto& c : ex.classes) {
    Json rec{{"word", word_to_json(c.word)},
             {"B", matrix_to_json(c.B)}};
    if (ex.kind == DedupKind::BCPair) {
      rec["C"] = matrix_to_json(c.C);
      rec["G"] = matrix_to_json(c.G);
    }
    matrices.push_back(std::move(rec));
  }
  Json periodicities = Json::array();
  for (const auto& p : ex.periodicities) {
    periodicities.push_back(Json{{"word", word_to_json(p.word)},
                                 {"permutation", perm_to_json(p.sigma)},
                                 {"same_as", word_to_json(ex.classes[static_cast<std::size_t>(p.target_class)].word)}});
  }
  Json out{{"pattern", std::move(matrices)},
           {"periodicity", std::move(periodicities)},
           {"finiteness", finiteness_phrase(ex)},
           {"size", ex.size()},
           {"D", rats_to_json(ex.D)}};
  if (with_coherence) {
    Json inc = Json::array();
    for (const Word& w : ex.c_incoherent_words) inc.push_back(word_to_json(w));
    out["coherence"] = coherence_phrase(ex);
    out["incoherent_words"] = std::move(inc);
  }
  return out;
}

inline Json certificate_to_json(const IntegerCertificate& cert) {
  Json b = Json::array();
  for (const auto& row : cert.B) {
    Json r = Json::array();
    for (const Int& x : row) r.push_back(int_to_json(x));
    b.push_back(std::move(r));
  }
  Json d = Json::array();
  for (const Int& x : cert.D) d.push_back(int_to_json(x));
  Json perm = Json::array();
  for (int v : cert.order) perm.push_back(v + 1);
  return Json{{"B", std::move(b)}, {"D", std::move(d)}, {"perm", std::move(perm)}, {"verified", cert.verified}};
}

inline Json fan_to_json(const Fan& fan, std::optional<FanVerdict> verified) {
  Json cones = Json::array();
  for (const GCone& c : fan.cones) {
    cones.push_back(Json{{"word", word_to_json(c.word)},
                         {"generators", matrix_to_json(c.G)},
                         {"normals", matrix_to_json(c.C)}});
  }
  Json out{{"cones", std::move(cones)},
           {"rays", count_rays(fan)},
           {"g_vectors", fan.distinct_g_vectors}};
  if (verified)
    out["fan_verified"] = *verified == FanVerdict::Pass
                              ? Json(true)
                              : (*verified == FanVerdict::Fail ? Json(false) : Json("partial"));
  return out;
}

inline Json exchange_graph_to_json(const ExchangeGraph& g) {
  Json vertices = Json::array();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (int i = 0; i < g.vertex_count(); ++i) {
    std::sort(adj[static_cast<std::size_t>(i)].begin(), adj[static_cast<std::size_t>(i)].end());
    Json nbrs = Json::array();
    for (int v : adj[static_cast<std::size_t>(i)]) nbrs.push_back(word_to_json(g.vertex_rep[static_cast<std::size_t>(v)]));
    vertices.push_back(Json{{"word", word_to_json(g.vertex_rep[static_cast<std::size_t>(i)])},
                            {"neighbors", std::move(nbrs)}});
  }
  return Json{{"kind", eg_kind_name(g.kind)},
              {"vertices", std::move(vertices)},
              {"regular", is_n_regular(g)}};
}

inline Json rank2_verdict_to_json(const Rank2Verdict& v) {
  switch (v.kind) {
    case Rank2Verdict::Kind::CoxeterFinite:
      return Json{{"verdict", "CoxeterFinite"}, {"m", v.m}};
    case Rank2Verdict::Kind::CoherentInfinite:
      return Json{{"verdict", "CoherentInfinite"}};
    case Rank2Verdict::Kind::Incoherent: {
      Json cv = Json::array();
      for (const Scalar& x : v.witness_cvector) cv.push_back(scalar_to_json(x));
      return Json{{"verdict", "Incoherent"},
                  {"depth", v.witness_depth},
                  {"word", word_to_json(v.witness_word)},
                  {"c_vector", std::move(cv)}};
    }
  }
  fail(Errc::Internal, "unreachable");
}

// ---------------------------------------------------------------------------
// Text reports in the layout of the enumeration programs: the pattern with
// one word+matrix block per class, then Periodicity / Finiteness / Size (and
// Coherence for C-patterns).

inline std::string matrix_to_text(const Mat& m) {
  std::string s;
  for (int i = 0; i < m.n(); ++i) {
    s += "[";
    for (int j = 0; j < m.n(); ++j) {
      if (j) s += ", ";
      s += m(i, j).to_string();
    }
    s += "]\n";
  }
  return s;
}

inline std::string exploration_to_text(const Exploration& ex, bool c_pattern) {
  std::string s;
  s += c_pattern ? "C-pattern\n" : "B-pattern\n";
  for (const auto& c : ex.classes) {
    s += c.word.empty() ? "initial" : word_to_string(c.word);
    s += "\n";
    s += matrix_to_text(c_pattern ? c.C : c.B);
    s += "\n";
  }
  s += "Periodicity\n";
  for (const auto& p : ex.periodicities) {
    std::string perm = "[";
    for (std::size_t i = 0; i < p.sigma.size(); ++i) {
      if (i) perm += ", ";
      perm += std::to_string(p.sigma[i] + 1);
    }
    perm += "]";
    const Word& tgt = ex.classes[static_cast<std::size_t>(p.target_class)].word;
    s += word_to_string(p.word) + " : permutation " + perm + " same as " +
         (tgt.empty() ? "initial" : word_to_string(tgt)) + "\n";
  }
  s += "Finiteness: " + finiteness_phrase(ex) + "\n";
  s += "Size: " + std::to_string(ex.size()) + "\n";
  if (c_pattern) {
    s += "Coherence: " + coherence_phrase(ex) + "\n";
    if (!ex.coherent()) {
      for (const Word& w : ex.c_incoherent_words) s += word_to_string(w) + "\n";
    }
  }
  return s;
}

}  // namespace clusterlab
