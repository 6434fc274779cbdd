#pragma once

// B-, C-, G-matrix mutation. A PatternNode is one vertex of the mutation
// tree: the mutation word from the initial vertex together with the three
// matrices there. The initial exchange matrix travels alongside in Pattern,
// since the G-recursion refers back to it.

#include "clusterlab/error.hpp"
#include "clusterlab/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace clusterlab {

// Directions are 0-based internally; reports print them 1-based.
using Word = std::vector<int>;

inline std::string word_to_string(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(w[i] + 1);
  }
  return s + "]";
}

// mu_k(B) = (J_k + [-B]+^{.k}) B (J_k + [B]+^{k.}); involution, preserves the
// skew-symmetrizer.
inline Mat mutate_b(const Mat& b, int k) {
  Mat left = j_k(b.n(), k) + col_only(pos_part(neg(b)), k);
  Mat right = j_k(b.n(), k) + row_only(pos_part(b), k);
  return left * b * right;
}

struct PatternNode {
  Word word;
  Mat B, C, G;
  int depth() const { return static_cast<int>(word.size()); }
};

struct CGResult {
  Mat B, C, G;
};

// One mutation step of (B, C, G) in direction k, using the epsilon-form
// recursion. The result is independent of epsilon; both signs are computed
// and checked against each other on every call.
inline CGResult mutate_cg(const Mat& B, const Mat& C, const Mat& G, const Mat& B0, int k) {
  int n = B.n();
  auto step = [&](int eps) {
    Mat epsB = eps > 0 ? B : neg(B);
    Mat epsC = eps > 0 ? C : neg(C);
    Mat Cn = C * j_k(n, k) + C * row_only(pos_part(epsB), k) + col_only(pos_part(neg(epsC)), k) * B;
    Mat Gn = G * j_k(n, k) + G * col_only(pos_part(neg(epsB)), k) - B0 * col_only(pos_part(neg(epsC)), k);
    return std::pair<Mat, Mat>{std::move(Cn), std::move(Gn)};
  };
  auto [c_plus, g_plus] = step(+1);
  auto [c_minus, g_minus] = step(-1);
  if (c_plus != c_minus || g_plus != g_minus)
    fail(Errc::Internal, "epsilon-form mutation disagreed between eps = +1 and -1");
  return {mutate_b(B, k), std::move(c_plus), std::move(g_plus)};
}

inline PatternNode initial_node(const Mat& B0) {
  return {Word{}, B0, Mat::identity(B0.n()), Mat::identity(B0.n())};
}

inline PatternNode mutate_node(const PatternNode& node, const Mat& B0, int k) {
  CGResult r = mutate_cg(node.B, node.C, node.G, B0, k);
  PatternNode out{node.word, std::move(r.B), std::move(r.C), std::move(r.G)};
  out.word.push_back(k);
  return out;
}

inline PatternNode replay(const Mat& B0, const Word& word) {
  PatternNode node = initial_node(B0);
  for (int k : word) node = mutate_node(node, B0, k);
  return node;
}

// ---------------------------------------------------------------------------
// Tropical signs.

// Sign of a sign-coherent vector: +1 / -1 / 0 (zero vector); nullopt if the
// entries mix signs.
inline std::optional<int> coherent_sign(const Vec& v) {
  int s = 0;
  for (const Scalar& x : v) {
    int sx = x.sign();
    if (sx == 0) continue;
    if (s == 0) s = sx;
    else if (s != sx) return std::nullopt;
  }
  return s;
}

inline std::optional<int> tropical_eps(const Mat& C, int i) { return coherent_sign(C.col(i)); }
inline std::optional<int> tropical_tau(const Mat& G, int i) { return coherent_sign(G.row(i)); }

inline bool column_sign_coherent(const Mat& C) {
  for (int i = 0; i < C.n(); ++i)
    if (!tropical_eps(C, i)) return false;
  return true;
}

inline bool row_sign_coherent(const Mat& G) {
  for (int i = 0; i < G.n(); ++i)
    if (!tropical_tau(G, i)) return false;
  return true;
}

// Simplified recursion C' = C (J_k + [eps_k B]+^{k.}), valid when column k of
// C is sign-coherent. Cross-checked against the epsilon-form by callers.
inline Mat mutate_c_coherent(const Mat& C, const Mat& B, int k, int eps_k) {
  if (eps_k != 1 && eps_k != -1)
    fail(Errc::IncoherentColumn, "tropical sign of column " + std::to_string(k + 1) + " undefined");
  Mat epsB = eps_k > 0 ? B : neg(B);
  return C * (j_k(C.n(), k) + row_only(pos_part(epsB), k));
}

inline Mat mutate_g_coherent(const Mat& G, const Mat& B, int k, int eps_k) {
  if (eps_k != 1 && eps_k != -1)
    fail(Errc::IncoherentColumn, "tropical sign of column " + std::to_string(k + 1) + " undefined");
  Mat mepsB = eps_k > 0 ? neg(B) : B;
  return G * (j_k(G.n(), k) + col_only(pos_part(mepsB), k));
}

// ---------------------------------------------------------------------------
// Duality checks.  <a, b>_D = a^T D b with D the skew-symmetrizer of B0.

struct DualityReport {
  bool first = false;   // G_t B_t = B_0 C_t
  bool second = false;  // D^{-1} G_t^T D C_t = I
  bool c_to_b = false;  // D B_t = C_t^T D B_0 C_t
  std::optional<std::pair<int, int>> offending;

  bool all() const { return first && second && c_to_b; }
};

inline std::vector<Scalar> diag_scalars(const std::vector<Rat>& d) {
  std::vector<Scalar> out;
  out.reserve(d.size());
  for (const Rat& x : d) out.emplace_back(x);
  return out;
}

inline DualityReport check_dualities(const PatternNode& node, const Mat& B0,
                                     const std::vector<Rat>& D) {
  DualityReport rep;
  auto ds = diag_scalars(D);
  Mat lhs1 = node.G * node.B, rhs1 = B0 * node.C;
  // D^{-1} G^T D C = I  <=>  G^T D C = D
  Mat gtdc = node.G.transpose() * diag_mul(ds, node.C);
  Mat lhs3 = diag_mul(ds, node.B);
  Mat rhs3 = node.C.transpose() * diag_mul(ds, B0) * node.C;

  auto find_mismatch = [&](const Mat& x, const Mat& y) -> std::optional<std::pair<int, int>> {
    for (int i = 0; i < x.n(); ++i)
      for (int j = 0; j < x.n(); ++j)
        if (x(i, j) != y(i, j)) return std::make_pair(i, j);
    return std::nullopt;
  };

  Mat dmat(node.B.n());
  for (int i = 0; i < node.B.n(); ++i) dmat(i, i) = ds[static_cast<std::size_t>(i)];

  auto m1 = find_mismatch(lhs1, rhs1);
  auto m2 = find_mismatch(gtdc, dmat);
  auto m3 = find_mismatch(lhs3, rhs3);
  rep.first = !m1;
  rep.second = !m2;
  rep.c_to_b = !m3;
  rep.offending = m1 ? m1 : (m2 ? m2 : m3);
  return rep;
}

// ---------------------------------------------------------------------------
// Restriction to a sub-pattern (Prop-style projection).

inline Mat restrict_matrix(const Mat& a, const std::vector<int>& J) {
  Mat r(static_cast<int>(J.size()));
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = 0; j < J.size(); ++j)
      r(static_cast<int>(i), static_cast<int>(j)) = a(J[i], J[j]);
  return r;
}

// Restricts a node whose word only mutates inside J, and checks the
// projection identities B_t|_J = (B|_J)_t etc. exactly.
inline PatternNode restrict_node(const PatternNode& node, const Mat& B0, const std::vector<int>& J) {
  if (J.empty()) fail(Errc::ParseError, "restrict: empty index set");
  std::vector<int> pos(static_cast<std::size_t>(B0.n()), -1);
  for (std::size_t i = 0; i < J.size(); ++i) pos[static_cast<std::size_t>(J[i])] = static_cast<int>(i);
  Word small_word;
  for (int k : node.word) {
    if (pos[static_cast<std::size_t>(k)] < 0)
      fail(Errc::WordLeavesJ, "mutation word uses direction " + std::to_string(k + 1) + " outside J");
    small_word.push_back(pos[static_cast<std::size_t>(k)]);
  }
  PatternNode small = replay(restrict_matrix(B0, J), small_word);
  if (small.B != restrict_matrix(node.B, J) || small.C != restrict_matrix(node.C, J) ||
      small.G != restrict_matrix(node.G, J))
    fail(Errc::Internal, "restriction identities violated");
  return small;
}

}  // namespace clusterlab
