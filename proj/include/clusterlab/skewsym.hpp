#pragma once

// Skew-symmetrizer discovery by spanning-tree propagation, the Sk map,
// positive conjugation, and chordless-cycle enumeration on the underlying
// undirected graph of a quiver.

#include "clusterlab/error.hpp"
#include "clusterlab/matrix.hpp"
#include "clusterlab/mutation.hpp"

#include <queue>
#include <string>
#include <vector>

namespace clusterlab {

inline bool is_sign_skew_symmetric(const Mat& b) {
  for (int i = 0; i < b.n(); ++i)
    for (int j = i; j < b.n(); ++j)
      if (b(i, j).sign() != -b(j, i).sign()) return false;
  return true;
}

inline bool is_skew_symmetric(const Mat& b) {
  for (int i = 0; i < b.n(); ++i)
    for (int j = i; j < b.n(); ++j)
      if (b(i, j) != -b(j, i)) return false;
  return true;
}

// Positive diagonal D with D B skew-symmetric, normalized so that all d_i are
// integers with overall gcd 1. Errors: NotSignSkewSymmetric,
// CycleInconsistent (with a witness cycle in the message), UnsupportedTower
// if the forced ratios are irrational.
inline std::vector<Rat> find_skew_symmetrizer(const Mat& b) {
  int n = b.n();
  if (!is_sign_skew_symmetric(b))
    fail(Errc::NotSignSkewSymmetric, "matrix is not sign-skew-symmetric");
  std::vector<Scalar> d(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n), -2);  // -2 unvisited, -1 root
  for (int root = 0; root < n; ++root) {
    if (parent[static_cast<std::size_t>(root)] != -2) continue;
    parent[static_cast<std::size_t>(root)] = -1;
    d[static_cast<std::size_t>(root)] = Scalar(1);
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (b(i, j).is_zero()) continue;
        if (parent[static_cast<std::size_t>(j)] == -2) {
          // d_i b_ij = -d_j b_ji
          d[static_cast<std::size_t>(j)] = -d[static_cast<std::size_t>(i)] * b(i, j) / b(j, i);
          parent[static_cast<std::size_t>(j)] = i;
          q.push(j);
        } else if (d[static_cast<std::size_t>(i)] * b(i, j) != -d[static_cast<std::size_t>(j)] * b(j, i)) {
          // witness cycle: tree path i -> j plus the edge (j, i)
          auto path_to_root = [&](int v) {
            std::vector<int> p;
            for (; v != -1; v = parent[static_cast<std::size_t>(v)]) p.push_back(v);
            return p;
          };
          std::vector<int> pi = path_to_root(i), pj = path_to_root(j);
          while (pi.size() > 1 && pj.size() > 1 && pi[pi.size() - 2] == pj[pj.size() - 2]) {
            pi.pop_back();
            pj.pop_back();
          }
          std::string cyc;
          for (auto it = pi.begin(); it != pi.end(); ++it) cyc += std::to_string(*it + 1) + "-";
          for (auto it = pj.rbegin() + 1; it != pj.rend(); ++it) cyc += std::to_string(*it + 1) + "-";
          cyc += std::to_string(i + 1);
          fail(Errc::CycleInconsistent, "cycle " + cyc + " violates the symmetrizer condition");
        }
      }
    }
  }
  std::vector<Rat> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!d[static_cast<std::size_t>(i)].is_rational())
      fail(Errc::UnsupportedTower, "skew-symmetrizer has irrational entries");
    out[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)].rat();
  }
  Int l = 1;
  for (const Rat& x : out) l = lcm_of(l, den(x));
  Int g = 0;
  for (const Rat& x : out) g = gcd_of(g, Int(num(x) * (l / den(x))));
  for (Rat& x : out) x = x * Rat(l, g);
  return out;
}

// Sk(B) = D^{1/2} B D^{-1/2}: entries sign(b_ij) sqrt(|b_ij b_ji|),
// independent of the choice of D. Skew-symmetric; fixes skew-symmetric input.
inline Mat sk(const Mat& b) {
  std::vector<Rat> D = find_skew_symmetrizer(b);
  int n = b.n();
  Mat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (b(i, j).is_zero()) continue;
      r(i, j) = b(i, j) * sqrt_of_rational(D[static_cast<std::size_t>(i)] / D[static_cast<std::size_t>(j)]);
    }
  if (!is_skew_symmetric(r)) fail(Errc::Internal, "Sk(B) not skew-symmetric");
  return r;
}

inline Mat positive_conjugate(const Mat& b, const std::vector<Scalar>& h) {
  int n = b.n();
  for (const Scalar& x : h)
    if (x.sign() <= 0) fail(Errc::ParseError, "positive conjugation needs a positive diagonal");
  Mat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r(i, j) = h[static_cast<std::size_t>(i)] * b(i, j) / h[static_cast<std::size_t>(j)];
  return r;
}

// ---------------------------------------------------------------------------
// Chordless cycles of the underlying undirected graph (edges where the
// weight is nonzero). Each cycle is reported once, lowest vertex first and
// second vertex smaller than the last.

inline std::vector<std::vector<int>> chordless_cycles(const Mat& weights) {
  int n = weights.n();
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !weights(i, j).is_zero()) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;

  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::vector<bool> in_path(static_cast<std::size_t>(n), false);

  // Path invariant: induced (no chords), all vertices > path[0] except the
  // start itself.
  auto extend = [&](auto&& self) -> void {
    int v = path.front();
    int last = path.back();
    for (int w = v + 1; w < n; ++w) {
      if (in_path[static_cast<std::size_t>(w)] || !adj[static_cast<std::size_t>(last)][static_cast<std::size_t>(w)]) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (adj[static_cast<std::size_t>(w)][static_cast<std::size_t>(path[i])]) { chord = true; break; }
      if (chord) continue;
      if (adj[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)]) {
        if (path.size() >= 2 && path[1] < w) {
          std::vector<int> cyc = path;
          cyc.push_back(w);
          cycles.push_back(std::move(cyc));
        }
        continue;  // a closing vertex cannot also extend the induced path
      }
      path.push_back(w);
      in_path[static_cast<std::size_t>(w)] = true;
      self(self);
      in_path[static_cast<std::size_t>(w)] = false;
      path.pop_back();
    }
  };

  for (int v = 0; v < n; ++v) {
    for (int u = v + 1; u < n; ++u) {
      if (!adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) continue;
      path = {v, u};
      in_path.assign(static_cast<std::size_t>(n), false);
      in_path[static_cast<std::size_t>(v)] = in_path[static_cast<std::size_t>(u)] = true;
      extend(extend);
    }
  }
  return cycles;
}

}  // namespace clusterlab
