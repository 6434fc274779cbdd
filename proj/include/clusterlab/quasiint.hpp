#pragma once

// Quasi-integer type: the decision procedure (every weight squared an
// integer, every chordless-cycle product an integer) and the constructive
// certificate (an integer skew-symmetrizable matrix whose Sk image is the
// given quiver, plus its skew-symmetrizer).

#include "clusterlab/error.hpp"
#include "clusterlab/matrix.hpp"
#include "clusterlab/skewsym.hpp"

#include <optional>
#include <queue>
#include <vector>

namespace clusterlab {

using IntMat = std::vector<std::vector<Int>>;

struct QuasiWitness {
  enum class Kind { Weight, Cycle } kind;
  int i = -1, j = -1;         // offending weight position (Weight)
  std::vector<int> cycle;     // offending cycle (Cycle)
  Scalar value;               // the weight, or the cycle product
};

struct QuasiVerdict {
  bool quasi_integer = false;
  std::optional<QuasiWitness> witness;
  Mat quiver;  // the skew-symmetric matrix tested (Sk(B) if B was not)
};

// Entrywise m*sqrt(a) split of a skew-symmetric quiver.
struct QuasiDecomposition {
  IntMat m;  // skew-symmetric
  IntMat a;  // symmetric, square-free parts
};

inline QuasiDecomposition decompose_quiver(const Mat& q) {
  int n = q.n();
  QuasiDecomposition d{IntMat(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n), 0)),
                       IntMat(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n), 0))};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (q(i, j).is_zero()) continue;
      SquareFreePair p = square_free_decompose(q(i, j));
      d.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p.m;
      d.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p.a;
    }
  return d;
}

inline QuasiVerdict classify_quasi_integer(const Mat& b) {
  QuasiVerdict v;
  v.quiver = is_skew_symmetric(b) ? b : sk(b);
  const Mat& q = v.quiver;
  int n = q.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (q(i, j).is_zero()) continue;
      try {
        (void)square_free_decompose(q(i, j));
      } catch (const Error& e) {
        if (e.code() != Errc::NotQuasiWeight) throw;
        v.witness = QuasiWitness{QuasiWitness::Kind::Weight, i, j, {}, q(i, j)};
        return v;
      }
    }
  QuasiDecomposition dec = decompose_quiver(q);
  for (const auto& cyc : chordless_cycles(q)) {
    Int m = 1, a = 1;
    for (std::size_t t = 0; t < cyc.size(); ++t) {
      int i = cyc[t], j = cyc[(t + 1) % cyc.size()];
      m *= dec.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      auto [s, r] = square_free_split(a * dec.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      m *= s;
      a = r;
    }
    if (a != 1) {
      v.witness = QuasiWitness{QuasiWitness::Kind::Cycle, -1, -1, cyc,
                               Scalar::quadratic(Rat(0), Rat(m), a)};
      return v;
    }
  }
  v.quasi_integer = true;
  return v;
}

struct IntegerCertificate {
  IntMat B;                 // integer skew-symmetrizable, Sk(B) = Q
  std::vector<Int> D;       // positive integral skew-symmetrizer, d_i square-free
  IntMat Atilde;            // symmetrizable split of the weights
  std::vector<int> order;   // vertex processing order (0-based), BFS from the
                            // lowest vertex of each component
  bool verified = false;
};

// The step-by-step construction: seed (alpha, beta) = (a_12, 1) on the first
// edge of each component, then extend one vertex at a time with
// g_i = gcd(d_i, a_{i,s+1}), gbar_i = a_{i,s+1}/g_i, d_{s+1} = d_k gbar_k / g_k.
// d_{s+1} is checked to be independent of the admissible k.
inline IntegerCertificate construct_integer_matrix(const Mat& q) {
  if (!is_skew_symmetric(q)) fail(Errc::NotQuasiInteger, "construction expects a skew-symmetric quiver");
  QuasiVerdict verdict = classify_quasi_integer(q);
  if (!verdict.quasi_integer) fail(Errc::NotQuasiInteger, "quiver is not of quasi-integer type");
  QuasiDecomposition dec = decompose_quiver(q);
  int n = q.n();
  auto A = [&](int i, int j) -> const Int& { return dec.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };

  IntegerCertificate cert;
  cert.D.assign(static_cast<std::size_t>(n), 0);
  cert.Atilde.assign(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n), 0));

  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int root = 0; root < n; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    // BFS order within the component keeps every prefix connected.
    std::vector<int> comp;
    std::queue<int> bfs;
    bfs.push(root);
    seen[static_cast<std::size_t>(root)] = true;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      comp.push_back(v);
      for (int w = 0; w < n; ++w)
        if (!seen[static_cast<std::size_t>(w)] && A(v, w) != 0) {
          seen[static_cast<std::size_t>(w)] = true;
          bfs.push(w);
        }
    }
    for (int v : comp) cert.order.push_back(v);

    if (comp.size() == 1) {
      cert.D[static_cast<std::size_t>(comp[0])] = 1;
      continue;
    }
    int v0 = comp[0], v1 = comp[1];
    if (A(v0, v1) == 0) fail(Errc::Internal, "BFS order lost prefix connectivity");
    cert.D[static_cast<std::size_t>(v0)] = A(v0, v1);  // alpha = a_12
    cert.D[static_cast<std::size_t>(v1)] = 1;          // beta = 1
    cert.Atilde[static_cast<std::size_t>(v0)][static_cast<std::size_t>(v1)] = 1;
    cert.Atilde[static_cast<std::size_t>(v1)][static_cast<std::size_t>(v0)] = A(v0, v1);
    for (std::size_t s = 2; s < comp.size(); ++s) {
      int vs = comp[s];
      std::optional<Int> d_new;
      for (std::size_t i = 0; i < s; ++i) {
        int vi = comp[i];
        if (A(vi, vs) == 0) continue;
        Int g = gcd_of(cert.D[static_cast<std::size_t>(vi)], A(vi, vs));
        Int gbar = A(vi, vs) / g;
        cert.Atilde[static_cast<std::size_t>(vi)][static_cast<std::size_t>(vs)] = gbar;
        cert.Atilde[static_cast<std::size_t>(vs)][static_cast<std::size_t>(vi)] = g;
        Int cand = cert.D[static_cast<std::size_t>(vi)] * gbar / g;
        if (!d_new)
          d_new = cand;
        else if (*d_new != cand)
          fail(Errc::Internal, "d_{s+1} depends on the choice of k; cycle condition violated");
      }
      if (!d_new) fail(Errc::Internal, "BFS order lost prefix connectivity");
      cert.D[static_cast<std::size_t>(vs)] = *d_new;
    }
  }

  // d_i square-free; split parts multiply back and are coprime.
  for (int i = 0; i < n; ++i) {
    if (!is_square_free(cert.D[static_cast<std::size_t>(i)]))
      fail(Errc::Internal, "constructed d_i is not square-free");
    for (int j = 0; j < n; ++j) {
      const Int& aij = cert.Atilde[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const Int& aji = cert.Atilde[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (aij * aji != A(i, j)) fail(Errc::Internal, "Atilde split does not multiply back");
      if (A(i, j) != 0 && gcd_of(aij, aji) != 1)
        fail(Errc::Internal, "Atilde split parts are not coprime");
    }
  }

  cert.B.assign(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cert.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          dec.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
          cert.Atilde[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  // Self-verification: D symmetrizes Atilde, D B is skew-symmetric, Sk(B) = Q.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (cert.D[static_cast<std::size_t>(i)] * cert.Atilde[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          cert.D[static_cast<std::size_t>(j)] * cert.Atilde[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        fail(Errc::Internal, "D does not symmetrize Atilde");
      if (cert.D[static_cast<std::size_t>(i)] * cert.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          -cert.D[static_cast<std::size_t>(j)] * cert.B[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        fail(Errc::Internal, "D is not a skew-symmetrizer of B");
    }
  Mat bmat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bmat(i, j) = Scalar(cert.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  if (sk(bmat) != q) fail(Errc::Internal, "Sk(B) differs from the input quiver");
  cert.verified = true;
  return cert;
}

// Lemma-style inversion identities for square-free u, x:
// y = xu/gcd(x,u)^2 is square-free, x = yu/gcd(y,u)^2, u = gcd(x,u)gcd(y,u).
struct InversionReport {
  Int y;
  bool y_square_free = false;
  bool inversion_holds = false;
  bool gcd_product_holds = false;
  bool all() const { return y_square_free && inversion_holds && gcd_product_holds; }
};

inline InversionReport square_free_inversion_check(const Int& u, const Int& x) {
  if (!is_square_free(u) || !is_square_free(x))
    fail(Errc::ParseError, "square_free_inversion_check expects square-free inputs");
  InversionReport rep;
  Int g = gcd_of(x, u);
  rep.y = x * u / (g * g);
  rep.y_square_free = is_square_free(rep.y);
  Int gy = gcd_of(rep.y, u);
  rep.inversion_holds = (rep.y * u / (gy * gy) == x);
  rep.gcd_product_holds = (g * gy == u);
  return rep;
}

}  // namespace clusterlab
