#pragma once

// Small dense matrices and vectors of exact scalars, with the handful of
// shaped operations the mutation formulas use: [A]+, J_k, single-row/column
// masks, and the two permutation actions.

#include "clusterlab/error.hpp"
#include "clusterlab/scalar.hpp"

#include <numeric>
#include <vector>

namespace clusterlab {

using Vec = std::vector<Scalar>;

class Mat {
 public:
  Mat() : n_(0) {}
  explicit Mat(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static Mat from_rows(std::vector<std::vector<Scalar>> rows) {
    int n = static_cast<int>(rows.size());
    Mat m(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) fail(Errc::ParseError, "ragged matrix rows");
      for (int j = 0; j < n; ++j) m(i, j) = std::move(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
  }

  int n() const { return n_; }

  Scalar& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const Scalar& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

  Vec col(int j) const {
    Vec v(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) v[static_cast<std::size_t>(i)] = (*this)(i, j);
    return v;
  }

  Vec row(int i) const {
    Vec v(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) v[static_cast<std::size_t>(j)] = (*this)(i, j);
    return v;
  }

  Mat transpose() const {
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat r(a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat r(a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat r(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < a.n_; ++j) {
          if (b(k, j).is_zero()) continue;
          r(i, j) += aik * b(k, j);
        }
      }
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t k = 0; k < a.e_.size(); ++k)
      if (a.e_[k] != b.e_[k]) return false;
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  const std::vector<Scalar>& entries() const { return e_; }

 private:
  int n_;
  std::vector<Scalar> e_;
};

// Entrywise positive part [A]+.
inline Mat pos_part(const Mat& a) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (a(i, j).sign() > 0) r(i, j) = a(i, j);
  return r;
}

inline Mat neg(const Mat& a) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, j) = -a(i, j);
  return r;
}

// Identity with the (k,k) entry replaced by -1 (k is 0-based).
inline Mat j_k(int n, int k) {
  Mat m = Mat::identity(n);
  m(k, k) = Scalar(-1);
  return m;
}

// A^{k.}: zero outside row k.   A^{.k}: zero outside column k.
inline Mat row_only(const Mat& a, int k) {
  Mat r(a.n());
  for (int j = 0; j < a.n(); ++j) r(k, j) = a(k, j);
  return r;
}

inline Mat col_only(const Mat& a, int k) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i) r(i, k) = a(i, k);
  return r;
}

inline Mat scale(const Mat& a, const Scalar& s) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, j) = a(i, j) * s;
  return r;
}

// diag(d) * A and A * diag(d).
inline Mat diag_mul(const std::vector<Scalar>& d, const Mat& a) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, j) = d[static_cast<std::size_t>(i)] * a(i, j);
  return r;
}

inline Mat mul_diag(const Mat& a, const std::vector<Scalar>& d) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, j) = a(i, j) * d[static_cast<std::size_t>(j)];
  return r;
}

// Exact determinant by fraction-free-ish Gaussian elimination over the field.
inline Scalar det(Mat a) {
  int n = a.n();
  Scalar result(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).is_zero()) { pivot = r; break; }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      result = -result;
    }
    result *= a(col, col);
    Scalar inv = a(col, col).inverse();
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      Scalar f = a(r, col) * inv;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return result;
}

// Exact inverse (Gauss-Jordan). Throws on singular input.
inline Mat inverse(Mat a) {
  int n = a.n();
  Mat inv = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).is_zero()) { pivot = r; break; }
    if (pivot < 0) fail(Errc::Internal, "inverse of singular matrix");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    Scalar piv_inv = a(col, col).inverse();
    for (int j = 0; j < n; ++j) {
      a(col, j) *= piv_inv;
      inv(col, j) *= piv_inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Scalar f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Permutations. sigma[i] is the image of i (0-based).

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm perm_inverse(const Perm& p) {
  Perm inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

inline Perm perm_compose(const Perm& f, const Perm& g) {  // (f o g)(i) = f(g(i))
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = f[static_cast<std::size_t>(g[i])];
  return r;
}

// sigma A = (a_{sigma^{-1}(i), sigma^{-1}(j)}) = P_sigma^T A P_sigma.
inline Mat sigma_act(const Perm& sigma, const Mat& a) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]) = a(i, j);
  return r;
}

// sigma~ A = (a_{i, sigma^{-1}(j)}) = A P_sigma  (column j of the result is
// column sigma^{-1}(j) of A).
inline Mat sigma_tilde_act(const Perm& sigma, const Mat& a) {
  Mat r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, sigma[static_cast<std::size_t>(j)]) = a(i, j);
  return r;
}

inline std::string to_string(const Mat& a) {
  std::string s = "[";
  for (int i = 0; i < a.n(); ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < a.n(); ++j) {
      if (j) s += ", ";
      s += a(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace clusterlab
