#pragma once

// The catalog of Coxeter quivers: path/branch diagrams with edge weights
// [m] = 2cos(pi/m), oriented with every arrow pointing toward the lower
// vertex index (one of the admissible orientations; mutation-equivalence and
// all counts are orientation-independent). Each entry carries the default
// exploration depth that reproduces the published counts.

#include "clusterlab/error.hpp"
#include "clusterlab/matrix.hpp"
#include "clusterlab/scalar.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace clusterlab {

struct CatalogEntry {
  std::string name;
  Mat B;
  int default_depth;
};

namespace detail {

// Path quiver on n vertices with the given edge weights (size n-1); arrow
// from i+1 to i, so b_{i+1,i} = w_i > 0.
inline Mat path_quiver(const std::vector<Scalar>& weights) {
  int n = static_cast<int>(weights.size()) + 1;
  Mat b(n);
  for (int i = 0; i + 1 < n; ++i) {
    b(i + 1, i) = weights[static_cast<std::size_t>(i)];
    b(i, i + 1) = -weights[static_cast<std::size_t>(i)];
  }
  return b;
}

inline void add_arrow(Mat& b, int from, int to, const Scalar& w) {
  b(from, to) = w;
  b(to, from) = -w;
}

}  // namespace detail

inline CatalogEntry catalog(const std::string& raw_name) {
  std::string name;
  for (char c : raw_name)
    if (!std::isspace(static_cast<unsigned char>(c))) name.push_back(c);
  Scalar one(1);
  Scalar r2 = chebyshev_value(4);
  Scalar gold = chebyshev_value(5);

  auto simply_laced_path = [&](int n) {
    return detail::path_quiver(std::vector<Scalar>(static_cast<std::size_t>(n - 1), one));
  };

  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'B' || name[0] == 'C' || name[0] == 'D') &&
      std::isdigit(static_cast<unsigned char>(name[1]))) {
    int n = std::stoi(name.substr(1));
    char type = name[0];
    if (type == 'A') {
      if (n < 2) fail(Errc::UnknownType, "A_n needs n >= 2");
      return {name, simply_laced_path(n), n <= 2 ? 6 : (n == 3 ? 10 : 4 * n)};
    }
    if (type == 'B' || type == 'C') {
      if (n < 2) fail(Errc::UnknownType, "B_n needs n >= 2");
      std::vector<Scalar> w(static_cast<std::size_t>(n - 1), one);
      w.back() = r2;
      return {name, detail::path_quiver(w), n <= 2 ? 7 : (n == 3 ? 12 : 4 * n)};
    }
    if (n < 4) fail(Errc::UnknownType, "D_n needs n >= 4");
    Mat b(n);
    detail::add_arrow(b, 2, 0, one);
    detail::add_arrow(b, 2, 1, one);
    for (int i = 2; i + 1 < n; ++i) detail::add_arrow(b, i + 1, i, one);
    return {name, b, 4 * n};
  }
  if (name == "E6" || name == "E7" || name == "E8") {
    int n = name[1] - '0';
    Mat b(n);
    for (int i = 0; i + 1 < n - 1; ++i) detail::add_arrow(b, i + 1, i, one);
    detail::add_arrow(b, 2, n - 1, one);  // branch vertex attached to the third node
    return {name, b, 4 * n};
  }
  if (name == "F4") {
    return {name, detail::path_quiver({one, r2, one}), 16};
  }
  if (name == "H3") {
    return {name, detail::path_quiver({one, gold}), 7};
  }
  if (name == "H4") {
    return {name, detail::path_quiver({one, one, gold}), 11};
  }
  if (name == "F4t" || name == "F~4" || name == "~F4" || name == "F4~") {
    return {"F4t", detail::path_quiver({one, r2, one, one}), 8};
  }
  if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
    int m = std::stoi(name.substr(3, name.size() - 4));
    if (m < 2) fail(Errc::UnknownType, "I2(m) needs m >= 2");
    Scalar w = chebyshev_value(m);
    Mat b(2);
    if (m > 2) detail::add_arrow(b, 1, 0, w);
    return {"I2(" + std::to_string(m) + ")", b, m + 3};
  }
  fail(Errc::UnknownType, "unknown catalog type '" + raw_name + "'");
}

}  // namespace clusterlab
