#include "clusterlab/catalog.hpp"
#include "clusterlab/mutation.hpp"
#include "clusterlab/skewsym.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace clusterlab;

namespace {

Scalar S(long v) { return Scalar(v); }
Scalar Sr(long p, long q) { return Scalar(Rat(p, q)); }
Scalar gold() { return chebyshev_value(5); }

Mat h3_figure_initial() {
  Scalar p = gold();
  return Mat::from_rows({{S(0), -p, S(0)}, {p, S(0), S(-1)}, {S(0), S(1), S(0)}});
}

Mat rank2(const Scalar& a, const Scalar& b) {
  return Mat::from_rows({{Scalar(0), -a}, {b, Scalar(0)}});
}

Perm random_perm(int n, std::mt19937& rng) {
  Perm p = perm_identity(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("mutate_b worked values") {
  Mat b = rank2(Sr(1, 2), S(2));  // [[0,-1/2],[2,0]]
  Mat m = mutate_b(b, 0);
  CHECK(m == rank2(Sr(-1, 2), S(-2)));

  Scalar p = gold();
  Mat h3 = h3_figure_initial();
  Mat got = mutate_b(mutate_b(h3, 1), 0);  // word [2,1], 1-based
  Mat expect = Mat::from_rows({{S(0), -p, p}, {p, S(0), -p}, {-p, p, S(0)}});
  CHECK(got == expect);
}

TEST_CASE("b-mutation is an involution") {
  std::vector<Mat> quivers = {h3_figure_initial(), rank2(Sr(1, 2), S(2)),
                              rank2(S(1), S(1)), rank2(chebyshev_value(7), chebyshev_value(7))};
  for (const char* t : {"A2", "A4", "B3", "D4", "E6", "F4", "H3", "H4", "I2(6)", "F4t"})
    quivers.push_back(catalog(t).B);
  for (const Mat& b : quivers)
    for (int k = 0; k < b.n(); ++k) CHECK(mutate_b(mutate_b(b, k), k) == b);
}

TEST_CASE("C-pattern of the sign-incoherent example") {
  Mat b0 = rank2(Sr(-1, 2), Sr(-1, 2));  // [[0,1/2],[-1/2,0]]
  PatternNode n1 = replay(b0, {0});
  CHECK(n1.C == Mat::from_rows({{S(-1), Sr(1, 2)}, {S(0), S(1)}}));
  PatternNode n2 = replay(b0, {0, 1});
  CHECK(n2.C == Mat::from_rows({{Sr(-3, 4), Sr(-1, 2)}, {Sr(1, 2), S(-1)}}));
  CHECK_FALSE(column_sign_coherent(n2.C));

  PatternNode root = replay(b0, {});
  CHECK(root.C == Mat::identity(2));
  CHECK(root.G == Mat::identity(2));
}

TEST_CASE("coherent recursion agrees with the general one") {
  Mat b0 = rank2(Sr(1, 2), S(2));  // [[0,-1/2],[2,0]]
  // boxed matrix of the worked example, at word [1,2,1,2,1]
  PatternNode node = replay(b0, {0, 1, 0, 1, 0});
  CHECK(node.C == Mat::from_rows({{S(0), Sr(1, 2)}, {S(2), S(0)}}));

  // the 10-step cycle closes
  PatternNode cyc = replay(b0, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(cyc.C == Mat::identity(2));
  CHECK(cyc.G == Mat::identity(2));
  CHECK(cyc.B == b0);

  // step the coherent recursion along the word and compare with the engine
  PatternNode at = initial_node(b0);
  for (int k : {0, 1, 0, 1, 0}) {
    auto eps = tropical_eps(at.C, k);
    REQUIRE(eps.has_value());
    Mat c_simple = mutate_c_coherent(at.C, at.B, k, *eps);
    Mat g_simple = mutate_g_coherent(at.G, at.B, k, *eps);
    at = mutate_node(at, b0, k);
    CHECK(c_simple == at.C);
    CHECK(g_simple == at.G);
  }
  CHECK_THROWS_AS(mutate_c_coherent(at.C, at.B, 0, 0), Error);
}

TEST_CASE("H3 coherent run hits the figure's last C-matrix") {
  Scalar p = gold();
  Mat b0 = Mat::from_rows({{S(0), -p, p}, {p, S(0), -p}, {-p, p, S(0)}});
  PatternNode node = replay(b0, {0, 1, 0, 2, 1, 0});
  Mat expect =
      Mat::from_rows({{S(-1), S(0), S(0)}, {S(0), S(0), S(-1)}, {S(0), S(-1), S(0)}});
  CHECK(node.C == expect);
}

TEST_CASE("dualities hold on pattern nodes") {
  Mat b0 = h3_figure_initial();
  std::vector<Rat> D = find_skew_symmetrizer(b0);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dir(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Word w;
    int last = -1;
    for (int i = 0; i < 6; ++i) {
      int k = dir(rng);
      if (k == last) k = (k + 1) % 3;
      w.push_back(k);
      last = k;
    }
    PatternNode node = replay(b0, w);
    DualityReport rep = check_dualities(node, b0, D);
    CHECK(rep.all());
  }

  PatternNode depth0 = replay(b0, {});
  CHECK(check_dualities(depth0, b0, D).all());

  // negative control: corrupt one C entry
  PatternNode bad = replay(b0, {0, 1});
  bad.C(0, 0) += S(1);
  DualityReport rep = check_dualities(bad, b0, D);
  CHECK_FALSE(rep.all());
  CHECK(rep.offending.has_value());
}

TEST_CASE("determinants are unimodular at sign-coherent nodes") {
  Mat b0 = h3_figure_initial();
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> dir(0, 2);
  for (int trial = 0; trial < 15; ++trial) {
    Word w;
    int last = -1;
    for (int i = 0; i < 5; ++i) {
      int k = dir(rng);
      if (k == last) k = (k + 1) % 3;
      w.push_back(k);
      last = k;
    }
    PatternNode node = replay(b0, w);
    CHECK(det(node.C).abs() == S(1));
    CHECK(det(node.G).abs() == S(1));
  }
}

TEST_CASE("orthogonality <g_i, c_j>_D = d_i delta_ij") {
  Mat b0 = rank2(Sr(1, 2), S(2));
  std::vector<Rat> D = find_skew_symmetrizer(b0);
  REQUIRE(D == std::vector<Rat>{Rat(4), Rat(1)});
  for (Word w : {Word{}, Word{0}, Word{0, 1}, Word{0, 1, 0}, Word{1, 0, 1, 0}}) {
    PatternNode node = replay(b0, w);
    auto ds = diag_scalars(D);
    Mat gram = node.G.transpose() * diag_mul(ds, node.C);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(gram(i, j) == (i == j ? Scalar(D[static_cast<std::size_t>(i)]) : S(0)));
  }
}

TEST_CASE("permutation equivariance") {
  std::mt19937 rng(11);
  Mat b0 = h3_figure_initial();
  std::uniform_int_distribution<int> dir(0, 2);
  for (int trial = 0; trial < 25; ++trial) {
    Word w;
    int last = -1;
    for (int i = 0; i < 4; ++i) {
      int k = dir(rng);
      if (k == last) k = (k + 1) % 3;
      w.push_back(k);
      last = k;
    }
    PatternNode node = replay(b0, w);
    Perm s = random_perm(3, rng);
    int k = dir(rng);
    Mat Bp = sigma_act(s, node.B);
    Mat Cp = sigma_tilde_act(s, node.C);
    CHECK(mutate_b(Bp, s[static_cast<std::size_t>(k)]) == sigma_act(s, mutate_b(node.B, k)));
    // C side of Prop-style equivariance: mutate both and compare
    CGResult plain = mutate_cg(node.B, node.C, node.G, b0, k);
    CGResult acted = mutate_cg(Bp, Cp, sigma_tilde_act(s, node.G), b0, s[static_cast<std::size_t>(k)]);
    CHECK(acted.C == sigma_tilde_act(s, plain.C));
    CHECK(acted.G == sigma_tilde_act(s, plain.G));
  }
}

TEST_CASE("restriction to sub-patterns") {
  Mat b0 = h3_figure_initial();
  // J = {1,2} (0-based {0,1}), word [1,2,1]
  PatternNode node = replay(b0, {0, 1, 0});
  PatternNode small = restrict_node(node, b0, {0, 1});
  Mat b0J = restrict_matrix(b0, {0, 1});
  PatternNode direct = replay(b0J, {0, 1, 0});
  CHECK(small.B == direct.B);
  CHECK(small.C == direct.C);
  CHECK(small.G == direct.G);

  // J = everything is the identity restriction
  PatternNode full = restrict_node(node, b0, {0, 1, 2});
  CHECK(full.B == node.B);
  CHECK(full.C == node.C);

  // word [3] with J = {1,2} leaves J
  PatternNode off = replay(b0, {2});
  CHECK_THROWS_AS(restrict_node(off, b0, {0, 1}), Error);
}
