#include "clusterlab/explore.hpp"
#include "clusterlab/quasiint.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace clusterlab;

namespace {

Scalar S(long v) { return Scalar(v); }
Scalar surd(long m, long d) { return Scalar::quadratic(Rat(0), Rat(m), d); }

Mat five_vertex_quiver() {
  Mat q(5);
  auto set = [&](int i, int j, const Scalar& w) {
    q(i, j) = w;
    q(j, i) = -w;
  };
  set(0, 1, surd(2, 3));
  set(0, 2, surd(-2, 6));
  set(0, 4, surd(-2, 15));
  set(1, 2, surd(-4, 2));
  set(1, 3, surd(3, 5));
  set(1, 4, surd(-2, 5));
  set(3, 4, S(-4));
  return q;
}

Mat int_to_mat(const IntMat& b) {
  Mat m(static_cast<int>(b.size()));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) m(i, j) = Scalar(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

}  // namespace

TEST_CASE("the worked 5x5 quiver is quasi-integer with the expected certificate") {
  Mat q = five_vertex_quiver();
  QuasiVerdict v = classify_quasi_integer(q);
  REQUIRE(v.quasi_integer);

  IntegerCertificate cert = construct_integer_matrix(q);
  CHECK(cert.verified);
  CHECK(cert.D == std::vector<Int>{3, 1, 2, 5, 5});
  IntMat expect = {{0, 2, -4, 0, -10},
                   {-6, 0, -8, 15, -10},
                   {6, 4, 0, 0, 0},
                   {0, -3, 0, 0, -4},
                   {6, 2, 0, 4, 0}};
  CHECK(cert.B == expect);

  // intermediate Atilde_3 block of the construction
  CHECK(cert.Atilde[0][1] == 1);
  CHECK(cert.Atilde[1][0] == 3);
  CHECK(cert.Atilde[0][2] == 2);
  CHECK(cert.Atilde[2][0] == 3);
  CHECK(cert.Atilde[1][2] == 2);
  CHECK(cert.Atilde[2][1] == 1);
}

TEST_CASE("negative classifications carry a witness") {
  // weight 1/2 has square 1/4
  Mat bad = Mat::from_rows({{S(0), Scalar(Rat(1, 2))}, {Scalar(Rat(-1, 2)), S(0)}});
  QuasiVerdict v = classify_quasi_integer(bad);
  REQUIRE_FALSE(v.quasi_integer);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->kind == QuasiWitness::Kind::Weight);

  // triangle of sqrt(2) weights: each square is 2, cycle product 2*sqrt(2)
  Mat tri(3);
  for (int i = 0; i < 3; ++i) {
    tri(i, (i + 1) % 3) = surd(1, 2);
    tri((i + 1) % 3, i) = surd(-1, 2);
  }
  QuasiVerdict t = classify_quasi_integer(tri);
  REQUIRE_FALSE(t.quasi_integer);
  REQUIRE(t.witness.has_value());
  CHECK(t.witness->kind == QuasiWitness::Kind::Cycle);
  CHECK(t.witness->cycle == std::vector<int>{0, 1, 2});
  CHECK(t.witness->value == surd(2, 2));

  CHECK_THROWS_AS(construct_integer_matrix(tri), Error);
}

TEST_CASE("skew-symmetrizable input goes through Sk first") {
  // B = [[0,-2],[1,0]]: Sk(B) = [[0,-sqrt2],[sqrt2,0]], of quasi-integer type
  Mat b = Mat::from_rows({{S(0), S(-2)}, {S(1), S(0)}});
  QuasiVerdict v = classify_quasi_integer(b);
  CHECK(v.quasi_integer);
  CHECK(v.quiver == Mat::from_rows({{S(0), surd(-1, 2)}, {surd(1, 2), S(0)}}));

  IntegerCertificate cert = construct_integer_matrix(v.quiver);
  CHECK(cert.verified);
  CHECK(cert.D == std::vector<Int>{2, 1});
  CHECK(cert.B == IntMat{{0, -1}, {2, 0}});
}

TEST_CASE("integer quivers certify with constant D per component") {
  Mat a2 = Mat::from_rows({{S(0), S(-1)}, {S(1), S(0)}});
  IntegerCertificate cert = construct_integer_matrix(a2);
  CHECK(cert.B == IntMat{{0, -1}, {1, 0}});
  CHECK(cert.D == std::vector<Int>{1, 1});
}

TEST_CASE("disconnected quivers are handled per component") {
  Mat q(5);
  q(0, 1) = surd(1, 2);
  q(1, 0) = surd(-1, 2);
  q(3, 4) = surd(2, 3);
  q(4, 3) = surd(-2, 3);
  IntegerCertificate cert = construct_integer_matrix(q);
  CHECK(cert.verified);
  CHECK(cert.D[2] == 1);  // isolated vertex
  CHECK(cert.order == std::vector<int>{0, 1, 2, 3, 4});
  Mat back = int_to_mat(cert.B);
  CHECK(sk(back) == q);
}

TEST_CASE("square-free inversion identities") {
  InversionReport r = square_free_inversion_check(6, 3);
  CHECK(r.y == 2);
  CHECK(r.all());

  InversionReport one = square_free_inversion_check(1, 7);
  CHECK(one.y == 7);
  CHECK(one.all());

  for (Int u = 1; u <= 200; ++u) {
    if (!is_square_free(u)) continue;
    for (Int x = 1; x <= 200; ++x) {
      if (!is_square_free(x)) continue;
      InversionReport rep = square_free_inversion_check(u, x);
      REQUIRE(rep.all());
    }
  }
}

TEST_CASE("certified quivers import sign-coherence") {
  // quasi-integer quivers belong to the sign-coherent class; a bounded-depth
  // run of the C-pattern must stay coherent
  Mat q = five_vertex_quiver();
  REQUIRE(classify_quasi_integer(q).quasi_integer);
  Exploration ex = enumerate_c_pattern(q, 4);
  CHECK(ex.coherent());
  // bounded-depth run of the hypothesis sweep: every mutation-equivalent
  // matrix found so far keeps a coherent C-pattern
  CHECK(check_standard_hypothesis(q, 3).all_coherent);

  Mat small = sk(int_to_mat({{0, -2, 0}, {1, 0, 3}, {0, -1, 0}}));
  REQUIRE(classify_quasi_integer(small).quasi_integer);
  CHECK(enumerate_c_pattern(small, 5).coherent());
  CHECK(check_standard_hypothesis(small, 4).all_coherent);
}

TEST_CASE("random quasi-integer quivers round-trip end to end") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> nd(2, 5), coin(0, 1), small(1, 4);
  int done = 0;
  while (done < 100) {
    int n = nd(rng);
    IntMat b(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n), 0));
    if (coin(rng)) {
      // random acyclic integer quiver: always skew-symmetrizable
      for (int j = 1; j < n; ++j) {
        int i = std::uniform_int_distribution<int>(0, j - 1)(rng);
        Int u = small(rng), v = small(rng);
        b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u;
        b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -v;
      }
    } else {
      // b_ij = d_j s_ij from a random skew-symmetric integer s: D-symmetrizable
      std::vector<Int> d(static_cast<std::size_t>(n));
      for (auto& x : d) x = small(rng);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (coin(rng)) continue;
          Int s = small(rng) * (coin(rng) ? 1 : -1);
          b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)] * s;
          b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -d[static_cast<std::size_t>(i)] * s;
        }
    }
    Mat bm = int_to_mat(b);
    Mat q = sk(bm);
    QuasiVerdict v = classify_quasi_integer(q);
    REQUIRE(v.quasi_integer);
    IntegerCertificate cert = construct_integer_matrix(q);
    REQUIRE(cert.verified);
    CHECK(sk(int_to_mat(cert.B)) == q);
    ++done;
  }
}
