#include "clusterlab/explore.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace clusterlab;

namespace {

Scalar S(long v) { return Scalar(v); }
Scalar Sr(long p, long q) { return Scalar(Rat(p, q)); }
Scalar gold() { return chebyshev_value(5); }

Mat h3_figure_initial() {
  Scalar p = gold();
  return Mat::from_rows({{S(0), -p, S(0)}, {p, S(0), S(-1)}, {S(0), S(1), S(0)}});
}

// Brute-force dedup oracle: pairwise comparison over all permutations.
int brute_force_class_count(const std::vector<PatternNode>& nodes, bool pair_kind) {
  std::vector<int> cls(nodes.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next++;
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (cls[j] >= 0) continue;
      int n = nodes[i].B.n();
      Perm p = perm_identity(n);
      bool eq = false;
      do {
        if (sigma_act(p, nodes[j].B) == nodes[i].B &&
            (!pair_kind || sigma_tilde_act(p, nodes[j].C) == nodes[i].C)) {
          eq = true;
          break;
        }
      } while (std::next_permutation(p.begin(), p.end()));
      if (eq) cls[j] = cls[i];
    }
  }
  return next;
}

std::vector<PatternNode> ball(const Mat& B0, int depth) {
  std::vector<PatternNode> nodes = {initial_node(B0)};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].depth() >= depth) continue;
    for (int k = 0; k < B0.n(); ++k) {
      if (!nodes[i].word.empty() && nodes[i].word.back() == k) continue;
      nodes.push_back(mutate_node(nodes[i], B0, k));
    }
  }
  return nodes;
}

}  // namespace

TEST_CASE("H3 B-pattern reproduces the six displayed matrices") {
  Mat b0 = h3_figure_initial();
  Exploration ex = enumerate_b_pattern(b0, 7);
  REQUIRE(ex.size() == 6);
  CHECK(ex.finite);
  CHECK(ex.max_new_depth == 2);

  std::vector<Word> words;
  for (const auto& c : ex.classes) words.push_back(c.word);
  std::vector<Word> expect = {{}, {0}, {1}, {2}, {0, 2}, {1, 0}};
  CHECK(words == expect);

  Scalar p = gold();
  CHECK(ex.classes[4].B ==
        Mat::from_rows({{S(0), p, S(0)}, {-p, S(0), S(1)}, {S(0), S(-1), S(0)}}));
  CHECK(ex.classes[5].B ==
        Mat::from_rows({{S(0), -p, p}, {p, S(0), -p}, {-p, p, S(0)}}));
}

TEST_CASE("H3 C-pattern counts") {
  Mat b0 = h3_figure_initial();
  Exploration ex = enumerate_c_pattern(b0, 7);
  CHECK(ex.size() == 32);
  CHECK(ex.finite);
  CHECK(ex.max_new_depth == 6);
  CHECK(ex.coherent());
  for (const auto& p : ex.periodicities) CHECK(p.g_consistent);
}

TEST_CASE("finiteness needs one quiet depth beyond the last new class") {
  // all 32 classes appear by depth 6, but the verdict at L=6 stays open
  Mat b0 = h3_figure_initial();
  Exploration at6 = enumerate_c_pattern(b0, 6);
  CHECK(at6.size() == 32);
  CHECK_FALSE(at6.finite);
  Exploration at7 = enumerate_c_pattern(b0, 7);
  CHECK(at7.finite);
}

TEST_CASE("sign-incoherent witness at depth 2") {
  Mat b0 = Mat::from_rows({{S(0), Sr(1, 2)}, {Sr(-1, 2), S(0)}});
  Exploration ex = enumerate_c_pattern(b0, 2);
  REQUIRE_FALSE(ex.coherent());
  REQUIRE(ex.c_incoherent_words.size() >= 1);
  CHECK(ex.c_incoherent_words.front() == Word{0, 1});
}

TEST_CASE("zero matrix collapses to one class") {
  Mat zero(2);
  Exploration ex = enumerate_b_pattern(zero, 3);
  CHECK(ex.size() == 1);
  CHECK(ex.finite);
  CHECK(ex.max_new_depth == 0);
}

TEST_CASE("dedup agrees with the brute-force pairwise oracle") {
  std::vector<Mat> cases = {
      h3_figure_initial(),
      Mat::from_rows({{S(0), Sr(-1, 2)}, {S(2), S(0)}}),
      Mat::from_rows({{S(0), S(1), S(0)}, {S(-1), S(0), S(1)}, {S(0), S(-1), S(0)}}),  // A3
  };
  for (const Mat& b0 : cases) {
    for (int depth = 1; depth <= 4; ++depth) {
      auto nodes = ball(b0, depth);
      Exploration bp = enumerate_b_pattern(b0, depth);
      CHECK(bp.size() == brute_force_class_count(nodes, false));
      Exploration cp = enumerate_c_pattern(b0, depth);
      CHECK(cp.size() == brute_force_class_count(nodes, true));
    }
  }
}

TEST_CASE("replay determinism: every representative word replays to its matrices") {
  Mat b0 = h3_figure_initial();
  Exploration ex = enumerate_c_pattern(b0, 7);
  for (const auto& c : ex.classes) {
    PatternNode node = replay(b0, c.word);
    CHECK(node.B == c.B);
    CHECK(node.C == c.C);
    CHECK(node.G == c.G);
  }
  for (const auto& p : ex.periodicities) {
    CHECK(sigma_act(p.sigma, p.B) == ex.classes[static_cast<std::size_t>(p.target_class)].B);
    CHECK(sigma_tilde_act(p.sigma, p.C) == ex.classes[static_cast<std::size_t>(p.target_class)].C);
  }
}

TEST_CASE("standard hypothesis checker") {
  Exploration pre = enumerate_b_pattern(h3_figure_initial(), 7);
  REQUIRE(pre.size() == 6);
  StandardHypothesisReport rep = check_standard_hypothesis(h3_figure_initial(), 7, true);
  CHECK(rep.entries.size() == 6);
  CHECK(rep.all_coherent);
  CHECK(rep.transpose_coherent.value());
  CHECK(rep.negated_coherent.value());

  // rank-2 with p = 6/5 fails at the initial matrix already
  Mat bad = Mat::from_rows({{S(0), Sr(-6, 5)}, {Sr(6, 5), S(0)}});
  StandardHypothesisReport brep = check_standard_hypothesis(bad, 4);
  CHECK_FALSE(brep.all_coherent);
  CHECK_FALSE(brep.entries.front().coherent);
}

TEST_CASE("discreteness checker on the worked example") {
  Mat b0 = Mat::from_rows({{S(0), Sr(-1, 2)}, {S(2), S(0)}});
  Exploration ex = enumerate_c_pattern(b0, 10);
  REQUIRE(ex.D == std::vector<Rat>{Rat(4), Rat(1)});
  DiscretenessReport rep = check_discreteness(ex);
  CHECK(rep.all_pass);
  // the boxed node [1,2,1,2,1] has c_1 = 2 e_2 and c_2 = (1/2) e_1
  bool found_two = false, found_half = false;
  for (const auto& w : rep.witnesses) {
    if (w.word == Word{0, 1, 0, 1, 0} && w.col == 0 && w.axis == 1 && w.alpha == S(2))
      found_two = true;
    if (w.word == Word{0, 1, 0, 1, 0} && w.col == 1 && w.axis == 0 && w.alpha == Sr(1, 2))
      found_half = true;
  }
  CHECK(found_two);
  CHECK(found_half);

  // integer type A2: all axis-parallel c-vectors have alpha = +-1
  Mat a2 = Mat::from_rows({{S(0), S(-1)}, {S(1), S(0)}});
  DiscretenessReport a2rep = check_discreteness(enumerate_c_pattern(a2, 6));
  CHECK(a2rep.all_pass);
  for (const auto& w : a2rep.witnesses) CHECK(w.alpha.abs() == S(1));
}

TEST_CASE("dual mutation matches the fresh-enumeration oracle") {
  Mat b0 = h3_figure_initial();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dir(0, 2), len(0, 5);
  for (int t = 0; t < 20; ++t) {
    Word w;
    int last = -1;
    int l = len(rng);
    for (int i = 0; i < l; ++i) {
      int k = dir(rng);
      while (k == last) k = dir(rng);
      w.push_back(k);
      last = k;
    }
    PatternNode node = replay(b0, w);
    for (int k = 0; k < 3; ++k) {
      auto tau = tropical_tau(node.G, k);
      if (!tau || *tau == 0) continue;
      DualMutation dm = dual_mutate(node, b0, k);
      PatternNode oracle = dual_mutate_oracle(b0, w, k);
      CHECK(dm.C1 == oracle.C);
      CHECK(dm.G1 == oracle.G);
    }
  }

  // rank-2 example: node [1,2], direction 1
  Mat r2 = Mat::from_rows({{S(0), Sr(-1, 2)}, {S(2), S(0)}});
  PatternNode node = replay(r2, {0, 1});
  DualMutation dm = dual_mutate(node, r2, 0);
  PatternNode oracle = dual_mutate_oracle(r2, {0, 1}, 0);
  CHECK(dm.C1 == oracle.C);
  CHECK(dm.G1 == oracle.G);

  // t = t0: C^{t1}_{t0} is the distance-one matrix of the fresh pattern
  PatternNode root = initial_node(r2);
  DualMutation at_root = dual_mutate(root, r2, 1);
  CHECK(at_root.C1 == dual_mutate_oracle(r2, {}, 1).C);
}

TEST_CASE("third duality") {
  // exhaustive for rank-2 I2(5)
  Scalar p = gold();
  Mat i25 = Mat::from_rows({{S(0), -p}, {p, S(0)}});
  ThirdDualityReport rep = third_duality_check_exhaustive(i25, 7);
  CHECK(rep.all_pass());
  CHECK(rep.checked > 50);

  // sampled pairs on H3
  ThirdDualityReport h3 = third_duality_check_sampled(h3_figure_initial(), 6, 20, 99);
  CHECK(h3.all_pass());
}

TEST_CASE("parallel enumeration over an algebraic field is deterministic") {
  // wide frontier + algebraic scalars: exercises concurrent sign/compare
  // calls against the shared isolating interval
  Scalar c7 = chebyshev_value(7);
  Mat b0 = Mat::from_rows({{Scalar(0), -c7, Scalar(0)},
                           {c7, Scalar(0), Scalar(-1)},
                           {Scalar(0), Scalar(1), Scalar(0)}});
  setenv("CLUSTERLAB_THREADS", "4", 1);
  Exploration a = enumerate_b_pattern(b0, 5);
  Exploration b = enumerate_b_pattern(b0, 5);
  setenv("CLUSTERLAB_THREADS", "1", 1);
  Exploration c = enumerate_b_pattern(b0, 5);
  unsetenv("CLUSTERLAB_THREADS");
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a.classes[static_cast<std::size_t>(i)].word == c.classes[static_cast<std::size_t>(i)].word);
    CHECK(a.classes[static_cast<std::size_t>(i)].B == c.classes[static_cast<std::size_t>(i)].B);
  }
}

TEST_CASE("synchronicity of C- and G-periodicity on a finite type") {
  Mat b0 = h3_figure_initial();
  Exploration ex = enumerate_c_pattern(b0, 7);
  auto nodes = ex.all_nodes();
  int with_sigma = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      auto sc = find_sigma_tilde(nodes[i].C, nodes[j].C);
      auto sg = find_sigma_tilde(nodes[i].G, nodes[j].G);
      CHECK(sc.has_value() == sg.has_value());
      if (sc && sg) {
        CHECK(*sc == *sg);
        ++with_sigma;
      }
    }
  CHECK(with_sigma > 0);
}
