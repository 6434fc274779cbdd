#pragma once

// Breadth-first enumeration of B- and C-patterns with deduplication up to the
// permutation actions, periodicity and finiteness reporting, sign-coherence
// verdicts, conjecture checkers, dual mutation and the third duality.
//
// Dedup soundness rests on the periodicity propagation: once a node matches
// an earlier one via (sigma, sigma~), its whole subtree is a relabeled copy,
// so it is recorded and not expanded. B-patterns dedup on B alone; C-patterns
// dedup on the pair (B_t, C_t), which is what reproduces the published
// counts.

#include "clusterlab/matrix.hpp"
#include "clusterlab/mutation.hpp"
#include "clusterlab/skewsym.hpp"
#include "clusterlab/util.hpp"

#include <map>
#include <optional>
#include <random>
#include <vector>

namespace clusterlab {

enum class DedupKind { BMatrix, BCPair };

struct KeyLess {
  bool operator()(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      int c = compare(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

struct CanonicalKey {
  std::vector<Scalar> key;
  Perm sigma;  // the minimizing permutation
};

// Lexicographically smallest flattening of sigma.B (and sigma~.C for pairs)
// over all permutations. Exhaustive over n!, which covers desk-scale ranks.
// Candidate keys are compared entry-by-entry against the running best and
// only materialized on improvement.
inline CanonicalKey canonical_key(const Mat& B, const Mat* C) {
  int n = B.n();
  if (n > 8) fail(Errc::DimensionTooLarge, "canonical form minimization is limited to rank 8");
  Perm p = perm_identity(n);
  CanonicalKey best;
  std::size_t key_len = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * (C ? 2 : 1);
  auto entry_at = [&](const Perm& inv, std::size_t t) -> const Scalar& {
    std::size_t nn = static_cast<std::size_t>(n);
    if (t < nn * nn) {
      // (sigma B)(i, j) = B(inv(i), inv(j))
      return B(inv[t / nn], inv[t % nn]);
    }
    t -= nn * nn;
    // (sigma~ C)(i, j) = C(i, inv(j))
    return (*C)(static_cast<int>(t / nn), inv[t % nn]);
  };
  do {
    Perm inv = perm_inverse(p);
    if (best.key.empty()) {
      best.key.reserve(key_len);
      for (std::size_t t = 0; t < key_len; ++t) best.key.push_back(entry_at(inv, t));
      best.sigma = p;
      continue;
    }
    int verdict = 0;
    std::size_t t = 0;
    for (; t < key_len; ++t) {
      verdict = compare(entry_at(inv, t), best.key[t]);
      if (verdict != 0) break;
    }
    if (verdict < 0) {
      // the prefix before t already matches; overwrite the rest
      for (std::size_t s = t; s < key_len; ++s) best.key[s] = entry_at(inv, s);
      best.sigma = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

struct ClassRec {
  Word word;
  Mat B, C, G;
  int depth = 0;
};

// A frontier node equal (up to the action) to an earlier class:
// target = sigma . current, i.e. B_target = sigma B, C_target = sigma~ C.
struct PeriodicityRec {
  Word word;
  Mat B, C, G;
  Perm sigma;
  int target_class = -1;
  bool g_consistent = false;  // G_target == sigma~ G as well
};

struct EdgeRec {
  int from_class;
  int dir;
  int to_class;
};

struct Exploration {
  Mat B0;
  std::vector<Rat> D;
  DedupKind kind = DedupKind::BCPair;
  int depth_limit = 0;
  std::vector<ClassRec> classes;
  std::vector<PeriodicityRec> periodicities;
  std::vector<EdgeRec> edges;
  int max_new_depth = 0;
  bool finite = false;
  std::vector<Word> c_incoherent_words;
  std::vector<Word> g_incoherent_words;

  bool coherent() const { return c_incoherent_words.empty() && g_incoherent_words.empty(); }
  int size() const { return static_cast<int>(classes.size()); }

  // Every stored node, class representatives first. Used by the geometry
  // layer and by exhaustive cross-checks.
  std::vector<PatternNode> all_nodes() const {
    std::vector<PatternNode> out;
    out.reserve(classes.size() + periodicities.size());
    for (const auto& c : classes) out.push_back({c.word, c.B, c.C, c.G});
    for (const auto& p : periodicities) out.push_back({p.word, p.B, p.C, p.G});
    return out;
  }
};

inline Exploration enumerate_pattern(const Mat& B0, int depth_limit, DedupKind kind) {
  Exploration ex;
  ex.B0 = B0;
  ex.D = find_skew_symmetrizer(B0);
  ex.kind = kind;
  ex.depth_limit = depth_limit;
  int n = B0.n();

  std::map<std::vector<Scalar>, int, KeyLess> index;
  std::vector<Perm> class_sigma;  // canonicalizing permutation per class

  auto note_coherence = [&](const PatternNode& node) {
    if (kind != DedupKind::BCPair) return;
    if (!column_sign_coherent(node.C)) ex.c_incoherent_words.push_back(node.word);
    if (!row_sign_coherent(node.G)) ex.g_incoherent_words.push_back(node.word);
  };

  PatternNode root = initial_node(B0);
  CanonicalKey root_key = canonical_key(root.B, kind == DedupKind::BCPair ? &root.C : nullptr);
  index.emplace(root_key.key, 0);
  class_sigma.push_back(root_key.sigma);
  ex.classes.push_back({root.word, root.B, root.C, root.G, 0});
  note_coherence(root);

  std::vector<int> frontier = {0};
  for (int depth = 0; depth < depth_limit && !frontier.empty(); ++depth) {
    // Children and canonical keys in parallel, insertion in deterministic
    // order afterwards.
    struct Candidate {
      int parent;
      int dir;
      PatternNode node;
      CanonicalKey key;
    };
    std::vector<std::pair<int, int>> tasks;
    for (int c : frontier) {
      const Word& w = ex.classes[static_cast<std::size_t>(c)].word;
      for (int k = 0; k < n; ++k) {
        if (!w.empty() && w.back() == k) continue;  // tree edge back to the parent
        tasks.emplace_back(c, k);
      }
    }
    std::vector<Candidate> cand(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t t) {
      auto [c, k] = tasks[t];
      const ClassRec& rec = ex.classes[static_cast<std::size_t>(c)];
      PatternNode node{rec.word, rec.B, rec.C, rec.G};
      node = mutate_node(node, B0, k);
      CanonicalKey key = canonical_key(node.B, kind == DedupKind::BCPair ? &node.C : nullptr);
      cand[t] = Candidate{c, k, std::move(node), std::move(key)};
    });

    std::vector<int> next;
    for (auto& cd : cand) {
      note_coherence(cd.node);
      auto it = index.find(cd.key.key);
      if (it == index.end()) {
        int id = static_cast<int>(ex.classes.size());
        index.emplace(std::move(cd.key.key), id);
        class_sigma.push_back(cd.key.sigma);
        ex.classes.push_back({cd.node.word, cd.node.B, cd.node.C, cd.node.G, depth + 1});
        ex.max_new_depth = depth + 1;
        ex.edges.push_back({cd.parent, cd.dir, id});
        next.push_back(id);
      } else {
        int id = it->second;
        // target = sigma . current with sigma = sigma_target^{-1} o sigma_current
        Perm sigma = perm_compose(perm_inverse(class_sigma[static_cast<std::size_t>(id)]), cd.key.sigma);
        const ClassRec& tgt = ex.classes[static_cast<std::size_t>(id)];
        if (sigma_act(sigma, cd.node.B) != tgt.B ||
            (kind == DedupKind::BCPair && sigma_tilde_act(sigma, cd.node.C) != tgt.C))
          fail(Errc::Internal, "canonical-key match without an exact permutation match");
        bool gc = kind == DedupKind::BCPair && sigma_tilde_act(sigma, cd.node.G) == tgt.G;
        ex.periodicities.push_back({cd.node.word, cd.node.B, cd.node.C, cd.node.G,
                                    std::move(sigma), id, gc});
        ex.edges.push_back({cd.parent, cd.dir, id});
      }
    }
    frontier = std::move(next);
  }
  ex.finite = frontier.empty();
  return ex;
}

inline Exploration enumerate_b_pattern(const Mat& B0, int depth) {
  return enumerate_pattern(B0, depth, DedupKind::BMatrix);
}

inline Exploration enumerate_c_pattern(const Mat& B0, int depth) {
  return enumerate_pattern(B0, depth, DedupKind::BCPair);
}

// ---------------------------------------------------------------------------
// Conjecture checkers.

struct StandardHypothesisEntry {
  Word b_word;  // representative of the mutation-equivalent matrix
  bool coherent = false;
  std::vector<Word> incoherent_words;
};

struct StandardHypothesisReport {
  std::vector<StandardHypothesisEntry> entries;
  bool all_coherent = true;
  // optional runs for B^T and -B (equivalent-conditions check)
  std::optional<bool> transpose_coherent;
  std::optional<bool> negated_coherent;
};

inline StandardHypothesisReport check_standard_hypothesis(const Mat& B0, int depth,
                                                          bool include_transpose_neg = false) {
  StandardHypothesisReport rep;
  Exploration bs = enumerate_b_pattern(B0, depth);
  for (const ClassRec& rec : bs.classes) {
    Exploration cs = enumerate_c_pattern(rec.B, depth);
    StandardHypothesisEntry e{rec.word, cs.coherent(), cs.c_incoherent_words};
    rep.all_coherent = rep.all_coherent && e.coherent;
    rep.entries.push_back(std::move(e));
  }
  if (include_transpose_neg) {
    rep.transpose_coherent = enumerate_c_pattern(B0.transpose(), depth).coherent();
    rep.negated_coherent = enumerate_c_pattern(neg(B0), depth).coherent();
  }
  return rep;
}

struct DiscretenessWitness {
  Word word;
  int col = -1;   // i: the axis-parallel c-vector is column i
  int axis = -1;  // j: c_{i;t} = alpha e_j
  Scalar alpha;
  Scalar beta;  // matching G entry (j, i)
  bool pass = false;
};

struct DiscretenessReport {
  std::vector<DiscretenessWitness> witnesses;
  bool all_pass = true;
};

// Square-root-free form of the discreteness conjecture: a c-vector
// alpha e_j in column i must satisfy alpha^2 d_j = d_i, and the matching
// G entry beta has alpha beta = d_i / d_j.
inline DiscretenessReport check_discreteness(const Exploration& ex) {
  DiscretenessReport rep;
  auto inspect = [&](const Word& word, const Mat& C, const Mat& G) {
    int n = C.n();
    for (int i = 0; i < n; ++i) {
      int axis = -1;
      bool parallel = true;
      for (int r = 0; r < n && parallel; ++r) {
        if (C(r, i).is_zero()) continue;
        if (axis >= 0)
          parallel = false;
        else
          axis = r;
      }
      if (!parallel || axis < 0) continue;
      DiscretenessWitness w;
      w.word = word;
      w.col = i;
      w.axis = axis;
      w.alpha = C(axis, i);
      w.beta = G(axis, i);
      Scalar di(ex.D[static_cast<std::size_t>(i)]), dj(ex.D[static_cast<std::size_t>(axis)]);
      w.pass = (w.alpha * w.alpha * dj == di) && (w.alpha * w.beta == di / dj);
      rep.all_pass = rep.all_pass && w.pass;
      rep.witnesses.push_back(std::move(w));
    }
  };
  for (const auto& c : ex.classes) inspect(c.word, c.C, c.G);
  for (const auto& p : ex.periodicities) inspect(p.word, p.C, p.G);
  return rep;
}

// ---------------------------------------------------------------------------
// Dual mutation and third duality.

struct DualMutation {
  Mat C1, G1;  // C^{t1}_t, G^{t1}_t for t1 the k-neighbour of the initial vertex
};

inline DualMutation dual_mutate(const PatternNode& node, const Mat& B0, int k) {
  auto tau = tropical_tau(node.G, k);
  if (!tau || *tau == 0) fail(Errc::UndefinedTau, "row " + std::to_string(k + 1) + " has no tropical sign");
  int n = B0.n();
  Mat mtB0 = *tau > 0 ? neg(B0) : B0;
  Mat tB0 = *tau > 0 ? B0 : neg(B0);
  Mat C1 = (j_k(n, k) + row_only(pos_part(mtB0), k)) * node.C;
  Mat G1 = (j_k(n, k) + col_only(pos_part(tB0), k)) * node.G;
  return {std::move(C1), std::move(G1)};
}

// Oracle for dual_mutate: re-enumerate from mu_k(B0); the path from t1 to t
// is the edge k followed by the original word.
inline PatternNode dual_mutate_oracle(const Mat& B0, const Word& word, int k) {
  Mat B1 = mutate_b(B0, k);
  Word w{k};
  w.insert(w.end(), word.begin(), word.end());
  return replay(B1, w);
}

// Third duality at one pair: C^{t0}_t = (G~^{t}_{t0})^T and
// G^{t0}_t = (C~^{t}_{t0})^T, where the tilde pattern is the B^T-pattern
// rooted at t.
inline bool third_duality_holds(const Mat& B_t0, const Word& word) {
  PatternNode at_t = replay(B_t0, word);
  Word back(word.rbegin(), word.rend());
  PatternNode tilde = replay(at_t.B.transpose(), back);
  return at_t.C == tilde.G.transpose() && at_t.G == tilde.C.transpose();
}

struct ThirdDualityReport {
  int checked = 0;
  int failed = 0;
  bool all_pass() const { return failed == 0 && checked > 0; }
};

// Exhaustive over all (t0, t) pairs with d(root, t0) + d(t0, t) <= depth.
inline ThirdDualityReport third_duality_check_exhaustive(const Mat& B0, int depth) {
  ThirdDualityReport rep;
  int n = B0.n();
  std::vector<Word> words = {{}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word w = words[i];
    if (static_cast<int>(w.size()) >= depth) continue;
    for (int k = 0; k < n; ++k) {
      if (!w.empty() && w.back() == k) continue;
      Word e = w;
      e.push_back(k);
      words.push_back(e);
    }
  }
  for (const Word& w0 : words) {
    PatternNode t0 = replay(B0, w0);
    for (const Word& w : words) {
      if (static_cast<int>(w0.size() + w.size()) > depth) continue;
      ++rep.checked;
      if (!third_duality_holds(t0.B, w)) ++rep.failed;
    }
  }
  return rep;
}

inline ThirdDualityReport third_duality_check_sampled(const Mat& B0, int depth, int samples,
                                                      unsigned seed) {
  ThirdDualityReport rep;
  std::mt19937 rng(seed);
  int n = B0.n();
  std::uniform_int_distribution<int> dir(0, n - 1), len(0, depth);
  auto random_word = [&](int max_len, int avoid_first) {
    Word w;
    int l = len(rng) % (max_len + 1);
    int last = avoid_first;
    for (int i = 0; i < l; ++i) {
      int k = dir(rng);
      while (k == last) k = dir(rng);
      w.push_back(k);
      last = k;
    }
    return w;
  };
  for (int s = 0; s < samples; ++s) {
    Word w0 = random_word(depth, -1);
    PatternNode t0 = replay(B0, w0);
    int remaining = depth - static_cast<int>(w0.size());
    Word w = random_word(remaining, w0.empty() ? -1 : w0.back());
    ++rep.checked;
    if (!third_duality_holds(t0.B, w)) ++rep.failed;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// sigma~ matching: find sigma with Y = sigma~ X (i.e. Y = X P_sigma), valid
// for matrices with pairwise distinct columns.

inline std::optional<Perm> find_sigma_tilde(const Mat& X, const Mat& Y) {
  int n = X.n();
  Perm sigma(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    Vec xi = X.col(i);
    int match = -1;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (Y.col(j) == xi) { match = j; break; }
    }
    if (match < 0) return std::nullopt;
    sigma[static_cast<std::size_t>(i)] = match;  // column i of X sits at column sigma(i) of Y
    used[static_cast<std::size_t>(match)] = true;
  }
  return sigma;
}

}  // namespace clusterlab
