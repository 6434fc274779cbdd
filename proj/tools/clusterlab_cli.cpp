// clusterlab: exact-arithmetic cluster-algebra matrix patterns.
//
// Subcommands: catalog, b-pattern, c-pattern, classify-quasi-integer,
// construct-integer, skew-symmetrizer, sk, fan, exchange-graph, rank2.
// CLUSTERLAB_THREADS caps the worker threads used by the enumerations.

#include "clusterlab/catalog.hpp"
#include "clusterlab/explore.hpp"
#include "clusterlab/geometry.hpp"
#include "clusterlab/json_io.hpp"
#include "clusterlab/quasiint.hpp"
#include "clusterlab/rank2.hpp"
#include "clusterlab/skewsym.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace clusterlab;

namespace {

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open input file " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot open output file " + out_path);
  out << text;
}

void emit(const std::string& out_path, const Json& j) { emit(out_path, j.dump(2)); }

// Scalar CLI literals: "3", "-6/5", "cos:7" (= 2cos(pi/7)), "sqrt:p/q",
// or a JSON scalar object.
Scalar parse_scalar_arg(const std::string& s) {
  if (s.empty()) fail(Errc::ParseError, "empty scalar literal");
  if (s.front() == '{' || s.front() == '[') return scalar_from_json(Json::parse(s));
  if (s.rfind("cos:", 0) == 0) return chebyshev_value(std::stoi(s.substr(4)));
  auto parse_rat = [](const std::string& t) {
    auto slash = t.find('/');
    if (slash == std::string::npos) return Rat(Int(t));
    return Rat(Int(t.substr(0, slash)), Int(t.substr(slash + 1)));
  };
  if (s.rfind("sqrt:", 0) == 0) return sqrt_of_rational(parse_rat(s.substr(5)));
  return Scalar(parse_rat(s));
}

struct InputOpts {
  std::string input;
  std::string type;
  int depth = -1;

  Mat matrix() const {
    if (!input.empty()) return exchange_matrix_from_json(load_json(input));
    if (!type.empty()) return catalog(type).B;
    fail(Errc::ParseError, "need --input or --type");
  }
  int effective_depth(int fallback = 8) const {
    if (depth >= 0) return depth;
    if (!type.empty()) return catalog(type).default_depth;
    return fallback;
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "JSON file: matrix rows, {\"B\":rows} or a quiver");
    cmd->add_option("--type", type, "catalog type (A2.., B2.., D4.., E6-E8, F4, H3, H4, I2(m), F4t)");
    cmd->add_option("--depth,-l", depth, "exploration depth (default: per-type)");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact real cluster-algebra matrix patterns (B-, C-, G-matrices)"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--output,-o", out_path, "output file (default: stdout)");

  // catalog
  auto* cmd_catalog = app.add_subcommand("catalog", "emit a Coxeter catalog quiver");
  std::string cat_type;
  bool cat_matrix = false;
  cmd_catalog->add_option("--type", cat_type, "catalog type")->required();
  cmd_catalog->add_flag("--matrix", cat_matrix, "emit {\"B\":rows} instead of quiver form");

  // b-pattern / c-pattern
  auto* cmd_b = app.add_subcommand("b-pattern", "enumerate distinct B-matrices up to permutation");
  auto* cmd_c = app.add_subcommand("c-pattern", "enumerate distinct C-matrices up to permutation");
  InputOpts b_in, c_in;
  std::string b_format = "json", c_format = "json";
  bool check_coherence = false, expect_coherent = false;
  b_in.attach(cmd_b);
  c_in.attach(cmd_c);
  cmd_b->add_option("--format", b_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd_c->add_option("--format", c_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd_c->add_flag("--check-sign-coherence", check_coherence, "include the coherence verdict");
  cmd_c->add_flag("--expect-coherent", expect_coherent, "exit 2 when the verdict is incoherent");

  // quasi-integer
  auto* cmd_classify = app.add_subcommand("classify-quasi-integer", "decide quasi-integer type");
  auto* cmd_construct = app.add_subcommand("construct-integer", "integer certificate for a quasi-integer quiver");
  InputOpts q_in, qc_in;
  q_in.attach(cmd_classify);
  qc_in.attach(cmd_construct);

  // skew-symmetrizer / sk
  auto* cmd_symm = app.add_subcommand("skew-symmetrizer", "find the normalized skew-symmetrizer");
  auto* cmd_sk = app.add_subcommand("sk", "the canonical skew-symmetric representative Sk(B)");
  InputOpts symm_in, sk_in;
  symm_in.attach(cmd_symm);
  sk_in.attach(cmd_sk);

  // fan
  auto* cmd_fan = app.add_subcommand("fan", "G-fan of a sign-coherent pattern");
  InputOpts fan_in;
  bool fan_do_verify = false;
  fan_in.attach(cmd_fan);
  cmd_fan->add_flag("--verify", fan_do_verify, "run the exact pairwise fan check");

  // exchange-graph
  auto* cmd_eg = app.add_subcommand("exchange-graph", "quotient of the explored ball");
  InputOpts eg_in;
  std::string eg_kind = "C";
  eg_in.attach(cmd_eg);
  cmd_eg->add_option("--kind", eg_kind, "C, G, fan, modC or modG")
      ->check(CLI::IsMember({"C", "G", "fan", "modC", "modG"}));

  // rank2
  auto* cmd_rank2 = app.add_subcommand("rank2", "rank-2 classification, closed forms and fan");
  std::string r2_a, r2_b, r2_svg;
  int r2_depth = 0;
  cmd_rank2->add_option("--a", r2_a, "entry a of [[0,-a],[b,0]]")->required();
  cmd_rank2->add_option("--b", r2_b, "entry b of [[0,-a],[b,0]]")->required();
  cmd_rank2->add_option("--depth", r2_depth, "fan depth for non-finite verdicts");
  cmd_rank2->add_option("--svg", r2_svg, "write the fan drawing to this SVG file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_catalog->parsed()) {
      CatalogEntry entry = catalog(cat_type);
      if (cat_matrix)
        emit(out_path, Json{{"B", matrix_to_json(entry.B)}, {"default_depth", entry.default_depth}});
      else
        emit(out_path, quiver_to_json(entry.B));
    } else if (cmd_b->parsed()) {
      Exploration ex = enumerate_b_pattern(b_in.matrix(), b_in.effective_depth());
      emit(out_path, b_format == "text" ? exploration_to_text(ex, false)
                                        : exploration_to_json(ex, false).dump(2));
    } else if (cmd_c->parsed()) {
      Exploration ex = enumerate_c_pattern(c_in.matrix(), c_in.effective_depth());
      (void)check_coherence;  // the verdict is computed and reported either way
      emit(out_path, c_format == "text" ? exploration_to_text(ex, true)
                                        : exploration_to_json(ex, true).dump(2));
      if (expect_coherent && !ex.coherent()) return 2;
    } else if (cmd_classify->parsed()) {
      QuasiVerdict v = classify_quasi_integer(q_in.matrix());
      Json j{{"quasi_integer", v.quasi_integer}};
      if (v.quasi_integer) {
        Json cert = certificate_to_json(construct_integer_matrix(v.quiver));
        for (auto& [key, val] : cert.items()) j[key] = val;
      }
      if (v.witness) {
        Json w{{"value", scalar_to_json(v.witness->value)}};
        if (v.witness->kind == QuasiWitness::Kind::Weight) {
          w["kind"] = "weight";
          w["from"] = v.witness->i + 1;
          w["to"] = v.witness->j + 1;
        } else {
          w["kind"] = "cycle";
          Json cyc = Json::array();
          for (int v2 : v.witness->cycle) cyc.push_back(v2 + 1);
          w["cycle"] = std::move(cyc);
        }
        j["witness"] = std::move(w);
      }
      emit(out_path, j);
    } else if (cmd_construct->parsed()) {
      Mat q = qc_in.matrix();
      if (!is_skew_symmetric(q)) q = sk(q);
      emit(out_path, certificate_to_json(construct_integer_matrix(q)));
    } else if (cmd_symm->parsed()) {
      emit(out_path, Json{{"D", rats_to_json(find_skew_symmetrizer(symm_in.matrix()))}});
    } else if (cmd_sk->parsed()) {
      emit(out_path, Json{{"B", matrix_to_json(sk(sk_in.matrix()))}});
    } else if (cmd_fan->parsed()) {
      Exploration ex = enumerate_c_pattern(fan_in.matrix(), fan_in.effective_depth());
      Fan fan = build_fan(ex);
      std::optional<FanVerdict> verdict;
      if (fan_do_verify) verdict = fan_verify(fan).verdict;
      emit(out_path, fan_to_json(fan, verdict));
    } else if (cmd_eg->parsed()) {
      Exploration ex = enumerate_c_pattern(eg_in.matrix(), eg_in.effective_depth());
      EGKind kind = eg_kind == "C"      ? EGKind::C
                    : eg_kind == "G"    ? EGKind::G
                    : eg_kind == "fan"  ? EGKind::Fan
                    : eg_kind == "modC" ? EGKind::ModC
                                        : EGKind::ModG;
      emit(out_path, exchange_graph_to_json(build_exchange_graph(ex, kind)));
    } else if (cmd_rank2->parsed()) {
      Scalar a = parse_scalar_arg(r2_a), b = parse_scalar_arg(r2_b);
      Rank2Verdict v = classify_rank2(a, b);
      Json j = rank2_verdict_to_json(v);
      if (v.kind != Rank2Verdict::Kind::Incoherent) {
        Rank2Fan rf = rank2_fan(a, b, r2_depth);
        j["cones"] = static_cast<int>(rf.fan.cones.size());
        j["rays"] = static_cast<int>(rf.fan.rays.size());
        if (v.kind == Rank2Verdict::Kind::CoxeterFinite) j["closes_plane"] = rf.closes_plane;
        if (!r2_svg.empty()) write_rank2_fan_svg(r2_svg, rf, a, b);
      }
      emit(out_path, j);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
