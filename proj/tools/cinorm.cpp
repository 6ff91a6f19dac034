#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cinorm/coneprobe.hpp"
#include "cinorm/covering.hpp"
#include "cinorm/error.hpp"
#include "cinorm/finite_group.hpp"
#include "cinorm/intnorm.hpp"
#include "cinorm/permutation.hpp"
#include "cinorm/suite.hpp"
#include "cinorm/wordnorm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cinorm::Error(cinorm::ErrorCode::ConfigInvalid, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw cinorm::Error(cinorm::ErrorCode::ConfigInvalid, "cannot write " + out);
  f << text;
}

int run(cinorm::RunConfig config, const std::string& config_path) {
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CINORM_CONFIG")) path = env;
  }
  if (!path.empty()) config = cinorm::merge_config(config, read_file(path));
  config.validate();

  const auto start = std::chrono::steady_clock::now();
  const auto report = cinorm::run_suite(config);
  const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(report.dump(), config.out);

  for (const auto& s : report.suites) {
    for (const auto& c : s.checks) {
      std::cerr << (c.ok ? "ok   " : "FAIL ") << c.id << "\n";
      if (!c.ok && c.data.contains("bounds")) {
        for (const auto& b : c.data["bounds"]) {
          if (b.contains("witness")) std::cerr << "     " << b["lemma"].get<std::string>() << ": " << b["witness"] << "\n";
        }
      }
    }
  }
  std::cerr << "elapsed " << seconds << " s\n";
  return report.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale verification of conjugation-invariant norm constructions"};
  app.require_subcommand(1);
  app.fallthrough();

  cinorm::RunConfig config;
  std::string config_path;
  app.add_option("--suite", config.suites, "Suites to run (repeatable); default all");
  app.add_option("--max-degree", config.max_degree, "Largest symmetric degree for exhaustive checks")
      ->capture_default_str();
  app.add_option("--samples", config.samples, "Random matrix pairs per dimension")->capture_default_str();
  app.add_option("--depth", config.depth, "Exhaustive integer search depth")->capture_default_str();
  app.add_option("--tau", config.tau, "Numeric rank threshold")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--out", config.out, "Report path; stdout when omitted");
  app.add_option("--jobs", config.jobs, "Suites run concurrently")->capture_default_str();
  app.add_option("--config", config_path, "JSON config; overrides flags (default: $CINORM_CONFIG)");
  app.add_flag("--inject-failure", config.inject_failure,
               "Register the identity projection as a contraction (negative control)");

  std::vector<std::pair<std::string, CLI::App*>> suite_commands;
  for (const auto& name : cinorm::suite_names()) {
    suite_commands.emplace_back(name, app.add_subcommand(name, "Run the " + name + " suite"));
  }
  auto* all = app.add_subcommand("all", "Run every suite");

  auto* verify = app.add_subcommand("verify-certificate", "Recompose a certificate file");
  std::string cert_path;
  verify->add_option("path", cert_path)->required();

  auto* certify = app.add_subcommand("certify", "Produce a certificate");
  certify->require_subcommand(1);
  auto* comm = certify->add_subcommand("commutator", "b, c with [b, c] = g");
  std::string comm_g;
  std::size_t comm_n = 0;
  comm->add_option("element", comm_g, "Even permutation in cycle notation")->required();
  comm->add_option("--degree", comm_n, "Ambient degree; default the largest moved point");
  auto* conj = certify->add_subcommand("conjugates", "h as a product of conjugates of g");
  std::string conj_h, conj_g;
  conj->add_option("target", conj_h, "h, an even permutation")->required();
  conj->add_option("base", conj_g, "g, not the identity")->required();
  auto* inorm = certify->add_subcommand("intnorm", "Norm of an integer for the factorial generators");
  std::string int_target;
  bool int_exact = false;
  inorm->add_option("target", int_target, "Decimal, x(n) or x(n,t)")->required();
  inorm->add_flag("--exact", int_exact, "Exhaustive search up to --depth instead of the upper construction");

  auto* table = app.add_subcommand("norm-table", "Word norm of every element of a finite group");
  std::string group_json, gens_text;
  bool table_csv = false, close = false;
  table->add_option("--group", group_json, R"(e.g. {"family": "S", "degree": 4})")->required();
  table->add_option("--generators", gens_text, "Generators separated by ';'")->required();
  table->add_flag("--conjugation-closed", close, "Replace the generators by their conjugacy closure");
  table->add_flag("--csv", table_csv, "CSV instead of JSON");

  auto* seq = app.add_subcommand("sequence", "Evaluate a declarative scaled sequence");
  std::string seq_path, seq_csv;
  seq->add_option("path", seq_path)->required();
  seq->add_option("--csv", seq_csv, "Also write the series as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (const auto& [name, cmd] : suite_commands) {
      if (cmd->parsed()) {
        config.suites = {name};
        return run(config, config_path);
      }
    }
    if (all->parsed()) return run(config, config_path);

    if (verify->parsed()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(cert_path));
      } catch (const nlohmann::json::exception& e) {
        throw cinorm::Error(cinorm::ErrorCode::MalformedCertificate, e.what());
      }
      cinorm::verify_certificate(j);
      std::cout << "ok\n";
      return kExitOk;
    }

    if (comm->parsed()) {
      const auto g = cinorm::Permutation::parse(comm_g);
      const auto n = comm_n ? comm_n : static_cast<std::size_t>(g.largest_moved_point());
      emit(cinorm::commutator_certificate(g, cinorm::commutator_witness(g, n)).dump(2) + "\n", config.out);
      return kExitOk;
    }
    if (conj->parsed()) {
      const auto cert = cinorm::express_as_conjugates(cinorm::Permutation::parse(conj_h),
                                                      cinorm::Permutation::parse(conj_g));
      emit(cert.to_json().dump(2) + "\n", config.out);
      return kExitOk;
    }
    if (inorm->parsed()) {
      const auto t = cinorm::intnorm::parse_target(int_target);
      const auto size = mpz_sizeinbase(t.value.get_mpz_t(), 2);
      // Enough indices that t^(M+1) (M+1)! exceeds the target.
      unsigned long m = 1;
      while (cinorm::intnorm::generator(m + 1, t.base) <= abs(t.value) && m < 4 * size + 4) ++m;
      const cinorm::intnorm::FactorialGenerators gens(m + 1, t.base);
      const auto res = int_exact ? cinorm::intnorm::norm_exact(t.value, gens, config.depth)
                                 : cinorm::intnorm::norm_upper(t.value, gens);
      emit(res.to_json(t.base).dump(2) + "\n", config.out);
      return kExitOk;
    }

    if (table->parsed()) {
      const auto group = cinorm::group_from_json_text(group_json);
      std::vector<cinorm::ElementId> gens;
      std::stringstream ss(gens_text);
      for (std::string item; std::getline(ss, item, ';');) {
        if (!item.empty()) gens.push_back(group->parse(item));
      }
      if (close) gens = cinorm::word::conjugacy_closure(*group, gens);
      const auto t = cinorm::word::bfs_norm(group, gens);
      emit(table_csv ? t.to_csv() : t.to_json() + "\n", config.out);
      return kExitOk;
    }

    if (seq->parsed()) {
      const auto spec = cinorm::cone::parse_sequence_spec(read_file(seq_path));
      const auto report = cinorm::cone::run_sequence(spec);
      if (!seq_csv.empty()) emit(report.sequence.to_csv(), seq_csv);
      emit(report.to_json().dump(2) + "\n", config.out);
      return report.admissibility.admissible ? kExitOk : kExitFailed;
    }
  } catch (const cinorm::Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case cinorm::ErrorCode::MalformedCertificate:
      case cinorm::ErrorCode::RecompositionMismatch:
        return kExitFailed;
      default:
        return kExitConfig;
    }
  }
  return kExitConfig;
}
