#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cinorm {

/// Everything a verification run depends on. Two runs with equal configs
/// produce byte-identical reports.
struct RunConfig {
  std::vector<std::string> suites;  // empty means all
  std::size_t max_degree = 7;
  std::size_t samples = 1000;             // random matrix pairs per dimension
  std::size_t cut_random_pairs = 100000;  // random pairs in S_cut_random_degree
  std::size_t cut_random_degree = 30;
  std::size_t certificate_pairs = 100;    // random (h, g) pairs for conjugate products
  std::size_t stage_samples = 200;        // pairs per stage for sequence checks
  std::size_t depth = 6;                  // exhaustive integer search depth
  std::size_t word_budget = 6;            // l1 budget for free-product words
  double tau = 1e-8;
  std::uint64_t seed = 20240601;
  std::string out;
  std::size_t jobs = 1;
  bool inject_failure = false;  // registers the identity projection as a contraction

  /// Throws ConfigInvalid for unknown suites or out-of-range caps.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Applies the keys present in a JSON object on top of `base`. Throws
/// ConfigInvalid for unknown keys or bad types.
RunConfig merge_config(RunConfig base, std::string_view json_text);

struct CheckResult {
  std::string id;
  std::string statement;
  bool ok = false;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool ok() const;
  const CheckResult* find(std::string_view id) const;
};

struct RunReport {
  RunConfig config;
  std::vector<SuiteResult> suites;
  bool ok() const;
  const CheckResult* find(std::string_view id) const;
  nlohmann::ordered_json to_json() const;
  /// Pretty-printed JSON with a trailing newline.
  std::string dump() const;
};

/// Runs one suite with its own generator derived from the seed and the name.
SuiteResult run_single_suite(const std::string& name, const RunConfig& config);

/// Runs the selected suites, up to config.jobs at a time, and assembles the
/// report in suite order. Throws ConfigInvalid.
RunReport run_suite(const RunConfig& config);

/// Recomputes a certificate of kind conjugate_product, commutator or
/// intnorm. Throws MalformedCertificate or RecompositionMismatch.
void verify_certificate(const nlohmann::json& certificate);

}  // namespace cinorm
