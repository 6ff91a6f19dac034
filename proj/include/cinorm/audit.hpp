#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace cinorm {

/// Running maximum of lhs / rhs for one inequality lhs <= rhs.
struct BoundStats {
  BoundStats() = default;
  BoundStats(std::string lemma_id, std::string text)
      : lemma(std::move(lemma_id)), statement(std::move(text)) {}

  std::string lemma;
  std::string statement;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // over checks with rhs > 0
  std::string witness;     // first violation

  /// Returns true when lhs > rhs; the caller then supplies the witness.
  bool record(std::size_t lhs, std::size_t rhs);
  /// For checks that are plain yes/no; returns true on failure.
  bool record_holds(bool holds);
  void merge(const BoundStats& other);
  bool ok() const { return violations == 0; }
  nlohmann::ordered_json to_json() const;
};

}  // namespace cinorm
