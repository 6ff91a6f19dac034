#include "cinorm/audit.hpp"

#include <algorithm>

namespace cinorm {

bool BoundStats::record(std::size_t lhs, std::size_t rhs) {
  ++checks;
  if (rhs > 0) {
    max_ratio = std::max(max_ratio, static_cast<double>(lhs) / static_cast<double>(rhs));
  }
  if (lhs <= rhs) return false;
  ++violations;
  return true;
}

bool BoundStats::record_holds(bool holds) {
  ++checks;
  if (holds) return false;
  ++violations;
  return true;
}

void BoundStats::merge(const BoundStats& other) {
  checks += other.checks;
  violations += other.violations;
  max_ratio = std::max(max_ratio, other.max_ratio);
  if (witness.empty()) witness = other.witness;
}

nlohmann::ordered_json BoundStats::to_json() const {
  nlohmann::ordered_json j;
  j["lemma"] = lemma;
  j["statement"] = statement;
  j["checks"] = checks;
  j["violations"] = violations;
  j["max_ratio"] = max_ratio;
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

}  // namespace cinorm
