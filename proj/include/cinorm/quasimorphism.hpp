#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cinorm/finite_group.hpp"

namespace cinorm {

/// A real-valued function on a finite window of a group. Elements are
/// integer keys; `multiply` is the group law on keys, and products that leave
/// the window are reported rather than extrapolated.
struct SampledQuasimorphism {
  std::string description;
  std::function<std::int64_t(std::int64_t, std::int64_t)> multiply;
  std::int64_t identity = 0;
  std::map<std::int64_t, double> values;
  std::optional<double> claimed_defect;

  bool contains(std::int64_t g) const { return values.count(g) != 0; }

  /// psi restricted to the integers in [lo, hi].
  static SampledQuasimorphism integer_window(std::int64_t lo, std::int64_t hi,
                                             const std::function<double(std::int64_t)>& psi);
  /// psi on every element of a finite group; keys are element ids.
  static SampledQuasimorphism on_group(const GroupPtr& group,
                                       const std::function<double(ElementId)>& psi);
  /// "key,value" lines (header optional) over the integers.
  static SampledQuasimorphism integers_from_csv(std::string_view csv);
};

using ElementPair = std::pair<std::int64_t, std::int64_t>;

/// Every pair of window elements whose product stays in the window.
std::vector<ElementPair> pairs_within(const SampledQuasimorphism& psi);

/// max |psi(gh) - psi(g) - psi(h)| over the pairs. Throws ProductOutsideSample.
double estimate_defect(const SampledQuasimorphism& psi, const std::vector<ElementPair>& pairs);

struct Homogenisation {
  std::vector<double> sequence;  // psi(g^n) / n for n = 1..N
  double estimate = 0.0;         // the stage-N value
};

/// Throws PowerOutsideSample when some g^n leaves the window.
Homogenisation homogenise(const SampledQuasimorphism& psi, std::int64_t g, std::size_t n);

/// g_norm >= |value| / (K + D). Throws DegenerateDenominator when K + D = 0
/// and value != 0.
bool norm_lower_bound(double value, double k, double d, std::uint64_t g_norm);

/// Word norms on the integers for generators +-s, exact on [lo, hi].
std::map<std::int64_t, std::uint64_t> interval_word_norms(const std::vector<std::int64_t>& gens,
                                                          std::int64_t lo, std::int64_t hi);

}  // namespace cinorm
