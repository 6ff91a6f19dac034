#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "cinorm/audit.hpp"
#include "cinorm/matnorm.hpp"

namespace cinorm::cone {

/// n -> s_n.
class Scaling {
 public:
  static Scaling linear();
  static Scaling power(double alpha);
  static Scaling table(std::map<std::size_t, double> values);

  double operator()(std::size_t n) const;
  /// c * s_n.
  Scaling scaled(double c) const;
  std::string describe() const;

 private:
  enum class Kind { Power, Table } kind_ = Kind::Power;
  double alpha_ = 1.0;
  double factor_ = 1.0;
  std::map<std::size_t, double> table_;
};

struct Stage {
  std::size_t index = 0;
  double norm = 0.0;
  std::string element;  // optional human-readable form
};

struct ScaledSequence {
  std::string description;
  std::vector<Stage> stages;
  Scaling scaling = Scaling::linear();

  /// Throws OutOfRange for negative norms, non-positive scaling, or a
  /// scaling that does not grow over the recorded stages.
  void validate() const;
  /// |x_n| / s_n per stage.
  std::vector<double> normalized() const;
  std::string to_csv() const;
};

struct Admissibility {
  bool admissible = true;
  double max_ratio = 0.0;
  std::size_t witness_stage = 0;  // index n of the maximizing stage
  nlohmann::ordered_json to_json() const;
};

/// |x_n| / s_n <= bound at every recorded stage.
Admissibility admissibility(const ScaledSequence& seq, double bound);

inline constexpr double kDefaultTailFraction = 0.25;
inline constexpr double kDefaultTolerance = 1e-3;

struct UltralimitEstimate {
  std::vector<double> series;
  std::size_t tail_length = 0;
  double tail_min = 0.0;
  double tail_max = 0.0;
  double tail_mean = 0.0;
  double tolerance = kDefaultTolerance;
  bool converged = false;
  nlohmann::ordered_json to_json() const;
};

/// Statistics over the last ceil(fraction * size) values. Throws OutOfRange
/// for an empty list or a fraction outside (0, 1].
UltralimitEstimate estimate_limit(const std::vector<double>& values,
                                  double tail_fraction = kDefaultTailFraction,
                                  double tolerance = kDefaultTolerance);

struct Distance {
  std::size_t value = 0;
  bool borderline = false;  // numeric backends only
};

/// One family of stage groups G_n with the maps needed by the sequence
/// contraction check. `project` maps stage n to stage n - 1 and `include`
/// maps stage n - 1 to stage n.
template <typename T>
struct StageFamily {
  std::string name;
  std::function<std::pair<T, T>(std::size_t n, std::size_t variant, std::mt19937_64&)> sample_pair;
  std::function<T(std::size_t n, const T&)> project;
  std::function<T(std::size_t n, const T&)> include;
  std::function<Distance(std::size_t n, const T&, const T&)> distance;
  std::function<std::string(const T&)> format;
};

struct SequenceContractionAudit {
  std::string family;
  std::size_t first_stage = 0;
  std::size_t last_stage = 0;
  std::size_t samples_per_stage = 0;
  std::size_t claimed_k = 0;
  std::size_t observed_k = 0;  // smallest K that works on the sample
  std::size_t borderline = 0;
  BoundStats displacement{"sequence_displacement", "d_n(i p_n(x), x) <= K"};
  BoundStats nonexpansive{"sequence_nonexpansive", "d_{n-1}(p_n(x), p_n(y)) <= d_n(x, y)"};
  BoundStats inclusion{"sequence_inclusion_isometry", "d_n(i(u), i(v)) = d_{n-1}(u, v)"};

  bool ok() const;
  nlohmann::ordered_json to_json() const;
};

template <typename T>
SequenceContractionAudit check_sequence_contraction(const StageFamily<T>& family, std::size_t first,
                                                    std::size_t last, std::size_t samples,
                                                    std::size_t claimed_k, std::mt19937_64& rng) {
  SequenceContractionAudit audit;
  audit.family = family.name;
  audit.first_stage = first;
  audit.last_stage = last;
  audit.samples_per_stage = samples;
  audit.claimed_k = claimed_k;
  auto measure = [&](std::size_t n, const T& a, const T& b) {
    const auto d = family.distance(n, a, b);
    if (d.borderline) ++audit.borderline;
    return d.value;
  };
  for (std::size_t n = first; n <= last; ++n) {
    for (std::size_t s = 0; s < samples; ++s) {
      const auto [x, y] = family.sample_pair(n, s, rng);
      const T px = family.project(n, x);
      const T py = family.project(n, y);
      const T ipx = family.include(n, px);
      const T ipy = family.include(n, py);
      for (const auto* pr : {&ipx, &ipy}) {
        const T& orig = pr == &ipx ? x : y;
        const auto d = measure(n, *pr, orig);
        audit.observed_k = std::max(audit.observed_k, d);
        if (audit.displacement.record(d, claimed_k) && audit.displacement.witness.empty()) {
          audit.displacement.witness = "n=" + std::to_string(n) + " x=" + family.format(orig);
        }
      }
      const auto lhs = measure(n - 1, px, py);
      if (audit.nonexpansive.record(lhs, measure(n, x, y)) && audit.nonexpansive.witness.empty()) {
        audit.nonexpansive.witness =
            "n=" + std::to_string(n) + " x=" + family.format(x) + " y=" + family.format(y);
      }
      if (audit.inclusion.record_holds(measure(n, ipx, ipy) == lhs) &&
          audit.inclusion.witness.empty()) {
        audit.inclusion.witness = "n=" + std::to_string(n) + " u=" + family.format(px);
      }
    }
  }
  return audit;
}

/// Upper-triangular rational matrices with the exact rank metric.
StageFamily<mat::RationalMatrix> triangular_family();
/// Symmetric positive definite rational matrices with the exact rank metric.
StageFamily<mat::RationalMatrix> spd_family();
/// SO(n) with the numeric rank metric at threshold tau.
StageFamily<mat::FloatMatrix> special_orthogonal_family(double tau);

/// 2 pi k / n. Throws OutOfRange unless 0 <= k < n.
double zmod_to_circle(std::uint64_t k, std::uint64_t n);
/// k / n as an exact fraction of a full turn.
mpq_class zmod_to_turns(std::uint64_t k, std::uint64_t n);
/// Nearest n-th root of unity; ties go to the smaller residue.
std::uint64_t circle_to_zmod(double angle, std::uint64_t n);
/// Same rule for an angle given exactly as a fraction of a full turn.
std::uint64_t turns_to_zmod(const mpq_class& turns, std::uint64_t n);
/// Arc distance in turns, in [0, 1/2].
mpq_class arc_turns(const mpq_class& x, const mpq_class& y);
/// min(|a - b| mod n, n - |a - b| mod n).
std::uint64_t zmod_distance(std::uint64_t a, std::uint64_t b, std::uint64_t n);

struct CircleAudit {
  std::uint64_t max_roundtrip_modulus = 0;
  std::uint64_t max_arc_modulus = 0;
  std::uint64_t max_grid_modulus = 0;
  std::uint64_t grid_points = 0;
  BoundStats roundtrip{"circle_roundtrip", "theta_n(phi_n(k)) = k"};
  BoundStats arc_identity{"circle_arc_identity", "d_arc(phi(a), phi(b)) = 2 pi |a - b|_n / n"};
  BoundStats rounding{"circle_rounding", "|n x / 2 pi - theta_n(x)| <= 1/2 on the grid"};
  BoundStats lipschitz{"circle_lipschitz", "|theta(x) - theta(y)|_n <= d_arc(x, y) n + 2"};
  BoundStats float_agrees{"circle_float_agrees", "floating theta_n equals the exact one on the grid"};
  double max_lipschitz_ratio = 0.0;  // |theta(x) - theta(y)|_n / (d_arc n + 2)

  bool ok() const;
  nlohmann::ordered_json to_json() const;
};

/// Round trip for n <= roundtrip_max, exact arc identity for all residue
/// pairs with n <= arc_max and for every difference up to roundtrip_max, and on the grid {j / grid : j < grid} for every
/// n <= grid_max: the per-point rounding bound (which implies the Lipschitz
/// bound for all pairs) plus direct Lipschitz checks on neighbouring,
/// antipodal and `random_partners` random pairs per point.
CircleAudit verify_circle(std::uint64_t roundtrip_max, std::uint64_t arc_max, std::uint64_t grid_max,
                          std::uint64_t grid, std::size_t random_partners, std::mt19937_64& rng);

/// A declarative sequence: built-in stage family, stage schedule, scaling.
///   {"family": "cycle", "from": 2, "to": 64, "step": 1,
///    "scaling": {"kind": "power", "alpha": 1.0},
///    "bound": 1.0, "tail_fraction": 0.25, "tolerance": 0.001}
/// Families: identity, cycle (the n-cycle), long_cycle (the n^2-cycle),
/// swap_power ((1 2)^n), integer_xn (the factorial elements x_n).
struct SequenceSpec {
  std::string family;
  std::size_t from = 1;
  std::size_t to = 1;
  std::size_t step = 1;
  Scaling scaling = Scaling::linear();
  double bound = 1.0;
  double tail_fraction = kDefaultTailFraction;
  double tolerance = kDefaultTolerance;
};

/// Throws ConfigInvalid.
SequenceSpec parse_sequence_spec(std::string_view json_text);
ScaledSequence build_sequence(const SequenceSpec& spec);

struct SequenceReport {
  ScaledSequence sequence;
  Admissibility admissibility;
  UltralimitEstimate estimate;
  nlohmann::ordered_json to_json() const;
};

SequenceReport run_sequence(const SequenceSpec& spec);

}  // namespace cinorm::cone
