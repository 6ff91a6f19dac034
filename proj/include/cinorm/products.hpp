#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinorm/audit.hpp"
#include "cinorm/finite_group.hpp"

namespace cinorm::prod {

using Elem = std::int64_t;

/// A factor group with an integer-valued conjugation-invariant norm.
class Factor {
 public:
  virtual ~Factor() = default;
  virtual std::string name() const = 0;
  virtual Elem identity() const { return 0; }
  virtual Elem multiply(Elem a, Elem b) const = 0;
  virtual Elem inverse(Elem a) const = 0;
  virtual std::uint64_t norm(Elem a) const = 0;
  /// Every element of norm at most r, identity included, in a fixed order.
  virtual std::vector<Elem> ball(std::uint64_t r) const = 0;
  /// Largest norm, if bounded.
  virtual std::optional<std::uint64_t> diameter() const = 0;
  virtual std::string format(Elem a) const { return std::to_string(a); }
  virtual Elem parse(std::string_view text) const;

  std::uint64_t distance(Elem a, Elem b) const { return norm(multiply(a, inverse(b))); }
  bool is_identity(Elem a) const { return a == identity(); }
};

using FactorPtr = std::shared_ptr<const Factor>;

enum class CyclicNorm { Discrete, Word };

/// Z/n with the discrete norm or the word norm for {+-1}.
FactorPtr cyclic(std::size_t n, CyclicNorm norm = CyclicNorm::Discrete);
/// Z with |.|.
FactorPtr integers();
/// Any finite group oracle with the discrete norm; elements are its ids.
FactorPtr finite_oracle(GroupPtr group);

/// Per-factor maps p_i, addressed by factor index.
struct ProjectionFamily {
  std::string name;
  std::function<Elem(const Factor&, Elem)> apply;
};

/// p_i = 1.
ProjectionFamily collapse_projection();
/// One step toward the identity: shrink-toward-zero on Z and on Z/n with the
/// word norm; collapse on discrete factors.
ProjectionFamily shrink_projection();
/// p_i = id, the negative control.
ProjectionFamily identity_projection();

struct Letter {
  std::size_t factor = 0;
  Elem element = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Free-product normal form.
struct ReducedWord {
  std::vector<Letter> letters;
  bool empty() const { return letters.empty(); }
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend auto operator<=>(const ReducedWord&, const ReducedWord&) = default;
};

class FreeProduct {
 public:
  explicit FreeProduct(std::map<std::size_t, FactorPtr> factors);

  const Factor& factor(std::size_t index) const;
  const std::map<std::size_t, FactorPtr>& factors() const { return factors_; }

  /// Drops identity letters and merges neighbours from the same factor.
  ReducedWord reduce(const std::vector<Letter>& raw) const;
  ReducedWord multiply(const ReducedWord& a, const ReducedWord& b) const;
  ReducedWord inverse(const ReducedWord& w) const;
  /// Word of one letter, empty for the identity.
  ReducedWord include(std::size_t factor, Elem e) const;

  std::uint64_t l1_norm(const ReducedWord& w) const;
  std::uint64_t distance(const ReducedWord& a, const ReducedWord& b) const;

  /// "(factor:element)(factor:element)..."; the empty word is "()".
  std::string format(const ReducedWord& w) const;
  ReducedWord parse(std::string_view text) const;

  /// Every reduced word of l1-norm at most budget, shortest first.
  std::vector<ReducedWord> ball(std::uint64_t budget) const;

 private:
  std::map<std::size_t, FactorPtr> factors_;
};

/// p(g_1 g_2 ... g_k) = p_{i_1}(g_1) g_2 ... g_k, reduced.
ReducedWord prefix_project(const ReducedWord& w, const FreeProduct& group,
                           const ProjectionFamily& family);

/// Finitely supported element of a direct sum; absent indices are trivial.
struct SparseSumElement {
  std::map<std::size_t, Elem> terms;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const SparseSumElement&, const SparseSumElement&) = default;
  friend auto operator<=>(const SparseSumElement&, const SparseSumElement&) = default;
};

class DirectSum {
 public:
  using FactorAt = std::function<FactorPtr(std::size_t)>;
  DirectSum(std::string name, std::size_t first_index, std::size_t last_index, FactorAt factor_at);

  /// The ⊕_{first <= i <= last} Z/i family with discrete norms.
  static DirectSum cyclic_family(std::size_t first_index, std::size_t last_index);

  const std::string& name() const { return name_; }
  std::size_t first_index() const { return first_; }
  std::size_t last_index() const { return last_; }
  const Factor& factor(std::size_t index) const;

  /// Drops identity terms; throws OutOfRange for indices outside the family.
  SparseSumElement make(const std::map<std::size_t, Elem>& terms) const;
  SparseSumElement multiply(const SparseSumElement& a, const SparseSumElement& b) const;
  SparseSumElement inverse(const SparseSumElement& g) const;

  /// l1-norm; equals the number of terms for discrete factor norms.
  std::uint64_t norm(const SparseSumElement& g) const;
  std::uint64_t support_norm(const SparseSumElement& g) const { return g.terms.size(); }
  std::uint64_t distance(const SparseSumElement& a, const SparseSumElement& b) const;

  /// "i:e + j:f"; zero is "0".
  std::string format(const SparseSumElement& g) const;

 private:
  std::string name_;
  std::size_t first_;
  std::size_t last_;
  std::vector<FactorPtr> factors_;
};

/// p(g) = p_{i_1}(g_{i_1}) + g_{i_2} + ... with i_1 the least index.
SparseSumElement sum_project(const SparseSumElement& g, const DirectSum& group,
                             const ProjectionFamily& family);

/// The four conditions for a single projection p with displacement bound L:
///   (i)   d(p(g), p(h)) <= d(g, h)
///   (ii)  d(p(g), g) <= L
///   (iii) |p(g)| <= |g| - 1 when |g| >= 1
///   (iv)  p(g) = 1 when |g| <= 1
struct ContractionAudit {
  std::string carrier;
  std::string projection;
  std::uint64_t displacement_bound = 1;
  std::size_t elements = 0;
  std::size_t pairs = 0;
  BoundStats conditions[4] = {
      {"single_projection_i", "d(p(g), p(h)) <= d(g, h)"},
      {"single_projection_ii", "d(p(g), g) <= L"},
      {"single_projection_iii", "|p(g)| <= |g| - 1 for |g| >= 1"},
      {"single_projection_iv", "p(g) = 1 for |g| <= 1"},
  };

  bool ok() const;
  bool holds(int condition) const { return conditions[condition - 1].ok(); }
  /// Roman numerals of the failed conditions.
  std::vector<std::string> failed() const;
  nlohmann::ordered_json to_json() const;
};

template <typename T>
struct CarrierOps {
  std::function<std::uint64_t(const T&)> norm;
  std::function<std::uint64_t(const T&, const T&)> distance;
  std::function<T(const T&)> project;
  std::function<bool(const T&)> is_identity;
  std::function<std::string(const T&)> format;
};

/// Checks the four conditions on every sampled element and on the given
/// pairs of sample indices (every ordered pair when `pairs` is empty).
template <typename T>
ContractionAudit verify_contraction_conditions(
    std::string carrier, std::string projection, const std::vector<T>& sample,
    const CarrierOps<T>& ops, std::uint64_t displacement_bound = 1,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs = {}) {
  ContractionAudit audit;
  audit.carrier = std::move(carrier);
  audit.projection = std::move(projection);
  audit.displacement_bound = displacement_bound;
  audit.elements = sample.size();
  auto& [c1, c2, c3, c4] = audit.conditions;

  std::vector<T> projected;
  projected.reserve(sample.size());
  for (const auto& g : sample) {
    const T pg = ops.project(g);
    const auto norm = ops.norm(g);
    if (c2.record(ops.distance(pg, g), displacement_bound) && c2.witness.empty()) {
      c2.witness = "g=" + ops.format(g) + " p(g)=" + ops.format(pg);
    }
    if (norm >= 1 && c3.record(ops.norm(pg) + 1, norm) && c3.witness.empty()) {
      c3.witness = "g=" + ops.format(g) + " p(g)=" + ops.format(pg);
    }
    if (norm <= 1 && c4.record_holds(ops.is_identity(pg)) && c4.witness.empty()) {
      c4.witness = "g=" + ops.format(g) + " p(g)=" + ops.format(pg);
    }
    projected.push_back(pg);
  }

  auto check_pair = [&](std::size_t a, std::size_t b) {
    if (c1.record(ops.distance(projected[a], projected[b]), ops.distance(sample[a], sample[b])) &&
        c1.witness.empty()) {
      c1.witness = "g=" + ops.format(sample[a]) + " h=" + ops.format(sample[b]);
    }
  };
  if (pairs.empty()) {
    for (std::size_t a = 0; a < sample.size(); ++a) {
      for (std::size_t b = 0; b < sample.size(); ++b) check_pair(a, b);
    }
    audit.pairs = sample.size() * sample.size();
  } else {
    for (const auto& [a, b] : pairs) check_pair(a, b);
    audit.pairs = pairs.size();
  }
  return audit;
}

/// Conditions on every reduced word of l1-norm at most budget.
ContractionAudit audit_free_product(const FreeProduct& group, const ProjectionFamily& family,
                                    std::uint64_t budget);
/// Conditions on every element of the family with at most max_terms terms.
/// Feasible only for small families.
ContractionAudit audit_direct_sum_exhaustive(const DirectSum& group,
                                             const ProjectionFamily& family,
                                             std::size_t max_terms);
/// Conditions for a direct sum of discrete-norm factors, exhaustive up to
/// the symmetries of the discrete metric: each coordinate of a pair (g, h)
/// is one of (1,1), (a,1), (1,a), (a,a), (a,b) with a != b non-trivial, and
/// only the relative order of the occupied indices matters. Every such
/// pattern with at most max_terms terms per element is placed on the least
/// indices whose factor admits it.
ContractionAudit audit_direct_sum_patterns(const DirectSum& group,
                                           const ProjectionFamily& family,
                                           std::size_t max_terms);
/// Conditions for a single factor and projection on a ball of elements.
ContractionAudit audit_factor(const FactorPtr& factor, const ProjectionFamily& family,
                              std::uint64_t radius);

/// d(include(a), include(b)) = d_i(a, b) for all a, b in the ball of the factor.
BoundStats check_inclusion_isometry(const FreeProduct& group, std::size_t factor,
                                    std::uint64_t radius);

struct NormEquivalence {
  double min_ratio = 0.0;  // min l1 / letters over non-empty words
  double max_ratio = 0.0;
  std::uint64_t factor_min = 0;  // least non-zero factor norm (fineness)
  std::uint64_t factor_max = 0;  // largest factor norm within the budget
  std::size_t words = 0;
  bool matches() const;
  nlohmann::ordered_json to_json() const;
};

/// Compares l1 with the letter count over every word of norm at most budget.
NormEquivalence l1_support_equivalence(const FreeProduct& group, std::uint64_t budget);

}  // namespace cinorm::prod
