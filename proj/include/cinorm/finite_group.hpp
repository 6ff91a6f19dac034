#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cinorm/permutation.hpp"

namespace cinorm {

using ElementId = std::uint32_t;

/// A finite group whose elements have been enumerated once and are addressed
/// by dense ids 0..order()-1. Implementations are immutable after
/// construction and therefore safe to share between threads.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;

  virtual std::size_t order() const = 0;
  virtual ElementId identity() const = 0;
  virtual ElementId multiply(ElementId a, ElementId b) const = 0;
  virtual ElementId inverse(ElementId a) const = 0;
  virtual std::string label(ElementId a) const = 0;
  virtual ElementId parse(std::string_view text) const = 0;
  virtual std::string description() const = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Sym(n) or Alt(n) acting on {1..n}, elements in lexicographic order of
/// their image tables. Multiplication follows the left-to-right convention
/// of Permutation.
class SymmetricGroup final : public FiniteGroup {
 public:
  SymmetricGroup(std::size_t degree, bool alternating);

  std::size_t order() const override { return order_; }
  ElementId identity() const override { return identity_; }
  ElementId multiply(ElementId a, ElementId b) const override;
  ElementId inverse(ElementId a) const override { return inverse_[a]; }
  std::string label(ElementId a) const override;
  ElementId parse(std::string_view text) const override;
  std::string description() const override;

  std::size_t degree() const { return degree_; }
  bool alternating() const { return alternating_; }

  Permutation element(ElementId a) const;
  /// Throws SupportExceedsDegree or, for Alt(n), OddPermutation.
  ElementId id_of(const Permutation& p) const;
  const std::uint8_t* images(ElementId a) const { return &images_[std::size_t{a} * degree_]; }

 private:
  ElementId id_of_images(const std::uint8_t* images) const;

  std::size_t degree_;
  bool alternating_;
  std::size_t order_ = 0;
  ElementId identity_ = 0;
  std::vector<std::uint8_t> images_;   // order_ * degree_, zero-based points
  std::vector<std::int32_t> by_rank_;  // Lehmer rank -> id, -1 when absent
  std::vector<ElementId> inverse_;
  std::vector<std::uint16_t> table_;   // full Cayley table for small orders
};

class CyclicGroup final : public FiniteGroup {
 public:
  explicit CyclicGroup(std::size_t modulus);

  std::size_t order() const override { return modulus_; }
  ElementId identity() const override { return 0; }
  ElementId multiply(ElementId a, ElementId b) const override {
    return static_cast<ElementId>((std::size_t{a} + b) % modulus_);
  }
  ElementId inverse(ElementId a) const override {
    return static_cast<ElementId>((modulus_ - a) % modulus_);
  }
  std::string label(ElementId a) const override { return std::to_string(a); }
  ElementId parse(std::string_view text) const override;
  std::string description() const override;

 private:
  std::size_t modulus_;
};

/// G x H with ids a * |H| + b; labels are "[g;h]".
class DirectProduct final : public FiniteGroup {
 public:
  DirectProduct(GroupPtr left, GroupPtr right);

  std::size_t order() const override { return left_->order() * right_->order(); }
  ElementId identity() const override;
  ElementId multiply(ElementId a, ElementId b) const override;
  ElementId inverse(ElementId a) const override;
  std::string label(ElementId a) const override;
  ElementId parse(std::string_view text) const override;
  std::string description() const override;

 private:
  GroupPtr left_;
  GroupPtr right_;
};

/// Builds a carrier from a declarative JSON description:
///   {"family": "S", "degree": 4}        symmetric group
///   {"family": "A", "degree": 5}        alternating group
///   {"family": "Z", "modulus": 6}       cyclic group
///   {"family": "product", "factors": [ ... ]}
GroupPtr group_from_json_text(std::string_view json_text);

/// Process-wide cache of Sym(n)/Alt(n) tables.
std::shared_ptr<const SymmetricGroup> symmetric_group(std::size_t degree, bool alternating);

struct AxiomReport {
  bool ok = true;
  std::size_t associativity_triples = 0;
  std::string failure;
};

/// Spot-checks associativity on random triples and the identity and inverse
/// laws on every element.
AxiomReport check_group_axioms(const FiniteGroup& group, std::mt19937_64& rng,
                               std::size_t triples = 1000);

}  // namespace cinorm
