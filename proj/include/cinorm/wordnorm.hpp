#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cinorm/finite_group.hpp"

namespace cinorm::word {

/// Exact word norm of every element of a finite group.
class NormTable {
 public:
  NormTable(GroupPtr group, std::vector<ElementId> generators, std::vector<std::uint32_t> values)
      : group_(std::move(group)), generators_(std::move(generators)), values_(std::move(values)) {}

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const std::vector<ElementId>& generating_set() const { return generators_; }
  const std::vector<std::uint32_t>& values() const { return values_; }
  std::uint32_t operator[](ElementId g) const { return values_[g]; }
  std::uint32_t diameter() const;

  std::string to_csv() const;
  std::string to_json() const;

 private:
  GroupPtr group_;
  std::vector<ElementId> generators_;
  std::vector<std::uint32_t> values_;
};

/// Smallest conjugation-invariant superset of seeds and their inverses.
std::vector<ElementId> conjugacy_closure(const FiniteGroup& group,
                                         const std::vector<ElementId>& seeds);

/// Breadth-first word lengths from the identity. Inverses of the generators
/// are added before the search. Throws NotGenerating when part of the group
/// is unreachable.
NormTable bfs_norm(GroupPtr group, std::vector<ElementId> generators);

/// Builds a table from an arbitrary function on the carrier.
NormTable table_from(GroupPtr group, const std::vector<std::uint32_t>& values);

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
};

struct Domination {
  Ratio constant;       // smallest C with mu <= C * nu off the identity
  ElementId witness{};  // an element attaining it
};

/// Both tables must live on the same carrier (same order).
Domination audit_domination(const NormTable& nu, const NormTable& mu);

struct AxiomAudit {
  bool positive = true;
  bool triangle = true;
  bool symmetric = true;
  bool conjugation_invariant = true;
  std::string witness;
  bool ok() const { return positive && triangle && symmetric && conjugation_invariant; }
};

/// Element-by-element check of the norm axioms and conjugation invariance.
AxiomAudit audit_norm_axioms(const NormTable& table);

}  // namespace cinorm::word
