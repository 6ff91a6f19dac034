#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinorm/permutation.hpp"

namespace cinorm {

/// Orbits of <s> on {1..n}, fixed points included. Throws SupportExceedsDegree.
std::size_t orbit_count(const Permutation& s, std::size_t n);

/// Largest degree for which classes and class powers are materialized.
inline constexpr std::size_t kMaxCoveringDegree = 8;

struct ConjugacyClass {
  std::size_t ambient_degree = 0;
  Permutation representative;
  std::vector<Permutation> members;  // sorted
};

/// The Sym(n)-class of s. Throws SupportExceedsDegree, or OutOfRange above
/// kMaxCoveringDegree.
ConjugacyClass conjugacy_class(const Permutation& s, std::size_t n);

struct CoveringReport {
  Permutation sigma;
  std::size_t degree = 0;
  std::size_t orbits = 0;
  std::size_t class_size = 0;
  std::size_t group_order = 0;
  std::vector<std::size_t> level_sizes;  // |C|, |C^2|, ...
  bool covered = false;                  // C^4 = A_n
  std::optional<std::size_t> covering_exponent;

  nlohmann::ordered_json to_json() const;
};

/// Exact powers of the class of s inside A_n. Throws HypothesisUnmet unless
/// s is even, has an orbit of length two and n - 2 * orbits >= -1, and
/// OutOfRange above kMaxCoveringDegree.
CoveringReport brenner_check(const Permutation& s, std::size_t n);

/// Whether s meets the hypotheses checked by brenner_check; the reason is
/// filled in when it does not.
bool brenner_hypotheses(const Permutation& s, std::size_t n, std::string* reason = nullptr);

struct CommutatorWitness {
  Permutation b;
  Permutation c;
};

/// b, c with b c b^-1 c^-1 = g, both supported in {1..max(n, 5)}. Witnesses
/// are searched once per cycle type on the compressed support and moved into
/// place by conjugation. Throws OddPermutation, SupportExceedsDegree,
/// OutOfRange (support above 9 points) or SearchExhausted.
CommutatorWitness commutator_witness(const Permutation& g, std::size_t n);

/// {"kind": "commutator", "target": g, "b": b, "c": c} in cycle notation.
nlohmann::ordered_json commutator_certificate(const Permutation& g, const CommutatorWitness& w);
/// Recomputes b c b^-1 c^-1. Throws MalformedCertificate or
/// RecompositionMismatch.
void verify_commutator_certificate(const nlohmann::json& j);

/// t with conjugate(from, t) == to, acting on {1..n}. Both arguments must
/// share a cycle type and live in {1..n}.
Permutation conjugator_between(const Permutation& from, const Permutation& to, std::size_t n);

struct ConjugateFactor {
  Permutation conjugator;
  int sign = 1;
};

struct ConjugateProductCertificate {
  Permutation target;
  Permutation base;
  std::vector<ConjugateFactor> factors;
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();

  /// Left-to-right product of conjugator * base^sign * conjugator^-1.
  Permutation recompose() const;
  /// 8 * supp(target) / supp(base) + 4.
  double factor_bound() const;
  nlohmann::ordered_json to_json() const;
  static ConjugateProductCertificate from_json(const nlohmann::json& j);
};

/// Writes h as a short product of conjugates of g. An odd g is first
/// multiplied by one transposition on fresh points, an even g without a
/// 2-cycle by two; the certificate's base is the modified element and the
/// change is recorded in its diagnostics. Throws IdentityBase,
/// OddPermutation for odd h, and BlockSearchFailed when the working window
/// exceeds kMaxCoveringDegree points.
ConjugateProductCertificate express_as_conjugates(const Permutation& h, const Permutation& g);

}  // namespace cinorm
