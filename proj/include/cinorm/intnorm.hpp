#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace cinorm::intnorm {

/// The symmetric generating set {+-t^m m! : 0 <= m <= M} of the integers.
class FactorialGenerators {
 public:
  explicit FactorialGenerators(unsigned long max_index, unsigned long base = 2);

  unsigned long base() const { return base_; }
  unsigned long max_index() const { return static_cast<unsigned long>(members_.size() - 1); }
  const std::vector<mpz_class>& members() const { return members_; }
  const mpz_class& member(std::size_t m) const { return members_.at(m); }

  /// Index m with t^m m! = |value|, if any.
  std::optional<std::size_t> index_of(const mpz_class& value) const;

 private:
  unsigned long base_;
  std::vector<mpz_class> members_;
};

/// t^m m!.
mpz_class generator(unsigned long m, unsigned long base = 2);
/// x_n = t^(n-1) n!.
mpz_class x_n(unsigned long n, unsigned long base = 2);

enum class Method { ExactSearch, UpperConstruction, LowerArgument };
std::string to_string(Method m);

struct IntNormResult {
  mpz_class target;
  std::optional<std::size_t> value;  // empty means Unknown
  std::vector<mpz_class> certificate;  // signed generators summing to target
  Method method = Method::UpperConstruction;
  std::optional<std::size_t> upper_bound;  // best known when value is Unknown
  std::size_t window_max_index = 0;        // largest generator index searched

  nlohmann::ordered_json to_json(unsigned long base) const;
};

/// Greedy largest fit; each step also considers overshooting with the next
/// larger generator and keeps whichever leaves the smaller remainder.
/// Throws IndexBudgetExceeded when t^(M+1) (M+1)! <= |x|.
IntNormResult norm_upper(const mpz_class& x, const FactorialGenerators& gens);

/// Iterative deepening over signed generator multisets of length at most
/// depth_cap. The window always contains the two generators above |x|.
IntNormResult norm_exact(const mpz_class& x, const FactorialGenerators& gens,
                         std::size_t depth_cap);

/// Re-derives the threshold argument for x_n with exact arithmetic and
/// returns n. Throws ArgumentCheckFailed if any step does not check out.
std::size_t lower_bound_xn(unsigned long n, unsigned long base = 2);

struct TorsionRow {
  unsigned long n = 0;
  mpz_class xn;
  std::size_t norm_xn = 0;        // upper construction = lower argument
  std::optional<std::size_t> exact_xn;  // exhaustive search when cheap
  mpz_class t_xn;
  std::size_t norm_t_xn = 0;
};

struct TorsionReport {
  unsigned long base = 2;
  std::vector<TorsionRow> rows;
  std::string note;  // modeling note for base != 2

  bool ok() const;
  nlohmann::ordered_json to_json() const;
};

/// For n in [lo, hi]: (|x_n|, |t x_n|), expected (n, 1).
TorsionReport torsion_probe(unsigned long lo, unsigned long hi, unsigned long base = 2,
                            unsigned long exact_up_to = 5);

struct Target {
  mpz_class value;
  std::optional<unsigned long> n;
  unsigned long base = 2;
};

/// Decimal integer, "x(n)" or "x(n,t)".
Target parse_target(std::string_view text);

/// Recomputes an intnorm certificate: every term is +-t^m m!, the terms sum
/// to the target and their count equals the claimed value. Throws
/// MalformedCertificate or RecompositionMismatch.
void verify_certificate(const nlohmann::json& j);

}  // namespace cinorm::intnorm
