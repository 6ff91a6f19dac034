#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "cinorm/audit.hpp"
#include "cinorm/permutation.hpp"

namespace cinorm::mat {

/// Dense matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<std::vector<mpq_class>>& rows);
  /// Rows of comma-separated "p/q" or integer entries.
  static RationalMatrix from_csv(std::string_view csv);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  /// Top-left k x k block.
  RationalMatrix leading_block(std::size_t k) const;
  /// diag(this, 1).
  RationalMatrix embed() const;

  std::string to_csv() const;
  std::string to_string() const;  // one-line form for witnesses

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Rank by fraction-free (Bareiss) elimination on an integer rescaling.
std::size_t rank(const RationalMatrix& m);
/// Leading principal minors det(A[0..k, 0..k]), k = 1..n, stopping after
/// the first zero one.
std::vector<mpq_class> leading_principal_minors(const RationalMatrix& m);
/// Throws Singular.
RationalMatrix inverse(const RationalMatrix& m);

/// P with P(i, s(i)) = 1 on {1..n}.
RationalMatrix permutation_matrix(const Permutation& s, std::size_t n);

using FloatMatrix = Eigen::MatrixXd;

struct RankNormValue {
  std::size_t value = 0;
  std::string method;       // "exact-elimination" or "singular-threshold"
  double threshold = 0.0;   // absolute cut actually applied (numeric only)
  double smallest_retained = 0.0;
  double largest_dropped = 0.0;
  bool borderline = false;  // smallest retained value within 10x of the cut

  nlohmann::ordered_json to_json() const;
};

inline constexpr double kDefaultTau = 1e-8;

/// rk(g - I). Throws Singular when g is not invertible.
RankNormValue rank_norm_exact(const RationalMatrix& g);
/// Singular values of g - I above tau * max(1, largest singular value).
RankNormValue rank_norm_numeric(const FloatMatrix& g, double tau = kDefaultTau);
/// Same threshold rule applied to an arbitrary matrix.
RankNormValue numeric_rank(const FloatMatrix& m, double tau = kDefaultTau);

/// Top-left block of an invertible upper-triangular matrix. Throws
/// NotTriangular or Singular.
RationalMatrix triangular_project(const RationalMatrix& g);
/// Leading principal submatrix. Throws NotSymmetric or NotPositiveDefinite.
RationalMatrix spd_project(const RationalMatrix& a);
bool is_upper_triangular(const RationalMatrix& m);
bool is_symmetric(const RationalMatrix& m);
bool is_positive_definite(const RationalMatrix& m);

/// Rotation in span{x, e_n} taking x to e_n; identity for e_n and the
/// half-turn in the (e_{n-1}, e_n) plane for -e_n. Throws NotUnit.
FloatMatrix elementary_rotation(const Eigen::VectorXd& x);
/// Throws NotOrthogonal when |g^T g - I|_max > 1e-8, NotSpecial when det < 0.
void check_special_orthogonal(const FloatMatrix& g);
/// Top-left block of R_{g e_n} g. Throws as check_special_orthogonal.
FloatMatrix so_project(const FloatMatrix& g);
/// diag(g, 1).
FloatMatrix embed(const FloatMatrix& g);
/// Whether the numeric rank norm of g is even. Throws as so_project.
bool verify_rank_parity(const FloatMatrix& g, double tau = kDefaultTau);

/// Invertible upper-triangular matrix with small integer and half-integer
/// entries.
RationalMatrix random_upper_triangular(std::size_t n, std::mt19937_64& rng);
/// M^T M + I with integer M.
RationalMatrix random_spd(std::size_t n, std::mt19937_64& rng);
/// Haar sample: QR of a Gaussian matrix with sign and determinant fix.
FloatMatrix random_special_orthogonal(std::size_t n, std::mt19937_64& rng);
/// Rotation by angle in a random 2-plane.
FloatMatrix random_elementary_rotation(std::size_t n, double angle, std::mt19937_64& rng);

/// Pair samplers shared by the verifiers. Even variants are independent
/// samples; odd ones differ by a sparse unipotent factor, a rank-one term, or
/// one or two plane rotations.
std::pair<RationalMatrix, RationalMatrix> random_triangular_pair(std::size_t n, std::size_t variant,
                                                                 std::mt19937_64& rng);
std::pair<RationalMatrix, RationalMatrix> random_spd_pair(std::size_t n, std::size_t variant,
                                                          std::mt19937_64& rng);
std::pair<FloatMatrix, FloatMatrix> random_special_orthogonal_pair(std::size_t n, std::size_t variant,
                                                                   std::mt19937_64& rng);

std::string to_csv(const FloatMatrix& m);
FloatMatrix float_from_csv(std::string_view csv);

struct FamilyAudit {
  std::string family;
  std::size_t dimension = 0;
  std::size_t samples = 0;
  double tau = 0.0;  // numeric families only
  std::size_t borderline = 0;
  double min_retained_over_cut = 0.0;  // worst margin, numeric families only
  std::vector<BoundStats> checks;

  bool ok() const;
  nlohmann::ordered_json to_json() const;
};

/// Homomorphism, rank drop <= 1 and non-expansiveness of the triangular
/// projection on random pairs (half of them differ by a sparse unipotent).
FamilyAudit verify_triangular(std::size_t n, std::size_t pairs, std::mt19937_64& rng);
/// Positive definiteness of the projection, rank drop <= 2 and
/// non-expansiveness (half of the pairs differ by a rank-one term).
FamilyAudit verify_spd(std::size_t n, std::size_t pairs, std::mt19937_64& rng);
/// Rank parity, rank drop <= 2 and non-expansiveness of so_project; pairs
/// cycle through independent samples and one- or two-plane perturbations.
FamilyAudit verify_special_orthogonal(std::size_t n, std::size_t pairs, std::mt19937_64& rng,
                                      double tau = kDefaultTau);
/// rk(P - I) <= supp(s) <= 3 rk(P - I) for every s in S_n.
FamilyAudit verify_permutation_matrices(std::size_t n);

}  // namespace cinorm::mat
