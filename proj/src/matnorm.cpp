#include "cinorm/matnorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "cinorm/error.hpp"

namespace cinorm::mat {

namespace {

void require_square(const RationalMatrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": not square");
}

void require_same_shape(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return cells;
}

template <typename Cell, typename Parse>
std::vector<std::vector<Cell>> parse_csv_rows(std::string_view csv, Parse parse) {
  std::vector<std::vector<Cell>> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Cell> row;
    for (const auto& cell : split_csv_line(line)) {
      try {
        row.push_back(parse(cell));
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": bad entry '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

mpq_class parse_rational(const std::string& cell) {
  if (cell.empty()) throw Error(ErrorCode::ParseError, "empty entry");
  const auto slash = cell.find('/');
  mpq_class q;
  if (q.set_str(cell, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + cell + "'");
  if (slash != std::string::npos && mpz_class(cell.substr(slash + 1)) == 0) {
    throw Error(ErrorCode::ParseError, "zero denominator in '" + cell + "'");
  }
  q.canonicalize();
  return q;
}

// Integer matrix with each row scaled by the lcm of its denominators.
std::vector<std::vector<mpz_class>> integer_rows(const RationalMatrix& m) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
  }
  return out;
}

RationalMatrix minus_identity(const RationalMatrix& g) {
  RationalMatrix d = g;
  for (std::size_t i = 0; i < g.rows(); ++i) d(i, i) -= 1;
  return d;
}

bool is_invertible(const RationalMatrix& g) { return rank(g) == g.rows(); }

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpq_class(0)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<mpq_class>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rows[i][j];
      m(i, j).canonicalize();
    }
  }
  return m;
}

RationalMatrix RationalMatrix::from_csv(std::string_view csv) {
  return from_rows(parse_csv_rows<mpq_class>(csv, parse_rational));
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RationalMatrix RationalMatrix::leading_block(std::size_t k) const {
  if (k > rows_ || k > cols_) throw Error(ErrorCode::DimensionMismatch, "block larger than matrix");
  RationalMatrix b(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
  }
  return b;
}

RationalMatrix RationalMatrix::embed() const {
  RationalMatrix e(rows_ + 1, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) e(i, j) = (*this)(i, j);
  }
  e(rows_, cols_) = 1;
  return e;
}

std::string RationalMatrix::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out += ',';
      out += (*this)(i, j).get_str();
    }
    out += '\n';
  }
  return out;
}

std::string RationalMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i > 0) out += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out += ' ';
      out += (*this)(i, j).get_str();
    }
  }
  return out + "]";
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "product shapes differ");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) != 0) c(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  require_same_shape(a, b);
  RationalMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  }
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  require_same_shape(a, b);
  RationalMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  }
  return c;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::size_t rank(const RationalMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::vector<mpq_class> leading_principal_minors(const RationalMatrix& m) {
  require_square(m, "leading_principal_minors");
  RationalMatrix a = m;
  const std::size_t n = m.rows();
  std::vector<mpq_class> minors;
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    det *= a(k, k);
    minors.push_back(det);
    if (sgn(det) == 0) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      const mpq_class f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return minors;
}

RationalMatrix inverse(const RationalMatrix& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(a(pivot, c)) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::Singular, "matrix is not invertible");
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(c, j));
        std::swap(inv(pivot, j), inv(c, j));
      }
    }
    const mpq_class p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a(i, c)) == 0) continue;
      const mpq_class f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RationalMatrix permutation_matrix(const Permutation& s, std::size_t n) {
  if (s.largest_moved_point() > n) {
    throw Error(ErrorCode::SupportExceedsDegree, s.to_string() + " moves points above " +
                                                     std::to_string(n));
  }
  RationalMatrix p(n, n);
  for (std::size_t i = 1; i <= n; ++i) p(i - 1, s(static_cast<Point>(i)) - 1) = 1;
  return p;
}

nlohmann::ordered_json RankNormValue::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["method"] = method;
  if (method == "singular-threshold") {
    j["threshold"] = threshold;
    j["smallest_retained"] = smallest_retained;
    j["largest_dropped"] = largest_dropped;
    j["borderline"] = borderline;
  }
  return j;
}

RankNormValue rank_norm_exact(const RationalMatrix& g) {
  require_square(g, "rank_norm_exact");
  if (!is_invertible(g)) throw Error(ErrorCode::Singular, "rank norm needs an invertible matrix");
  RankNormValue v;
  v.method = "exact-elimination";
  v.value = rank(minus_identity(g));
  return v;
}

RankNormValue numeric_rank(const FloatMatrix& m, double tau) {
  RankNormValue v;
  v.method = "singular-threshold";
  if (m.size() == 0) return v;
  Eigen::JacobiSVD<FloatMatrix> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  const double cut = tau * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  v.threshold = cut;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) {
      ++v.value;
      v.smallest_retained = s(i);
    } else {
      v.largest_dropped = std::max(v.largest_dropped, s(i));
    }
  }
  v.borderline = v.value > 0 && v.smallest_retained <= 10.0 * cut;
  return v;
}

RankNormValue rank_norm_numeric(const FloatMatrix& g, double tau) {
  if (g.rows() != g.cols()) throw Error(ErrorCode::DimensionMismatch, "rank_norm_numeric: not square");
  return numeric_rank(g - FloatMatrix::Identity(g.rows(), g.cols()), tau);
}

bool is_upper_triangular(const RationalMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 1; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (sgn(m(i, j)) != 0) return false;
    }
  }
  return true;
}

bool is_symmetric(const RationalMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return true;
}

bool is_positive_definite(const RationalMatrix& m) {
  if (!is_symmetric(m)) return false;
  const auto minors = leading_principal_minors(m);
  if (minors.size() != m.rows()) return false;
  return std::all_of(minors.begin(), minors.end(), [](const mpq_class& d) { return sgn(d) > 0; });
}

RationalMatrix triangular_project(const RationalMatrix& g) {
  if (!is_upper_triangular(g)) throw Error(ErrorCode::NotTriangular, "not upper-triangular");
  if (g.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (sgn(g(i, i)) == 0) throw Error(ErrorCode::Singular, "zero diagonal entry");
  }
  return g.leading_block(g.rows() - 1);
}

RationalMatrix spd_project(const RationalMatrix& a) {
  if (!is_symmetric(a)) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
  if (a.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  if (!is_positive_definite(a)) {
    throw Error(ErrorCode::NotPositiveDefinite, "a leading principal minor is not positive");
  }
  return a.leading_block(a.rows() - 1);
}

FloatMatrix elementary_rotation(const Eigen::VectorXd& x) {
  const auto n = x.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty vector");
  if (std::abs(x.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotUnit, "vector norm is " + std::to_string(x.norm()));
  }
  FloatMatrix r = FloatMatrix::Identity(n, n);
  const double c = x(n - 1);
  Eigen::VectorXd v = x;
  v(n - 1) = 0.0;
  const double s = v.norm();
  if (s == 0.0) {
    if (c > 0) return r;
    if (n < 2) throw Error(ErrorCode::DimensionMismatch, "no rotation takes -e_1 to e_1 in dimension 1");
    r(n - 2, n - 2) = -1.0;
    r(n - 1, n - 1) = -1.0;
    return r;
  }
  const Eigen::VectorXd u = v / s;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e(n - 1) = 1.0;
  r += (c - 1.0) * (u * u.transpose() + e * e.transpose()) + s * (e * u.transpose() - u * e.transpose());
  return r;
}

void check_special_orthogonal(const FloatMatrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "expected a non-empty square matrix");
  }
  const double err =
      (g.transpose() * g - FloatMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-8) {
    throw Error(ErrorCode::NotOrthogonal, "|g^T g - I|_max = " + std::to_string(err));
  }
  if (g.determinant() < 0) throw Error(ErrorCode::NotSpecial, "determinant is negative");
}

FloatMatrix so_project(const FloatMatrix& g) {
  check_special_orthogonal(g);
  const auto n = g.rows();
  Eigen::VectorXd x = g.col(n - 1);
  x /= x.norm();
  const FloatMatrix rg = elementary_rotation(x) * g;
  return rg.topLeftCorner(n - 1, n - 1);
}

FloatMatrix embed(const FloatMatrix& g) {
  FloatMatrix e = FloatMatrix::Identity(g.rows() + 1, g.cols() + 1);
  e.topLeftCorner(g.rows(), g.cols()) = g;
  return e;
}

bool verify_rank_parity(const FloatMatrix& g, double tau) {
  check_special_orthogonal(g);
  return rank_norm_numeric(g, tau).value % 2 == 0;
}

namespace {

mpq_class small_rational(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, 3);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

mpq_class nonzero_small_rational(std::mt19937_64& rng) {
  for (;;) {
    auto q = small_rational(rng, -3, 3);
    if (sgn(q) != 0) return q;
  }
}

// I plus one or two random entries strictly above the diagonal.
RationalMatrix sparse_unipotent(std::size_t n, std::mt19937_64& rng) {
  RationalMatrix u = RationalMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> count(1, 2);
  std::uniform_int_distribution<std::size_t> col(1, n - 1);
  const auto k = count(rng);
  for (std::size_t t = 0; t < k; ++t) {
    const auto j = col(rng);
    std::uniform_int_distribution<std::size_t> row(0, j - 1);
    u(row(rng), j) = nonzero_small_rational(rng);
  }
  return u;
}

Eigen::VectorXd gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = normal(rng);
  return v;
}

}  // namespace

RationalMatrix random_upper_triangular(std::size_t n, std::mt19937_64& rng) {
  RationalMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = nonzero_small_rational(rng);
    for (std::size_t j = i + 1; j < n; ++j) g(i, j) = small_rational(rng, -3, 3);
  }
  return g;
}

RationalMatrix random_spd(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  }
  return m.transpose() * m + RationalMatrix::identity(n);
}

FloatMatrix random_special_orthogonal(std::size_t n, std::mt19937_64& rng) {
  const auto dim = static_cast<Eigen::Index>(n);
  FloatMatrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) z.col(j) = gaussian_vector(n, rng);
  Eigen::HouseholderQR<FloatMatrix> qr(z);
  FloatMatrix q = qr.householderQ() * FloatMatrix::Identity(dim, dim);
  const FloatMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

FloatMatrix random_elementary_rotation(std::size_t n, double angle, std::mt19937_64& rng) {
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "rotations need dimension >= 2");
  Eigen::VectorXd u = gaussian_vector(n, rng);
  u.normalize();
  Eigen::VectorXd v = gaussian_vector(n, rng);
  v -= v.dot(u) * u;
  v.normalize();
  const auto dim = static_cast<Eigen::Index>(n);
  return FloatMatrix::Identity(dim, dim) +
         (std::cos(angle) - 1.0) * (u * u.transpose() + v * v.transpose()) +
         std::sin(angle) * (v * u.transpose() - u * v.transpose());
}

std::pair<RationalMatrix, RationalMatrix> random_triangular_pair(std::size_t n, std::size_t variant,
                                                                 std::mt19937_64& rng) {
  auto g = random_upper_triangular(n, rng);
  auto h = variant % 2 == 0 ? random_upper_triangular(n, rng) : g * sparse_unipotent(n, rng);
  return {std::move(g), std::move(h)};
}

std::pair<RationalMatrix, RationalMatrix> random_spd_pair(std::size_t n, std::size_t variant,
                                                          std::mt19937_64& rng) {
  auto a = random_spd(n, rng);
  if (variant % 2 == 0) return {a, random_spd(n, rng)};
  std::uniform_int_distribution<int> entry(-3, 3);
  RationalMatrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = entry(rng);
  auto b = a + v * v.transpose();
  return {std::move(a), std::move(b)};
}

std::pair<FloatMatrix, FloatMatrix> random_special_orthogonal_pair(std::size_t n, std::size_t variant,
                                                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.01, std::numbers::pi);
  auto g = random_special_orthogonal(n, rng);
  switch (variant % 3) {
    case 0: return {g, random_special_orthogonal(n, rng)};
    case 1: return {g, g * random_elementary_rotation(n, angle(rng), rng)};
    default: {
      FloatMatrix h = g * random_elementary_rotation(n, angle(rng), rng);
      h = h * random_elementary_rotation(n, angle(rng), rng);
      return {std::move(g), std::move(h)};
    }
  }
}

std::string to_csv(const FloatMatrix& m) {
  std::string out;
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

FloatMatrix float_from_csv(std::string_view csv) {
  const auto rows = parse_csv_rows<double>(csv, [](const std::string& cell) {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  });
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size());
  FloatMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

bool FamilyAudit::ok() const {
  return borderline == 0 &&
         std::all_of(checks.begin(), checks.end(), [](const BoundStats& b) { return b.ok(); });
}

nlohmann::ordered_json FamilyAudit::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["dimension"] = dimension;
  j["samples"] = samples;
  if (tau > 0) {
    j["tau"] = tau;
    j["borderline"] = borderline;
    j["min_retained_over_cut"] = min_retained_over_cut;
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) j["checks"].push_back(c.to_json());
  j["ok"] = ok();
  return j;
}

FamilyAudit verify_triangular(std::size_t n, std::size_t pairs, std::mt19937_64& rng) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  FamilyAudit audit;
  audit.family = "upper-triangular";
  audit.dimension = n;
  audit.samples = pairs;
  BoundStats hom("triangular_homomorphism", "p(gh) = p(g) p(h)");
  BoundStats drop("triangular_rank_drop", "rk(p(g) g^-1 - I) <= 1");
  BoundStats nonexp("triangular_nonexpansive", "rk(p(g) p(h)^-1 - I) <= rk(g h^-1 - I)");
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto [g, h] = random_triangular_pair(n, t, rng);
    const auto pg = triangular_project(g);
    const auto ph = triangular_project(h);
    if (hom.record_holds(triangular_project(g * h) == pg * ph) && hom.witness.empty()) {
      hom.witness = "g=" + g.to_string() + " h=" + h.to_string();
    }
    // rk(AB^-1 - I) = rk(A - B) for invertible B.
    for (const RationalMatrix* x : {&g, &h}) {
      const auto px = triangular_project(*x);
      if (drop.record(rank(px.embed() - *x), 1) && drop.witness.empty()) {
        drop.witness = "g=" + x->to_string();
      }
    }
    if (nonexp.record(rank(pg - ph), rank(g - h)) && nonexp.witness.empty()) {
      nonexp.witness = "g=" + g.to_string() + " h=" + h.to_string();
    }
  }
  audit.checks = {hom, drop, nonexp};
  return audit;
}

FamilyAudit verify_spd(std::size_t n, std::size_t pairs, std::mt19937_64& rng) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  FamilyAudit audit;
  audit.family = "positive-definite";
  audit.dimension = n;
  audit.samples = pairs;
  BoundStats pd("spd_positive_definite", "p(A) is symmetric positive definite");
  BoundStats drop("spd_rank_drop", "rk(p(A) A^-1 - I) <= 2");
  BoundStats nonexp("spd_nonexpansive", "rk(p(A) - p(B)) <= rk(A - B)");
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto [a, b] = random_spd_pair(n, t, rng);
    const auto pa = spd_project(a);
    const auto pb = spd_project(b);
    for (const RationalMatrix* m : {&pa, &pb}) {
      if (pd.record_holds(m->rows() == 0 || is_positive_definite(*m)) && pd.witness.empty()) {
        pd.witness = "p(A)=" + m->to_string();
      }
    }
    for (const RationalMatrix* x : std::array<const RationalMatrix*, 2>{&a, &b}) {
      if (drop.record(rank(spd_project(*x).embed() - *x), 2) && drop.witness.empty()) {
        drop.witness = "A=" + x->to_string();
      }
    }
    if (nonexp.record(rank(pa - pb), rank(a - b)) && nonexp.witness.empty()) {
      nonexp.witness = "A=" + a.to_string() + " B=" + b.to_string();
    }
  }
  audit.checks = {pd, drop, nonexp};
  return audit;
}

FamilyAudit verify_special_orthogonal(std::size_t n, std::size_t pairs, std::mt19937_64& rng,
                                      double tau) {
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "dimension must be at least 2");
  FamilyAudit audit;
  audit.family = "special-orthogonal";
  audit.dimension = n;
  audit.samples = pairs;
  audit.tau = tau;
  audit.min_retained_over_cut = std::numeric_limits<double>::infinity();
  BoundStats parity("so_rank_parity", "rk(g - I) is even");
  BoundStats fixes("so_fixes_last_axis", "R_{g e_n} g e_n = e_n");
  BoundStats drop("so_rank_drop", "rk(p(g) g^-1 - I) <= 2");
  BoundStats nonexp("so_nonexpansive", "rk(p(g) p(h)^-1 - I) <= rk(g h^-1 - I)");
  auto measure = [&](const FloatMatrix& m) {
    const auto v = numeric_rank(m, tau);
    if (v.borderline) ++audit.borderline;
    if (v.value > 0) {
      audit.min_retained_over_cut = std::min(audit.min_retained_over_cut, v.smallest_retained / v.threshold);
    }
    return v.value;
  };
  const auto dim = static_cast<Eigen::Index>(n);
  const FloatMatrix id = FloatMatrix::Identity(dim, dim);

  for (std::size_t t = 0; t < pairs; ++t) {
    const auto [g, h] = random_special_orthogonal_pair(n, t, rng);
    for (const FloatMatrix* x : std::array<const FloatMatrix*, 2>{&g, &h}) {
      const auto rk = measure(*x - id);
      if (parity.record_holds(rk % 2 == 0) && parity.witness.empty()) {
        parity.witness = "rank " + std::to_string(rk) + " for g=\n" + to_csv(*x);
      }
      Eigen::VectorXd col = x->col(dim - 1);
      col.normalize();
      const Eigen::VectorXd last = elementary_rotation(col) * x->col(dim - 1);
      const bool fixed = (last - id.col(dim - 1)).cwiseAbs().maxCoeff() <= 1e-8;
      if (fixes.record_holds(fixed) && fixes.witness.empty()) fixes.witness = "g=\n" + to_csv(*x);
      const auto px = so_project(*x);
      if (drop.record(measure(embed(px) - *x), 2) && drop.witness.empty()) {
        drop.witness = "g=\n" + to_csv(*x);
      }
    }
    const auto lhs = measure(so_project(g) - so_project(h));
    const auto rhs = measure(g - h);
    if (nonexp.record(lhs, rhs) && nonexp.witness.empty()) {
      nonexp.witness = "g=\n" + to_csv(g) + "h=\n" + to_csv(h);
    }
  }
  if (!std::isfinite(audit.min_retained_over_cut)) audit.min_retained_over_cut = 0.0;
  audit.checks = {parity, fixes, drop, nonexp};
  return audit;
}

FamilyAudit verify_permutation_matrices(std::size_t n) {
  FamilyAudit audit;
  audit.family = "permutation-matrices";
  audit.dimension = n;
  BoundStats upper("perm_rank_le_supp", "rk(P - I) <= supp");
  BoundStats lower("perm_supp_le_3rank", "supp <= 3 rk(P - I)");
  for (const auto& s : all_permutations(n)) {
    ++audit.samples;
    const auto rk = rank_norm_exact(permutation_matrix(s, n)).value;
    const auto supp = s.support_size();
    if (upper.record(rk, supp) && upper.witness.empty()) upper.witness = s.to_string();
    if (lower.record(supp, 3 * rk) && lower.witness.empty()) lower.witness = s.to_string();
  }
  audit.checks = {upper, lower};
  return audit;
}

}  // namespace cinorm::mat
