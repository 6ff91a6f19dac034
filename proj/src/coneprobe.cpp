#include "cinorm/coneprobe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "cinorm/error.hpp"
#include "cinorm/intnorm.hpp"
#include "cinorm/permutation.hpp"

namespace cinorm::cone {

Scaling Scaling::linear() { return power(1.0); }

Scaling Scaling::power(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::OutOfRange, "scaling exponent must be positive");
  Scaling s;
  s.alpha_ = alpha;
  return s;
}

Scaling Scaling::table(std::map<std::size_t, double> values) {
  for (const auto& [n, v] : values) {
    if (!(v > 0.0)) throw Error(ErrorCode::OutOfRange, "scaling at " + std::to_string(n) + " is not positive");
  }
  Scaling s;
  s.kind_ = Kind::Table;
  s.table_ = std::move(values);
  return s;
}

double Scaling::operator()(std::size_t n) const {
  if (kind_ == Kind::Power) return factor_ * std::pow(static_cast<double>(n), alpha_);
  const auto it = table_.find(n);
  if (it == table_.end()) throw Error(ErrorCode::OutOfRange, "no scaling value for stage " + std::to_string(n));
  return factor_ * it->second;
}

Scaling Scaling::scaled(double c) const {
  if (!(c > 0.0)) throw Error(ErrorCode::OutOfRange, "scale factor must be positive");
  Scaling s = *this;
  s.factor_ *= c;
  return s;
}

std::string Scaling::describe() const {
  char buf[64];
  std::string out;
  if (factor_ != 1.0) {
    std::snprintf(buf, sizeof buf, "%.17g * ", factor_);
    out = buf;
  }
  if (kind_ == Kind::Table) return out + "table";
  if (alpha_ == 1.0) return out + "n";
  std::snprintf(buf, sizeof buf, "n^%.17g", alpha_);
  return out + buf;
}

void ScaledSequence::validate() const {
  if (stages.empty()) throw Error(ErrorCode::OutOfRange, "sequence has no stages");
  for (const auto& st : stages) {
    if (st.norm < 0.0) throw Error(ErrorCode::OutOfRange, "negative norm at stage " + std::to_string(st.index));
    if (!(scaling(st.index) > 0.0)) {
      throw Error(ErrorCode::OutOfRange, "scaling not positive at stage " + std::to_string(st.index));
    }
  }
  if (stages.size() > 1 && !(scaling(stages.back().index) > scaling(stages.front().index))) {
    throw Error(ErrorCode::OutOfRange, "scaling does not grow over the recorded stages");
  }
}

std::vector<double> ScaledSequence::normalized() const {
  std::vector<double> out;
  out.reserve(stages.size());
  for (const auto& st : stages) out.push_back(st.norm / scaling(st.index));
  return out;
}

std::string ScaledSequence::to_csv() const {
  std::string out = "n,norm,scaling,normalized\n";
  char buf[128];
  for (const auto& st : stages) {
    const double s = scaling(st.index);
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", st.index, st.norm, s, st.norm / s);
    out += buf;
  }
  return out;
}

nlohmann::ordered_json Admissibility::to_json() const {
  return {{"admissible", admissible}, {"max_ratio", max_ratio}, {"witness_stage", witness_stage}};
}

Admissibility admissibility(const ScaledSequence& seq, double bound) {
  seq.validate();
  Admissibility out;
  const auto values = seq.normalized();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || values[i] > out.max_ratio) {
      out.max_ratio = values[i];
      out.witness_stage = seq.stages[i].index;
    }
  }
  out.admissible = out.max_ratio <= bound;
  return out;
}

nlohmann::ordered_json UltralimitEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["stages"] = series.size();
  j["tail_length"] = tail_length;
  j["tail_min"] = tail_min;
  j["tail_max"] = tail_max;
  j["tail_mean"] = tail_mean;
  j["tolerance"] = tolerance;
  j["converged"] = converged;
  return j;
}

UltralimitEstimate estimate_limit(const std::vector<double>& values, double tail_fraction,
                                  double tolerance) {
  if (values.empty()) throw Error(ErrorCode::OutOfRange, "no values");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "tail fraction must lie in (0, 1]");
  }
  UltralimitEstimate e;
  e.series = values;
  e.tolerance = tolerance;
  e.tail_length = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(values.size()))));
  e.tail_length = std::min(e.tail_length, values.size());
  const auto begin = values.end() - static_cast<std::ptrdiff_t>(e.tail_length);
  const auto [lo, hi] = std::minmax_element(begin, values.end());
  e.tail_min = *lo;
  e.tail_max = *hi;
  e.tail_mean = std::accumulate(begin, values.end(), 0.0) / static_cast<double>(e.tail_length);
  // Rounding in the mean must not leave it outside [min, max].
  e.tail_mean = std::clamp(e.tail_mean, e.tail_min, e.tail_max);
  e.converged = e.tail_max - e.tail_min <= tolerance;
  return e;
}

bool SequenceContractionAudit::ok() const {
  return borderline == 0 && displacement.ok() && nonexpansive.ok() && inclusion.ok();
}

nlohmann::ordered_json SequenceContractionAudit::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["stages"] = {first_stage, last_stage};
  j["samples_per_stage"] = samples_per_stage;
  j["claimed_k"] = claimed_k;
  j["observed_k"] = observed_k;
  j["borderline"] = borderline;
  j["checks"] = {displacement.to_json(), nonexpansive.to_json(), inclusion.to_json()};
  j["ok"] = ok();
  return j;
}

StageFamily<mat::RationalMatrix> triangular_family() {
  StageFamily<mat::RationalMatrix> f;
  f.name = "upper-triangular";
  f.sample_pair = [](std::size_t n, std::size_t v, std::mt19937_64& rng) {
    return mat::random_triangular_pair(n, v, rng);
  };
  f.project = [](std::size_t, const mat::RationalMatrix& g) { return mat::triangular_project(g); };
  f.include = [](std::size_t, const mat::RationalMatrix& g) { return g.embed(); };
  f.distance = [](std::size_t, const mat::RationalMatrix& a, const mat::RationalMatrix& b) {
    return Distance{mat::rank(a - b), false};
  };
  f.format = [](const mat::RationalMatrix& g) { return g.to_string(); };
  return f;
}

StageFamily<mat::RationalMatrix> spd_family() {
  StageFamily<mat::RationalMatrix> f = triangular_family();
  f.name = "positive-definite";
  f.sample_pair = [](std::size_t n, std::size_t v, std::mt19937_64& rng) {
    return mat::random_spd_pair(n, v, rng);
  };
  f.project = [](std::size_t, const mat::RationalMatrix& a) { return mat::spd_project(a); };
  return f;
}

StageFamily<mat::FloatMatrix> special_orthogonal_family(double tau) {
  StageFamily<mat::FloatMatrix> f;
  f.name = "special-orthogonal";
  f.sample_pair = [](std::size_t n, std::size_t v, std::mt19937_64& rng) {
    return mat::random_special_orthogonal_pair(n, v, rng);
  };
  f.project = [](std::size_t, const mat::FloatMatrix& g) { return mat::so_project(g); };
  f.include = [](std::size_t, const mat::FloatMatrix& g) { return mat::embed(g); };
  f.distance = [tau](std::size_t, const mat::FloatMatrix& a, const mat::FloatMatrix& b) {
    const auto v = mat::numeric_rank(a - b, tau);
    return Distance{v.value, v.borderline};
  };
  f.format = [](const mat::FloatMatrix& g) { return "\n" + mat::to_csv(g); };
  return f;
}

double zmod_to_circle(std::uint64_t k, std::uint64_t n) {
  if (n == 0 || k >= n) throw Error(ErrorCode::OutOfRange, "need 0 <= k < n");
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
}

mpq_class zmod_to_turns(std::uint64_t k, std::uint64_t n) {
  if (n == 0 || k >= n) throw Error(ErrorCode::OutOfRange, "need 0 <= k < n");
  mpq_class q(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(n)));
  q.canonicalize();
  return q;
}

namespace {

std::uint64_t tie_smaller(std::uint64_t k, std::uint64_t n) {
  const std::uint64_t a = k % n;
  const std::uint64_t b = (k + 1) % n;
  return std::min(a, b);
}

// Nearest residue to (num / den) * n turns with num / den in [0, 1).
std::uint64_t round_turns(const mpz_class& num, const mpz_class& den, std::uint64_t n) {
  const mpz_class scaled = num * static_cast<unsigned long>(n);
  mpz_class k, r;
  mpz_fdiv_qr(k.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  const auto kk = static_cast<std::uint64_t>(k.get_ui());
  const int c = cmp(2 * r, den);
  if (c < 0) return kk % n;
  if (c > 0) return (kk + 1) % n;
  return tie_smaller(kk, n);
}

}  // namespace

std::uint64_t circle_to_zmod(double angle, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "modulus must be positive");
  if (!std::isfinite(angle)) throw Error(ErrorCode::OutOfRange, "angle is not finite");
  double t = angle / (2.0 * std::numbers::pi);
  t -= std::floor(t);
  const double x = t * static_cast<double>(n);
  const double k = std::floor(x);
  const double frac = x - k;
  const auto kk = static_cast<std::uint64_t>(k);
  if (std::abs(frac - 0.5) <= 1e-9) return tie_smaller(kk, n);
  return (frac < 0.5 ? kk : kk + 1) % n;
}

std::uint64_t turns_to_zmod(const mpq_class& turns, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "modulus must be positive");
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), turns.get_num_mpz_t(), turns.get_den_mpz_t());
  const mpq_class t = turns - fl;
  return round_turns(t.get_num(), t.get_den(), n);
}

mpq_class arc_turns(const mpq_class& x, const mpq_class& y) {
  mpq_class d = x - y;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), d.get_num_mpz_t(), d.get_den_mpz_t());
  d -= fl;
  const mpq_class other = 1 - d;
  return d < other ? d : other;
}

std::uint64_t zmod_distance(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  const std::uint64_t d = (a >= b ? a - b : b - a) % n;
  return std::min(d, n - d);
}

bool CircleAudit::ok() const {
  return roundtrip.ok() && arc_identity.ok() && rounding.ok() && lipschitz.ok() && float_agrees.ok();
}

nlohmann::ordered_json CircleAudit::to_json() const {
  nlohmann::ordered_json j;
  j["roundtrip_moduli"] = max_roundtrip_modulus;
  j["arc_moduli"] = max_arc_modulus;
  j["grid_moduli"] = max_grid_modulus;
  j["grid_points"] = grid_points;
  j["max_lipschitz_ratio"] = max_lipschitz_ratio;
  j["checks"] = {roundtrip.to_json(), arc_identity.to_json(), rounding.to_json(), lipschitz.to_json(),
                 float_agrees.to_json()};
  j["ok"] = ok();
  return j;
}

CircleAudit verify_circle(std::uint64_t roundtrip_max, std::uint64_t arc_max, std::uint64_t grid_max,
                          std::uint64_t grid, std::size_t random_partners, std::mt19937_64& rng) {
  if (grid == 0) throw Error(ErrorCode::OutOfRange, "grid must be non-empty");
  CircleAudit audit;
  audit.max_roundtrip_modulus = roundtrip_max;
  audit.max_arc_modulus = arc_max;
  audit.max_grid_modulus = grid_max;
  audit.grid_points = grid;

  for (std::uint64_t n = 1; n <= roundtrip_max; ++n) {
    for (std::uint64_t k = 0; k < n; ++k) {
      const bool exact = turns_to_zmod(zmod_to_turns(k, n), n) == k;
      const bool floating = circle_to_zmod(zmod_to_circle(k, n), n) == k;
      if (audit.roundtrip.record_holds(exact && floating) && audit.roundtrip.witness.empty()) {
        audit.roundtrip.witness = "k=" + std::to_string(k) + " n=" + std::to_string(n);
      }
    }
  }

  auto arc_pair = [&](std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    const mpq_class lhs = arc_turns(zmod_to_turns(a, n), zmod_to_turns(b, n));
    mpq_class rhs(mpz_class(static_cast<unsigned long>(zmod_distance(a, b, n))),
                  mpz_class(static_cast<unsigned long>(n)));
    rhs.canonicalize();
    if (audit.arc_identity.record_holds(lhs == rhs) && audit.arc_identity.witness.empty()) {
      audit.arc_identity.witness = "a=" + std::to_string(a) + " b=" + std::to_string(b) + " n=" + std::to_string(n);
    }
  };
  // All pairs up to arc_max; beyond it, every difference against 0 in both
  // orders up to roundtrip_max.
  for (std::uint64_t n = 1; n <= std::max(arc_max, roundtrip_max); ++n) {
    for (std::uint64_t a = 0; a < n; ++a) {
      if (n <= arc_max) {
        for (std::uint64_t b = 0; b < n; ++b) arc_pair(a, b, n);
      } else {
        arc_pair(a, 0, n);
        arc_pair(0, a, n);
      }
    }
  }

  // 314159265 / 10^8 < pi, so the integer test below is at least as strict
  // as the real one.
  constexpr std::int64_t kPiNum = 314159265;
  constexpr std::int64_t kPiDen = 100000000;
  const auto N = static_cast<std::int64_t>(grid);
  std::uniform_int_distribution<std::uint64_t> pick(0, grid - 1);
  std::vector<std::uint64_t> theta(grid);
  for (std::uint64_t n = 1; n <= grid_max; ++n) {
    const auto nn = static_cast<std::int64_t>(n);
    for (std::uint64_t j = 0; j < grid; ++j) {
      theta[j] = round_turns(mpz_class(static_cast<unsigned long>(j)), mpz_class(static_cast<unsigned long>(grid)), n);
      // Circular distance between j n / N and theta_j in units of 1 / N steps.
      const std::int64_t period = nn * N;
      std::int64_t d = (static_cast<std::int64_t>(j) * nn - static_cast<std::int64_t>(theta[j]) * N) % period;
      if (d < 0) d += period;
      d = std::min(d, period - d);
      if (audit.rounding.record_holds(2 * d <= N) && audit.rounding.witness.empty()) {
        audit.rounding.witness = "j=" + std::to_string(j) + " n=" + std::to_string(n);
      }
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
      if (audit.float_agrees.record_holds(circle_to_zmod(angle, n) == theta[j]) &&
          audit.float_agrees.witness.empty()) {
        audit.float_agrees.witness = "j=" + std::to_string(j) + " n=" + std::to_string(n);
      }
    }
    auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
      const auto delta = static_cast<std::int64_t>(zmod_distance(theta[a], theta[b], n));
      std::int64_t m = a >= b ? static_cast<std::int64_t>(a - b) : static_cast<std::int64_t>(b - a);
      m = std::min(m, N - m);
      const bool holds = delta <= 2 || (delta - 2) * N * kPiDen <= 2 * kPiNum * nn * m;
      const double bound = 2.0 * std::numbers::pi * static_cast<double>(n * static_cast<std::uint64_t>(m)) /
                               static_cast<double>(grid) + 2.0;
      audit.max_lipschitz_ratio = std::max(audit.max_lipschitz_ratio, static_cast<double>(delta) / bound);
      if (audit.lipschitz.record_holds(holds) && audit.lipschitz.witness.empty()) {
        audit.lipschitz.witness = "j=" + std::to_string(a) + " j'=" + std::to_string(b) +
                                  " n=" + std::to_string(n);
      }
    };
    for (std::uint64_t j = 0; j < grid; ++j) {
      check_pair(j, (j + 1) % grid);
      check_pair(j, (j + grid / 2) % grid);
      for (std::size_t r = 0; r < random_partners; ++r) check_pair(j, pick(rng));
    }
  }
  return audit;
}

namespace {

double permutation_norm(std::size_t cycle_length, std::string* element) {
  if (cycle_length < 2) {
    *element = "()";
    return 0.0;
  }
  std::vector<Point> cycle(cycle_length);
  std::iota(cycle.begin(), cycle.end(), Point{1});
  const auto p = Permutation::from_cycles({cycle});
  *element = cycle_length <= 16 ? p.to_string() : "(1 2 ... " + std::to_string(cycle_length) + ")";
  return static_cast<double>(supp_norm(p));
}

}  // namespace

SequenceSpec parse_sequence_spec(std::string_view json_text) {
  SequenceSpec spec;
  try {
    const auto j = nlohmann::json::parse(json_text);
    spec.family = j.at("family").get<std::string>();
    spec.from = j.value("from", std::size_t{1});
    spec.to = j.value("to", spec.from);
    spec.step = j.value("step", std::size_t{1});
    spec.bound = j.value("bound", 1.0);
    spec.tail_fraction = j.value("tail_fraction", kDefaultTailFraction);
    spec.tolerance = j.value("tolerance", kDefaultTolerance);
    if (j.contains("scaling")) {
      const auto& s = j.at("scaling");
      const auto kind = s.value("kind", std::string("linear"));
      if (kind == "linear") {
        spec.scaling = Scaling::linear();
      } else if (kind == "power") {
        spec.scaling = Scaling::power(s.at("alpha").get<double>());
      } else if (kind == "table") {
        std::map<std::size_t, double> values;
        for (const auto& [k, v] : s.at("values").items()) values[std::stoul(k)] = v.get<double>();
        spec.scaling = Scaling::table(std::move(values));
      } else {
        throw Error(ErrorCode::ConfigInvalid, "unknown scaling kind '" + kind + "'");
      }
      if (s.contains("factor")) spec.scaling = spec.scaling.scaled(s.at("factor").get<double>());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    throw Error(ErrorCode::ConfigInvalid, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("sequence file: ") + e.what());
  }
  static const std::vector<std::string> kFamilies = {"identity", "cycle", "long_cycle", "swap_power",
                                                     "integer_xn"};
  if (std::find(kFamilies.begin(), kFamilies.end(), spec.family) == kFamilies.end()) {
    throw Error(ErrorCode::ConfigInvalid, "unknown family '" + spec.family + "'");
  }
  if (spec.from == 0 || spec.to < spec.from || spec.step == 0) {
    throw Error(ErrorCode::ConfigInvalid, "stage schedule must satisfy 1 <= from <= to, step >= 1");
  }
  if (spec.family == "long_cycle" && spec.to > 256) {
    throw Error(ErrorCode::ConfigInvalid, "long_cycle is capped at stage 256");
  }
  if (spec.family == "integer_xn" && spec.to > 200) {
    throw Error(ErrorCode::ConfigInvalid, "integer_xn is capped at stage 200");
  }
  return spec;
}

ScaledSequence build_sequence(const SequenceSpec& spec) {
  ScaledSequence seq;
  seq.description = spec.family + " for n in [" + std::to_string(spec.from) + ", " +
                    std::to_string(spec.to) + "], s_n = " + spec.scaling.describe();
  seq.scaling = spec.scaling;
  for (std::size_t n = spec.from; n <= spec.to; n += spec.step) {
    Stage st;
    st.index = n;
    if (spec.family == "identity") {
      st.element = "()";
    } else if (spec.family == "cycle") {
      st.norm = permutation_norm(n, &st.element);
    } else if (spec.family == "long_cycle") {
      st.norm = permutation_norm(n * n, &st.element);
    } else if (spec.family == "swap_power") {
      const bool odd = n % 2 == 1;
      st.element = odd ? "(1 2)" : "()";
      st.norm = odd ? 2.0 : 0.0;
    } else {
      const auto x = intnorm::x_n(static_cast<unsigned long>(n));
      const auto upper = intnorm::norm_upper(x, intnorm::FactorialGenerators(n + 1)).certificate.size();
      const auto lower = intnorm::lower_bound_xn(static_cast<unsigned long>(n));
      if (upper != lower) {
        throw Error(ErrorCode::ArgumentCheckFailed, "bounds for x(" + std::to_string(n) + ") differ");
      }
      st.element = "x(" + std::to_string(n) + ")";
      st.norm = static_cast<double>(lower);
    }
    seq.stages.push_back(std::move(st));
  }
  seq.validate();
  return seq;
}

nlohmann::ordered_json SequenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["sequence"] = sequence.description;
  j["admissibility"] = admissibility.to_json();
  j["estimate"] = estimate.to_json();
  return j;
}

SequenceReport run_sequence(const SequenceSpec& spec) {
  SequenceReport r;
  r.sequence = build_sequence(spec);
  r.admissibility = admissibility(r.sequence, spec.bound);
  r.estimate = estimate_limit(r.sequence.normalized(), spec.tail_fraction, spec.tolerance);
  return r;
}

}  // namespace cinorm::cone
