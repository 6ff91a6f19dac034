#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cinorm/coneprobe.hpp"
#include "cinorm/error.hpp"

namespace cone = cinorm::cone;

namespace {

cone::ScaledSequence sequence(const std::string& family, std::size_t to) {
  cone::SequenceSpec spec;
  spec.family = family;
  spec.from = 2;
  spec.to = to;
  return cone::build_sequence(spec);
}

}  // namespace

TEST(Scaling, Kinds) {
  EXPECT_EQ(cone::Scaling::linear()(7), 7.0);
  EXPECT_DOUBLE_EQ(cone::Scaling::power(0.5)(16), 4.0);
  EXPECT_EQ(cone::Scaling::table({{1, 2.0}, {2, 5.0}})(2), 5.0);
  EXPECT_EQ(cone::Scaling::linear().scaled(3)(4), 12.0);
  EXPECT_THROW(cone::Scaling::table({{1, 2.0}})(3), cinorm::Error);
}

TEST(Admissibility, Examples) {
  const auto id = cone::admissibility(sequence("identity", 40), 1.0);
  EXPECT_TRUE(id.admissible);
  EXPECT_EQ(id.max_ratio, 0.0);
  const auto cyc = cone::admissibility(sequence("cycle", 40), 1.0);
  EXPECT_TRUE(cyc.admissible);
  EXPECT_EQ(cyc.max_ratio, 1.0);
  const auto lng = cone::admissibility(sequence("long_cycle", 40), 1.0);
  EXPECT_FALSE(lng.admissible);
  EXPECT_EQ(lng.max_ratio, 40.0);
  EXPECT_EQ(lng.witness_stage, 40u);
}

TEST(Admissibility, RejectsBadSequences) {
  cone::ScaledSequence s;
  s.stages = {{1, 1.0, ""}, {2, -1.0, ""}};
  EXPECT_THROW(s.validate(), cinorm::Error);
  s.stages = {{1, 1.0, ""}, {2, 1.0, ""}};
  s.scaling = cone::Scaling::table({{1, 3.0}, {2, 2.0}});
  EXPECT_THROW(s.validate(), cinorm::Error);
}

TEST(EstimateLimit, Examples) {
  const auto c = cone::estimate_limit(std::vector<double>(50, 2.5));
  EXPECT_TRUE(c.converged);
  EXPECT_EQ(c.tail_mean, 2.5);
  std::vector<double> h, alt;
  for (int n = 1; n <= 4000; ++n) {
    h.push_back(1.0 / n);
    alt.push_back(n % 2);
  }
  const auto eh = cone::estimate_limit(h);
  EXPECT_TRUE(eh.converged);
  EXPECT_LT(eh.tail_mean, 1e-3);
  EXPECT_FALSE(cone::estimate_limit(alt).converged);
  EXPECT_EQ(cone::estimate_limit({1, 2, 3, 4}, 0.5).tail_length, 2u);
  EXPECT_THROW(cone::estimate_limit({}), cinorm::Error);
  EXPECT_THROW(cone::estimate_limit({1.0}, 0.0), cinorm::Error);
}

TEST(Circle, Maps) {
  EXPECT_EQ(cone::zmod_to_circle(0, 7), 0.0);
  EXPECT_DOUBLE_EQ(cone::zmod_to_circle(4, 8), M_PI);
  EXPECT_DOUBLE_EQ(cone::zmod_to_circle(1, 8), M_PI / 4);
  EXPECT_THROW(cone::zmod_to_circle(8, 8), cinorm::Error);
  EXPECT_EQ(cone::circle_to_zmod(0.0, 5), 0u);
  EXPECT_EQ(cone::circle_to_zmod(M_PI / 8, 8), 0u);  // midpoint of 0 and 1
  EXPECT_EQ(cone::turns_to_zmod(mpq_class(1, 16), 8), 0u);
  EXPECT_EQ(cone::turns_to_zmod(mpq_class(3, 16), 8), 1u);
  EXPECT_EQ(cone::circle_to_zmod(2 * M_PI - 1e-6, 8), 0u);
  EXPECT_EQ(cone::arc_turns(mpq_class(1, 8), mpq_class(7, 8)), mpq_class(1, 4));
  EXPECT_EQ(cone::zmod_distance(1, 7, 8), 2u);
}

TEST(Circle, SmallAudit) {
  std::mt19937_64 rng(1);
  const auto a = cone::verify_circle(200, 24, 40, 1000, 2, rng);
  EXPECT_TRUE(a.ok()) << a.to_json().dump();
  EXPECT_LE(a.max_lipschitz_ratio, 1.0);
}

TEST(CircleProperty, LipschitzOnRandomAngles) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  for (std::uint64_t n = 1; n <= 64; ++n) {
    for (int t = 0; t < 300; ++t) {
      const double x = angle(rng), y = angle(rng);
      double arc = std::fabs(x - y);
      arc = std::min(arc, 2 * M_PI - arc);
      const auto d = cone::zmod_distance(cone::circle_to_zmod(x, n), cone::circle_to_zmod(y, n), n);
      EXPECT_LE(static_cast<double>(d), arc * static_cast<double>(n) + 2.0);
    }
  }
}

TEST(SequenceContraction, MatrixFamilies) {
  std::mt19937_64 rng(3);
  const auto tri = cone::check_sequence_contraction(cone::triangular_family(), 2, 6, 40, 1, rng);
  EXPECT_TRUE(tri.ok()) << tri.to_json().dump();
  EXPECT_EQ(tri.observed_k, 1u);
  const auto spd = cone::check_sequence_contraction(cone::spd_family(), 2, 6, 40, 2, rng);
  EXPECT_TRUE(spd.ok()) << spd.to_json().dump();
  EXPECT_LE(spd.observed_k, 2u);
  const auto so = cone::check_sequence_contraction(cone::special_orthogonal_family(1e-8), 2, 8, 40, 2, rng);
  EXPECT_TRUE(so.ok()) << so.to_json().dump();
  EXPECT_EQ(so.borderline, 0u);
  // K = 1 is too small for the positive definite family.
  const auto tight = cone::check_sequence_contraction(cone::spd_family(), 3, 6, 40, 1, rng);
  EXPECT_FALSE(tight.displacement.ok());
}

TEST(SequenceSpec, ParseAndRun) {
  const auto spec = cone::parse_sequence_spec(
      R"({"family": "integer_xn", "from": 1, "to": 8, "scaling": {"kind": "linear"}, "bound": 1.0})");
  const auto rep = cone::run_sequence(spec);
  EXPECT_TRUE(rep.admissibility.admissible);
  EXPECT_EQ(rep.admissibility.max_ratio, 1.0);
  EXPECT_NE(rep.sequence.to_csv().find("n,norm,scaling,normalized"), std::string::npos);

  const auto pw = cone::parse_sequence_spec(
      R"({"family": "cycle", "from": 2, "to": 50, "scaling": {"kind": "power", "alpha": 2.0}})");
  EXPECT_TRUE(cone::run_sequence(pw).estimate.tail_max < 0.05);

  EXPECT_THROW(cone::parse_sequence_spec(R"({"family": "nope", "from": 1, "to": 2})"), cinorm::Error);
  EXPECT_THROW(cone::parse_sequence_spec(R"({"family": "cycle", "from": 5, "to": 2})"), cinorm::Error);
  EXPECT_THROW(cone::parse_sequence_spec("[1, 2"), cinorm::Error);
}

TEST(ConeProperty, RescalingDividesNormalizedSeries) {
  const auto base = sequence("cycle", 64).normalized();
  cone::SequenceSpec spec;
  spec.family = "cycle";
  spec.from = 2;
  spec.to = 64;
  spec.scaling = cone::Scaling::linear().scaled(2.5);
  const auto scaled = cone::build_sequence(spec).normalized();
  ASSERT_EQ(base.size(), scaled.size());
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_DOUBLE_EQ(scaled[i], base[i] / 2.5);
}
