#include <gtest/gtest.h>

#include "cinorm/error.hpp"
#include "cinorm/intnorm.hpp"
#include "oracles.hpp"

namespace in = cinorm::intnorm;

namespace {

mpz_class sum(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace

TEST(IntNorm, Generators) {
  const in::FactorialGenerators g(4);
  EXPECT_EQ(g.members(), (std::vector<mpz_class>{1, 2, 8, 48, 384}));
  EXPECT_EQ(in::x_n(3), 24);
  EXPECT_EQ(in::x_n(5), 16 * 120);
  EXPECT_EQ(in::generator(3, 3), 27 * 6);
  EXPECT_EQ(g.index_of(48), std::optional<std::size_t>(3));
  EXPECT_FALSE(g.index_of(24).has_value());
}

TEST(IntNorm, UpperConstruction) {
  const auto r = in::norm_upper(24, in::FactorialGenerators(4));
  EXPECT_EQ(r.certificate, (std::vector<mpz_class>{8, 8, 8}));
  EXPECT_EQ(r.value.value_or(99) == 3 || r.upper_bound.value_or(99) == 3, true);
  EXPECT_TRUE(in::norm_upper(0, in::FactorialGenerators(2)).certificate.empty());
  const auto x5 = in::norm_upper(in::x_n(5), in::FactorialGenerators(6));
  EXPECT_EQ(x5.certificate.size(), 5u);
  EXPECT_EQ(sum(x5.certificate), in::x_n(5));
  EXPECT_THROW(in::norm_upper(1000, in::FactorialGenerators(2)), cinorm::Error);
}

TEST(IntNorm, ExactSearchExamples) {
  const in::FactorialGenerators g(6);
  EXPECT_EQ(in::norm_exact(24, g, 6).value, std::optional<std::size_t>(3));
  EXPECT_EQ(in::norm_exact(3, g, 6).value, std::optional<std::size_t>(2));
  EXPECT_EQ(in::norm_exact(48, g, 6).value, std::optional<std::size_t>(1));
  const auto r = in::norm_exact(3, g, 6);
  EXPECT_EQ(sum(r.certificate), 3);
}

TEST(IntNorm, ExactSearchMatchesBfsOracle) {
  const std::vector<std::int64_t> gens{1, 2, 8, 48, 384, 3840};
  const auto dist = oracle::integer_bfs(gens, 500, 4000);
  const in::FactorialGenerators g(5);
  for (std::int64_t x = -500; x <= 500; ++x) {
    const auto r = in::norm_exact(x, g, 6);
    if (dist.at(x) > 6) {
      EXPECT_FALSE(r.value.has_value()) << x;
      continue;
    }
    ASSERT_TRUE(r.value.has_value()) << x;
    EXPECT_EQ(*r.value, static_cast<std::size_t>(dist.at(x))) << x;
    EXPECT_EQ(sum(r.certificate), x);
  }
}

TEST(IntNorm, LowerArgument) {
  EXPECT_EQ(in::lower_bound_xn(1), 1u);
  EXPECT_EQ(in::lower_bound_xn(3), 3u);
  EXPECT_EQ(in::lower_bound_xn(8), 8u);
}

TEST(IntNorm, Torsion) {
  const auto rep = in::torsion_probe(1, 8);
  EXPECT_TRUE(rep.ok());
  ASSERT_EQ(rep.rows.size(), 8u);
  EXPECT_EQ(rep.rows[2].norm_xn, 3u);
  EXPECT_EQ(rep.rows[2].t_xn, 48);
  EXPECT_EQ(rep.rows[2].norm_t_xn, 1u);
  EXPECT_EQ(rep.rows[0].norm_xn, 1u);
  EXPECT_EQ(rep.rows[0].norm_t_xn, 1u);

  const auto base3 = in::torsion_probe(4, 4, 3);
  ASSERT_EQ(base3.rows.size(), 1u);
  EXPECT_EQ(base3.rows[0].norm_xn, 4u);
  EXPECT_EQ(base3.rows[0].norm_t_xn, 1u);
  EXPECT_FALSE(base3.note.empty());
}

TEST(IntNorm, Targets) {
  EXPECT_EQ(in::parse_target("24").value, 24);
  const auto t = in::parse_target("x(4)");
  EXPECT_EQ(t.value, in::x_n(4));
  EXPECT_EQ(t.n, std::optional<unsigned long>(4));
  EXPECT_EQ(in::parse_target("x(4,3)").value, in::x_n(4, 3));
  EXPECT_THROW(in::parse_target("x(4"), cinorm::Error);
}

TEST(IntNorm, Certificates) {
  nlohmann::json ok = {{"kind", "intnorm"}, {"target", "24"}, {"value", 3}, {"terms", {"8", "8", "8"}}};
  EXPECT_NO_THROW(in::verify_certificate(ok));
  auto wrong_sum = ok;
  wrong_sum["terms"] = {"8", "8", "2"};
  EXPECT_THROW(in::verify_certificate(wrong_sum), cinorm::Error);
  auto not_generator = ok;
  not_generator["terms"] = {"12", "12"};
  not_generator["value"] = 2;
  EXPECT_THROW(in::verify_certificate(not_generator), cinorm::Error);
  auto miscount = ok;
  miscount["value"] = 2;
  EXPECT_THROW(in::verify_certificate(miscount), cinorm::Error);
  // The library's own output verifies.
  const auto r = in::norm_upper(in::x_n(6), in::FactorialGenerators(7));
  EXPECT_NO_THROW(in::verify_certificate(nlohmann::json::parse(r.to_json(2).dump())));
}

TEST(IntNormProperty, SandwichUpToEight) {
  for (unsigned long n = 1; n <= 8; ++n) {
    const auto up = in::norm_upper(in::x_n(n), in::FactorialGenerators(n + 1));
    EXPECT_EQ(up.certificate.size(), n);
    EXPECT_EQ(in::lower_bound_xn(n), n);
  }
}
