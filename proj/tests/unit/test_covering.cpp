#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cinorm/covering.hpp"
#include "cinorm/error.hpp"
#include "cinorm/permutation.hpp"

using cinorm::Permutation;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

// C^k by brute-force products of class members, as sets.
std::size_t class_power_size(const std::vector<Permutation>& cls, int k) {
  std::set<Permutation> level(cls.begin(), cls.end());
  for (int i = 1; i < k; ++i) {
    std::set<Permutation> next;
    for (const auto& a : level) {
      for (const auto& c : cls) next.insert(a * c);
    }
    level.swap(next);
  }
  return level.size();
}

}  // namespace

TEST(OrbitCount, Examples) {
  EXPECT_EQ(cinorm::orbit_count(P("(1 2)(3 4)"), 5), 3u);
  EXPECT_EQ(cinorm::orbit_count(Permutation{}, 6), 6u);
  EXPECT_EQ(cinorm::orbit_count(P("(1 2 3 4 5)"), 5), 1u);
  EXPECT_THROW(cinorm::orbit_count(P("(1 7)"), 5), cinorm::Error);
}

TEST(Brenner, Examples) {
  const auto r = cinorm::brenner_check(P("(1 2)(3 4)"), 5);
  EXPECT_TRUE(r.covered);
  ASSERT_TRUE(r.covering_exponent.has_value());
  EXPECT_LE(*r.covering_exponent, 4u);
  EXPECT_EQ(r.class_size, 15u);
  EXPECT_EQ(r.group_order, 60u);

  EXPECT_THROW(cinorm::brenner_check(P("(1 2 3)"), 5), cinorm::Error);
  EXPECT_THROW(cinorm::brenner_check(P("(1 2)(3 4)"), 6), cinorm::Error);
  std::string reason;
  EXPECT_FALSE(cinorm::brenner_hypotheses(P("(1 2)(3 4)"), 6, &reason));
  EXPECT_FALSE(reason.empty());
}

TEST(Brenner, LevelsMatchBruteForceProducts) {
  const auto s = P("(1 2)(3 4)");
  const auto cls = cinorm::conjugacy_class(s, 5).members;
  const auto r = cinorm::brenner_check(s, 5);
  for (std::size_t k = 1; k <= r.level_sizes.size() && k <= 3; ++k) {
    EXPECT_EQ(r.level_sizes[k - 1], class_power_size(cls, static_cast<int>(k)));
  }
}

TEST(Brenner, EveryAdmissibleElementOfA6) {
  for (const auto& s : cinorm::all_even_permutations(6)) {
    if (!cinorm::brenner_hypotheses(s, 6)) continue;
    EXPECT_TRUE(cinorm::brenner_check(s, 6).covered) << s.to_string();
  }
}

TEST(Commutator, Examples) {
  const auto id = cinorm::commutator_witness(Permutation{}, 5);
  EXPECT_TRUE(cinorm::commutator(id.b, id.c).is_identity());
  for (const char* g : {"(1 2 3 4 5)", "(1 2 3)", "(1 2)(3 4)"}) {
    const auto w = cinorm::commutator_witness(P(g), 5);
    EXPECT_EQ(cinorm::commutator(w.b, w.c), P(g));
    EXPECT_LE(w.b.largest_moved_point(), 5u);
    EXPECT_LE(w.c.largest_moved_point(), 5u);
  }
  EXPECT_THROW(cinorm::commutator_witness(P("(1 2)"), 5), cinorm::Error);
}

TEST(Commutator, CertificatesRoundTripAndCatchTampering) {
  const auto g = P("(1 2 3 4 5)(6 7 8)");
  const auto cert = cinorm::commutator_certificate(g, cinorm::commutator_witness(g, 8));
  EXPECT_NO_THROW(cinorm::verify_commutator_certificate(cert));
  auto bad = cert;
  bad["b"] = (Permutation::parse(cert["b"].get<std::string>()) * P("(1 2)(3 4)")).to_string();
  try {
    cinorm::verify_commutator_certificate(bad);
    FAIL() << "tampered certificate accepted";
  } catch (const cinorm::Error& e) {
    EXPECT_EQ(e.code(), cinorm::ErrorCode::RecompositionMismatch);
  }
  bad["b"] = "(1 2";
  try {
    cinorm::verify_commutator_certificate(bad);
    FAIL() << "malformed certificate accepted";
  } catch (const cinorm::Error& e) {
    EXPECT_EQ(e.code(), cinorm::ErrorCode::MalformedCertificate);
  }
}

TEST(ConjugateProducts, Examples) {
  const auto g = P("(1 2)(3 4)");
  EXPECT_TRUE(cinorm::express_as_conjugates(Permutation{}, g).factors.empty());
  const auto same = cinorm::express_as_conjugates(g, g);
  ASSERT_EQ(same.factors.size(), 1u);
  EXPECT_TRUE(same.factors[0].conjugator.is_identity());
  EXPECT_EQ(same.factors[0].sign, 1);

  // The 6-cycle is odd; the 7-cycle is the nearest target inside A_7.
  EXPECT_THROW(cinorm::express_as_conjugates(P("(1 2 3 4 5 6)"), g), cinorm::Error);
  const auto h = P("(1 2 3 4 5 6 7)");
  const auto cert = cinorm::express_as_conjugates(h, g);
  EXPECT_EQ(cert.recompose(), h);
  EXPECT_LE(static_cast<double>(cert.factors.size()), 8.0 * 7 / 4 + 4);
  EXPECT_THROW(cinorm::express_as_conjugates(h, Permutation{}), cinorm::Error);
  EXPECT_THROW(cinorm::express_as_conjugates(P("(1 2)"), g), cinorm::Error);
}

TEST(ConjugateProducts, JsonRoundTrip) {
  const auto cert = cinorm::express_as_conjugates(P("(1 3 5)(2 4 6 7)(8 9)"), P("(1 2)(3 4)"));
  const auto back = cinorm::ConjugateProductCertificate::from_json(cert.to_json());
  EXPECT_EQ(back.recompose(), cert.target);
  EXPECT_EQ(back.factors.size(), cert.factors.size());
  EXPECT_THROW(cinorm::ConjugateProductCertificate::from_json(nlohmann::json{{"kind", "conjugate_product"}}),
               cinorm::Error);
}

TEST(ConjugateProductsProperty, RandomPairsInA7) {
  std::mt19937_64 rng(9);
  const auto a7 = cinorm::all_even_permutations(7);
  std::vector<Permutation> bases;
  for (const auto& g : a7) {
    if (cinorm::brenner_hypotheses(g, 7)) bases.push_back(g);
  }
  std::uniform_int_distribution<std::size_t> ph(0, a7.size() - 1), pg(0, bases.size() - 1);
  for (int t = 0; t < 60; ++t) {
    const auto& h = a7[ph(rng)];
    const auto& g = bases[pg(rng)];
    const auto cert = cinorm::express_as_conjugates(h, g);
    ASSERT_EQ(cert.recompose(), h);
    ASSERT_LE(static_cast<double>(cert.factors.size()), cert.factor_bound());
  }
}
