#include <gtest/gtest.h>

#include <random>

#include "cinorm/error.hpp"
#include "cinorm/finite_group.hpp"
#include "cinorm/permutation.hpp"
#include "convert.hpp"
#include "oracles.hpp"

using cinorm::Permutation;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

}  // namespace

TEST(Permutation, ComposesLeftToRight) {
  EXPECT_EQ(P("(1 2)") * P("(2 3)"), P("(1 3 2)"));
  EXPECT_EQ(P("(1 2 3)(4 5)") * Permutation{}, P("(1 2 3)(4 5)"));
  EXPECT_TRUE((P("(1 2)") * P("(1 2)")).is_identity());
}

TEST(Permutation, ParseAndPrintRoundTrip) {
  EXPECT_EQ(P("(3 1 2)").to_string(), "(1 2 3)");
  EXPECT_EQ(P("()").to_string(), "()");
  EXPECT_EQ(P("(5 6)(1 4)").to_string(), "(1 4)(5 6)");
  // Overlapping cycles multiply left to right.
  EXPECT_EQ(P("(1 2)(2 3)"), P("(1 3 2)"));
}

TEST(Permutation, RejectsMalformedText) {
  for (const char* bad : {"", "(1 2", "1 2)", "(0 1)", "(1 1)", "(a b)"}) {
    EXPECT_THROW(P(bad), cinorm::Error) << bad;
  }
}

TEST(Permutation, SupportAndTranspositionNorms) {
  EXPECT_EQ(cinorm::supp_norm(Permutation{}), 0u);
  EXPECT_EQ(cinorm::supp_norm(P("(1 2 3)")), 3u);
  EXPECT_EQ(cinorm::supp_norm(P("(1 2)(3 4)")), 4u);
  EXPECT_EQ(cinorm::tr_norm(P("(1 2)")), 1u);
  EXPECT_EQ(cinorm::tr_norm(P("(1 2 3 4)")), 3u);
  EXPECT_EQ(cinorm::tr_norm(Permutation{}), 0u);
}

TEST(Permutation, ThreeCycleNorm) {
  EXPECT_EQ(cinorm::three_cycle_norm(P("(1 2 3)")), 1u);
  EXPECT_EQ(cinorm::three_cycle_norm(Permutation{}), 0u);
  EXPECT_EQ(cinorm::three_cycle_norm(P("(1 2)(3 4)")), 2u);
  EXPECT_THROW(cinorm::three_cycle_norm(P("(1 2)")), cinorm::Error);
}

TEST(PermutationOracle, TranspositionNormMatchesBfsOnS6) {
  const auto dist = oracle::bfs(6, oracle::transpositions(6));
  ASSERT_EQ(dist.size(), 720u);
  for (const auto& [p, d] : dist) {
    const auto s = to_perm(p);
    EXPECT_EQ(cinorm::tr_norm(s), static_cast<std::size_t>(d)) << s.to_string();
    EXPECT_EQ(cinorm::supp_norm(s), static_cast<std::size_t>(oracle::moved(p)));
  }
}

TEST(PermutationOracle, ThreeCycleNormMatchesBfsOnA6) {
  const auto dist = oracle::bfs(6, oracle::three_cycles(6));
  ASSERT_EQ(dist.size(), 360u);
  for (const auto& [p, d] : dist) {
    EXPECT_EQ(cinorm::three_cycle_norm(to_perm(p)), static_cast<std::size_t>(d));
  }
}

TEST(PermutationOracle, CompositionMatchesImageTables) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    oracle::Images a = oracle::identity(9), b = oracle::identity(9);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    EXPECT_EQ(to_images(to_perm(a) * to_perm(b), 9), oracle::then(a, b));
    EXPECT_EQ(to_images(to_perm(a).inverse() * to_perm(a), 9), oracle::identity(9));
  }
}

TEST(PermutationProperty, NormsAreConjugationInvariant) {
  std::mt19937_64 rng(11);
  const auto s7 = cinorm::all_permutations(7);
  std::uniform_int_distribution<std::size_t> pick(0, s7.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto& s = s7[pick(rng)];
    const auto& u = s7[pick(rng)];
    const auto c = cinorm::conjugate(s, u);
    EXPECT_EQ(c, u * s * u.inverse());
    EXPECT_EQ(cinorm::supp_norm(c), cinorm::supp_norm(s));
    EXPECT_EQ(cinorm::tr_norm(c), cinorm::tr_norm(s));
    EXPECT_EQ(c.cycle_type(), s.cycle_type());
  }
}

TEST(PermutationProperty, SupportDistanceIsBiInvariantMetric) {
  std::mt19937_64 rng(3);
  const auto s6 = cinorm::all_permutations(6);
  std::uniform_int_distribution<std::size_t> pick(0, s6.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto &a = s6[pick(rng)], &b = s6[pick(rng)], &c = s6[pick(rng)];
    const auto d = cinorm::support_distance(a, b);
    EXPECT_EQ(d, cinorm::supp_norm(a * b.inverse()));
    EXPECT_EQ(d, cinorm::support_distance(b, a));
    EXPECT_EQ(d, cinorm::support_distance(c * a, c * b));
    EXPECT_EQ(d, cinorm::support_distance(a * c, b * c));
    EXPECT_LE(d, cinorm::support_distance(a, c) + cinorm::support_distance(c, b));
  }
}

TEST(PermutationProperty, CommutatorAndParity) {
  const auto s5 = cinorm::all_permutations(5);
  for (std::size_t i = 0; i < s5.size(); i += 7) {
    for (std::size_t j = 0; j < s5.size(); j += 11) {
      const auto c = cinorm::commutator(s5[i], s5[j]);
      EXPECT_TRUE(c.is_even());
      EXPECT_EQ(c, s5[i] * s5[j] * s5[i].inverse() * s5[j].inverse());
    }
  }
  EXPECT_EQ(cinorm::all_even_permutations(6).size(), 360u);
}

TEST(FiniteGroup, SymmetricGroupTablesAgreeWithPermutations) {
  auto g = cinorm::symmetric_group(5, false);
  ASSERT_EQ(g->order(), 120u);
  std::mt19937_64 rng(5);
  EXPECT_TRUE(cinorm::check_group_axioms(*g, rng).ok);
  for (cinorm::ElementId a = 0; a < g->order(); a += 13) {
    for (cinorm::ElementId b = 0; b < g->order(); b += 17) {
      EXPECT_EQ(g->element(g->multiply(a, b)), g->element(a) * g->element(b));
    }
  }
  auto alt = cinorm::symmetric_group(5, true);
  EXPECT_EQ(alt->order(), 60u);
  EXPECT_THROW(alt->id_of(P("(1 2)")), cinorm::Error);
}

TEST(FiniteGroup, JsonDescriptions) {
  EXPECT_EQ(cinorm::group_from_json_text(R"({"family": "Z", "modulus": 6})")->order(), 6u);
  EXPECT_EQ(cinorm::group_from_json_text(
                R"({"family": "product", "factors": [{"family": "S", "degree": 3}, {"family": "Z", "modulus": 2}]})")
                ->order(),
            12u);
  EXPECT_THROW(cinorm::group_from_json_text(R"({"family": "Q"})"), cinorm::Error);
}
