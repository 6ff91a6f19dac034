#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cinorm/contractions.hpp"
#include "cinorm/error.hpp"
#include "cinorm/permutation.hpp"

using cinorm::Permutation;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

// c_k straight from the three-case definition: erase the k largest support
// points and send x to the first iterate of s that lands outside them.
Permutation cut_reference(const Permutation& s, std::size_t k) {
  auto supp = s.support();
  std::set<cinorm::Point> erased;
  for (std::size_t i = 0; i < k && i < supp.size(); ++i) erased.insert(supp[supp.size() - 1 - i]);
  std::vector<std::pair<cinorm::Point, cinorm::Point>> pairs;
  for (auto x : supp) {
    if (erased.count(x)) continue;
    auto y = s(x);
    while (erased.count(y)) y = s(y);
    pairs.emplace_back(x, y);
  }
  return Permutation::from_pairs(pairs);
}

}  // namespace

TEST(Cut, Examples) {
  EXPECT_EQ(cinorm::cut(P("(1 2 3)"), 1).image, P("(1 2)"));
  EXPECT_EQ(cinorm::cut(P("(1 5)(2 3 4)"), 0).image, P("(1 5)(2 3 4)"));
  EXPECT_TRUE(cinorm::cut(P("(1 2 3)"), 5).image.is_identity());
  const auto r = cinorm::cut(P("(1 4 2 5)"), 2);
  EXPECT_EQ(r.erased_points, (std::vector<cinorm::Point>{5, 4}));
  EXPECT_EQ(r.image, P("(1 2)"));
}

TEST(Cut, MatchesReferenceOnS6) {
  for (const auto& s : cinorm::all_permutations(6)) {
    const auto ladder = cinorm::cut_ladder(s, 7);
    ASSERT_EQ(ladder.size(), 8u);
    for (std::size_t k = 0; k <= 7; ++k) {
      EXPECT_EQ(ladder[k], cut_reference(s, k)) << s.to_string() << " k=" << k;
    }
  }
}

TEST(Split, Examples) {
  const auto five = P("(1 2 3 4 5)");
  const auto sp = cinorm::split(five, 2);
  EXPECT_EQ(sp.left * sp.right, five);
  EXPECT_LE(sp.left.support_size(), 2u);
  EXPECT_LE(sp.right.support_size(), 4u);

  const auto whole = cinorm::split(five, 5);
  EXPECT_EQ(whole.left * whole.right, five);
  EXPECT_LE(whole.right.support_size(), 1u);

  const auto pair = cinorm::split(P("(1 2)(3 4)"), 2);
  EXPECT_EQ(pair.left, P("(1 2)"));
  EXPECT_EQ(pair.right, P("(3 4)"));

  EXPECT_THROW(cinorm::split(five, 0), cinorm::Error);
  EXPECT_THROW(cinorm::split(five, 6), cinorm::Error);
}

TEST(Displacement, Examples) {
  EXPECT_EQ(cinorm::displaced_set(P("(1 2)")), (std::vector<cinorm::Point>{1}));
  EXPECT_EQ(cinorm::displaced_set(P("(1 2 3)")).size(), 1u);
  EXPECT_EQ(cinorm::displaced_set(P("(1 2 3 4)")), (std::vector<cinorm::Point>{1, 3}));
  EXPECT_THROW(cinorm::displaced_set(Permutation{}), cinorm::Error);
}

TEST(CutLemmas, ExhaustiveS5) {
  const auto audit = cinorm::verify_cut_lemmas_exhaustive(5, 6);
  EXPECT_TRUE(audit.ok()) << audit.to_json().dump();
  EXPECT_EQ(audit.pairs(), 120u * 120u);
  ASSERT_EQ(audit.bounds().size(), 4u);
  for (const auto& b : audit.bounds()) EXPECT_GT(b.checks, 0u) << b.lemma;
}

TEST(CutLemmas, TrivialAndWorkedPairs) {
  const auto s = P("(1 3 5)(2 4)");
  EXPECT_TRUE(cinorm::verify_cut_lemmas({{s, s}}, 6).ok());
  EXPECT_TRUE(cinorm::verify_cut_lemmas({{P("(1 2 3)"), P("(1 3 2)")}}, 4).ok());
}

TEST(CutLemmas, DetectsABrokenBound) {
  // Feeding a wrong ladder must be reported.
  cinorm::CutLemmaAudit audit(3);
  const auto s = P("(1 2 3 4)");
  auto ladder = cinorm::cut_ladder(s, 3);
  ladder[1] = P("(5 6 7 8 9 10)");
  audit.add_single(s, ladder);
  EXPECT_FALSE(audit.ok());
}

TEST(CutLemmasProperty, RandomPairsInS20) {
  std::mt19937_64 rng(42);
  const auto audit = cinorm::verify_cut_lemmas_random(20, 3000, rng);
  EXPECT_TRUE(audit.ok()) << audit.to_json().dump();
}

TEST(SplitProperty, AllOfS6) {
  for (const auto& s : cinorm::all_permutations(6)) {
    for (std::size_t k = 1; k <= s.support_size(); ++k) {
      const auto sp = cinorm::split(s, k);
      ASSERT_EQ(sp.left * sp.right, s);
      ASSERT_LE(sp.left.support_size(), k);
      ASSERT_LE(sp.right.support_size(), s.support_size() - k + 1);
    }
  }
}

TEST(DisplacementProperty, AllOfS7) {
  for (const auto& s : cinorm::all_permutations(7)) {
    if (s.is_identity()) continue;
    const auto d = cinorm::displaced_set(s);
    const std::set<cinorm::Point> members(d.begin(), d.end());
    for (auto x : d) ASSERT_EQ(members.count(s(x)), 0u) << s.to_string();
    ASSERT_GE(3 * d.size(), s.support_size());
  }
}
