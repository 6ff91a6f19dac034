#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cinorm/error.hpp"
#include "cinorm/finite_group.hpp"
#include "cinorm/permutation.hpp"
#include "cinorm/quasimorphism.hpp"
#include "cinorm/wordnorm.hpp"
#include "oracles.hpp"

using cinorm::Permutation;
namespace word = cinorm::word;

namespace {

std::vector<std::uint32_t> sorted(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(ConjugacyClosure, Examples) {
  auto s4 = cinorm::symmetric_group(4, false);
  const auto t = word::conjugacy_closure(*s4, {s4->id_of(Permutation::parse("(1 2)"))});
  EXPECT_EQ(t.size(), 6u);
  for (auto id : t) EXPECT_EQ(s4->element(id).cycle_type(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(word::conjugacy_closure(*s4, {s4->identity()}), std::vector<cinorm::ElementId>{s4->identity()});
  auto a5 = cinorm::symmetric_group(5, true);
  EXPECT_EQ(word::conjugacy_closure(*a5, {a5->id_of(Permutation::parse("(1 2 3)"))}).size(), 20u);
}

TEST(BfsNorm, SmallTables) {
  auto s3 = cinorm::symmetric_group(3, false);
  std::vector<cinorm::ElementId> tr;
  for (auto p : {"(1 2)", "(1 3)", "(2 3)"}) tr.push_back(s3->id_of(Permutation::parse(p)));
  EXPECT_EQ(sorted(word::bfs_norm(s3, tr).values()), (std::vector<std::uint32_t>{0, 1, 1, 1, 2, 2}));

  auto z5 = cinorm::group_from_json_text(R"({"family": "Z", "modulus": 5})");
  EXPECT_EQ(word::bfs_norm(z5, {1}).values(), (std::vector<std::uint32_t>{0, 1, 2, 2, 1}));

  auto a4 = cinorm::symmetric_group(4, true);
  std::vector<cinorm::ElementId> everything;
  for (cinorm::ElementId g = 1; g < a4->order(); ++g) everything.push_back(g);
  EXPECT_EQ(word::bfs_norm(a4, everything).diameter(), 1u);

  EXPECT_THROW(word::bfs_norm(s3, {s3->id_of(Permutation::parse("(1 2 3)"))}), cinorm::Error);
}

TEST(BfsNorm, AgreesWithIndependentBfs) {
  auto s5 = cinorm::symmetric_group(5, false);
  std::vector<cinorm::ElementId> gens{s5->id_of(Permutation::parse("(1 2)")),
                                      s5->id_of(Permutation::parse("(1 2 3 4 5)"))};
  const auto table = word::bfs_norm(s5, gens);
  oracle::Images t = oracle::identity(5), c = oracle::identity(5);
  std::swap(t[0], t[1]);
  for (int i = 0; i < 5; ++i) c[i] = (i + 1) % 5;
  oracle::Images cinv(5);
  for (int i = 0; i < 5; ++i) cinv[c[i]] = i;
  const auto dist = oracle::bfs(5, {t, c, cinv});
  for (cinorm::ElementId g = 0; g < s5->order(); ++g) {
    oracle::Images img(5);
    const auto p = s5->element(g);
    for (int i = 0; i < 5; ++i) img[i] = static_cast<int>(p(i + 1)) - 1;
    EXPECT_EQ(table[g], static_cast<std::uint32_t>(dist.at(img)));
  }
}

TEST(Domination, SupportVersusTranspositions) {
  auto s5 = cinorm::symmetric_group(5, false);
  std::vector<std::uint32_t> supp(s5->order()), tr(s5->order());
  for (cinorm::ElementId g = 0; g < s5->order(); ++g) {
    supp[g] = static_cast<std::uint32_t>(cinorm::supp_norm(s5->element(g)));
    tr[g] = static_cast<std::uint32_t>(cinorm::tr_norm(s5->element(g)));
  }
  const auto t_supp = word::table_from(s5, supp), t_tr = word::table_from(s5, tr);
  EXPECT_EQ(word::audit_domination(t_tr, t_tr).constant, (word::Ratio{1, 1}));
  const auto d = word::audit_domination(t_tr, t_supp);
  EXPECT_EQ(d.constant, (word::Ratio{2, 1}));
  EXPECT_EQ(supp[d.witness], 2 * tr[d.witness]);
}

TEST(Domination, TranspositionsVersusThreeCycles) {
  auto a5 = cinorm::symmetric_group(5, true);
  std::vector<std::uint32_t> tr(a5->order()), n3(a5->order());
  for (cinorm::ElementId g = 0; g < a5->order(); ++g) {
    tr[g] = static_cast<std::uint32_t>(cinorm::tr_norm(a5->element(g)));
    n3[g] = static_cast<std::uint32_t>(cinorm::three_cycle_norm(a5->element(g)));
  }
  const auto t_tr = word::table_from(a5, tr), t_n3 = word::table_from(a5, n3);
  EXPECT_LE(word::audit_domination(t_n3, t_tr).constant, (word::Ratio{2, 1}));
  EXPECT_LE(word::audit_domination(t_tr, t_n3).constant, (word::Ratio{3, 2}));
}

TEST(NormAxioms, ClosedGeneratingSetsGiveInvariantNorms) {
  auto s4 = cinorm::symmetric_group(4, false);
  const auto closed = word::conjugacy_closure(*s4, {s4->id_of(Permutation::parse("(1 2)"))});
  EXPECT_TRUE(word::audit_norm_axioms(word::bfs_norm(s4, closed)).ok());
  // A generating set that is not conjugation-closed breaks invariance.
  const auto skew = word::bfs_norm(s4, {s4->id_of(Permutation::parse("(1 2)")),
                                        s4->id_of(Permutation::parse("(1 2 3 4)"))});
  const auto audit = word::audit_norm_axioms(skew);
  EXPECT_TRUE(audit.positive && audit.symmetric && audit.triangle);
  EXPECT_FALSE(audit.conjugation_invariant);
  EXPECT_FALSE(audit.witness.empty());
}

TEST(Quasimorphism, Defects) {
  auto id = cinorm::SampledQuasimorphism::integer_window(-100, 100, [](std::int64_t x) { return double(x); });
  EXPECT_EQ(cinorm::estimate_defect(id, cinorm::pairs_within(id)), 0.0);
  auto parity = cinorm::SampledQuasimorphism::integer_window(
      -100, 100, [](std::int64_t x) { return double(x + ((x % 2) + 2) % 2); });
  EXPECT_LE(cinorm::estimate_defect(parity, cinorm::pairs_within(parity)), 2.0);
  auto zero = cinorm::SampledQuasimorphism::integer_window(-10, 10, [](std::int64_t) { return 0.0; });
  EXPECT_EQ(cinorm::estimate_defect(zero, cinorm::pairs_within(zero)), 0.0);
  EXPECT_THROW(cinorm::estimate_defect(id, {{90, 90}}), cinorm::Error);
}

TEST(Quasimorphism, Homogenisation) {
  auto id = cinorm::SampledQuasimorphism::integer_window(-100, 100, [](std::int64_t x) { return double(x); });
  for (double v : cinorm::homogenise(id, 3, 30).sequence) EXPECT_EQ(v, 3.0);
  EXPECT_THROW(cinorm::homogenise(id, 3, 40), cinorm::Error);
  auto parity = cinorm::SampledQuasimorphism::integer_window(
      0, 2000, [](std::int64_t x) { return double(x + x % 2); });
  EXPECT_NEAR(cinorm::homogenise(parity, 1, 2000).estimate, 1.0, 1e-3);

  // Finite order: psi = label on Z/6, homogenisation of 2 tends to 0.
  auto z6 = cinorm::group_from_json_text(R"({"family": "Z", "modulus": 6})");
  auto psi = cinorm::SampledQuasimorphism::on_group(z6, [](cinorm::ElementId g) { return double(g); });
  EXPECT_LT(std::abs(cinorm::homogenise(psi, 2, 600).estimate), 0.01);
}

TEST(Quasimorphism, NormLowerBound) {
  EXPECT_TRUE(cinorm::norm_lower_bound(7, 1, 0, 7));
  EXPECT_FALSE(cinorm::norm_lower_bound(7, 1, 0, 6));
  EXPECT_TRUE(cinorm::norm_lower_bound(0, 0, 0, 0));
  const auto norms = cinorm::interval_word_norms({1, 2}, -20, 20);
  EXPECT_EQ(norms.at(7), 4u);
  EXPECT_TRUE(cinorm::norm_lower_bound(7, 2, 0, norms.at(7)));
  EXPECT_THROW(cinorm::norm_lower_bound(1, 0, 0, 3), cinorm::Error);
}

TEST(Quasimorphism, IntervalWordNormsMatchBfs) {
  const std::vector<std::int64_t> gens{1, 5, 12};
  const auto norms = cinorm::interval_word_norms(gens, -200, 200);
  const auto dist = oracle::integer_bfs(gens, 200, 100);
  for (const auto& [x, v] : norms) EXPECT_EQ(v, static_cast<std::uint64_t>(dist.at(x))) << x;
}

TEST(QuasimorphismProperty, FloorOfIrrationalMultipleHasDefectOne) {
  for (double alpha : {std::sqrt(2.0), std::sqrt(3.0), 0.5 * (1 + std::sqrt(5.0))}) {
    auto psi = cinorm::SampledQuasimorphism::integer_window(
        -200, 200, [alpha](std::int64_t x) { return std::floor(alpha * double(x)); });
    EXPECT_LE(cinorm::estimate_defect(psi, cinorm::pairs_within(psi)), 1.0);
    EXPECT_NEAR(cinorm::homogenise(psi, 1, 200).estimate, alpha, 1.0 / 200);
  }
}
