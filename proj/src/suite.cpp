#include "cinorm/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>

#include "cinorm/audit.hpp"
#include "cinorm/coneprobe.hpp"
#include "cinorm/contractions.hpp"
#include "cinorm/covering.hpp"
#include "cinorm/error.hpp"
#include "cinorm/finite_group.hpp"
#include "cinorm/intnorm.hpp"
#include "cinorm/matnorm.hpp"
#include "cinorm/permutation.hpp"
#include "cinorm/products.hpp"
#include "cinorm/quasimorphism.hpp"
#include "cinorm/wordnorm.hpp"

namespace cinorm {

namespace {

using ojson = nlohmann::ordered_json;

CheckResult from_bounds(std::string id, std::string statement, const std::vector<BoundStats>& bounds,
                        ojson extra = ojson::object()) {
  CheckResult r{std::move(id), std::move(statement), true, std::move(extra)};
  r.data["bounds"] = ojson::array();
  for (const auto& b : bounds) {
    r.ok = r.ok && b.ok();
    r.data["bounds"].push_back(b.to_json());
  }
  return r;
}

std::string type_string(const std::vector<std::size_t>& type) {
  if (type.empty()) return "1";
  std::string out;
  for (auto t : type) out += (out.empty() ? "" : ",") + std::to_string(t);
  return out;
}

// ---------------------------------------------------------------- norms

CheckResult check_tr_supp(std::size_t n) {
  BoundStats lower("tr_le_supp", "tr(s) <= supp(s)");
  BoundStats upper("supp_le_2tr", "supp(s) <= 2 tr(s)");
  for (const auto& s : all_permutations(n)) {
    const auto tr = tr_norm(s);
    const auto supp = supp_norm(s);
    if (lower.record(tr, supp) && lower.witness.empty()) lower.witness = s.to_string();
    if (upper.record(supp, 2 * tr) && upper.witness.empty()) upper.witness = s.to_string();
  }
  return from_bounds("norms.sandwich_tr_supp", "tr <= supp <= 2 tr on S_" + std::to_string(n),
                     {lower, upper}, {{"degree", n}});
}

CheckResult check_three_cycle(std::size_t n) {
  BoundStats lower("tr_le_2n3", "tr(s) <= 2 n3(s)");
  BoundStats upper("n3_le_1.5tr", "n3(s) <= 1.5 tr(s)");
  for (const auto& s : all_even_permutations(n)) {
    const auto tr = tr_norm(s);
    const auto n3 = three_cycle_norm(s);
    if (lower.record(tr, 2 * n3) && lower.witness.empty()) lower.witness = s.to_string();
    if (upper.record(2 * n3, 3 * tr) && upper.witness.empty()) upper.witness = s.to_string();
  }
  return from_bounds("norms.sandwich_three_cycle",
                     "tr <= 2 n3 and n3 <= 1.5 tr on A_" + std::to_string(n), {lower, upper},
                     {{"degree", n}});
}

CheckResult check_transposition_word_norm(std::size_t n) {
  auto group = symmetric_group(n, false);
  std::vector<ElementId> gens;
  for (Point a = 1; a <= n; ++a) {
    for (Point b = a + 1; b <= n; ++b) gens.push_back(group->id_of(Permutation::transposition(a, b)));
  }
  const auto table = word::bfs_norm(group, gens);
  BoundStats agree("transposition_word_norm", "word norm for all transpositions = supp - cycles");
  std::vector<std::uint32_t> supp(group->order());
  for (ElementId g = 0; g < group->order(); ++g) {
    const auto p = group->element(g);
    supp[g] = static_cast<std::uint32_t>(supp_norm(p));
    if (agree.record_holds(table[g] == tr_norm(p)) && agree.witness.empty()) agree.witness = p.to_string();
  }
  const auto dom = word::audit_domination(table, word::table_from(group, supp));
  const auto back = word::audit_domination(word::table_from(group, supp), table);
  ojson data{{"degree", n},
             {"diameter", table.diameter()},
             {"supp_over_tr", dom.constant.to_string()},
             {"tr_over_supp", back.constant.to_string()}};
  auto r = from_bounds("norms.transposition_word_norm",
                       "BFS word norm for the transposition class equals tr on S_" + std::to_string(n),
                       {agree}, data);
  // Sharp constants: supp / tr peaks at 2 on products of disjoint
  // transpositions, tr / supp at (n - 1) / n on the n-cycles.
  const auto m = static_cast<std::int64_t>(n);
  r.ok = r.ok && dom.constant == word::Ratio{2, 1} && back.constant == word::Ratio{m - 1, m};
  return r;
}

CheckResult check_norm_axioms(std::size_t n) {
  auto group = symmetric_group(n, false);
  const auto closure = word::conjugacy_closure(*group, {group->id_of(Permutation::parse("(1 2 3)"))});
  // The 3-cycles generate only A_n; use the transpositions with them.
  std::vector<ElementId> gens = closure;
  gens.push_back(group->id_of(Permutation::transposition(1, 2)));
  const auto table = word::bfs_norm(group, word::conjugacy_closure(*group, gens));
  const auto audit = word::audit_norm_axioms(table);
  CheckResult r{"norms.axioms", "conjugation-invariant norm axioms for a conjugation-closed generating set on S_" +
                                    std::to_string(n),
                audit.ok(), ojson::object()};
  r.data = {{"degree", n},
            {"generators", table.generating_set().size()},
            {"positive", audit.positive},
            {"symmetric", audit.symmetric},
            {"triangle", audit.triangle},
            {"conjugation_invariant", audit.conjugation_invariant}};
  if (!audit.witness.empty()) r.data["witness"] = audit.witness;
  return r;
}

CheckResult check_quasimorphism() {
  const double alpha = std::sqrt(2.0);
  auto psi = SampledQuasimorphism::integer_window(
      -300, 300, [alpha](std::int64_t x) { return std::floor(alpha * static_cast<double>(x)); });
  psi.claimed_defect = 1.0;
  const double defect = estimate_defect(psi, pairs_within(psi));
  const auto h = homogenise(psi, 1, 300);
  const std::vector<std::int64_t> gens{1, 5};
  double k = 0.0;
  for (auto s : gens) k = std::max({k, std::abs(psi.values.at(s)), std::abs(psi.values.at(-s))});
  const auto norms = interval_word_norms(gens, -300, 300);
  BoundStats lower("quasimorphism_norm_bound", "|x|_S >= |psi(x)| / (K + D)");
  for (const auto& [x, v] : norms) {
    if (lower.record_holds(norm_lower_bound(psi.values.at(x), k, defect, v)) && lower.witness.empty()) {
      lower.witness = std::to_string(x);
    }
  }
  ojson data{{"window", {-300, 300}},
             {"estimated_defect", defect},
             {"claimed_defect", *psi.claimed_defect},
             {"homogenisation", h.estimate},
             {"homogenisation_error", std::abs(h.estimate - alpha)},
             {"generator_bound", k}};
  auto r = from_bounds("norms.quasimorphism", "floor(sqrt(2) x) on Z: defect, homogenisation and norm bound",
                       {lower}, data);
  r.ok = r.ok && defect <= *psi.claimed_defect && std::abs(h.estimate - alpha) <= 1.0 / 300.0;
  return r;
}

SuiteResult suite_norms(const RunConfig& c, std::mt19937_64&) {
  SuiteResult s{"norms", {}};
  s.checks.push_back(check_tr_supp(c.max_degree));
  s.checks.push_back(check_three_cycle(c.max_degree - 1));
  s.checks.push_back(check_transposition_word_norm(std::min<std::size_t>(c.max_degree, 7)));
  s.checks.push_back(check_norm_axioms(5));
  s.checks.push_back(check_quasimorphism());
  return s;
}

// -------------------------------------------------------------- cutting

CheckResult check_split(std::size_t n) {
  BoundStats recompose("split_recomposes", "left * right = s");
  BoundStats left("split_left_support", "supp(left) <= k");
  BoundStats right("split_right_support", "supp(right) <= supp(s) - k + 1");
  for (const auto& s : all_permutations(n)) {
    const auto supp = s.support_size();
    for (std::size_t k = 1; k <= supp; ++k) {
      const auto sp = split(s, k);
      const auto w = s.to_string() + " k=" + std::to_string(k);
      if (recompose.record_holds(sp.left * sp.right == s) && recompose.witness.empty()) recompose.witness = w;
      if (left.record(sp.left.support_size(), k) && left.witness.empty()) left.witness = w;
      if (right.record(sp.right.support_size(), supp - k + 1) && right.witness.empty()) right.witness = w;
    }
  }
  return from_bounds("cutting.split", "split recomposes with both support bounds on S_" + std::to_string(n),
                     {recompose, left, right}, {{"degree", n}});
}

CheckResult check_displacement(std::size_t n) {
  BoundStats disjoint("displaced_disjoint", "s(D) and D are disjoint");
  BoundStats size("displaced_size", "supp(s) <= 3 |D|");
  for (const auto& s : all_permutations(n)) {
    if (s.is_identity()) continue;
    const auto d = displaced_set(s);
    const std::set<Point> members(d.begin(), d.end());
    const bool ok = std::none_of(d.begin(), d.end(), [&](Point x) { return members.count(s(x)) != 0; });
    if (disjoint.record_holds(ok) && disjoint.witness.empty()) disjoint.witness = s.to_string();
    if (size.record(s.support_size(), 3 * d.size()) && size.witness.empty()) size.witness = s.to_string();
  }
  return from_bounds("cutting.displacement", "displaced sets on S_" + std::to_string(n), {disjoint, size},
                     {{"degree", n}});
}

CheckResult from_cut_audit(std::string id, std::string statement, const CutLemmaAudit& a) {
  CheckResult r{std::move(id), std::move(statement), a.ok(), a.to_json()};
  return r;
}

SuiteResult suite_cutting(const RunConfig& c, std::mt19937_64& rng) {
  SuiteResult s{"cutting", {}};
  const std::size_t n = c.max_degree - 1;
  s.checks.push_back(from_cut_audit("cutting.exhaustive",
                                    "cutting-map bounds on all ordered pairs of S_" + std::to_string(n) + ", k, m <= 8",
                                    verify_cut_lemmas_exhaustive(n, 8)));
  if (c.cut_random_pairs > 0) {
    s.checks.push_back(from_cut_audit(
        "cutting.random",
        std::to_string(c.cut_random_pairs) + " random pairs in S_" + std::to_string(c.cut_random_degree),
        verify_cut_lemmas_random(c.cut_random_degree, c.cut_random_pairs, rng)));
  }
  s.checks.push_back(check_split(c.max_degree));
  s.checks.push_back(check_displacement(c.max_degree + 1));
  return s;
}

// ------------------------------------------------------------- covering

CheckResult check_brenner(std::size_t lo, std::size_t hi) {
  CheckResult r{"covering.brenner", "C^4 = A_n for every s in A_n meeting the hypotheses, n in [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "]",
                true, ojson::object()};
  r.data["degrees"] = ojson::array();
  for (std::size_t n = lo; n <= hi; ++n) {
    // C_s depends only on the class of s, so one representative per cycle
    // type settles every member.
    std::map<std::vector<std::size_t>, std::pair<Permutation, std::size_t>> classes;
    for (const auto& s : all_even_permutations(n)) {
      auto [it, inserted] = classes.try_emplace(s.cycle_type(), s, 0);
      ++it->second.second;
    }
    ojson degree{{"n", n}, {"classes", ojson::array()}};
    std::size_t elements = 0, covered = 0;
    for (const auto& [type, entry] : classes) {
      const auto& [rep, count] = entry;
      std::string reason;
      if (!brenner_hypotheses(rep, n, &reason)) continue;
      const auto report = brenner_check(rep, n);
      elements += count;
      if (report.covered) covered += count;
      ojson cls{{"cycle_type", type_string(type)}, {"elements", count}, {"covered", report.covered},
                {"level_sizes", report.level_sizes}};
      cls["covering_exponent"] = report.covering_exponent ? ojson(*report.covering_exponent) : ojson(nullptr);
      degree["classes"].push_back(cls);
      if (!report.covered) {
        r.ok = false;
        if (!r.data.contains("witness")) r.data["witness"] = rep.to_string() + " in A_" + std::to_string(n);
      }
    }
    degree["elements_meeting_hypotheses"] = elements;
    degree["elements_covered"] = covered;
    r.data["degrees"].push_back(degree);
  }
  return r;
}

CheckResult check_ore(std::size_t lo, std::size_t hi) {
  CheckResult r{"covering.ore", "every element of A_n is a verified commutator, n in [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "]",
                true, ojson::object()};
  r.data["degrees"] = ojson::array();
  for (std::size_t n = lo; n <= hi; ++n) {
    std::size_t verified = 0, total = 0;
    for (const auto& g : all_even_permutations(n)) {
      ++total;
      try {
        const auto w = commutator_witness(g, n);
        verify_commutator_certificate(commutator_certificate(g, w));
        ++verified;
      } catch (const Error& e) {
        r.ok = false;
        if (!r.data.contains("witness")) r.data["witness"] = g.to_string() + ": " + e.what();
      }
    }
    r.data["degrees"].push_back({{"n", n}, {"elements", total}, {"verified", verified}});
  }
  return r;
}

CheckResult check_conjugate_products(std::size_t n, std::size_t pairs, std::mt19937_64& rng) {
  const auto elements = all_even_permutations(n);
  std::vector<Permutation> bases;
  for (const auto& g : elements) {
    if (brenner_hypotheses(g, n)) bases.push_back(g);
  }
  std::uniform_int_distribution<std::size_t> pick_h(0, elements.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_g(0, bases.size() - 1);
  BoundStats recompose("conjugate_product_recomposes", "product of conjugates = h");
  BoundStats bound("conjugate_product_bound", "factors <= 8 |h| / |g| + 4");
  double worst = 0.0;
  std::size_t max_factors = 0;
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto& h = elements[pick_h(rng)];
    const auto& g = bases[pick_g(rng)];
    const auto w = "h=" + h.to_string() + " g=" + g.to_string();
    try {
      const auto cert = express_as_conjugates(h, g);
      const auto again = ConjugateProductCertificate::from_json(cert.to_json());
      if (recompose.record_holds(again.recompose() == h) && recompose.witness.empty()) recompose.witness = w;
      const double limit = 8.0 * static_cast<double>(supp_norm(h)) / static_cast<double>(supp_norm(g)) + 4.0;
      const auto k = cert.factors.size();
      max_factors = std::max(max_factors, k);
      worst = std::max(worst, static_cast<double>(k) / limit);
      if (bound.record_holds(static_cast<double>(k) <= limit) && bound.witness.empty()) bound.witness = w;
    } catch (const Error& e) {
      recompose.record_holds(false);
      if (recompose.witness.empty()) recompose.witness = w + ": " + e.what();
    }
  }
  return from_bounds("covering.conjugate_products",
                     std::to_string(pairs) + " random pairs (h, g) in A_" + std::to_string(n) +
                         " with g even and having a 2-cycle",
                     {recompose, bound},
                     {{"degree", n},
                      {"admissible_bases", bases.size()},
                      {"max_factors", max_factors},
                      {"max_factors_over_bound", worst}});
}

SuiteResult suite_covering(const RunConfig& c, std::mt19937_64& rng) {
  SuiteResult s{"covering", {}};
  s.checks.push_back(check_brenner(5, std::min(c.max_degree, kMaxCoveringDegree)));
  s.checks.push_back(check_ore(5, c.max_degree - 1));
  s.checks.push_back(check_conjugate_products(c.max_degree, c.certificate_pairs, rng));
  return s;
}

// --------------------------------------------------------------- intnorm

SuiteResult suite_intnorm(const RunConfig& c, std::mt19937_64&) {
  SuiteResult s{"intnorm", {}};
  {
    CheckResult r{"intnorm.exact_search", "exhaustive search gives |x_n| = n for n <= 5", true, ojson::object()};
    r.data["rows"] = ojson::array();
    for (unsigned long n = 1; n <= 5; ++n) {
      const auto res = intnorm::norm_exact(intnorm::x_n(n), intnorm::FactorialGenerators(n + 2), c.depth);
      const bool ok = res.value && *res.value == n;
      r.ok = r.ok && ok;
      r.data["rows"].push_back(res.to_json(2));
    }
    s.checks.push_back(std::move(r));
  }
  {
    CheckResult r{"intnorm.sandwich", "upper construction = lower argument = n for n <= 8", true, ojson::object()};
    r.data["rows"] = ojson::array();
    for (unsigned long n = 1; n <= 8; ++n) {
      const auto up = intnorm::norm_upper(intnorm::x_n(n), intnorm::FactorialGenerators(n + 1));
      std::size_t lower = 0;
      std::string failure;
      try {
        lower = intnorm::lower_bound_xn(n);
      } catch (const Error& e) {
        failure = e.what();
      }
      const bool ok = up.certificate.size() == n && lower == n;
      r.ok = r.ok && ok;
      ojson row{{"n", n}, {"x_n", up.target.get_str()}, {"upper", up.certificate.size()}, {"lower", lower}};
      if (!failure.empty()) row["failure"] = failure;
      r.data["rows"].push_back(row);
    }
    s.checks.push_back(std::move(r));
  }
  {
    const auto report = intnorm::torsion_probe(1, 8);
    s.checks.push_back({"intnorm.torsion", "(|x_n|, |2 x_n|) = (n, 1) for n <= 8", report.ok(), report.to_json()});
  }
  {
    const nlohmann::json cert = {{"kind", "intnorm"}, {"target", "24"}, {"value", 3}, {"terms", {"8", "8", "8"}}};
    CheckResult r{"intnorm.certificate_24", "24 = 8 + 8 + 8 recomposes", true, ojson::object()};
    try {
      intnorm::verify_certificate(cert);
    } catch (const Error& e) {
      r.ok = false;
      r.data["failure"] = e.what();
    }
    s.checks.push_back(std::move(r));
  }
  return s;
}

// --------------------------------------------------------------- matnorm

CheckResult from_family(std::string id, std::string statement, const std::vector<mat::FamilyAudit>& audits) {
  CheckResult r{std::move(id), std::move(statement), true, ojson::object()};
  r.data["dimensions"] = ojson::array();
  for (const auto& a : audits) {
    r.ok = r.ok && a.ok();
    r.data["dimensions"].push_back(a.to_json());
  }
  return r;
}

CheckResult check_rank_conjugation(std::size_t samples, std::mt19937_64& rng) {
  BoundStats inv("rank_conjugation_invariant", "rk(h g h^-1 - I) = rk(g - I)");
  std::uniform_int_distribution<int> entry(-2, 2);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t t = 0; t < samples; ++t) {
      const auto g = mat::random_upper_triangular(n, rng);
      mat::RationalMatrix h(n, n);
      do {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) h(i, j) = entry(rng);
        }
      } while (mat::rank(h) != n);
      const auto conj = h * g * mat::inverse(h);
      const bool same = mat::rank_norm_exact(conj).value == mat::rank_norm_exact(g).value;
      if (inv.record_holds(same) && inv.witness.empty()) inv.witness = "g=" + g.to_string() + " h=" + h.to_string();
    }
  }
  return from_bounds("matnorm.conjugation_invariance", "exact rank norm under random rational conjugation, n in [2, 6]",
                     {inv});
}

SuiteResult suite_matnorm(const RunConfig& c, std::mt19937_64& rng) {
  SuiteResult s{"matnorm", {}};
  std::vector<mat::FamilyAudit> tri, spd, so;
  for (std::size_t n = 2; n <= 10; ++n) tri.push_back(mat::verify_triangular(n, c.samples, rng));
  for (std::size_t n = 2; n <= 8; ++n) spd.push_back(mat::verify_spd(n, c.samples, rng));
  for (std::size_t n = 4; n <= 12; ++n) so.push_back(mat::verify_special_orthogonal(n, c.samples, rng, c.tau));
  s.checks.push_back(from_family("matnorm.triangular",
                                 "upper-triangular projection: homomorphism, rank drop <= 1, non-expansive, n in [2, 10]",
                                 tri));
  s.checks.push_back(from_family("matnorm.spd",
                                 "principal projection: positive definite, rank drop <= 2, non-expansive, n in [2, 8]",
                                 spd));
  s.checks.push_back(from_family("matnorm.special_orthogonal",
                                 "rotation projection: parity, rank drop <= 2, non-expansive, no borderline samples, n in [4, 12]",
                                 so));
  s.checks.push_back(from_family("matnorm.permutation_matrices",
                                 "rk(P - I) <= supp <= 3 rk(P - I) on S_" + std::to_string(c.max_degree - 1),
                                 {mat::verify_permutation_matrices(c.max_degree - 1)}));
  s.checks.push_back(check_rank_conjugation(std::max<std::size_t>(1, c.samples / 10), rng));
  return s;
}

// -------------------------------------------------------------- products

CheckResult from_contraction(std::string id, std::string statement, const prod::ContractionAudit& a) {
  return {std::move(id), std::move(statement), a.ok(), a.to_json()};
}

SuiteResult suite_products(const RunConfig& c, std::mt19937_64&) {
  using namespace prod;
  SuiteResult s{"products", {}};
  const FreeProduct z2z3({{1, cyclic(2)}, {2, cyclic(3)}});
  s.checks.push_back(from_contraction("products.free_product",
                                      "single-projection conditions on Z/2 * Z/3, discrete norms, collapse",
                                      audit_free_product(z2z3, collapse_projection(), c.word_budget)));
  const auto sum20 = DirectSum::cyclic_family(1, 20);
  s.checks.push_back(from_contraction("products.direct_sum",
                                      "single-projection conditions on sums of Z/i, i <= 20, at most 4 terms",
                                      audit_direct_sum_patterns(sum20, collapse_projection(), 4)));
  s.checks.push_back(from_contraction("products.direct_sum_small",
                                      "single-projection conditions on every element of sums of Z/i, i <= 6, at most 4 terms",
                                      audit_direct_sum_exhaustive(DirectSum::cyclic_family(1, 6), collapse_projection(), 4)));
  {
    const auto control = audit_free_product(z2z3, identity_projection(), c.word_budget);
    const auto failed = control.failed();
    const bool iii = std::find(failed.begin(), failed.end(), "iii") != failed.end();
    const bool i_ii = control.holds(1) && control.holds(2);
    s.checks.push_back({"products.negative_control",
                        "the identity projection keeps (i) and (ii) and is reported as failing (iii)", iii && i_ii,
                        control.to_json()});
  }
  s.checks.push_back(from_contraction("products.integer_shrink",
                                      "shrink-toward-zero on Z satisfies the conditions on [-50, 50]",
                                      audit_factor(integers(), shrink_projection(), 50)));
  {
    const FreeProduct z5z7({{1, cyclic(5, CyclicNorm::Word)}, {2, cyclic(7, CyclicNorm::Word)}});
    s.checks.push_back(from_bounds("products.inclusion_isometry", "Z/5 into Z/5 * Z/7 is an l1 isometry",
                                   {check_inclusion_isometry(z5z7, 1, 2)}));
    const auto eq = l1_support_equivalence(z5z7, c.word_budget);
    s.checks.push_back({"products.norm_equivalence",
                        "l1 / letters ranges exactly over [fineness, largest factor norm] on Z/5 * Z/7",
                        eq.matches(), eq.to_json()});
  }
  if (c.inject_failure) {
    s.checks.push_back(from_contraction("products.injected_contraction",
                                        "identity projection registered as norm-decreasing on Z/2 * Z/3",
                                        audit_free_product(z2z3, identity_projection(), c.word_budget)));
  }
  return s;
}

// ------------------------------------------------------------- coneprobe

CheckResult check_sequences() {
  CheckResult r{"coneprobe.admissibility",
                "identity and the n-cycle are admissible for s_n = n, the n^2-cycle is not", true, ojson::object()};
  auto run = [](const std::string& family) {
    cone::SequenceSpec spec;
    spec.family = family;
    spec.from = 2;
    spec.to = 64;
    return cone::run_sequence(spec);
  };
  const auto id = run("identity");
  const auto cyc = run("cycle");
  const auto longc = run("long_cycle");
  r.ok = id.admissibility.admissible && id.admissibility.max_ratio == 0.0 && cyc.admissibility.admissible &&
         cyc.admissibility.max_ratio == 1.0 && !longc.admissibility.admissible &&
         longc.admissibility.max_ratio == 64.0 && id.estimate.converged && cyc.estimate.converged &&
         !longc.estimate.converged;
  r.data = {{"identity", id.to_json()}, {"cycle", cyc.to_json()}, {"long_cycle", longc.to_json()}};
  return r;
}

CheckResult check_estimates(std::mt19937_64& rng) {
  CheckResult r{"coneprobe.estimates", "tail statistics: constants converge, 1/n converges to 0, 0/1 does not, "
                                       "stage-wise order is kept, rescaling by c divides by c",
                true, ojson::object()};
  const auto constant = cone::estimate_limit(std::vector<double>(100, 0.75));
  std::vector<double> harmonic, alternating;
  for (std::size_t n = 1; n <= 4000; ++n) {
    harmonic.push_back(1.0 / static_cast<double>(n));
    alternating.push_back(static_cast<double>(n % 2));
  }
  const auto h = cone::estimate_limit(harmonic);
  const auto alt = cone::estimate_limit(alternating);
  BoundStats mono("tail_monotone", "a_n <= b_n at every stage implies tail statistics of a <= those of b");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, 200);
  for (std::size_t t = 0; t < 1000; ++t) {
    std::vector<double> a(len(rng)), b;
    for (auto& x : a) x = u(rng);
    for (auto x : a) b.push_back(x + u(rng));
    const auto ea = cone::estimate_limit(a);
    const auto eb = cone::estimate_limit(b);
    const bool ok = ea.tail_min <= eb.tail_min && ea.tail_max <= eb.tail_max && ea.tail_mean <= eb.tail_mean &&
                    ea.tail_min <= ea.tail_mean && ea.tail_mean <= ea.tail_max;
    if (mono.record_holds(ok) && mono.witness.empty()) mono.witness = "trial " + std::to_string(t);
  }
  BoundStats rescale("scaling_rescales", "normalized series under c s_n equals the series under s_n divided by c");
  cone::SequenceSpec spec;
  spec.family = "cycle";
  spec.from = 2;
  spec.to = 128;
  const auto base = cone::build_sequence(spec).normalized();
  for (double factor : {0.5, 3.0, 7.25}) {
    spec.scaling = cone::Scaling::linear().scaled(factor);
    const auto scaled = cone::build_sequence(spec).normalized();
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double expect = base[i] / factor;
      const bool ok = std::abs(scaled[i] - expect) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(expect);
      if (rescale.record_holds(ok) && rescale.witness.empty()) rescale.witness = "c=" + std::to_string(factor);
    }
  }
  r.ok = constant.converged && constant.tail_mean == 0.75 && h.converged && h.tail_max < 1e-3 && !alt.converged &&
         mono.ok() && rescale.ok();
  r.data = {{"constant", constant.to_json()},
            {"harmonic", h.to_json()},
            {"alternating", alt.to_json()},
            {"bounds", {mono.to_json(), rescale.to_json()}}};
  return r;
}

SuiteResult suite_coneprobe(const RunConfig& c, std::mt19937_64& rng) {
  SuiteResult s{"coneprobe", {}};
  {
    const auto audit = cone::verify_circle(1024, 64, 256, 10000, 2, rng);
    s.checks.push_back({"coneprobe.circle",
                        "Z/n and the circle: round trip and exact arc identity n <= 1024, Lipschitz +2 on a "
                        "10^4-point grid n <= 256",
                        audit.ok(), audit.to_json()});
  }
  {
    const auto a = cone::check_sequence_contraction(cone::triangular_family(), 2, 8, c.stage_samples, 1, rng);
    s.checks.push_back({"coneprobe.sequence_triangular", "sequence contraction for upper-triangular stages, K = 1",
                        a.ok() && a.observed_k == 1, a.to_json()});
  }
  {
    const auto a = cone::check_sequence_contraction(cone::spd_family(), 2, 8, c.stage_samples, 2, rng);
    s.checks.push_back({"coneprobe.sequence_spd", "sequence contraction for positive definite stages, K = 2",
                        a.ok() && a.observed_k == 2, a.to_json()});
  }
  {
    const auto a =
        cone::check_sequence_contraction(cone::special_orthogonal_family(c.tau), 2, 10, c.stage_samples, 2, rng);
    s.checks.push_back({"coneprobe.sequence_special_orthogonal",
                        "sequence contraction for special orthogonal stages, K = 2", a.ok() && a.observed_k == 2,
                        a.to_json()});
  }
  s.checks.push_back(check_sequences());
  s.checks.push_back(check_estimates(rng));
  return s;
}

using SuiteFn = SuiteResult (*)(const RunConfig&, std::mt19937_64&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"norms", suite_norms},         {"cutting", suite_cutting},   {"covering", suite_covering},
      {"intnorm", suite_intnorm},     {"matnorm", suite_matnorm},   {"products", suite_products},
      {"coneprobe", suite_coneprobe},
  };
  return r;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> selected(const RunConfig& c) {
  if (c.suites.empty() || std::find(c.suites.begin(), c.suites.end(), "all") != c.suites.end()) {
    return suite_names();
  }
  std::vector<std::string> out;
  for (const auto& name : suite_names()) {
    if (std::find(c.suites.begin(), c.suites.end(), name) != c.suites.end()) out.push_back(name);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

void RunConfig::validate() const {
  for (const auto& s : suites) {
    if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw Error(ErrorCode::ConfigInvalid, "unknown suite '" + s + "'");
    }
  }
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::ConfigInvalid, what);
  };
  require(max_degree >= 5 && max_degree <= 8, "max_degree must lie in [5, 8]");
  require(samples >= 1 && samples <= 100000, "samples must lie in [1, 100000]");
  require(cut_random_pairs <= 10000000, "cut_random_pairs must be at most 10^7");
  require(cut_random_degree >= 2 && cut_random_degree <= 64, "cut_random_degree must lie in [2, 64]");
  require(certificate_pairs <= 100000, "certificate_pairs must be at most 10^5");
  require(stage_samples >= 1 && stage_samples <= 100000, "stage_samples must lie in [1, 100000]");
  require(depth >= 5 && depth <= 8, "depth must lie in [5, 8]");
  require(word_budget >= 1 && word_budget <= 10, "word_budget must lie in [1, 10]");
  require(tau > 0.0 && tau < 1e-2, "tau must lie in (0, 0.01)");
  require(jobs >= 1 && jobs <= 64, "jobs must lie in [1, 64]");
}

nlohmann::ordered_json RunConfig::to_json() const {
  ojson j;
  j["suites"] = selected(*this);
  j["max_degree"] = max_degree;
  j["samples"] = samples;
  j["cut_random_pairs"] = cut_random_pairs;
  j["cut_random_degree"] = cut_random_degree;
  j["certificate_pairs"] = certificate_pairs;
  j["stage_samples"] = stage_samples;
  j["depth"] = depth;
  j["word_budget"] = word_budget;
  j["tau"] = tau;
  j["seed"] = seed;
  j["inject_failure"] = inject_failure;
  return j;
}

RunConfig merge_config(RunConfig base, std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "suites") {
        base.suites = value.is_string() ? std::vector<std::string>{value.get<std::string>()}
                                        : value.get<std::vector<std::string>>();
      } else if (key == "max_degree") {
        base.max_degree = value.get<std::size_t>();
      } else if (key == "samples") {
        base.samples = value.get<std::size_t>();
      } else if (key == "cut_random_pairs") {
        base.cut_random_pairs = value.get<std::size_t>();
      } else if (key == "cut_random_degree") {
        base.cut_random_degree = value.get<std::size_t>();
      } else if (key == "certificate_pairs") {
        base.certificate_pairs = value.get<std::size_t>();
      } else if (key == "stage_samples") {
        base.stage_samples = value.get<std::size_t>();
      } else if (key == "depth") {
        base.depth = value.get<std::size_t>();
      } else if (key == "word_budget") {
        base.word_budget = value.get<std::size_t>();
      } else if (key == "tau") {
        base.tau = value.get<double>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "out") {
        base.out = value.get<std::string>();
      } else if (key == "jobs") {
        base.jobs = value.get<std::size_t>();
      } else if (key == "inject_failure") {
        base.inject_failure = value.get<bool>();
      } else {
        throw Error(ErrorCode::ConfigInvalid, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("bad config value: ") + e.what());
  }
  return base;
}

bool SuiteResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

const CheckResult* SuiteResult::find(std::string_view id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

bool RunReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

const CheckResult* RunReport::find(std::string_view id) const {
  for (const auto& s : suites) {
    if (const auto* c = s.find(id)) return c;
  }
  return nullptr;
}

nlohmann::ordered_json RunReport::to_json() const {
  ojson j;
  j["tool"] = "cinorm";
  j["config"] = config.to_json();
  j["ok"] = ok();
  j["suites"] = ojson::array();
  for (const auto& s : suites) {
    ojson sj{{"name", s.name}, {"ok", s.ok()}, {"checks", ojson::array()}};
    for (const auto& c : s.checks) {
      sj["checks"].push_back({{"id", c.id}, {"statement", c.statement}, {"ok", c.ok}, {"data", c.data}});
    }
    j["suites"].push_back(std::move(sj));
  }
  return j;
}

std::string RunReport::dump() const { return to_json().dump(2) + "\n"; }

SuiteResult run_single_suite(const std::string& name, const RunConfig& config) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(fnv1a(name)), static_cast<std::uint32_t>(fnv1a(name) >> 32)};
    std::mt19937_64 rng(seq);
    try {
      return fn(config, rng);
    } catch (const Error& e) {
      // A verifier that throws is a failed check, not a crashed run.
      return {name, {{name + ".error", "suite raised an error", false, {{"error", e.what()}}}}};
    }
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown suite '" + name + "'");
}

RunReport run_suite(const RunConfig& config) {
  config.validate();
  RunReport report;
  report.config = config;
  const auto names = selected(config);
  report.suites.resize(names.size());
  for (std::size_t start = 0; start < names.size(); start += config.jobs) {
    const std::size_t end = std::min(names.size(), start + config.jobs);
    if (config.jobs == 1) {
      report.suites[start] = run_single_suite(names[start], config);
      continue;
    }
    std::vector<std::future<SuiteResult>> running;
    for (std::size_t i = start; i < end; ++i) {
      running.push_back(std::async(std::launch::async, run_single_suite, names[i], std::cref(config)));
    }
    for (std::size_t i = start; i < end; ++i) report.suites[i] = running[i - start].get();
  }
  return report;
}

void verify_certificate(const nlohmann::json& certificate) {
  if (!certificate.is_object() || !certificate.contains("kind") || !certificate["kind"].is_string()) {
    throw Error(ErrorCode::MalformedCertificate, "missing certificate kind");
  }
  const auto kind = certificate["kind"].get<std::string>();
  if (kind == "intnorm") {
    intnorm::verify_certificate(certificate);
  } else if (kind == "commutator") {
    verify_commutator_certificate(certificate);
  } else if (kind == "conjugate_product") {
    const auto cert = ConjugateProductCertificate::from_json(certificate);
    if (cert.base.is_identity()) throw Error(ErrorCode::MalformedCertificate, "identity base");
    const auto product = cert.recompose();
    if (product != cert.target) {
      throw Error(ErrorCode::RecompositionMismatch,
                  "product is " + product.to_string() + ", not " + cert.target.to_string());
    }
  } else {
    throw Error(ErrorCode::MalformedCertificate, "unknown certificate kind '" + kind + "'");
  }
}

}  // namespace cinorm
