// Runs the default configuration and prints one PASS/FAIL line per
// acceptance criterion. Exit status 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <iostream>
#include <string>

#include "cinorm/suite.hpp"

namespace {

using cinorm::CheckResult;
using cinorm::RunReport;
using ojson = nlohmann::ordered_json;

bool all_ok(const RunReport& r, std::initializer_list<const char*> ids) {
  for (const auto* id : ids) {
    const auto* c = r.find(id);
    if (c == nullptr || !c->ok) return false;
  }
  return true;
}

const ojson& data(const RunReport& r, const char* id) {
  static const ojson empty = ojson::object();
  const auto* c = r.find(id);
  return c ? c->data : empty;
}

std::size_t checks_of(const ojson& bounds, std::size_t i) { return bounds.at(i).at("checks").get<std::size_t>(); }

bool dims_ok(const ojson& dims, std::size_t lo, std::size_t hi, std::size_t samples) {
  std::size_t expect = lo;
  for (const auto& d : dims) {
    if (d.at("dimension").get<std::size_t>() != expect++) return false;
    if (d.at("samples").get<std::size_t>() != samples) return false;
    // Exact-rank families carry no borderline count.
    if (d.value("borderline", 0u) != 0u) return false;
  }
  return expect == hi + 1;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string report_path = argc > 1 ? argv[1] : "";
  cinorm::RunConfig config;  // the default configuration

  const auto start = std::chrono::steady_clock::now();
  const auto report = cinorm::run_suite(config);
  const auto first = report.dump();
  if (!report_path.empty()) std::ofstream(report_path, std::ios::binary) << first;

  int failures = 0;
  int index = 0;
  auto line = [&](const std::string& what, const std::function<bool()>& pass) {
    bool ok = false;
    try {
      ok = pass();
    } catch (const std::exception& e) {
      std::cerr << "criterion " << index + 1 << ": " << e.what() << "\n";
    }
    ++index;
    failures += ok ? 0 : 1;
    std::printf("%s %2d %s\n", ok ? "PASS" : "FAIL", index, what.c_str());
  };

  line("norm sandwich: tr <= supp <= 2 tr on all of S_7, tr <= 2 n3 <= 3 tr on all of A_6", [&] {
    const auto& a = data(report, "norms.sandwich_tr_supp").at("bounds");
    const auto& b = data(report, "norms.sandwich_three_cycle").at("bounds");
    return all_ok(report, {"norms.sandwich_tr_supp", "norms.sandwich_three_cycle"}) && checks_of(a, 0) == 5040 &&
           checks_of(b, 0) == 360;
  });
  line("cutting maps: four bounds, all pairs of S_6 with k, m <= 8 and 10^5 random pairs in S_30", [&] {
    return all_ok(report, {"cutting.exhaustive", "cutting.random"}) &&
           data(report, "cutting.exhaustive").at("pairs") == 720u * 720u &&
           data(report, "cutting.random").at("pairs") == 100000u &&
           report.find("cutting.random")->statement.find("S_30") != std::string::npos;
  });
  line("splitting: every s in S_7 and 1 <= k <= supp(s) recomposes within both support bounds", [&] {
    return all_ok(report, {"cutting.split"}) && data(report, "cutting.split").at("degree") == 7u;
  });
  line("displacement: every s in S_8 has s(D) disjoint from D and |D| >= supp(s) / 3", [&] {
    const auto& b = data(report, "cutting.displacement").at("bounds");
    return all_ok(report, {"cutting.displacement"}) && checks_of(b, 0) == 40319;
  });
  line("Brenner: C^4 = A_n for every admissible s in A_n, n = 5, 6, 7", [&] {
    const auto& degrees = data(report, "covering.brenner").at("degrees");
    std::size_t n = 5;
    for (const auto& d : degrees) {
      if (d.at("n").get<std::size_t>() != n++) return false;
      if (d.at("elements_covered") != d.at("elements_meeting_hypotheses")) return false;
      if (d.at("elements_meeting_hypotheses").get<std::size_t>() == 0) return false;
    }
    return all_ok(report, {"covering.brenner"}) && n == 8;
  });
  line("Ore: every element of A_5 and A_6 has a verified commutator witness", [&] {
    const auto& degrees = data(report, "covering.ore").at("degrees");
    return all_ok(report, {"covering.ore"}) && degrees.size() == 2 && degrees[0].at("verified") == 60u &&
           degrees[1].at("verified") == 360u;
  });
  line("conjugate products: 100 random (h, g) in A_7 recompose within 8 |h| / |g| + 4 factors", [&] {
    const auto& b = data(report, "covering.conjugate_products").at("bounds");
    return all_ok(report, {"covering.conjugate_products"}) && checks_of(b, 0) == 100 && checks_of(b, 1) == 100;
  });
  line("integers: exact |x_n| = n for n <= 5, upper = lower = n for n <= 8, torsion (n, 1) for n <= 8", [&] {
    return all_ok(report, {"intnorm.exact_search", "intnorm.sandwich", "intnorm.torsion"}) &&
           data(report, "intnorm.sandwich").at("rows").size() == 8 &&
           data(report, "intnorm.torsion").at("rows").size() == 8;
  });
  line("matrix projections: triangular n <= 10, positive definite n <= 8, SO(n) n = 4..12, 10^3 pairs each, "
       "no borderline",
       [&] {
         return all_ok(report, {"matnorm.triangular", "matnorm.spd", "matnorm.special_orthogonal"}) &&
                dims_ok(data(report, "matnorm.triangular").at("dimensions"), 2, 10, 1000) &&
                dims_ok(data(report, "matnorm.spd").at("dimensions"), 2, 8, 1000) &&
                dims_ok(data(report, "matnorm.special_orthogonal").at("dimensions"), 4, 12, 1000);
       });
  line("circle: round trip n <= 1024, exact arc identity, Lipschitz +2 on a 10^4-point grid for n <= 256", [&] {
    const auto& d = data(report, "coneprobe.circle");
    return all_ok(report, {"coneprobe.circle"}) && d.at("roundtrip_moduli") == 1024u &&
           d.at("grid_moduli") == 256u && d.at("grid_points") == 10000u;
  });
  line("products: four conditions on Z/2 * Z/3 words of l1 <= 6 and sums of Z/i, i <= 20, with <= 4 terms; "
       "identity control fails |p(g)| <= |g| - 1",
       [&] {
         return all_ok(report, {"products.free_product", "products.direct_sum", "products.direct_sum_small",
                                "products.negative_control"});
       });
  line("permutation matrices: rk(P - I) <= supp <= 3 rk(P - I) on all of S_6", [&] {
    const auto& dims = data(report, "matnorm.permutation_matrices").at("dimensions");
    return all_ok(report, {"matnorm.permutation_matrices"}) && dims.size() == 1 &&
           dims[0].at("dimension") == 6u;
  });
  line("determinism: a second run with the same config and seed is byte-identical", [&] {
    return cinorm::run_suite(config).dump() == first;
  });

  const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %d criteria passed (%.1f s)\n", index - failures, index, seconds);
  return failures == 0 ? 0 : 1;
}
