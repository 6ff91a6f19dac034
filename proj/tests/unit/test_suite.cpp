#include <gtest/gtest.h>

#include "cinorm/covering.hpp"
#include "cinorm/error.hpp"
#include "cinorm/intnorm.hpp"
#include "cinorm/permutation.hpp"
#include "cinorm/suite.hpp"

namespace {

cinorm::RunConfig small() {
  cinorm::RunConfig c;
  c.max_degree = 5;
  c.samples = 20;
  c.cut_random_pairs = 200;
  c.cut_random_degree = 12;
  c.certificate_pairs = 10;
  c.stage_samples = 10;
  return c;
}

cinorm::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const cinorm::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return cinorm::ErrorCode::ParseError;
}

}  // namespace

TEST(RunConfig, MergeAndValidate) {
  auto c = cinorm::merge_config({}, R"({"suites": ["cutting"], "max_degree": 6, "seed": 5, "tau": 1e-9})");
  EXPECT_EQ(c.suites, std::vector<std::string>{"cutting"});
  EXPECT_EQ(c.max_degree, 6u);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(code_of([] { cinorm::merge_config({}, R"({"bogus": 1})"); }), cinorm::ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { cinorm::merge_config({}, R"({"samples": "many"})"); }), cinorm::ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { cinorm::merge_config({}, "{"); }), cinorm::ErrorCode::ConfigInvalid);
  c.max_degree = 12;
  EXPECT_EQ(code_of([&] { c.validate(); }), cinorm::ErrorCode::ConfigInvalid);
  c.max_degree = 6;
  c.suites = {"nope"};
  EXPECT_EQ(code_of([&] { c.validate(); }), cinorm::ErrorCode::ConfigInvalid);
}

TEST(RunSuite, SmallRunPassesAndRecordsSeed) {
  auto c = small();
  const auto report = cinorm::run_suite(c);
  EXPECT_TRUE(report.ok()) << report.dump();
  EXPECT_EQ(report.suites.size(), cinorm::suite_names().size());
  const auto j = report.to_json();
  EXPECT_EQ(j["config"]["seed"], c.seed);
  for (const auto& s : j["suites"]) {
    for (const auto& check : s["checks"]) EXPECT_FALSE(check["statement"].get<std::string>().empty());
  }
}

TEST(RunSuite, DeterministicAcrossJobCounts) {
  auto c = small();
  c.suites = {"cutting", "products", "matnorm"};
  const auto a = cinorm::run_suite(c).dump();
  c.jobs = 3;
  EXPECT_EQ(cinorm::run_suite(c).dump(), a);
  c.seed += 1;
  EXPECT_NE(cinorm::run_suite(c).dump(), a);
}

TEST(RunSuite, InjectedFailureCarriesWitness) {
  auto c = small();
  c.suites = {"products"};
  c.inject_failure = true;
  const auto report = cinorm::run_suite(c);
  EXPECT_FALSE(report.ok());
  const auto* check = report.find("products.injected_contraction");
  ASSERT_NE(check, nullptr);
  EXPECT_FALSE(check->ok);
  EXPECT_FALSE(check->data["conditions"][2]["witness"].get<std::string>().empty());
  EXPECT_TRUE(report.find("products.negative_control")->ok);
}

TEST(Certificates, Dispatch) {
  const auto g = cinorm::Permutation::parse("(1 2 3 4 5)");
  auto comm = nlohmann::json::parse(cinorm::commutator_certificate(g, cinorm::commutator_witness(g, 5)).dump());
  EXPECT_NO_THROW(cinorm::verify_certificate(comm));
  comm["c"] = (cinorm::Permutation::parse(comm["c"].get<std::string>()) *
               cinorm::Permutation::parse("(1 2 3)"))
                  .to_string();
  EXPECT_EQ(code_of([&] { cinorm::verify_certificate(comm); }), cinorm::ErrorCode::RecompositionMismatch);

  auto conj = nlohmann::json::parse(
      cinorm::express_as_conjugates(cinorm::Permutation::parse("(1 2 3 4 5 6 7)"),
                                    cinorm::Permutation::parse("(1 2)(3 4)"))
          .to_json()
          .dump());
  EXPECT_NO_THROW(cinorm::verify_certificate(conj));
  auto& factor = conj["factors"][0];
  factor["conjugator"] = (cinorm::Permutation::parse(factor["conjugator"].get<std::string>()) *
                          cinorm::Permutation::parse("(1 5)"))
                             .to_string();
  EXPECT_EQ(code_of([&] { cinorm::verify_certificate(conj); }), cinorm::ErrorCode::RecompositionMismatch);

  EXPECT_NO_THROW(cinorm::verify_certificate(
      nlohmann::json{{"kind", "intnorm"}, {"target", "24"}, {"value", 3}, {"terms", {"8", "8", "8"}}}));
  EXPECT_EQ(code_of([] { cinorm::verify_certificate(nlohmann::json{{"kind", "other"}}); }),
            cinorm::ErrorCode::MalformedCertificate);
  EXPECT_EQ(code_of([] { cinorm::verify_certificate(nlohmann::json::array()); }),
            cinorm::ErrorCode::MalformedCertificate);
}
