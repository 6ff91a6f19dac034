#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "cinorm/contractions.hpp"
#include "cinorm/covering.hpp"
#include "cinorm/error.hpp"
#include "cinorm/intnorm.hpp"
#include "cinorm/matnorm.hpp"
#include "cinorm/permutation.hpp"
#include "cinorm/products.hpp"
#include "cinorm/suite.hpp"

namespace py = pybind11;
using cinorm::Permutation;

namespace {

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
template <typename J>
std::string text(const J& j) {
  return j.dump();
}

cinorm::intnorm::FactorialGenerators generators_for(const mpz_class& x, unsigned long base) {
  unsigned long m = 1;
  while (cinorm::intnorm::generator(m + 1, base) <= abs(x)) ++m;
  return cinorm::intnorm::FactorialGenerators(m + 1, base);
}

cinorm::mat::RationalMatrix rational(const std::vector<std::vector<std::string>>& rows) {
  std::string csv;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) csv += (j ? "," : "") + row[j];
    csv += "\n";
  }
  return cinorm::mat::RationalMatrix::from_csv(csv);
}

}  // namespace

PYBIND11_MODULE(_cinorm, m) {
  m.doc() = "Conjugation-invariant norms: finite-scale verifiers";

  static py::exception<cinorm::Error> error(m, "CinormError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cinorm::Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<>())
      .def(py::init(&Permutation::parse), py::arg("cycles"))
      .def_static("from_images", [](const std::vector<cinorm::Point>& images) {
        return Permutation::from_images(images);
      })
      .def("__call__", &Permutation::operator())
      .def("__mul__", [](const Permutation& a, const Permutation& b) { return a * b; })
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__hash__", [](const Permutation& a) { return cinorm::PermutationHash{}(a); })
      .def("__str__", &Permutation::to_string)
      .def("__repr__", [](const Permutation& a) { return "Permutation('" + a.to_string() + "')"; })
      .def("inverse", &Permutation::inverse)
      .def("support", &Permutation::support)
      .def("cycle_type", &Permutation::cycle_type)
      .def("is_even", &Permutation::is_even)
      .def("is_identity", &Permutation::is_identity);

  m.def("supp_norm", &cinorm::supp_norm);
  m.def("tr_norm", &cinorm::tr_norm);
  m.def("three_cycle_norm", &cinorm::three_cycle_norm);
  m.def("conjugate", &cinorm::conjugate, py::arg("s"), py::arg("t"));
  m.def("commutator", &cinorm::commutator, py::arg("b"), py::arg("c"));

  m.def("cut", [](const Permutation& s, std::size_t k) { return cinorm::cut(s, k).image; });
  m.def("split", [](const Permutation& s, std::size_t k) {
    const auto r = cinorm::split(s, k);
    return py::make_tuple(r.left, r.right);
  });
  m.def("displaced_set", &cinorm::displaced_set);

  m.def("_brenner_check", [](const Permutation& s, std::size_t n) { return text(cinorm::brenner_check(s, n).to_json()); });
  m.def("commutator_witness", [](const Permutation& g, std::size_t n) {
    const auto w = cinorm::commutator_witness(g, n);
    return py::make_tuple(w.b, w.c);
  });
  m.def("_commutator_certificate", [](const Permutation& g, std::size_t n) {
    return text(cinorm::commutator_certificate(g, cinorm::commutator_witness(g, n)));
  });
  m.def("_express_as_conjugates", [](const Permutation& h, const Permutation& g) {
    return text(cinorm::express_as_conjugates(h, g).to_json());
  });

  m.def("_intnorm", [](const std::string& target, bool exact, std::size_t depth) {
    const auto t = cinorm::intnorm::parse_target(target);
    const auto gens = generators_for(t.value, t.base);
    const auto r = exact ? cinorm::intnorm::norm_exact(t.value, gens, depth) : cinorm::intnorm::norm_upper(t.value, gens);
    return text(r.to_json(t.base));
  });
  m.def("lower_bound_xn", &cinorm::intnorm::lower_bound_xn, py::arg("n"), py::arg("base") = 2);

  m.def("rank_norm_exact", [](const std::vector<std::vector<std::string>>& rows) {
    return cinorm::mat::rank_norm_exact(rational(rows)).value;
  });
  m.def("rank_norm_numeric", [](const Eigen::MatrixXd& g, double tau) {
    return cinorm::mat::rank_norm_numeric(g, tau).value;
  }, py::arg("g"), py::arg("tau") = cinorm::mat::kDefaultTau);
  m.def("so_project", &cinorm::mat::so_project);
  m.def("elementary_rotation", &cinorm::mat::elementary_rotation);

  m.def("free_product_l1", [](const std::vector<std::string>& factors, const std::string& word) {
    std::map<std::size_t, cinorm::prod::FactorPtr> fs;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      fs[i + 1] = f == "Z" ? cinorm::prod::integers() : cinorm::prod::cyclic(std::stoul(f.substr(2)));
    }
    const cinorm::prod::FreeProduct g(fs);
    const auto w = g.parse(word);
    return py::make_tuple(g.format(w), g.l1_norm(w));
  }, py::arg("factors"), py::arg("word"));

  m.def("suite_names", &cinorm::suite_names);
  m.def("_run_suite", [](const std::string& config_json) {
    const auto config = cinorm::merge_config({}, config_json);
    py::gil_scoped_release release;
    return cinorm::run_suite(config).dump();
  });
  m.def("_verify_certificate", [](const std::string& json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw cinorm::Error(cinorm::ErrorCode::MalformedCertificate, e.what());
    }
    cinorm::verify_certificate(j);
  });
}
