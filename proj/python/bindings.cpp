#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "archipelago/closed_forms.hpp"
#include "archipelago/dilog.hpp"
#include "archipelago/errors.hpp"
#include "archipelago/measure.hpp"
#include "archipelago/report.hpp"
#include "archipelago/separability.hpp"

namespace py = pybind11;
namespace ar = archipelago;

namespace {

ar::HermitianMatrix hermitian(const Eigen::MatrixXcd& m) { return ar::HermitianMatrix(m, 1e-12); }

py::dict estimate_dict(const ar::ProbabilityEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["std_error"] = e.std_error;
  d["samples"] = e.samples;
  d["seed"] = e.seed;
  d["method"] = ar::method_name(e.method);
  d["hits"] = e.hits;
  return d;
}

std::vector<ar::RegionPredicate> pick(const ar::ModelSpec& m, const std::vector<std::string>& names) {
  const auto suite = ar::region_suite(m);
  if (names.empty()) return suite.regions();
  std::vector<ar::RegionPredicate> out;
  for (const auto& n : names) out.push_back(suite.at(n));
  return out;
}

py::dict estimates_by_name(const std::vector<ar::RegionPredicate>& regions,
                           const std::vector<ar::ProbabilityEstimate>& est) {
  py::dict d;
  for (std::size_t i = 0; i < est.size(); ++i) d[py::str(regions[i].name())] = estimate_dict(est[i]);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Separability thresholds and entanglement-region probabilities";

  auto base = py::register_exception<ar::Error>(m, "ArchipelagoError", PyExc_RuntimeError);
  py::register_exception<ar::UnsupportedDimension>(m, "UnsupportedDimension", base);
  py::register_exception<ar::ArityError>(m, "ArityError", base);
  py::register_exception<ar::ShapeError>(m, "ShapeError", base);
  py::register_exception<ar::DomainError>(m, "DomainError", base);
  py::register_exception<ar::UnknownName>(m, "UnknownName", base);
  py::register_exception<ar::UnsupportedModel>(m, "UnsupportedModel", base);
  py::register_exception<ar::DegenerateRegion>(m, "DegenerateRegion", base);

  py::class_<ar::ModelSpec>(m, "ModelSpec")
      .def_readonly("name", &ar::ModelSpec::name)
      .def_readonly("dim_a", &ar::ModelSpec::dim_a)
      .def_readonly("dim_b", &ar::ModelSpec::dim_b)
      .def_readonly("box_half_width", &ar::ModelSpec::box_half_width)
      .def_property_readonly("terms",
                             [](const ar::ModelSpec& s) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& t : s.terms) out.emplace_back(t.a, t.b);
                               return out;
                             })
      .def_property_readonly("parameter_count", &ar::ModelSpec::parameter_count)
      .def("__repr__", [](const ar::ModelSpec& s) { return "<ModelSpec " + s.name + ">"; });

  m.def("model_names", [] {
    std::vector<std::string> out;
    for (const auto& s : ar::model_catalog()) out.push_back(s.name);
    return out;
  });
  m.def("find_model", &ar::find_model, py::return_value_policy::reference, py::arg("name"));

  m.def(
      "su_generators",
      [](int d) {
        std::vector<Eigen::MatrixXcd> out;
        for (const auto& g : ar::su_generators(d).generators()) out.push_back(g.matrix());
        return out;
      },
      py::arg("d"));
  m.def(
      "kron", [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        return ar::kron(hermitian(a), hermitian(b)).matrix();
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "build_state",
      [](const std::string& model, const std::vector<double>& t) {
        return ar::build_state(ar::find_model(model), t).matrix();
      },
      py::arg("model"), py::arg("t"));
  m.def(
      "is_physical",
      [](const std::string& model, const std::vector<double>& t) { return ar::is_physical(ar::find_model(model), t); },
      py::arg("model"), py::arg("t"));
  m.def(
      "is_ppt", [](const std::string& model, const std::vector<double>& t) { return ar::is_ppt(ar::find_model(model), t); },
      py::arg("model"), py::arg("t"));
  m.def(
      "is_psd", [](const Eigen::MatrixXcd& a, double tol) { return ar::is_psd(hermitian(a), tol); }, py::arg("m"),
      py::arg("tol") = ar::tol::kPsd);
  m.def(
      "partial_transpose",
      [](const Eigen::MatrixXcd& a, std::size_t da, std::size_t db) {
        return ar::partial_transpose(hermitian(a), da, db).matrix();
      },
      py::arg("m"), py::arg("dim_a"), py::arg("dim_b"));
  m.def(
      "leading_principal_minors",
      [](const Eigen::MatrixXcd& a) { return ar::leading_principal_minors(hermitian(a)); }, py::arg("m"));

  m.def(
      "derive_thresholds",
      [](const std::string& model, int restarts, std::uint64_t seed) {
        ar::DeriveOptions o;
        o.restarts = restarts;
        o.seed = seed;
        const auto d = ar::derive_thresholds(ar::find_model(model), o);
        py::dict r;
        r["additive"] = d.thresholds.additive;
        r["multiplicative"] = d.thresholds.multiplicative;
        r["additive_form"] = d.thresholds.additive_form;
        r["multiplicative_form"] = d.thresholds.multiplicative_form;
        r["additive_numeric"] = d.additive_numeric;
        r["multiplicative_numeric"] = d.multiplicative_numeric;
        r["converged"] = d.converged;
        return r;
      },
      py::arg("model"), py::arg("restarts") = 64, py::arg("seed") = 1);

  m.def("dilog", &ar::dilog, py::arg("x"));
  m.def(
      "closed_form", [](const std::string& name) { return ar::closed_form(name); }, py::arg("name"));
  m.def("closed_form_names", [] {
    std::vector<std::string> out;
    for (const auto& e : ar::closed_form_catalog()) out.push_back(e.name);
    return out;
  });

  m.def("region_names", [](const std::string& model) { return ar::region_suite(ar::find_model(model)).names(); },
        py::arg("model"));
  m.def(
      "mc_probabilities",
      [](const std::string& model, const std::vector<std::string>& regions, std::uint64_t samples,
         std::uint64_t seed, unsigned workers) {
        const auto& spec = ar::find_model(model);
        const auto chosen = pick(spec, regions);
        ar::SamplingOptions o;
        o.samples = samples;
        o.seed = seed;
        o.workers = workers;
        std::vector<ar::ProbabilityEstimate> est;
        {
          py::gil_scoped_release release;
          est = ar::mc_probabilities(spec, chosen, o);
        }
        return estimates_by_name(chosen, est);
      },
      py::arg("model"), py::arg("regions") = std::vector<std::string>{}, py::arg("samples") = 100000,
      py::arg("seed") = 1, py::arg("workers") = 1);
  m.def(
      "grid_probabilities",
      [](const std::string& model, const std::vector<std::string>& regions, int resolution) {
        const auto& spec = ar::find_model(model);
        const auto chosen = pick(spec, regions);
        std::vector<ar::ProbabilityEstimate> est;
        {
          py::gil_scoped_release release;
          est = ar::grid_probabilities(spec, chosen, resolution);
        }
        return estimates_by_name(chosen, est);
      },
      py::arg("model"), py::arg("regions") = std::vector<std::string>{}, py::arg("resolution") = 1000);

  m.def(
      "verify_json",
      [](std::uint64_t samples, std::uint64_t seed, const std::vector<std::string>& models, int resolution) {
        ar::VerifyOptions o;
        o.samples = samples;
        o.seed = seed;
        o.models = models;
        o.grid_resolution = resolution;
        py::gil_scoped_release release;
        return ar::run_verify(o).to_json().dump(2);
      },
      py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("models") = std::vector<std::string>{},
      py::arg("resolution") = 1000);
  m.def(
      "export_cloud",
      [](const std::string& model, const std::string& region, std::uint64_t points, std::uint64_t seed,
         const std::string& format) {
        ar::CloudOptions o;
        o.points = points;
        o.seed = seed;
        o.format = format == "json" ? ar::CloudFormat::json : ar::CloudFormat::csv;
        std::ostringstream out;
        ar::export_cloud(ar::find_model(model), region, o, out);
        return out.str();
      },
      py::arg("model"), py::arg("region"), py::arg("points") = 1000, py::arg("seed") = 1,
      py::arg("format") = "csv");
  m.def(
      "render_2d",
      [](const std::string& model, int resolution) {
        std::ostringstream out;
        const auto counts = ar::render_2d(ar::find_model(model), resolution, out);
        return std::make_pair(out.str(), counts);
      },
      py::arg("model"), py::arg("resolution") = 200);
}
