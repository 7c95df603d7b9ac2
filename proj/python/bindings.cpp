#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "speclab/cli.hpp"
#include "speclab/report.hpp"

namespace py = pybind11;
using namespace speclab;

namespace {

// reports cross the boundary as JSON text; the Python side parses them
std::string dump(const Json& j) { return j.dump(); }

ManifoldModel manifold(const std::string& name, const std::string& metric) {
  if (name == "circle") return ManifoldModel::circle(MetricProfile1D::parse(metric));
  if (name == "torus2-flat") return ManifoldModel::flat_torus();
  if (name == "torus2-warped") return ManifoldModel::warped_torus(MetricProfile1D::parse(metric));
  if (name == "sphere") return ManifoldModel::sphere();
  throw InvalidInput("unknown manifold '" + name + "'");
}

std::vector<std::tuple<std::size_t, double, std::size_t>> spectrum(const std::string& name,
                                                                  const std::string& metric,
                                                                  double cutoff) {
  SpectralBasis b = name == "circle"  ? circle_basis(manifold(name, metric), static_cast<int>(cutoff))
                    : name == "sphere" ? sphere_basis(static_cast<int>(cutoff))
                                       : torus2_basis(manifold(name, metric), cutoff);
  std::vector<std::tuple<std::size_t, double, std::size_t>> out;
  for (const auto& p : b.pairs()) out.emplace_back(p.index, p.lambda, p.group_id);
  return out;
}

std::vector<double> fd_energies(const std::string& metric, const std::string& potential, int grid_n,
                                int k) {
  const auto h = MetricProfile1D::parse(metric);
  const double length = arc_length_reparam(h, 512).length;
  const auto b = fd_eigensolve_circle(h, PotentialProfile::parse(potential, length), grid_n, k);
  std::vector<double> out;
  for (const auto& p : b.pairs()) out.push_back(p.energy);
  return out;
}

std::string uncertainty_suite(std::uint64_t seed, std::size_t valid, const std::string& metric) {
  SuiteOptions o;
  o.seed = seed;
  o.valid_per_manifold = valid;
  o.circle_metric = metric;
  o.warped_metric = metric;
  return dump(to_json(run_uncertainty_suite(o), false));
}

std::string sharpness(const std::vector<int>& ls, double C) {
  Json rows = Json::array();
  for (const auto& r : sharpness_sweep(ls, C)) rows.push_back(to_json(r));
  return dump(rows);
}

std::string weyl(const std::string& name, const std::string& metric, double lo, double hi, int points) {
  auto r = counting_scan(exact_counting_spectrum(manifold(name, metric), hi), log_spaced(lo, hi, points));
  r.fitted_exponent = remainder_fit(r);
  return dump(to_json(r));
}

std::string tubular(const std::vector<double>& Rs, double lo, double hi, const std::string& mode) {
  TubularOptions o;
  o.mode = mode;
  return dump(to_json(tubular_sweep(CurveSpec::default_curve(), Rs, lo, hi, o), false));
}

std::tuple<int, std::string, std::string> cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_speclab, m) {
  m.doc() = "spectral uncertainty laboratory";
  m.attr("__version__") = kToolVersion;

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  m.def("arc_length", [](const std::string& metric) {
    return arc_length_reparam(MetricProfile1D::parse(metric), 512).length;
  });
  m.def("spectrum", &spectrum, py::arg("manifold"), py::arg("metric") = "2+sin", py::arg("cutoff") = 5.0,
        "(index, lambda, group) triples; cutoff is n_max, l_max or lambda_max");
  m.def("fd_energies", &fd_energies, py::arg("metric") = "2+sin", py::arg("potential") = "0",
        py::arg("grid") = 2048, py::arg("k") = 20);
  m.def("uncertainty_suite", &uncertainty_suite, py::arg("seed") = 20240601, py::arg("valid") = 125,
        py::arg("metric") = "2+sin");
  m.def("fr_sweep", [](int kmin, int kmax, bool unit_scale) { return dump(to_json(fr_bump_sweep(kmin, kmax, unit_scale))); },
        py::arg("kmin") = 3, py::arg("kmax") = 7, py::arg("unit_scale") = false);
  m.def("sharpness_sweep", &sharpness, py::arg("ls"), py::arg("C") = 0.0);
  m.def("weyl_scan", &weyl, py::arg("manifold"), py::arg("metric") = "2+sin", py::arg("lo") = 10.0,
        py::arg("hi") = 200.0, py::arg("points") = 40);
  m.def("delta_exponent", [](int k, double p, int n) {
    const auto d = delta_exponent(k, p, n);
    return std::make_tuple(d.value, d.branch, d.log_loss);
  });
  m.def("tube_measure", [](double cx, double cy, double radius, double r) {
    return tube_measure(CurveSpec::circle({cx, cy}, radius), r);
  });
  m.def("tubular_sweep", &tubular, py::arg("Rs"), py::arg("lo") = 20.0, py::arg("hi") = 60.0,
        py::arg("mode") = "stability");
  m.def("br_scan", [](double lo, double hi, double R, int offsets) {
    return dump(to_json(br_ratio_scan(CurveSpec::default_curve(), lo, hi, R, offsets)));
  }, py::arg("lo") = 10.0, py::arg("hi") = 50.0, py::arg("R") = 32.0, py::arg("offsets") = 9);
  m.def("cli", &cli, "run_cli(args) -> (exit code, stdout, stderr)");
}
