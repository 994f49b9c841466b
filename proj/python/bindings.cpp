#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "asep/airy.hpp"
#include "asep/cli.hpp"
#include "asep/exact_oracle.hpp"
#include "asep/harness.hpp"
#include "asep/model.hpp"
#include "asep/scaling.hpp"
#include "asep/statistics.hpp"
#include "asep/tracy_widom.hpp"

namespace py = pybind11;
using namespace asep;

namespace {

py::dict run_ensemble(double p, double q, double v, double t, std::size_t trajectories,
                      std::uint64_t seed, std::vector<double> s_grid, unsigned workers) {
  harness::EnsembleConfig config;
  config.params = ModelParameters(p, q);
  config.v = v;
  config.t = t;
  config.trajectories = trajectories;
  config.seed = seed;
  config.s_grid = std::move(s_grid);
  config.workers = workers;
  harness::EnsembleSummary summary;
  {
    py::gil_scoped_release release;
    summary = harness::run_ensemble(config);
  }
  py::dict out;
  out["currents"] = summary.currents;
  out["normalized"] = summary.normalized;
  out["ks_distance"] = summary.ks_distance;
  out["mean"] = summary.moments.mean;
  out["variance"] = summary.moments.variance;
  out["skewness"] = summary.moments.skewness;
  out["ecdf_on_grid"] = summary.ecdf_on_grid;
  out["limit_law_on_grid"] = summary.limit_law_on_grid;
  out["truncation"] = summary.truncation;
  return out;
}

std::vector<std::vector<Site>> simulate_positions(double p, double q, std::size_t n,
                                                  double t_phys, std::size_t trajectories,
                                                  std::uint64_t seed, unsigned workers) {
  harness::Ensemble ensemble;
  {
    py::gil_scoped_release release;
    ensemble = harness::simulate(ModelParameters(p, q), n, t_phys, trajectories, seed, workers);
  }
  std::vector<std::vector<Site>> out;
  out.reserve(ensemble.finals.size());
  for (auto& config : ensemble.finals) out.push_back(std::move(config.positions));
  return out;
}

py::dict exact_law(double p, double q, std::size_t n, Site lo, Site hi, double t_phys) {
  const auto gen = oracle::build_generator(Window{lo, hi}, n, ModelParameters(p, q));
  const auto law = oracle::transient_distribution(gen, t_phys);
  std::vector<std::vector<Site>> states;
  for (std::size_t i = 0; i < gen.space.size(); ++i) states.push_back(gen.space.state(i));
  py::dict out;
  out["states"] = states;
  out["probabilities"] = law.probabilities;
  out["boundary_certificate"] = law.boundary_certificate;
  return out;
}

py::dict exact_current(double p, double q, std::size_t n, Site lo, Site hi, Site x,
                       double t_phys) {
  const auto gen = oracle::build_generator(Window{lo, hi}, n, ModelParameters(p, q));
  const auto law = oracle::exact_current_law(gen, x, t_phys);
  py::dict out;
  out["pmf"] = law.pmf;
  out["boundary_certificate"] = law.boundary_certificate;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ASEP current fluctuations and the Tracy-Widom GUE distribution";

  py::register_exception<scaling::OutOfAsymptoticRange>(m, "OutOfAsymptoticRange",
                                                         PyExc_ValueError);
  py::register_exception<harness::ResourceCapExceeded>(m, "ResourceCapExceeded",
                                                       PyExc_RuntimeError);

  m.def("truncation_size", &truncation_size, py::arg("t_phys"), py::arg("x") = 0);

  m.def("scaling_constants", [](double v) {
    const auto c = scaling::scaling_constants(v);
    return py::make_tuple(c.a1, c.a2);
  }, py::arg("v"), "(a1, a2) for scaled position v");
  m.def("kpz_constants", [](double sigma) {
    const auto c = scaling::kpz_constants(sigma);
    return py::make_tuple(c.c1, c.c2);
  }, py::arg("sigma"), "(c1, c2) for particle density sigma");
  m.def("strong_law_density", &scaling::strong_law_density, py::arg("c"), py::arg("gamma"));
  m.def("sigma_series", &scaling::sigma_series, py::arg("v"), py::arg("s"), py::arg("t"));
  m.def("invert_sigma", &scaling::invert_sigma, py::arg("v"), py::arg("s"), py::arg("t"));
  m.def("m_of", &scaling::m_of, py::arg("v"), py::arg("s"), py::arg("t"));

  m.def("airy", [](double x) {
    const auto a = tw::airy(x);
    return py::make_tuple(a.ai, a.ai_prime);
  }, py::arg("x"), "(Ai(x), Ai'(x))");
  m.def("airy_kernel", py::overload_cast<double, double>(&tw::airy_kernel), py::arg("x"),
        py::arg("y"));
  m.def("f2_cdf", [](double s, std::size_t order) { return tw::f2_cdf(s, order).value; },
        py::arg("s"), py::arg("order") = 60);
  m.def("f2_error_estimate",
        [](double s, std::size_t order) { return tw::f2_cdf(s, order).error_estimate; },
        py::arg("s"), py::arg("order") = 60);
  m.def("f2_cdf_painleve", &tw::f2_cdf_painleve, py::arg("s"));
  m.def("limit_law_current", &tw::limit_law_current, py::arg("s"), py::arg("order") = 60);

  m.def("ks_distance_to_limit_law", [](const std::vector<double>& samples) {
    return stats::ks_distance(stats::EmpiricalCdf(samples),
                              [](double s) { return tw::limit_law_current(s); });
  }, py::arg("samples"));

  m.def("run_ensemble", &run_ensemble, py::arg("p") = 0.25, py::arg("q") = 0.75,
        py::arg("v") = 0.0, py::arg("t") = 200.0, py::arg("trajectories") = 2000,
        py::arg("seed") = 1, py::arg("s_grid") = std::vector<double>{},
        py::arg("workers") = 0);
  m.def("simulate_positions", &simulate_positions, py::arg("p"), py::arg("q"), py::arg("n"),
        py::arg("t_phys"), py::arg("trajectories"), py::arg("seed") = 1,
        py::arg("workers") = 0);
  m.def("exact_law", &exact_law, py::arg("p"), py::arg("q"), py::arg("n"), py::arg("lo"),
        py::arg("hi"), py::arg("t_phys"));
  m.def("exact_current_law", &exact_current, py::arg("p"), py::arg("q"), py::arg("n"),
        py::arg("lo"), py::arg("hi"), py::arg("x"), py::arg("t_phys"));

  m.def("cli", [](std::vector<std::string> argv) {
    argv.insert(argv.begin(), "asep");
    std::vector<char*> raw;
    for (auto& arg : argv) raw.push_back(arg.data());
    return cli::run_main(static_cast<int>(raw.size()), raw.data());
  }, py::arg("args"), "Runs the asep command line; returns the exit code.");
}
