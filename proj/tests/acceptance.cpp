// Acceptance suite: one PASS/FAIL line per criterion.
//   asep_acceptance              run all criteria
//   asep_acceptance --criterion N
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "asep/cli.hpp"
#include "asep/exact_oracle.hpp"
#include "asep/harness.hpp"
#include "asep/scaling.hpp"
#include "asep/tracy_widom.hpp"

using namespace asep;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, pattern, value);
  return buffer;
}

double ks_at(const ModelParameters& params, double t) {
  harness::EnsembleConfig config;
  config.params = params;
  config.v = 0.0;
  config.t = t;
  config.trajectories = 2000;
  config.seed = 1;
  config.workers = 0;
  return harness::run_ensemble(config).ks_distance;
}

Outcome limit_law() {
  const ModelParameters params(0.25, 0.75);
  const std::vector<double> times = {50.0, 100.0, 200.0, 400.0};
  std::vector<double> ks;
  for (double t : times) ks.push_back(ks_at(params, t));
  const double gate = ks[2];
  bool monotone = true;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    monotone = monotone && ks[i] <= ks[i - 1] + 0.01;
  }
  std::string detail = "KS(t=200)=" + fmt("%.4f", gate) + " (<= 0.06); KS over t=50,100,200,400:";
  for (double d : ks) detail += fmt(" %.4f", d);
  detail += monotone ? " nonincreasing within 0.01" : " not nonincreasing within 0.01";
  return {gate <= 0.06 && monotone, detail};
}

Outcome tasep_limit_law() {
  const double ks = ks_at(ModelParameters::tasep(), 200.0);
  return {ks <= 0.06, "TASEP KS(t=200)=" + fmt("%.4f", ks) + " (<= 0.06)"};
}

Outcome strong_law() {
  harness::EnsembleConfig config;
  config.params = ModelParameters(0.25, 0.75);
  config.t = 500.0;
  config.trajectories = 200;
  config.seed = 1;
  config.workers = 0;
  bool ok = true;
  std::string detail;
  for (double c : {0.0, config.params.gamma()}) {
    const auto r = harness::strong_law_check(config, c);
    const double z = r.standard_error > 0.0 ? r.deviation / r.standard_error
                                            : (r.deviation == 0.0 ? 0.0 : INFINITY);
    ok = ok && r.deviation <= 3.0 * r.standard_error;
    detail += "c=" + fmt("%g", c) + ": mean=" + fmt("%.5f", r.mean) + " expected=" +
              fmt("%.5f", r.expected) + " se=" + fmt("%.5f", r.standard_error) +
              " |z|=" + fmt("%.1f", z) + "; ";
  }
  detail += "gate |z| <= 3";
  return {ok, detail};
}

Outcome position_form() {
  harness::EnsembleConfig config;
  config.params = ModelParameters::tasep();
  config.t = 200.0;
  config.trajectories = 2000;
  config.seed = 1;
  config.workers = 0;
  const auto ensemble = harness::simulate_ensemble(config);
  bool ok = true;
  std::string detail;
  for (double s : {-2.0, -1.0, 0.0, 1.0}) {
    const auto r = harness::position_form_check(ensemble, config.t, 0.25, s);
    const double gap = std::abs(r.empirical - r.f2);
    ok = ok && gap <= 0.05;
    detail += "s=" + fmt("%g", s) + ": " + fmt("%.4f", r.empirical) + " vs " +
              fmt("%.4f", r.f2) + "; ";
  }
  detail += "gate 0.05";
  return {ok, detail};
}

Outcome exact_oracle() {
  const auto r = harness::oracle_agreement(ModelParameters(0.25, 0.75), 3, Window{-3, 5},
                                           0.5, 100'000, 1, 0);
  const bool fit = r.chi_square.p_value >= 0.01;
  const bool certified = r.boundary_certificate < 1e-8;
  return {fit && certified,
          "chi-square p=" + fmt("%.4f", r.chi_square.p_value) + " (>= 0.01) over " +
              std::to_string(r.chi_square.bins) + " bins; boundary certificate=" +
              fmt("%.3e", r.boundary_certificate) + " (< 1e-8)"};
}

Outcome event_identity() {
  const ModelParameters params(0.25, 0.75);
  const double t_phys = 100.0;
  const std::size_t n = truncation_size(t_phys, 0);
  const auto ensemble = harness::simulate(params, n, t_phys, 10'000, 1, 0);
  const Site lo = -static_cast<Site>(n);
  std::size_t passed = 0;
  for (const auto& config : ensemble.finals) {
    bool all = true;
    for (Site x = lo; x <= 0 && all; ++x) all = harness::verify_event_identity(config, x);
    if (all) ++passed;
  }
  bool counts = true;
  for (Site x = lo; x <= 0 && counts; ++x) counts = harness::verify_count_identity(ensemble, x);
  return {passed == ensemble.finals.size() && counts,
          std::to_string(passed) + "/" + std::to_string(ensemble.finals.size()) +
              " trajectories pass the pathwise identity for x in [" + std::to_string(lo) +
              ", 0]; count identity " + (counts ? "exact" : "violated")};
}

Outcome f2_numerics() {
  double self = 0.0;
  for (int i = -600; i <= 600; ++i) {
    const double s = i / 100.0;
    self = std::max(self, std::abs(tw::f2_cdf(s, 60).value - tw::f2_cdf(s, 120).value));
  }
  double routes = 0.0;
  for (int s = -5; s <= 5; ++s) {
    routes = std::max(routes, std::abs(tw::f2_cdf(s).value - tw::f2_cdf_painleve(s)));
  }
  bool monotone = true;
  double previous = -1.0;
  for (int i = -800; i <= 800; ++i) {
    const double f = tw::f2_cdf(i / 100.0).value;
    monotone = monotone && f >= previous && f >= 0.0 && f <= 1.0;
    previous = f;
  }
  return {self <= 1e-10 && routes <= 1e-8 && monotone,
          "self-convergence " + fmt("%.2e", self) + " (<= 1e-10); Fredholm vs Painleve " +
              fmt("%.2e", routes) + " (<= 1e-8); monotone in [0,1] on [-8,8] step 0.01: " +
              (monotone ? "yes" : "no")};
}

Outcome scaling_calculus() {
  double worst_residual = 0.0;  // residual / t
  for (double v = -0.8; v <= 0.81; v += 0.2) {
    for (double s = -4.0; s <= 4.0; s += 1.0) {
      for (double t : {50.0, 1e3, 1e4, 1e6}) {
        double sigma;
        try {
          sigma = scaling::invert_sigma(v, s, t);
        } catch (const scaling::OutOfAsymptoticRange&) {
          continue;
        }
        const auto k = scaling::kpz_constants(sigma);
        worst_residual = std::max(
            worst_residual, std::abs(k.c1 * t + s * k.c2 * std::cbrt(t) + v * t) / t);
      }
    }
  }

  std::vector<double> xs, ys;
  for (double t : {1e3, 1e4, 1e5, 1e6}) {
    xs.push_back(std::log(t));
    ys.push_back(std::log(std::abs(scaling::invert_sigma(0.0, 1.0, t) -
                                   scaling::sigma_series(0.0, 1.0, t))));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;

  double identity = 0.0;
  for (int i = -99; i <= 99; ++i) {
    const double v = i / 100.0;
    const double rhs = std::cbrt(((1 - v) / 2) * ((1 - v) / 2)) *
                       std::cbrt(((1 + v) / 2) * ((1 + v) / 2));
    identity = std::max(identity, std::abs(scaling::scaling_constants(v).a2 - rhs));
  }
  return {worst_residual <= 1e-9 && std::abs(slope + 4.0 / 3.0) <= 0.05 && identity <= 1e-14,
          "max residual/t " + fmt("%.2e", worst_residual) + " (<= 1e-9); remainder slope " +
              fmt("%.4f", slope) + " (-4/3 +- 0.05); a2 identity " + fmt("%.2e", identity) +
              " (<= 1e-14)"};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "asep_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> outputs;
  for (const char* workers : {"1", "4", "8"}) {
    const auto dir = root / workers;
    const auto config = cli::parse_config({"asep", "simulate", "--time", "50",
                                           "--trajectories", "500", "--seed", "7",
                                           "--workers", workers, "--out", dir.string()});
    std::ostringstream log;
    if (cli::execute(config, log) != cli::kExitOk) return {false, "simulate failed"};
    outputs.push_back(slurp(dir / "currents.csv") + '\x1e' + slurp(dir / "summary.json"));
  }
  fs::remove_all(root);
  const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2];
  return {same, std::string("currents.csv and summary.json ") +
                    (same ? "byte-identical" : "differ") + " across 1, 4 and 8 workers"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "limit law, ASEP p=0.25 q=0.75", limit_law},
      {2, "limit law, TASEP", tasep_limit_law},
      {3, "strong law", strong_law},
      {4, "position form", position_form},
      {5, "exact oracle", exact_oracle},
      {6, "event identity", event_identity},
      {7, "F2 numerics", f2_numerics},
      {8, "scaling calculus", scaling_calculus},
      {9, "determinism", determinism},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome outcome{false, ""};
    try {
      outcome = c.run();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    std::printf("criterion %d %s: %s | %s\n", c.id, outcome.passed ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str());
    std::fflush(stdout);
    all = all && outcome.passed;
  }
  return all ? 0 : 1;
}
