// One PASS/FAIL line per acceptance check, with the measured numbers.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "speclab/cli.hpp"
#include "speclab/report.hpp"
#include "speclab/rng.hpp"

using namespace speclab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int failures = 0;

void check(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    o.pass = false;
    o.detail += fmt("; over budget %.0f s", budget_s);
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, dt, o.detail.c_str());
  std::fflush(stdout);
}

std::vector<std::size_t> group_indices(const SpectralBasis& b, std::size_t g) {
  std::vector<std::size_t> idx(b.group(g).count);
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = b.group(g).first + k;
  return idx;
}

// the basis-independent slice deviation at every grid node
double worst_homogeneity(const SpectralBasis& b, const QuadratureGrid& g) {
  double worst = 0.0;
  for (std::size_t id = 1; id < b.groups().size(); ++id) {
    worst = std::max(worst, homogeneity_defect(b, b.group(id).lambda, g).relative_deviation);
  }
  return worst;
}

std::string run_payload(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (code != 0) throw std::runtime_error("speclab exited with " + std::to_string(code));
  return payload_without_timestamp(out.str());
}

}  // namespace

int main() {
  check(1, "homogeneity identity", 10, [] {
    double worst = 0.0;
    for (const char* h : {"1", "2+sin"}) {
      const auto b = circle_basis(ManifoldModel::circle(MetricProfile1D::parse(h)), 32);
      worst = std::max(worst, worst_homogeneity(b, build_grid(b.manifold(), 512)));
    }
    const auto s = sphere_basis(32);
    worst = std::max(worst, worst_homogeneity(s, build_grid(s.manifold(), 64)));
    return Outcome{worst < 1e-7, fmt("max relative deviation %.2e (< 1e-7)", worst)};
  });

  check(2, "integral of A_S = #X_S", 30, [] {
    const auto circle = ManifoldModel::circle(MetricProfile1D::parse("2+sin"));
    const auto warped = ManifoldModel::warped_torus(MetricProfile1D::parse("2+sin"));
    const std::vector<SpectralBasis> bases{circle_basis(circle, 12),
                                           torus2_basis(ManifoldModel::flat_torus(), 6.0),
                                           torus2_basis(warped, 6.0), sphere_basis(8)};
    double worst = 0.0;
    std::size_t windows = 0;
    for (std::size_t m = 0; m < bases.size(); ++m) {
      const auto& b = bases[m];
      const auto grid = build_grid(b.manifold(), m == 0 ? 512 : 64);
      for (int w = 0; w < 50; ++w) {
        CounterRng rng(20240601, (m << 32) | static_cast<unsigned>(w));
        std::vector<std::size_t> idx;
        if (rng.uniform() < 0.5) {
          const auto ng = static_cast<long long>(b.groups().size());
          for (int k = 0, n = static_cast<int>(rng.integer(1, 3)); k < n; ++k) {
            const auto more = group_indices(b, static_cast<std::size_t>(rng.integer(0, ng - 1)));
            idx.insert(idx.end(), more.begin(), more.end());
          }
        } else {
          for (int k = 0, n = static_cast<int>(rng.integer(1, 12)); k < n; ++k) {
            idx.push_back(static_cast<std::size_t>(rng.integer(0, static_cast<long long>(b.size()) - 1)));
          }
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        const auto win = SpectralWindow::from_indices(b, idx);
        const double integral = a_s_field(b, win, grid).integral;
        worst = std::max(worst, std::abs(integral - double(win.count())) / double(win.count()));
        ++windows;
      }
    }
    return Outcome{worst < 1e-6, fmt("%.0f windows, max relative error %.2e (< 1e-6)", double(windows), worst)};
  });

  check(3, "quantitative uncertainty", 120, [] {
    const auto r = run_uncertainty_suite(SuiteOptions{});
    const bool ok = r.valid >= 500 && r.violations == 0;
    return Outcome{ok, fmt("%.0f valid, %.0f vacuous, %.0f violations, min margin %.4f", double(r.valid),
                           double(r.vacuous), double(r.violations), r.min_margin)};
  });

  check(4, "sphere sharpness", 30, [] {
    const auto rows = sharpness_sweep({4, 16, 64, 256}, 0.0);
    const auto& a = rows[2];
    const auto& b = rows[3];
    const double e_ratio = (a.band_measure * std::sqrt(64.0)) / (b.band_measure * std::sqrt(256.0));
    const double c_ratio = (a.c_l_sq / std::sqrt(64.0)) / (b.c_l_sq / std::sqrt(256.0));
    double pmin = INFINITY, pmax = 0.0, mass_min = INFINITY;
    for (const auto& r : rows) {
      pmin = std::min(pmin, r.product);
      pmax = std::max(pmax, r.product);
      mass_min = std::min(mass_min, r.mass);
    }
    const auto within = [](double x, double f) { return x <= f && 1.0 / x <= f; };
    const bool ok = within(e_ratio, 1.1) && within(c_ratio, 1.05) && mass_min >= 0.5 && pmax / pmin <= 4.0;
    return Outcome{ok, fmt("|E|sqrt(l) 64/256 %.4f, c^2/sqrt(l) 64/256 %.4f, min mass %.6f, product max/min %.4f",
                           e_ratio, c_ratio, mass_min, pmax / pmin)};
  });

  check(5, "Weyl remainder", 60, [] {
    const auto torus = exact_counting_spectrum(ManifoldModel::flat_torus(), 200.0);
    const long long n5 = counting_scan(torus, {5.0}).counts[0];
    auto scan = counting_scan(torus, log_spaced(10.0, 200.0, 40));
    const double slope = remainder_fit(scan);
    const auto circle = exact_counting_spectrum(ManifoldModel::circle_of_length(kTwoPi), 200.0);
    std::vector<double> dense;
    for (int i = 0; i <= 4000; ++i) dense.push_back(0.05 * i);
    const auto cs = counting_scan(circle, dense);
    double cmax = 0.0;
    for (double r : cs.remainder) cmax = std::max(cmax, std::abs(r));
    const bool ok = n5 == 81 && slope <= 1.15 && cmax <= 2.0;
    return Outcome{ok, fmt("N(5) = %.0f, torus exponent %.3f (<= 1.15), circle max |remainder| %.3f (<= 2)",
                           double(n5), slope, cmax)};
  });

  check(6, "Fourier-ratio lower bound", 30, [] {
    double lo = INFINITY;
    for (const auto& r : fr_bump_sweep(3, 7, false)) lo = std::min(lo, r.check.ratio);
    return Outcome{lo > 0.05, fmt("min FR sqrt(R|E^(1/R)|) %.4f (> 0.05)", lo)};
  });

  check(7, "finite differences", 60, [] {
    double worst = 0.0, shift = 0.0;
    for (const char* h : {"1", "2+sin"}) {
      const auto prof = MetricProfile1D::parse(h);
      const double L = arc_length_reparam(prof, 512).length;
      const auto b = fd_eigensolve_circle(prof, PotentialProfile::zero(), 2048, 21);
      for (std::size_t j = 1; j <= 10; ++j) {
        const double n = double((j + 1) / 2);
        const double exact = kTwoPi * n / L;
        worst = std::max(worst, std::abs(b.pair(j).lambda - exact) / exact);
      }
      const auto v = fd_eigensolve_circle(prof, PotentialProfile::constant(2.75), 2048, 21);
      for (std::size_t j = 0; j < 21; ++j) {
        shift = std::max(shift, std::abs(v.pair(j).energy - b.pair(j).energy - 2.75));
      }
    }
    return Outcome{worst < 1e-3 && shift < 1e-10,
                   fmt("max relative error %.2e (< 1e-3), constant-V shift error %.2e (< 1e-10)", worst, shift)};
  });

  check(8, "tubular certificate sweep", 120, [] {
    TubularOptions o;
    o.mode = "stability";
    const auto s = tubular_sweep(CurveSpec::default_curve(), {8, 16, 32}, 20, 60, o);
    const bool ok = s.min_ratio > 0.0 && s.growth_exponent < 0.2;
    return Outcome{ok, fmt("%.0f certificates, ratio in [%.4f, %.4f], growth exponent %.4f (< 0.2)",
                           double(s.reports.size()), s.min_ratio, s.max_ratio, s.growth_exponent)};
  });

  check(9, "BR ratio scan", 120, [] {
    const auto s = br_ratio_scan(CurveSpec::default_curve(), 10, 50, 32, 9);
    const bool ok = s.min_ratio > 0.0 && std::isfinite(s.max_ratio) && s.widening < 2.0;
    return Outcome{ok, fmt("y = 0 [%.4f, %.4f], |y| <= 1/32 [%.4f, %.4f]", s.min_ratio_center,
                           s.max_ratio_center, s.min_ratio, s.max_ratio) +
                           fmt(", widening %.4f (< 2)", s.widening)};
  });

  check(10, "determinism", 400, [] {
    const std::vector<std::vector<std::string>> runs{
        {"uncertainty", "--seed", "20240601"},
        {"fourier-ratio", "--format", "json"},
        {"restriction", "--seed", "20240601"}};
    int same = 0;
    for (const auto& args : runs) same += run_payload(args) == run_payload(args);
    return Outcome{same == 3, fmt("%.0f of 3 reports identical across reruns", double(same))};
  });

  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
