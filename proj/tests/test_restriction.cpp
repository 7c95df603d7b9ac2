#include "doctest.h"

#include <cmath>
#include <set>

#include "speclab/restriction.hpp"

using namespace speclab;

namespace {

template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

// complete elliptic integral of the second kind by the AGM
double ellipse_perimeter(double a, double b) {
  double x = a, y = b, s = 0.5 * (a * a - b * b), p = 1.0;
  for (int i = 0; i < 20; ++i) {
    const double c = 0.5 * (x - y);
    const double nx = 0.5 * (x + y);
    y = std::sqrt(x * y);
    x = nx;
    p *= 2.0;
    s += 0.5 * p * c * c;
  }
  return 2 * kPi * (a * a - s) / x;
}

}  // namespace

TEST_CASE("delta exponent branches") {
  const auto a = delta_exponent(1, 2.0, 2);
  CHECK(a.value == doctest::Approx(0.25));
  CHECK(a.branch == 1);
  const auto b = delta_exponent(1, 2.0, 3);
  CHECK(b.value == doctest::Approx(0.5));
  CHECK(b.log_loss);
  CHECK(b.branch == 3);
  CHECK(delta_exponent(1, INFINITY, 2).value == doctest::Approx(0.5));
  // continuity at the critical exponent for k = n - 1
  for (int n = 2; n <= 6; ++n) {
    const double crit = 2.0 * n / (n - 1.0);
    const double lo = (n - 1) / 4.0 - (n - 2) / (2.0 * crit);
    const double hi = (n - 1) / 2.0 - (n - 1) / crit;
    CHECK(lo == doctest::Approx(hi).epsilon(1e-15));
    CHECK(delta_exponent(n - 1, crit, n).value == doctest::Approx(hi));
    CHECK(delta_exponent(n - 1, crit * (1 + 1e-9), n).value == doctest::Approx(hi).epsilon(1e-8));
  }
  CHECK_THROWS_AS(delta_exponent(0, 2.0, 2), InvalidInput);
  CHECK_THROWS_AS(delta_exponent(2, 2.0, 2), InvalidInput);
  CHECK_THROWS_AS(delta_exponent(1, 1.5, 2), InvalidInput);
  CHECK(log_factor_power(1, 1.0, 2.0, 3) == doctest::Approx(1.0));
  CHECK(log_factor_power(1, INFINITY, 2.0, 3) == doctest::Approx(0.5));
  CHECK(log_factor_power(1, INFINITY, 2.0, 2) == 0.0);
}

TEST_CASE("curves") {
  const auto c = CurveSpec::circle({1.0, 2.0}, 0.5);
  CHECK(c.length() == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(c.curvature(0.3) == doctest::Approx(2.0));
  CHECK(c.curvature_ok());
  CHECK(c.injectivity_bound() == doctest::Approx(0.25));
  CHECK(c.distance({1.0, 2.0}) == doctest::Approx(0.5));
  CHECK(c.distance({1.0, 2.9}) == doctest::Approx(0.4).epsilon(1e-10));
  // minimum image across the seam
  const auto edge = CurveSpec::circle({0.1, 3.0}, 0.2);
  CHECK(edge.distance({kTwoPi - 0.1, 3.0}) == doctest::Approx(0.0).epsilon(1e-9));
  const auto e = CurveSpec::ellipse({3.0, 3.0}, 0.4, 0.25);
  CHECK(e.length() == doctest::Approx(ellipse_perimeter(0.4, 0.25)).epsilon(1e-12));
  CHECK(e.max_curvature() == doctest::Approx(0.4 / (0.25 * 0.25)).epsilon(1e-6));
  CHECK_THROWS_AS(CurveSpec([](double t) { return Point{t, 0.0}; }, [](double) { return Point{1.0, 0.0}; },
                            [](double) { return Point{0.0, 0.0}; }, 1.0, "segment"),
                  InvalidInput);
  const auto d = CurveSpec::default_curve();
  CHECK(d.length() == doctest::Approx(kPi / 2));
  CHECK(d.translated(0.1).point(0.0)[1] == doctest::Approx(d.point(0.0)[1] + 0.1));
}

TEST_CASE("restriction norms") {
  const auto c = CurveSpec::circle({2.0, 2.5}, 0.5);
  const auto one = torus_real_eigenfunction(0, 0, false);
  CHECK(restriction_norm(one, c, 0.0, 2.0) == doctest::Approx(std::sqrt(c.length()) / kTwoPi).epsilon(1e-12));
  for (auto [m, n] : {std::pair{3, 4}, std::pair{-7, 1}, std::pair{12, -5}}) {
    auto ex = [m = m, n = n](Point p) { return std::polar(1.0 / kTwoPi, m * p[0] + n * p[1]); };
    CHECK(restriction_norm(ex, c, 0.3, 2.0) == doctest::Approx(std::sqrt(c.length()) / kTwoPi).epsilon(1e-8));
  }
  // refinement oracle: Simpson with ten times the Gauss nodes
  const auto e = torus_real_eigenfunction(5, 3, false);
  const double oracle = std::sqrt(simpson(
      [&](double t) {
        const Point p{2.0 + 0.5 * std::cos(t), 2.5 + 0.5 * std::sin(t)};
        return 0.5 * std::norm(e(p));
      },
      0.0, kTwoPi, 20000));
  CHECK(restriction_norm(e, c, 0.0, 2.0) == doctest::Approx(oracle).epsilon(1e-6));
  // sup norm by brute sampling
  double sup = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double t = kTwoPi * i / 200000;
    sup = std::max(sup, std::abs(e({2.0 + 0.5 * std::cos(t), 2.5 + 0.5 * std::sin(t)})));
  }
  CHECK(restriction_norm(e, c, 0.0, INFINITY) == doctest::Approx(sup).epsilon(1e-9));
}

TEST_CASE("tube measures") {
  const auto c = CurveSpec::circle({kPi, kPi}, 0.25);
  for (double r : {0.01, 0.05, 0.1}) {
    CHECK(tube_measure(c, r) == doctest::Approx(4 * kPi * 0.25 * r).epsilon(1e-3));
  }
  CHECK(tube_measure(c, 1e-3) / (2e-3 * c.length()) == doctest::Approx(1.0).epsilon(0.02));
  // Steiner: for a convex closed curve and r below every curvature radius the
  // inner and outer corrections cancel, |T_r| = 2 r length
  const auto e = CurveSpec::ellipse({3.0, 3.0}, 0.6, 0.4);
  for (double r : {0.02, 0.05}) {
    CHECK(tube_measure(e, r) == doctest::Approx(2 * r * e.length()).epsilon(1e-3));
  }
  CHECK_THROWS_AS(tube_measure(c, 0.2), InvalidInput);
  CHECK_THROWS_AS(tube_measure(c, 0.0), InvalidInput);
}

TEST_CASE("tubular certificates") {
  const double R = 16.0, tube = 2.0 / R;
  TubularOptions unit;
  const auto u = tubular_certificate(25.0, R, tube, unit);
  CHECK(u.lhs == doctest::Approx(std::sqrt(u.window_count * tube)));
  CHECK(u.rhs == doctest::Approx(std::pow(R, 0.25) / (std::pow(R, 0.75) * std::pow(25.0, 0.625))));
  // window [25, 26]: distinct sqrt(m^2 + n^2) by brute force
  std::set<int> k2;
  for (int m = 0; m <= 30; ++m)
    for (int n = 0; n <= 30; ++n)
      if (m * m + n * n >= 625 && m * m + n * n <= 676) k2.insert(m * m + n * n);
  CHECK(u.window_count == k2.size());

  TubularOptions st;
  st.mode = "stability";
  const auto s = tubular_certificate(25.0, R, tube, st);
  CHECK(s.window_count >= 1);
  CHECK(s.rhs == doctest::Approx(std::pow(R, -0.5)));
  CHECK(s.ratio == doctest::Approx(s.lhs / s.rhs));
  // window [25 - 1/25, 25 + 1/25] holds 625 = 25^2 and 626 = 25^2 + 1
  CHECK(s.window_count == 2);
  CHECK(s.ratio == doctest::Approx(2.0));  // sqrt(2 * 2/R) / R^{-1/2}

  CHECK_THROWS_AS(tubular_certificate(5.0, 8.0, tube, unit), InvalidInput);
  TubularOptions bad;
  bad.mode = "nope";
  CHECK_THROWS_AS(tubular_certificate(25.0, R, tube, bad), InvalidInput);
  CHECK(torus_distinct_eigenvalues(0.0, 2.0).size() == 4);  // 0, 1, sqrt 2, 2
}

TEST_CASE("sweep, BR scan and the Holder chain") {
  TubularOptions st;
  st.mode = "stability";
  const auto sw = tubular_sweep(CurveSpec::default_curve(), {8, 16}, 10, 20, st);
  CHECK(sw.min_ratio > 0.0);
  CHECK(sw.reports.size() + sw.skipped == 2 * torus_distinct_eigenvalues(10, 20).size());

  const auto br = br_ratio_scan(CurveSpec::default_curve(), 5, 10, 32, 3);
  CHECK(br.min_ratio > 0.0);
  CHECK(br.min_ratio <= br.min_ratio_center);
  CHECK(br.widening >= 1.0);

  const auto e = torus_real_eigenfunction(4, 2, true);
  const auto h = holder_chain_check(e, CurveSpec::default_curve(), 16, 3.0, 2.0);
  CHECK(h.holds);
  CHECK(h.lhs <= h.rhs);
}
