#include "doctest.h"

#include <cmath>

#include "speclab/expression.hpp"
#include "speclab/manifolds.hpp"
#include "speclab/quadrature.hpp"
#include "speclab/rng.hpp"

using namespace speclab;

namespace {

// composite Simpson, deliberately unrelated to the library's Gauss rules
template <class F>
double simpson(F f, double a, double b, int n = 200000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("expression parser") {
  const auto e = Expression::parse("2+sin");
  CHECK(e(1.0) == doctest::Approx(2.0 + std::sin(1.0)).epsilon(1e-15));
  const auto g = Expression::parse("1 + 0.5*cos(2*t)^2 - exp(-x)");
  CHECK(g(0.3) == doctest::Approx(1 + 0.5 * std::pow(std::cos(0.6), 2) - std::exp(-0.3)));
  CHECK(Expression::parse("-2^2")(0.0) == doctest::Approx(-4.0));
  CHECK(Expression::parse("L/2", {{"L", 3.0}})(0.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(Expression::parse("2+sin("), InvalidInput);
  CHECK_THROWS_AS(Expression::parse("2+foo(x)"), InvalidInput);
  CHECK_THROWS_AS(Expression::parse(""), InvalidInput);
  CHECK_THROWS_AS(Expression::parse("1 2"), InvalidInput);
}

TEST_CASE("metric profiles are validated") {
  CHECK_THROWS_AS(MetricProfile1D::parse("-1"), InvalidInput);
  CHECK_THROWS_AS(MetricProfile1D::parse("sin"), InvalidInput);
  CHECK(MetricProfile1D::parse("3").is_constant());
  CHECK_FALSE(MetricProfile1D::parse("2+sin").is_constant());
}

TEST_CASE("arc length against Simpson") {
  for (const char* expr : {"2+sin", "1 + 0.5*cos(2*t)", "1"}) {
    const auto h = MetricProfile1D::parse(expr);
    const auto r = arc_length_reparam(h, 512);
    const double oracle = simpson([&](double t) { return std::sqrt(h(t)); }, -kPi, kPi);
    CHECK(r.length == doctest::Approx(oracle).epsilon(1e-12));
    // partial lengths
    for (double x : {-2.0, 0.0, 1.3, 3.0}) {
      const double part = simpson([&](double t) { return std::sqrt(h(t)); }, -kPi, x);
      CHECK(r.map->s_of_x(x) == doctest::Approx(part).epsilon(1e-11));
    }
  }
  CHECK(arc_length_reparam(MetricProfile1D::constant(4.0), 64).length ==
        doctest::Approx(4 * kPi).epsilon(1e-14));
  CHECK_THROWS_AS(arc_length_reparam(MetricProfile1D::parse("2+sin"), 8), InvalidInput);
}

TEST_CASE("arc length inverse round trip") {
  const auto r = arc_length_reparam(MetricProfile1D::parse("2+sin"), 512);
  CounterRng rng(7, 0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(-kPi, kPi);
    worst = std::max(worst, std::abs(r.map->x_of_s(r.map->s_of_x(x)) - x));
  }
  CHECK(worst < 1e-12);
  // periodic extension
  CHECK(r.map->s_of_x(0.4 + kTwoPi) == doctest::Approx(r.map->s_of_x(0.4) + r.length));
  CHECK(r.map->speed(0.7) == doctest::Approx(std::sqrt(2 + std::sin(0.7))));
}

TEST_CASE("grids carry the Riemannian volume") {
  const auto circle = ManifoldModel::circle(MetricProfile1D::parse("2+sin"));
  CHECK(build_grid(circle, 512).total_weight() == doctest::Approx(circle.volume()).epsilon(1e-12));
  const auto flat = ManifoldModel::flat_torus();
  CHECK(flat.volume() == doctest::Approx(4 * kPi * kPi));
  CHECK(build_grid(flat, 64).total_weight() == doctest::Approx(4 * kPi * kPi).epsilon(1e-13));
  const auto warped = ManifoldModel::warped_torus(MetricProfile1D::parse("2+sin"));
  CHECK(build_grid(warped, 64).total_weight() == doctest::Approx(warped.volume()).epsilon(1e-12));
  CHECK(warped.volume() == doctest::Approx(kTwoPi * warped.arc().length()));

  const auto sphere = ManifoldModel::sphere();
  const auto g = build_grid(sphere, 32);
  CHECK(g.total_weight() == doctest::Approx(4 * kPi).epsilon(1e-13));
  double m2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) m2 += g.weights[i] * std::pow(std::cos(g.nodes[i][0]), 2);
  CHECK(m2 == doctest::Approx(4 * kPi / 3).epsilon(1e-13));
  CHECK_THROWS_AS(build_grid(sphere, 4), InvalidInput);
}

TEST_CASE("regions") {
  const auto c = ManifoldModel::circle_of_length(10.0);
  const auto r = RegionSpec::arcs(c, {{1.0, 2.0}, {2.5, 1.0}, {9.0, 2.0}});
  // [1,3.5] and [9,11) -> [9,10) + [0,1) which touches [1,3.5]
  CHECK(r.measure() == doctest::Approx(4.5));
  CHECK(r.contains({c.arc().x_of_s(2.0), 0.0}));
  CHECK_FALSE(r.contains({c.arc().x_of_s(5.0), 0.0}));
  const auto q = r.quadrature(3.0);
  double sum = 0.0;
  for (double w : q.weights) sum += w;
  CHECK(sum == doctest::Approx(4.5).epsilon(1e-13));

  CHECK(neighborhood(RegionSpec::arcs(c, {{2.0, 1.0}}), 0.5).measure() == doctest::Approx(2.0));
  CHECK(neighborhood(RegionSpec::arcs(c, {{2.0, 1.0}}), 6.0).measure() == doctest::Approx(10.0));

  const auto s = ManifoldModel::sphere();
  const auto band = RegionSpec::equatorial_band(s, 0.3);
  CHECK(band.measure() == doctest::Approx(4 * kPi * std::sin(0.3)).epsilon(1e-14));
  const auto bq = band.quadrature(10.0);
  double bs = 0.0;
  for (std::size_t i = 0; i < bq.nodes.size(); ++i) bs += bq.weights[i] * std::pow(std::sin(bq.nodes[i][0]), 10);
  // oracle: 2 pi * int_{-0.3}^{0.3} cos^11 u du
  const double oracle = kTwoPi * simpson([](double u) { return std::pow(std::cos(u), 11); }, -0.3, 0.3);
  CHECK(bs == doctest::Approx(oracle).epsilon(1e-12));

  const auto t = ManifoldModel::flat_torus();
  const auto cells = RegionSpec::cells(t, {{{0.0, 1.0}, {0.0, 2.0}}, {{3.0, 0.5}, {-1.0, 1.0}}});
  CHECK(cells.measure() == doctest::Approx(2.5));
  CHECK(cells.contains({0.5, 1.0}));
  CHECK_FALSE(cells.contains({2.0, 1.0}));
  CHECK(RegionSpec::whole(t).measure() == doctest::Approx(t.volume()));
}

TEST_CASE("merge_arcs wraps around") {
  const auto m = merge_arcs({{5.0, 2.0}, {0.5, 1.0}}, 6.0);
  double total = 0.0;
  for (const auto& a : m) total += a.length;
  CHECK(total == doctest::Approx(2.5));
}

TEST_CASE("panel rule integrates polynomials exactly") {
  const Rule1D r = panel_rule(0.0, 3.0, 1.0, 8);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], 15);
  CHECK(acc == doctest::Approx(std::pow(3.0, 16) / 16).epsilon(1e-14));
  CHECK(integrate_adaptive([](double x) { return std::exp(x); }, 0, 1) ==
        doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
}
