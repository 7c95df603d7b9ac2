#include "doctest.h"

#include <cmath>

#include "speclab/uncertainty.hpp"

using namespace speclab;

namespace {

template <class F>
double simpson(F f, double a, double b, int n = 40000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("windows") {
  const auto b = torus2_basis(ManifoldModel::flat_torus(), 3.0);
  const auto w = SpectralWindow::from_groups(b, {1, 2});
  CHECK(w.count() == 8);  // lambda = 1 (4) and sqrt 2 (4)
  CHECK(w.whole_eigenspaces());
  const auto r = SpectralWindow::lambda_range(b, 0.5, 1.5);
  CHECK(r.indices() == w.indices());
  const auto l = SpectralWindow::from_lambdas(b, {2.0});
  CHECK(l.count() == 4);
  const auto part = SpectralWindow::from_indices(b, {1, 2});
  CHECK_FALSE(part.whole_eigenspaces());
  CHECK_THROWS_AS(SpectralWindow::from_lambdas(b, {1.7}), InvalidInput);
  CHECK_THROWS_AS(SpectralWindow::from_groups(b, {99}), std::exception);
}

TEST_CASE("integral of A_S equals the window size") {
  const auto b = sphere_basis(6);
  const auto g = build_grid(b.manifold(), 64);
  const auto w = SpectralWindow::from_indices(b, {0, 5, 7, 20, 33});
  const auto a = a_s_field(b, w, g);
  CHECK(a.integral == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("single exponential on an arc: epsilon is the missing length fraction") {
  const auto b = circle_basis(kTwoPi, 4);
  const auto m = b.manifold();
  const std::size_t j = 3;
  const auto f = Field::from_coefficients({j}, {cplx(0.0, 2.0)});
  const auto E = RegionSpec::arcs(m, {{1.0, 2.0}});
  const auto w = SpectralWindow::from_indices(b, {j});
  const auto lv = concentration_levels(b, f, E, w);
  CHECK(lv.epsilon == doctest::Approx(1.0 - 2.0 / kTwoPi).epsilon(1e-13));
  CHECK(lv.epsilon_prime == doctest::Approx(0.0));
  CHECK(lv.norm2 == doctest::Approx(4.0));
}

TEST_CASE("certificate: whole manifold, function in the window") {
  const auto b = torus2_basis(ManifoldModel::flat_torus(), 3.0);
  const auto w = SpectralWindow::from_groups(b, {1});
  const auto f = Field::from_coefficients(w.indices(), {1.0, 2.0, cplx(0, 1), -1.0});
  const auto c = certify(b, f, RegionSpec::whole(b.manifold()), w);
  CHECK(c.epsilon == doctest::Approx(0.0));
  CHECK(c.lhs == doctest::Approx(1.0));
  CHECK(c.rhs_classical == doctest::Approx(4.0));
  CHECK(c.defect == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.holds_quant);
  CHECK(c.holds_chain);
  CHECK_FALSE(c.vacuous);
}

TEST_CASE("certificate on the sphere band: sup of A_S by the addition theorem") {
  const auto b = sphere_basis(5);
  const auto w = SpectralWindow::from_groups(b, {5});
  std::vector<cplx> coeffs(w.count(), 0.0);
  coeffs.back() = 1.0;  // some single Y_5m
  const auto f = Field::from_coefficients(w.indices(), coeffs);
  const auto c = certify(b, f, RegionSpec::equatorial_band(b.manifold(), 0.4), w);
  CHECK(c.sup_a_s == doctest::Approx(11.0 / (4 * kPi)).epsilon(1e-10));
  CHECK(c.region_measure == doctest::Approx(4 * kPi * std::sin(0.4)));
  CHECK(c.integral_a_s == doctest::Approx(11.0 * std::sin(0.4)).epsilon(1e-10));
  CHECK(c.holds_quant);
}

TEST_CASE("vacuous hypothesis is flagged") {
  const auto b = circle_basis(kTwoPi, 3);
  const auto w = SpectralWindow::from_indices(b, {0});
  const auto f = Field::from_coefficients({1}, {1.0});  // orthogonal to the window
  const auto c = certify(b, f, RegionSpec::arcs(b.manifold(), {{0.0, 1.0}}), w);
  CHECK(c.vacuous);
}

TEST_CASE("Fourier ratio of a two-term field") {
  const auto b = circle_basis(kTwoPi, 5);
  const auto f = Field::from_coefficients({0, 5}, {1.0, 1.0});  // lambda 0 and 3
  CHECK(fourier_ratio(b, f, 2.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(fourier_ratio(b, f, 1.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(fourier_ratio(b, f, 0.5), InvalidInput);
  CHECK(fourier_ratio(b, f, 4.0) == doctest::Approx(0.0));
}

TEST_CASE("support check: FR of a bump against a Simpson/Parseval oracle") {
  const double L = kTwoPi, width = 0.25, R = 8.0;
  const auto bump = smooth_bump(kPi, width / 2, L);
  CHECK(bump(kPi) == doctest::Approx(1.0));
  CHECK(bump(kPi + 0.2) == 0.0);
  const auto b = circle_basis(L, 40);
  const auto E = RegionSpec::arcs(b.manifold(), {{kPi - width / 2, width}});
  const auto chk = fr_support_check(b, bump, E, R);
  CHECK(chk.outside_mass < 1e-12);
  // oracle: ||f||^2 and the low coefficients by Simpson on the support
  const double a = kPi - width / 2, c = kPi + width / 2;
  const double norm2 = simpson([&](double s) { return bump(s) * bump(s); }, a, c);
  double low = 0.0;
  for (int n = -7; n <= 7; ++n) {
    const double re = simpson([&](double s) { return bump(s) * std::cos(n * s); }, a, c);
    const double im = simpson([&](double s) { return bump(s) * std::sin(n * s); }, a, c);
    low += (re * re + im * im) / L;
  }
  CHECK(chk.fourier_ratio == doctest::Approx(std::sqrt(1.0 - low / norm2)).epsilon(1e-8));
  CHECK(chk.neighborhood_measure == doctest::Approx(width + 2 / R));
  CHECK(chk.ratio == doctest::Approx(chk.fourier_ratio * std::sqrt(R * (width + 2 / R))));
}

TEST_CASE("support check rejects functions leaking off E") {
  const auto b = circle_basis(kTwoPi, 20);
  const auto E = RegionSpec::arcs(b.manifold(), {{3.0, 0.1}});
  CHECK_THROWS_AS(fr_support_check(b, smooth_bump(kPi, 0.5, kTwoPi), E, 4.0), InvalidInput);
}

TEST_CASE("randomized suite: small run, deterministic and violation free") {
  SuiteOptions o;
  o.valid_per_manifold = 8;
  const auto r1 = run_uncertainty_suite(o);
  const auto r2 = run_uncertainty_suite(o);
  CHECK(r1.valid == 32);
  CHECK(r1.violations == 0);
  REQUIRE(r1.draws.size() == r2.draws.size());
  for (std::size_t i = 0; i < r1.draws.size(); ++i) {
    CHECK(r1.draws[i].fingerprint == r2.draws[i].fingerprint);
    CHECK(r1.draws[i].certificate.lhs == r2.draws[i].certificate.lhs);
  }
  for (const auto& d : r1.draws) {
    if (d.certificate.vacuous) continue;
    CHECK(d.certificate.holds_chain);
    CHECK(d.certificate.lhs <= d.certificate.integral_a_s + 1e-9);
  }
  o.seed = 1;
  CHECK(run_uncertainty_suite(o).draws.front().fingerprint != r1.draws.front().fingerprint);
}
