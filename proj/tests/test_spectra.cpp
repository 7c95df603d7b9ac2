#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "speclab/spectra.hpp"

using namespace speclab;

namespace {

template <class F>
cplx simpson_c(F f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  cplx acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * (h / 3.0);
}

}  // namespace

TEST_CASE("flat circle spectrum") {
  const auto b = circle_basis(kTwoPi, 5);
  CHECK(b.size() == 11);
  CHECK(b.groups().size() == 6);
  CHECK(b.group(0).count == 1);
  for (std::size_t g = 1; g < 6; ++g) {
    CHECK(b.group(g).count == 2);
    CHECK(b.group(g).lambda == doctest::Approx(double(g)));
  }
  CHECK(b.lambda_max() == doctest::Approx(5.0));
  CHECK_THROWS_AS(b.group_of_lambda(2.5), InvalidInput);
  CHECK(b.group_of_lambda(3.0) == 3);
}

TEST_CASE("warped circle eigenfunctions are orthonormal in the metric") {
  const auto h = MetricProfile1D::parse("2+sin");
  const auto m = ManifoldModel::circle(h);
  const auto b = circle_basis(m, 3);
  const double L = m.volume();
  for (std::size_t j = 0; j < b.size(); ++j) {
    CHECK(b.pair(j).lambda == doctest::Approx(kTwoPi * std::abs(b.pair(j).labels[0]) / L));
    for (std::size_t k = j; k < b.size(); ++k) {
      const cplx ip = simpson_c(
          [&](double x) {
            return std::conj(b.evaluate(j, {x, 0.0})) * b.evaluate(k, {x, 0.0}) *
                   std::sqrt(h(x));
          },
          -kPi, kPi);
      CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("flat torus lattice count") {
  const auto b = torus2_basis(ManifoldModel::flat_torus(), 5.0);
  int brute = 0;
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n)
      if (m * m + n * n <= 25) ++brute;
  CHECK(brute == 81);
  CHECK(b.size() == 81);
  // multiplicities against r_2(k)
  for (const auto& g : b.groups()) {
    const int k = static_cast<int>(std::lround(g.lambda * g.lambda));
    int r2 = 0;
    for (int m = -6; m <= 6; ++m)
      for (int n = -6; n <= 6; ++n)
        if (m * m + n * n == k) ++r2;
    CHECK(static_cast<int>(g.count) == r2);
  }
  std::ostringstream os;
  write_spectrum_csv(os, b);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "j,lambda,group_id,multiplicity");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 81);
}

TEST_CASE("sphere harmonics: explicit low degrees, no Condon-Shortley phase") {
  const auto b = sphere_basis(4);
  CHECK(b.size() == 25);
  const Point p{0.7, 1.9};
  auto find = [&](int l, int m) {
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b.pair(j).labels[0] == l && b.pair(j).labels[1] == m) return j;
    FAIL("missing harmonic");
    return std::size_t{0};
  };
  CHECK(std::abs(b.evaluate(find(0, 0), p) - cplx(1 / std::sqrt(4 * kPi))) < 1e-14);
  CHECK(std::abs(b.evaluate(find(1, 0), p) - std::sqrt(3 / (4 * kPi)) * std::cos(p[0])) < 1e-14);
  const cplx y11 = std::sqrt(3 / (8 * kPi)) * std::sin(p[0]) * std::polar(1.0, p[1]);
  CHECK(std::abs(b.evaluate(find(1, 1), p) - y11) < 1e-14);
  CHECK(b.pair(find(3, 0)).lambda == doctest::Approx(std::sqrt(12.0)));
}

TEST_CASE("sphere addition theorem") {
  const auto b = sphere_basis(40);
  for (const auto& g : b.groups()) {
    std::vector<std::size_t> idx(g.count);
    for (std::size_t k = 0; k < g.count; ++k) idx[k] = g.first + k;
    for (double th : {0.0, 0.3, 1.2, 2.9, kPi}) {
      const double s = b.sum_abs2({th, 0.4}, idx);
      CHECK(s == doctest::Approx(double(g.count) / (4 * kPi)).epsilon(1e-10));
    }
  }
}

TEST_CASE("finite differences: the discrete periodic Laplacian spectrum") {
  for (const char* expr : {"1", "2+sin"}) {
    const auto h = MetricProfile1D::parse(expr);
    const double L = arc_length_reparam(h, 512).length;
    const int N = 512;
    const auto b = fd_eigensolve_circle(h, PotentialProfile::zero(), N, 21);
    CHECK(b.source() == SpectrumSource::Discretized);
    CHECK(std::abs(b.pair(0).energy) < 1e-10);
    // second differences on N equispaced points: (2/h sin(pi n / N))^2
    const double step = L / N;
    for (std::size_t j = 1; j < 21; ++j) {
      const double n = double((j + 1) / 2);
      const double exact = std::pow(2.0 / step * std::sin(kPi * n / N), 2);
      CHECK(b.pair(j).energy == doctest::Approx(exact).epsilon(1e-10));
      CHECK(b.pair(j).lambda == doctest::Approx(kTwoPi * n / L).epsilon(1e-3));
    }
    CHECK(b.native_grid().total_weight() == doctest::Approx(L));
  }
}

TEST_CASE("finite differences: constant potential shifts energies") {
  const auto h = MetricProfile1D::parse("2+sin");
  const auto b0 = fd_eigensolve_circle(h, PotentialProfile::zero(), 256, 9);
  const auto b1 = fd_eigensolve_circle(h, PotentialProfile::constant(3.5), 256, 9);
  for (std::size_t j = 0; j < 9; ++j) {
    CHECK(std::abs(b1.pair(j).energy - b0.pair(j).energy - 3.5) < 1e-10);
  }
}

TEST_CASE("finite differences: cosine potential against the Mathieu characteristic value") {
  const auto h = MetricProfile1D::constant(1.0);
  const auto v = PotentialProfile::parse("cos(2*pi*s/L)", kTwoPi);
  const auto coarse = fd_eigensolve_circle(h, v, 1024, 5);
  const auto fine = fd_eigensolve_circle(h, v, 2048, 5);
  // second-order scheme: halving h divides the error by 4
  const double extrapolated = (4.0 * fine.pair(0).energy - coarse.pair(0).energy) / 3.0;
  // s = 2z turns -u'' + cos(s) u = E u into Mathieu's equation with a = 4E, q = 2;
  // a_0(2) = -1.5139568850565 (scipy.special.mathieu_a)
  CHECK(extrapolated == doctest::Approx(-1.5139568850565 / 4).epsilon(1e-9));
  CHECK(fine.pair(0).energy == doctest::Approx(-1.5139568850565 / 4).epsilon(1e-5));
}

TEST_CASE("bad basis requests are rejected") {
  CHECK_THROWS_AS(sphere_basis(200), InvalidInput);
  CHECK_THROWS_AS(fd_eigensolve_circle(MetricProfile1D::constant(1.0), PotentialProfile::zero(), 8, 3),
                  InvalidInput);
  CHECK_THROWS_AS(circle_basis(-1.0, 3), InvalidInput);
}
