#include "doctest.h"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <sstream>

#include "speclab/manifolds.hpp"
#include "speclab/sphere_sharp.hpp"

using namespace speclab;

// With x = sin u, int_0^delta cos^{2l+1} u du = B(1/2, l+1) I_{sin^2 delta}(1/2, l+1) / 2, and
// W(l) = B(1/2, l+1), so the band mass is the regularized incomplete beta I_{sin^2 delta}(1/2, l+1).

TEST_CASE("Wallis integral: exact fraction, log-space sum, beta function") {
  for (int l = 0; l <= 20; ++l) {
    const auto [num, den] = wallis_integral_exact(l);
    const double exact = static_cast<double>(num) / static_cast<double>(den);
    CHECK(std::exp(log_wallis_integral(l)) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(exact == doctest::Approx(boost::math::beta(0.5, l + 1.0)).epsilon(1e-14));
  }
  CHECK(wallis_integral_exact(1).first == 4);
  CHECK(wallis_integral_exact(1).second == 3);
  for (int l : {50, 256, 4096}) {
    CHECK(std::exp(log_wallis_integral(l)) == doctest::Approx(boost::math::beta(0.5, l + 1.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(wallis_integral_exact(21), InvalidInput);
}

TEST_CASE("highest weight harmonic is normalized") {
  const auto g = build_grid(ManifoldModel::sphere(), 128);
  for (int l : {1, 4, 16, 64}) {
    HighestWeight f(l);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) acc += g.weights[i] * f.abs2(g.nodes[i][0]);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::norm(f(kPi / 2, 0.3)) == doctest::Approx(f.c_l_sq()));
  }
  // c_l^2 / sqrt(l) -> 1 / (2 pi sqrt(pi))
  CHECK(wallis_norm(1 << 16) / std::sqrt(double(1 << 16)) ==
        doctest::Approx(1 / (2 * kPi * std::sqrt(kPi))).epsilon(1e-5));
}

TEST_CASE("band mass against the incomplete beta") {
  for (int l : {4, 16, 64, 256}) {
    for (double C : {0.2, 0.47, 1.0, 1.5}) {
      if (band_half_width(l, C) > kPi / 2) continue;
      const double s = std::sin(band_half_width(l, C));
      const double oracle = boost::math::ibeta(0.5, l + 1.0, s * s);
      CHECK(band_mass(l, C) == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(band_mass(l, C) + band_complement_mass(l, C) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(band_measure(16, 1.0) == doctest::Approx(4 * kPi * std::sin(0.25)));
  CHECK_THROWS_AS(band_mass(1, 2.0), InvalidInput);
  CHECK_THROWS_AS(band_mass(4, -1.0), InvalidInput);
}

TEST_CASE("half-mass constant against the inverse incomplete beta") {
  for (int l : {4, 16, 64, 256}) {
    const double C = find_half_mass_C(l);
    const double x = boost::math::ibeta_inv(0.5, l + 1.0, 0.5);
    CHECK(C == doctest::Approx(std::asin(std::sqrt(x)) * std::sqrt(double(l))).epsilon(1e-6));
    CHECK(band_mass(l, C) >= 0.5);
  }
  CHECK(gaussian_half_mass_C() == doctest::Approx(0.4769362762044699));
  CHECK(find_half_mass_C(4096) == doctest::Approx(gaussian_half_mass_C()).epsilon(1e-3));
}

TEST_CASE("sweep rows and CSV") {
  const auto rows = sharpness_sweep({4, 16}, 0.0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].product == doctest::Approx(sharpness_product(16, rows[1].C)));
  std::ostringstream os;
  write_sharpness_csv(os, rows);
  CHECK(os.str().rfind("l,C,band_measure,c_l_sq,mass,product\n4,", 0) == 0);
}
