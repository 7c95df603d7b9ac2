#include "speclab/sphere_sharp.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numeric>
#include <ostream>

#include "speclab/parallel.hpp"
#include "speclab/quadrature.hpp"

namespace speclab {

namespace {

constexpr double kLogFloor = -700.0;

// cos(u)^{2l+1} through the log, floored so deep tails do not underflow to
// denormals
double cos_power(int l, double u) {
  const double c = std::cos(u);
  if (c <= 0.0) return 0.0;
  return std::exp(std::max((2.0 * l + 1.0) * std::log(c), kLogFloor));
}

// smooth integrand, so fixed composite Gauss-Legendre is plenty
double cos_power_integral(int l, double a, double b) {
  const Rule1D rule = panel_rule(a, b, (b - a) / 64.0, 32);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * cos_power(l, rule.nodes[i]);
  return acc;
}

void check_band(int l, double C) {
  require(l >= 1, "degree l must be >= 1");
  require(C >= 0.0, "band constant C must be nonnegative");
  require(band_half_width(l, C) <= 0.5 * kPi * (1 + 1e-12), "band exceeds the hemisphere");
}

}  // namespace

double log_wallis_integral(int l) {
  require(l >= 0, "degree l must be >= 0");
  double acc = std::log(2.0);
  for (int k = 1; k <= l; ++k) acc += std::log1p(-1.0 / (2.0 * k + 1.0));
  return acc;
}

std::pair<__int128, __int128> wallis_integral_exact(int l) {
  require(l >= 0 && l <= 20, "exact Wallis value limited to l <= 20");
  __int128 num = 2, den = 1;
  for (int k = 1; k <= l; ++k) {
    num *= 2 * k;
    den *= 2 * k + 1;
    __int128 a = num, b = den;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    num /= a;
    den /= a;
  }
  return {num, den};
}

double wallis_norm(int l) {
  require(l >= 1, "degree l must be >= 1");
  return std::exp(-std::log(kTwoPi) - log_wallis_integral(l));
}

HighestWeight::HighestWeight(int l) : l_(l), c_l_sq_(wallis_norm(l)) {}

double HighestWeight::abs2(double theta) const {
  const double s = std::sin(theta);
  if (s <= 0.0) return 0.0;
  return c_l_sq_ * std::exp(std::max(2.0 * l_ * std::log(s), kLogFloor));
}

cplx HighestWeight::operator()(double theta, double phi) const {
  return std::sqrt(abs2(theta)) * std::polar(1.0, l_ * phi);
}

double band_half_width(int l, double C) { return C / std::sqrt(static_cast<double>(l)); }

double band_measure(int l, double C) {
  check_band(l, C);
  return 2.0 * kTwoPi * std::sin(std::min(band_half_width(l, C), 0.5 * kPi));
}

double band_mass(int l, double C) {
  check_band(l, C);
  const double delta = std::min(band_half_width(l, C), 0.5 * kPi);
  if (delta == 0.0) return 0.0;
  const double integral = cos_power_integral(l, 0.0, delta);
  return std::min(1.0, 2.0 * kTwoPi * wallis_norm(l) * integral);
}

double band_complement_mass(int l, double C) {
  check_band(l, C);
  const double delta = std::min(band_half_width(l, C), 0.5 * kPi);
  if (delta >= 0.5 * kPi) return 0.0;
  const double integral =
      cos_power_integral(l, delta, 0.5 * kPi);
  return 2.0 * kTwoPi * wallis_norm(l) * integral;
}

double find_half_mass_C(int l) {
  require(l >= 1, "degree l must be >= 1");
  double lo = 0.0, hi = 0.5 * kPi * std::sqrt(static_cast<double>(l));
  if (band_mass(l, hi) < 0.5) throw NumericalFailure("band mass never reaches 1/2");
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (band_mass(l, mid) >= 0.5) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double sharpness_product(int l, double C) { return band_measure(l, C) * wallis_norm(l); }

double gaussian_half_mass_C() { return boost::math::erf_inv(0.5); }

std::vector<SharpnessRow> sharpness_sweep(const std::vector<int>& ls, double C) {
  std::vector<SharpnessRow> rows(ls.size());
  parallel_for(ls.size(), [&](std::size_t i) {
    const int l = ls[i];
    SharpnessRow r;
    r.l = l;
    r.C = C > 0.0 ? C : find_half_mass_C(l);
    r.band_measure = band_measure(l, r.C);
    r.c_l_sq = wallis_norm(l);
    r.mass = band_mass(l, r.C);
    r.product = r.band_measure * r.c_l_sq;
    rows[i] = r;
  });
  return rows;
}

void write_sharpness_csv(std::ostream& os, const std::vector<SharpnessRow>& rows) {
  const auto old = os.precision(17);
  os << "l,C,band_measure,c_l_sq,mass,product\n";
  for (const auto& r : rows) {
    os << r.l << ',' << r.C << ',' << r.band_measure << ',' << r.c_l_sq << ',' << r.mass << ','
       << r.product << '\n';
  }
  os.precision(old);
}

}  // namespace speclab
