#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "speclab/common.hpp"

namespace speclab {

/// log of W(l) = int_0^pi sin^{2l+1} = 2 (2l)!! / (2l+1)!!, summed in log space.
double log_wallis_integral(int l);

/// Exact W(l) as a reduced fraction (numerator, denominator); l <= 20.
std::pair<__int128, __int128> wallis_integral_exact(int l);

/// c_l^2 = 1 / (2pi W(l)), so ||c_l e^{il phi} sin^l theta||_2 = 1.
double wallis_norm(int l);

// f_l = c_l e^{il phi} (sin theta)^l.
class HighestWeight {
 public:
  explicit HighestWeight(int l);
  int l() const { return l_; }
  double c_l_sq() const { return c_l_sq_; }
  cplx operator()(double theta, double phi) const;
  /// |f_l|^2 at polar angle theta.
  double abs2(double theta) const;

 private:
  int l_;
  double c_l_sq_;
};

/// Half-width C l^{-1/2} of the band E_l = {|theta - pi/2| <= C l^{-1/2}}.
double band_half_width(int l, double C);
/// |E_l| = 4 pi sin(delta).
double band_measure(int l, double C);
/// int_{E_l} |f_l|^2 by adaptive quadrature; C l^{-1/2} must not exceed pi/2.
double band_mass(int l, double C);
/// int over the complement of E_l, integrated separately.
double band_complement_mass(int l, double C);
/// Smallest C (to 1e-6) with band_mass(l, C) >= 1/2.
double find_half_mass_C(int l);
/// |E_l| c_l^2 = |E_l| sup_{E_l} |f_l|^2.
double sharpness_product(int l, double C);
/// Limit of the half-mass C: the profile (cos u)^{2l} ~ exp(-l u^2) gives erf(C) = 1/2.
double gaussian_half_mass_C();

struct SharpnessRow {
  int l = 0;
  double C = 0.0;
  double band_measure = 0.0;
  double c_l_sq = 0.0;
  double mass = 0.0;
  double product = 0.0;
};

/// One row per l. C > 0 fixes the band constant; C <= 0 bisects per l.
std::vector<SharpnessRow> sharpness_sweep(const std::vector<int>& ls, double C);

/// CSV: l,C,band_measure,c_l_sq,mass,product.
void write_sharpness_csv(std::ostream& os, const std::vector<SharpnessRow>& rows);

}  // namespace speclab
