#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "speclab/manifolds.hpp"
#include "speclab/spectra.hpp"
#include "speclab/uncertainty.hpp"

namespace speclab {

/// Volume of the unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

/// (2pi)^{-n} omega_n lambda^n |M|.
double weyl_leading(int n, double volume, double lambda);

// Distinct eigenvalues with exact multiplicities.
struct CountingSpectrum {
  std::string manifold;
  int dimension = 1;
  double volume = 0.0;
  double lambda_max = 0.0;
  std::vector<double> lambdas;  // increasing, distinct
  std::vector<long long> multiplicity;
};

/// From a basis' eigenvalue groups (complete up to basis.lambda_max()).
CountingSpectrum counting_spectrum(const SpectralBasis& basis);
/// Direct enumeration without eigenfunctions: integer lattice on the square
/// 2pi torus, 2l+1 on the sphere, 1 + 2 per |n| on circles.
CountingSpectrum exact_counting_spectrum(const ManifoldModel& m, double lambda_max);

struct WeylReport {
  std::string manifold;
  int dimension = 1;
  double volume = 0.0;
  std::vector<double> lambdas;
  std::vector<long long> counts;
  std::vector<double> leading;
  std::vector<double> remainder;   // N - leading
  std::vector<double> window_max;  // sup over [lambda/2, lambda] of |N - leading|
  double fitted_exponent = 0.0;    // set by remainder_fit
  // Pointwise counts, filled when a grid is supplied.
  std::vector<double> pointwise_integral;  // int_M N_x(lambda)
  std::vector<double> pointwise_min;
  std::vector<double> pointwise_max;
};

/// N(lambda) for each scan value; every lambda must be <= the spectrum cutoff.
WeylReport counting_scan(const CountingSpectrum& spectrum, const std::vector<double>& lambdas);
/// Same plus N_x(lambda) on `grid` when non-null.
WeylReport counting_scan(const SpectralBasis& basis, const std::vector<double>& lambdas,
                         const QuadratureGrid* grid = nullptr);

/// Least-squares slope of log(window_max) against log(lambda). Needs >= 10
/// scan points with lambda_max / lambda_min >= 2; zero windows are dropped.
double remainder_fit(const WeylReport& report);

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int n);

/// CSV: lambda,N,leading,remainder.
void write_weyl_csv(std::ostream& os, const WeylReport& report);

struct HomogeneityDefect {
  double lambda = 0.0;
  long long multiplicity = 0;
  double eps1 = 0.0;                // half the gap to the previous eigenvalue
  double c1_sup = 0.0;              // sup_x |c_1(x, eps1)|
  double relative_deviation = 0.0;  // sup_x |slice - m/|M|| / (m/|M|)
  double slice_integral = 0.0;      // int_M slice, should be m
};

/// slice(x) = sum_{lambda_j = lambda} |e_j(x)|^2 = m/|M| + eps1 c_1(x, eps1).
HomogeneityDefect homogeneity_defect(const SpectralBasis& basis, double lambda,
                                     const QuadratureGrid& grid);

/// c_{n,k} for k = 0..n-2 in
/// slice = (2pi)^{-n} omega_n n eps1 lambda^{n-1} + sum_k c_{n,k} lambda^k eps1^{n-k-1},
/// given the pointwise remainder coefficient c = c(x).
std::vector<double> cnk_coefficients(int n, double eps1, double c);

struct UpForHvCertificate {
  std::string mode;  // "laplace-2d" or "schrodinger-1d"
  double a0 = 0.0;
  double lhs = 0.0;            // (1 - eps - eps')^2
  double integral_a_s = 0.0;   // int_E A_S
  double rhs = 0.0;            // |E|/|M| #X_S
  double constant = 0.0;       // lhs / rhs
  double c_v = 0.0;            // sup_M A_S / (#X_S/|M|), the measured constant
  double min_s = 0.0;
  bool vacuous = false;
  bool holds_chain = true;     // lhs <= int_E A_S
  bool holds = true;           // a0 lhs <= rhs (2-D) or lhs / c_v <= rhs (1-D)
  std::string kato_threshold = "not exercised";
  UncertaintyCertificate base;
};

/// 2-D bases: a0 (1-eps-eps')^2 <= |E|/|M| #X_S, with C = lhs/rhs reported.
/// Discretized circle bases: (1-eps-eps')^2 / C_V <= |E|/|M| #X_S with the
/// measured C_V. The window must consist of whole eigenspaces.
UpForHvCertificate up_for_hv_check(const SpectralBasis& basis, const RegionSpec& region,
                                   const SpectralWindow& window, const Field& f, double a0);

}  // namespace speclab
