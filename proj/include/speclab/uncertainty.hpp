#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "speclab/common.hpp"
#include "speclab/manifolds.hpp"
#include "speclab/spectra.hpp"

namespace speclab {

// A finite set S of eigenvalues with its index set X_S, or an arbitrary
// finite index set I (partial eigenspaces allowed).
class SpectralWindow {
 public:
  /// Union of whole eigenspaces, by group id.
  static SpectralWindow from_groups(const SpectralBasis& basis, std::vector<std::size_t> groups);
  /// Union of whole eigenspaces, by eigenvalue; each must be in the basis.
  static SpectralWindow from_lambdas(const SpectralBasis& basis, const std::vector<double>& lambdas,
                                     double rel_tol = 1e-9);
  /// All eigenspaces with lo <= lambda <= hi.
  static SpectralWindow lambda_range(const SpectralBasis& basis, double lo, double hi);
  /// Arbitrary index set I.
  static SpectralWindow from_indices(const SpectralBasis& basis, std::vector<std::size_t> indices);

  const std::vector<double>& eigenvalues() const { return lambdas_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t count() const { return indices_.size(); }
  bool contains(std::size_t j) const;
  /// True when X_S is a union of whole eigenspaces.
  bool whole_eigenspaces() const { return whole_; }
  std::string description() const;

 private:
  std::vector<double> lambdas_;
  std::vector<std::size_t> indices_;  // sorted
  bool whole_ = true;
};

// f = sum_j c_j e_j, stored sparsely. norm2 is ||f||^2 in L^2(M); for
// functions projected from outside the basis span it exceeds sum |c_j|^2 by
// the mass the basis does not see.
class Field {
 public:
  static Field from_coefficients(std::vector<std::size_t> indices, std::vector<cplx> coeffs);
  /// Projection with an independently known ||f||^2 (Bessel: norm2 >= sum |c|^2).
  static Field projected(std::vector<std::size_t> indices, std::vector<cplx> coeffs, double norm2);
  /// <f, e_j> for every basis element, f given in the arc-length coordinate of
  /// a circle basis and supported in `support`; dense panel quadrature.
  static Field project_on_circle(const SpectralBasis& basis,
                                 const std::function<double(double)>& f_of_s,
                                 const RegionSpec& support);

  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  double norm2() const { return norm2_; }
  double norm() const { return std::sqrt(norm2_); }
  double coefficient_mass() const;
  cplx coefficient(std::size_t j) const;

  cplx value(const SpectralBasis& basis, Point p) const;
  /// Grid samples f(node).
  std::vector<cplx> sample(const SpectralBasis& basis, const QuadratureGrid& grid) const;

 private:
  std::vector<std::size_t> indices_;  // sorted, unique
  std::vector<cplx> coeffs_;
  double norm2_ = 0.0;
};

struct GridFunction {
  std::vector<double> values;
  double integral = 0.0;
  double max = 0.0;
};

/// Samples of A_S(x) = sum_{j in X_S} |e_j(x)|^2 on a grid, with its integral.
GridFunction a_s_field(const SpectralBasis& basis, const SpectralWindow& window,
                       const QuadratureGrid& grid);

struct ConcentrationLevels {
  double epsilon = 0.0;        // 1 - int_E |f|^2 / ||f||^2
  double epsilon_prime = 0.0;  // 1 - sum_{X_S} |c|^2 / ||f||^2
  double inside_mass = 0.0;    // int_E |f|^2
  double window_mass = 0.0;    // sum_{X_S} |c|^2
  double norm2 = 0.0;
};

ConcentrationLevels concentration_levels(const SpectralBasis& basis, const Field& f,
                                         const RegionSpec& region, const SpectralWindow& window);

struct UncertaintyCertificate {
  double epsilon = 0.0;
  double epsilon_prime = 0.0;
  double level = 0.0;        // (1 - eps^2)^{-1/2}
  double level_prime = 0.0;  // (1 - eps'^2)^{-1/2}
  double region_measure = 0.0;
  double volume = 0.0;
  std::size_t window_count = 0;
  double sup_a_s = 0.0;       // sup_E A_S
  double integral_a_s = 0.0;  // int_E A_S
  double defect = 0.0;        // sup_E A_S / (#X_S / |M|)
  double lhs = 0.0;           // (1 - eps - eps')^2
  double rhs_quant = 0.0;     // |E|/|M| #X_S defect
  double rhs_classical = 0.0; // |E|/|M| #X_S
  bool vacuous = false;
  bool holds_chain = true;    // lhs <= int_E A_S <= |E| sup_E A_S
  bool holds_quant = true;
  bool holds_classical = true;
  std::size_t sample_count = 0;
  std::string manifold;
  std::string basis;
  std::string region;
  std::string window;
};

inline constexpr double kCertificateSlack = 1e-9;

/// Both sides of the averaged uncertainty inequality. The supremum of A_S over
/// E is the maximum over the integration nodes in E and the region's boundary
/// points (native grid nodes for discretized bases).
UncertaintyCertificate certify(const SpectralBasis& basis, const Field& f, const RegionSpec& region,
                               const SpectralWindow& window, double slack = kCertificateSlack);

/// FR_R(f) = (sum_{lambda_n >= R} |c_n|^2)^{1/2} / ||f||; the tail is taken as
/// the complement of the low frequencies so mass outside the basis counts.
double fourier_ratio(const SpectralBasis& basis, const Field& f, double R);

struct FourierRatioCheck {
  double R = 0.0;
  double fourier_ratio = 0.0;
  double neighborhood_measure = 0.0;  // |E^{1/R}|
  double ratio = 0.0;                 // FR_R sqrt(R |E^{1/R}|)
  double outside_mass = 0.0;          // int_{M \ E} |f|^2 / ||f||^2
};

/// FR bound for f supported in E on a circle: f (arc-length coordinate) must vanish
/// off E up to 1e-10 of its mass; the basis must contain every lambda < R.
FourierRatioCheck fr_support_check(const SpectralBasis& circle,
                                     const std::function<double(double)>& f_of_s,
                                     const RegionSpec& region, double R);

/// C^infinity bump exp(1 - 1/(1 - u^2)), u = (s - center)/half_width, on a circle of length L.
std::function<double(double)> smooth_bump(double center, double half_width, double length);

struct FrSweepRow {
  int k = 0;
  double width = 0.0;
  FourierRatioCheck check;
};

/// Bumps of width 2^{-k} on the circle of length 2pi, R = 2^k (or R = 1).
std::vector<FrSweepRow> fr_bump_sweep(int k_min, int k_max, bool unit_scale);

// Randomized certification across the model manifolds.
struct SuiteOptions {
  std::uint64_t seed = 20240601;
  std::size_t valid_per_manifold = 125;  // non-vacuous draws wanted per manifold
  std::vector<std::string> manifolds = {"circle", "torus2-flat", "torus2-warped", "sphere"};
  std::string circle_metric = "2+sin";
  std::string warped_metric = "2+sin";
};

struct SuiteDraw {
  std::size_t draw = 0;
  std::uint64_t fingerprint = 0;
  UncertaintyCertificate certificate;
};

struct SuiteResult {
  std::vector<SuiteDraw> draws;  // valid and vacuous, in draw order
  std::size_t valid = 0;
  std::size_t vacuous = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;  // min over valid draws of rhs_quant - lhs
};

SuiteResult run_uncertainty_suite(const SuiteOptions& options);

}  // namespace speclab
