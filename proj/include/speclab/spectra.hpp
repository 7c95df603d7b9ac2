#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "speclab/common.hpp"
#include "speclab/manifolds.hpp"

namespace speclab {

enum class SpectrumSource { ClosedForm, Discretized };

struct EigenPair {
  std::size_t index = 0;
  /// Frequency: -Laplacian e = lambda^2 e. Discretized Schrodinger spectra
  /// store sign(energy) * sqrt(|energy|) so ordering follows the energy.
  double lambda = 0.0;
  /// lambda^2 for closed forms, the raw operator eigenvalue when discretized.
  double energy = 0.0;
  std::size_t group_id = 0;
  /// Quantum numbers: (n, 0) circle, (m, n) tori, (l, m) sphere, (j, 0) discretized.
  std::array<int, 2> labels{0, 0};
};

// Smooth bounded real potential V(s) on a circle, in arc-length coordinate.
class PotentialProfile {
 public:
  PotentialProfile(std::function<double(double)> v, std::string description);
  static PotentialProfile zero();
  static PotentialProfile constant(double c);
  /// Expression in s; the constant `L` (circumference) is available.
  static PotentialProfile parse(const std::string& expr, double circumference);

  double operator()(double s) const { return v_(s); }
  const std::string& description() const { return description_; }

 private:
  std::function<double(double)> v_;
  std::string description_;
};

// Ordered eigenpairs of a model manifold with point evaluation.
class SpectralBasis {
 public:
  struct Group {
    std::size_t first = 0;
    std::size_t count = 0;
    double lambda = 0.0;
  };

  const ManifoldModel& manifold() const { return manifold_; }
  std::span<const EigenPair> pairs() const { return pairs_; }
  const EigenPair& pair(std::size_t j) const { return pairs_.at(j); }
  std::size_t size() const { return pairs_.size(); }
  double lambda_max() const { return lambda_max_; }
  SpectrumSource source() const { return source_; }
  std::span<const Group> groups() const { return groups_; }
  const Group& group(std::size_t id) const { return groups_.at(id); }
  /// Group whose eigenvalue is within `rel_tol` of lambda, or throws.
  std::size_t group_of_lambda(double lambda, double rel_tol = 1e-9) const;

  cplx evaluate(std::size_t j, Point p) const;
  /// out[k] = e_{indices[k]}(p).
  void evaluate(Point p, std::span<const std::size_t> indices, std::span<cplx> out) const;
  /// Circle bases only: evaluation in the arc-length coordinate s.
  void evaluate_arc(double s, std::span<const std::size_t> indices, std::span<cplx> out) const;
  /// sum over indices of |e_j(p)|^2.
  double sum_abs2(Point p, std::span<const std::size_t> indices) const;

  /// Largest angular frequency, per coordinate, of any product e_j * conj(e_k).
  double product_frequency() const;

  /// Discretized bases: the arc-length grid the eigenvectors live on, as a
  /// quadrature grid in manifold coordinates with weights ds.
  const QuadratureGrid& native_grid() const;
  bool has_native_grid() const { return native_ != nullptr; }
  /// Value of discretized eigenvector j at native grid node i.
  double native_sample(std::size_t j, std::size_t i) const {
    return samples_[j * sample_count_ + i];
  }

  std::string description() const;

 private:
  friend SpectralBasis circle_basis(const ManifoldModel&, int);
  friend SpectralBasis torus2_basis(const ManifoldModel&, double);
  friend SpectralBasis sphere_basis(int);
  friend SpectralBasis fd_eigensolve_circle(const MetricProfile1D&, const PotentialProfile&,
                                            int, int);

  void finalize_groups(const std::vector<long long>& keys, double merge_rel_tol);

  ManifoldModel manifold_;
  SpectrumSource source_ = SpectrumSource::ClosedForm;
  std::vector<EigenPair> pairs_;
  std::vector<Group> groups_;
  double lambda_max_ = 0.0;
  std::string description_;
  // Discretized data: column-major samples, one column per eigenpair.
  std::shared_ptr<const QuadratureGrid> native_;
  std::vector<double> samples_;
  std::size_t sample_count_ = 0;
};

/// Exponentials L^{-1/2} e^{2 pi i n s / L}, |n| <= n_max, composed with the
/// arc-length map s(x) of the circle's metric.
SpectralBasis circle_basis(const ManifoldModel& circle, int n_max);
/// Flat circle of circumference L.
SpectralBasis circle_basis(double length, int n_max);

/// Product exponentials with lambda <= lambda_max on a flat or warped torus,
/// enumerated by integer lattice arithmetic.
SpectralBasis torus2_basis(const ManifoldModel& torus, double lambda_max);

/// Complex orthonormal spherical harmonics Y_{l,m}, l <= l_max <= 128, no
/// Condon-Shortley phase, so Y_{l,l} = c_l e^{i l phi} sin^l(theta) with c_l > 0.
SpectralBasis sphere_basis(int l_max);

/// Second-order periodic finite differences for -d^2/ds^2 + V(s) on a uniform
/// arc-length grid; returns the k lowest eigenpairs, Rayleigh-quotient polished.
SpectralBasis fd_eigensolve_circle(const MetricProfile1D& h, const PotentialProfile& v,
                                   int grid_n, int k);

/// Estimated number of torus eigenpairs with lambda <= lambda_max.
double torus2_count_estimate(const ManifoldModel& torus, double lambda_max);

/// CSV: j,lambda,group_id,multiplicity.
void write_spectrum_csv(std::ostream& os, const SpectralBasis& basis);

}  // namespace speclab
