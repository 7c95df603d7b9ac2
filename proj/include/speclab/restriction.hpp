#pragma once

#include <functional>
#include <string>
#include <vector>

#include "speclab/common.hpp"

namespace speclab {

// Closed smooth curve t -> (x(t), y(t)), t in [0, period), on the flat torus
// [0, 2pi)^2. Translates Sigma_y = Sigma + (0, y).
class CurveSpec {
 public:
  using Map = std::function<Point(double)>;
  /// gamma, gamma', gamma''. Rejects curves that do not close within 1e-12.
  CurveSpec(Map gamma, Map d1, Map d2, double period, std::string description);
  static CurveSpec circle(Point center, double radius);
  static CurveSpec ellipse(Point center, double a, double b);
  /// The default: radius 1/4 centered at (pi, pi).
  static CurveSpec default_curve();

  Point point(double t) const;
  Point velocity(double t) const { return d1_(t); }
  double speed(double t) const;
  /// |x'y'' - y'x''| / (x'^2 + y'^2)^{3/2}.
  double curvature(double t) const;
  double period() const { return period_; }
  double length() const { return length_; }
  double offset() const { return offset_; }
  bool curvature_ok() const { return min_curvature_ > 0.0; }
  double min_curvature() const { return min_curvature_; }
  double max_curvature() const { return max_curvature_; }
  /// Largest tube radius accepted: half the smallest curvature radius.
  double injectivity_bound() const { return 0.5 / max_curvature_; }
  CurveSpec translated(double dy) const;
  const std::string& description() const { return description_; }

  /// Euclidean distance (minimum image on the torus) from p to the curve.
  double distance(Point p) const;

 private:
  Map gamma_, d1_, d2_;
  double period_ = 0.0;
  double offset_ = 0.0;
  double length_ = 0.0;
  double min_curvature_ = 0.0, max_curvature_ = 0.0;
  std::string description_;
  std::vector<Point> coarse_;  // samples for the nearest-point search
};

// delta(k, p~) for a k-dimensional submanifold of an n-manifold, p~ in
// [2, inf] (pass INFINITY for inf).
struct DeltaExponent {
  double value = 0.0;
  int branch = 0;         // 1, 2 or 3 following the case split
  bool log_loss = false;  // (k, p~) = (n-2, 2): restriction bound carries (log lambda)^{1/2}
};
DeltaExponent delta_exponent(int k, double p_tilde, int n);

/// Power of log(lambda) in B(lambda, k, p, q): 0, 1/2 or 1.
double log_factor_power(int k, double p, double q, int n);

/// L^q(Sigma_y) norm of e along the translated curve, q >= 1 or INFINITY.
/// Finite q: arc-length Gauss-Legendre quadrature, refined until two levels
/// agree to 1e-11 relative. q = inf: dense sampling then Brent polish.
double restriction_norm(const std::function<cplx(Point)>& e, const CurveSpec& curve, double y,
                        double q);

/// Real L^2-normalized flat-torus eigenfunction cos(mx + ny) / (pi sqrt 2)
/// (sin when use_sin); the constant 1/(2pi) for (m, n) = (0, 0).
std::function<cplx(Point)> torus_real_eigenfunction(int m, int n, bool use_sin);

/// |{x : d(x, Sigma) <= r}| by adaptive quadtree on the signed distance.
/// Rejects r above the curve's injectivity bound.
double tube_measure(const CurveSpec& curve, double r);

struct TubularReport {
  std::string mode;  // "unit", "summation" or "stability"
  double lambda = 0.0;
  double R = 0.0;
  double p = 0.0, q = 0.0, r = 0.0;
  int n = 2, k = 1;
  double A = 0.0;
  std::size_t window_count = 0;  // distinct eigenvalues in the window
  double window_lo = 0.0, window_hi = 0.0;
  double tube_measure = 0.0;
  double delta_pq = 0.0, delta_q = 0.0;
  double log_power = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;    // without the constant C
  double ratio = 0.0;  // lhs / rhs
  bool vacuous = false;
};

struct TubularOptions {
  std::string mode = "unit";
  double p = INFINITY, q = 2.0, r = 3.0;
  /// <= 0 means A = sqrt(R).
  double A = 0.0;
};

/// Both sides of the tube inequality on the square 2pi torus. Windows:
/// unit [lambda, lambda+1]; summation [0, lambda]; stability
/// [lambda - 1/lambda, lambda + 1/lambda] with (p, q, r) = (inf, 2, 3) and the
/// stability constants set to 1. tube is |T_{1/R}|, computed by the caller.
TubularReport tubular_certificate(double lambda, double R, double tube, const TubularOptions& o);

/// Distinct eigenvalues sqrt(m^2 + n^2) of the square 2pi torus in [lo, hi].
std::vector<double> torus_distinct_eigenvalues(double lo, double hi);

struct TubularSweep {
  std::vector<TubularReport> reports;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double growth_exponent = 0.0;  // slope of log ratio vs log lambda
  std::size_t skipped = 0;       // (lambda, R) pairs with lambda < R
};

/// Every distinct torus eigenvalue in [lo, hi] and every R; pairs with
/// lambda < R are skipped and counted.
TubularSweep tubular_sweep(const CurveSpec& curve, const std::vector<double>& Rs, double lo,
                           double hi, const TubularOptions& o);

struct BrScan {
  double min_ratio_center = 0.0, max_ratio_center = 0.0;  // y = 0
  double min_ratio = 0.0, max_ratio = 0.0;                // all offsets
  double widening = 0.0;  // (max/min over offsets) / (max/min at y = 0)
  std::size_t functions = 0;
  std::size_t offsets = 0;
};

/// ||e||_{L^2(Sigma_y)} / ||e||_{L^2(T^2)} over the real eigenfunctions
/// cos, sin(mx + ny) with lambda in [lo, hi], y in [-1/R, 1/R] (offsets points).
BrScan br_ratio_scan(const CurveSpec& curve, double lo, double hi, double R, int offsets);

struct HolderCheck {
  double lhs = 0.0;  // int_{|y|<=1/R} ||f||_{L^q(Sigma_y)}^q dy
  double rhs = 0.0;  // sup |Sigma_y|^{1/p'} int ||f||_{L^{pq}(Sigma_y)}^q dy
  bool holds = false;
};

HolderCheck holder_chain_check(const std::function<cplx(Point)>& f, const CurveSpec& curve,
                               double R, double p, double q);

}  // namespace speclab
