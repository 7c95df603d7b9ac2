#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "speclab/common.hpp"

namespace speclab {

// Positive 2pi-periodic metric coefficient h on [-pi, pi]: g = h(t) dt^2.
class MetricProfile1D {
 public:
  MetricProfile1D(std::function<double(double)> h, std::string description);

  /// h given as an expression in t, e.g. "2+sin" or "1 + 0.5*cos(2*t)".
  static MetricProfile1D parse(const std::string& expr);
  /// h == c, a flat circle of length 2 pi sqrt(c).
  static MetricProfile1D constant(double c);

  double operator()(double t) const { return h_(t); }
  const std::string& description() const { return description_; }
  bool is_constant() const { return constant_; }
  double min_sample() const { return min_; }
  double max_sample() const { return max_; }

 private:
  std::function<double(double)> h_;
  std::string description_;
  bool constant_ = false;
  double min_ = 0.0, max_ = 0.0;
};

// Arc-length coordinate s(x) = int_{-pi}^{x} sqrt(h) on the circle, with its
// inverse. The forward map is exact to rounding (composite 8-point
// Gauss-Legendre per table cell); the inverse uses monotone cubic Hermite
// interpolation of the (s, x) table followed by one Newton polish.
class ArcLengthMap {
 public:
  ArcLengthMap(const MetricProfile1D& h, int resolution);

  double length() const { return length_; }
  /// Periodic extension: s(x + 2pi) = s(x) + L.
  double s_of_x(double x) const;
  /// Inverse on [0, L), extended by periodicity; returns x in [-pi, pi).
  double x_of_s(double s) const;
  /// ds/dx = sqrt(h(x)).
  double speed(double x) const;

  std::span<const double> x_table() const { return x_; }
  std::span<const double> s_table() const { return s_; }
  const MetricProfile1D& profile() const { return h_; }

 private:
  double cell_integral(double a, double b) const;

  MetricProfile1D h_;
  std::vector<double> x_, s_, dxds_;
  double length_ = 0.0;
};

struct ArcLengthResult {
  double length;
  std::shared_ptr<const ArcLengthMap> map;
};

/// Arc-length reparameterization of (T, h dt^2). Requires resolution >= 64.
ArcLengthResult arc_length_reparam(const MetricProfile1D& h, int resolution);

enum class ManifoldKind { Circle1D, FlatTorus2D, WarpedTorus2D, Sphere2 };

std::string to_string(ManifoldKind k);

// One of the model manifolds. Cheap to copy; immutable.
class ManifoldModel {
 public:
  static ManifoldModel circle(const MetricProfile1D& h, int arc_resolution = 512);
  /// Flat circle of circumference L (h == (L / 2pi)^2).
  static ManifoldModel circle_of_length(double length);
  static ManifoldModel flat_torus(double side_x = kTwoPi, double side_y = kTwoPi);
  /// dx^2 + h(y) dy^2 with x in [0, 2pi), y in [-pi, pi).
  static ManifoldModel warped_torus(const MetricProfile1D& hy, int arc_resolution = 512);
  static ManifoldModel sphere();

  ManifoldKind kind() const { return kind_; }
  int dimension() const { return kind_ == ManifoldKind::Circle1D ? 1 : 2; }
  double volume() const { return volume_; }
  std::string name() const;
  int default_resolution() const;

  /// Circle: the metric itself. Warped torus: the y-factor.
  const ArcLengthMap& arc() const;
  double side_x() const { return side_x_; }
  double side_y() const { return side_y_; }

  /// Wrap a point into the fundamental domain.
  Point canonical(Point p) const;

 private:
  ManifoldKind kind_ = ManifoldKind::Sphere2;
  double volume_ = 0.0;
  double side_x_ = 0.0, side_y_ = 0.0;
  std::shared_ptr<const ArcLengthMap> arc_;
};

// Nodes and positive weights realizing the Riemannian volume integral.
struct QuadratureGrid {
  ManifoldModel manifold;
  std::vector<Point> nodes;
  std::vector<double> weights;
  int n1 = 0, n2 = 0;  // structured shape; n2 == 1 on the circle

  double total_weight() const;
  std::size_t size() const { return nodes.size(); }
};

/// Uniform (trapezoidal) nodes on periodic directions, Gauss-Legendre in
/// cos(theta) on the sphere (resolution x 2*resolution). Requires >= 16.
QuadratureGrid build_grid(const ManifoldModel& m, int resolution);

// Closed interval [lo, lo + length] on a periodic or bounded coordinate.
struct Interval {
  double lo = 0.0;
  double length = 0.0;
  double hi() const { return lo + length; }
};

// A measurable subset stored analytically: arcs (circle, arc-length
// coordinate), rectangles in (x, s_y) (tori; s_y = y on the flat torus), or
// (theta, phi) patches on the sphere. Cells are pairwise disjoint.
class RegionSpec {
 public:
  enum class Shape { Whole, Arcs, Cells };

  static RegionSpec whole(const ManifoldModel& m);
  /// Arcs given in arc-length coordinate s in [0, L); overlapping arcs merge.
  static RegionSpec arcs(const ManifoldModel& circle, std::vector<Interval> arcs);
  /// Disjoint cells. Torus: (x-interval, s_y-interval). Sphere: (theta, phi).
  static RegionSpec cells(const ManifoldModel& m,
                          std::vector<std::pair<Interval, Interval>> cells);
  /// Band {|theta - pi/2| <= half_width} on the sphere.
  static RegionSpec equatorial_band(const ManifoldModel& sphere, double half_width);

  const ManifoldModel& manifold() const { return manifold_; }
  Shape shape() const { return shape_; }
  double measure() const { return measure_; }
  bool contains(Point p) const;
  std::string description() const;

  const std::vector<Interval>& arc_list() const { return arcs_; }
  const std::vector<std::pair<Interval, Interval>>& cell_list() const { return cells_; }

  struct Rule {
    std::vector<Point> nodes;
    std::vector<double> weights;
  };
  /// Tensor Gauss-Legendre rule over the region, panels sized so that an
  /// integrand with angular frequency up to `max_frequency` in each
  /// coordinate is integrated to rounding. Weights sum to measure().
  Rule quadrature(double max_frequency) const;
  /// Corners and edge midpoints of every cell (or arc endpoints).
  std::vector<Point> boundary_points() const;

 private:
  ManifoldModel manifold_;
  Shape shape_ = Shape::Whole;
  std::vector<Interval> arcs_;
  std::vector<std::pair<Interval, Interval>> cells_;
  double measure_ = 0.0;
};

/// r-neighborhood of a union of arcs on a circle: each arc grows by r on both
/// sides, then overlaps merge. Measure is min(merged length, L).
RegionSpec neighborhood(const RegionSpec& arcs, double r);

/// Merge circular arcs on a circle of length L into disjoint arcs.
std::vector<Interval> merge_arcs(std::vector<Interval> arcs, double period);

}  // namespace speclab
