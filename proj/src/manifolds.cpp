#include "speclab/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "speclab/expression.hpp"
#include "speclab/quadrature.hpp"

namespace speclab {

namespace {

constexpr int kProfileSamples = 4096;

}  // namespace

MetricProfile1D::MetricProfile1D(std::function<double(double)> h, std::string description)
    : h_(std::move(h)), description_(std::move(description)) {
  min_ = std::numeric_limits<double>::infinity();
  max_ = -min_;
  for (int i = 0; i <= kProfileSamples; ++i) {
    const double t = -kPi + kTwoPi * i / kProfileSamples;
    const double v = h_(t);
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream os;
      os << "metric profile '" << description_ << "' is not positive at t=" << t << " (h=" << v
         << ")";
      throw InvalidInput(os.str());
    }
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
  const double a = h_(-kPi), b = h_(kPi);
  if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
    throw InvalidInput("metric profile '" + description_ + "' is not 2pi-periodic");
  }
  constant_ = (max_ - min_) <= 1e-15 * max_;
}

MetricProfile1D MetricProfile1D::parse(const std::string& expr) {
  const Expression e = Expression::parse(expr);
  return MetricProfile1D([e](double t) { return e(t); }, expr);
}

MetricProfile1D MetricProfile1D::constant(double c) {
  require(c > 0.0 && std::isfinite(c), "constant metric must be positive");
  std::ostringstream os;
  os.precision(17);
  os << c;
  return MetricProfile1D([c](double) { return c; }, os.str());
}

// --- arc length ------------------------------------------------------------

ArcLengthMap::ArcLengthMap(const MetricProfile1D& h, int resolution) : h_(h) {
  require(resolution >= 64, "arc_length_reparam: resolution must be >= 64");
  const int n = resolution;
  x_.resize(n + 1);
  s_.resize(n + 1);
  dxds_.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    x_[i] = -kPi + kTwoPi * i / n;
    dxds_[i] = 1.0 / std::sqrt(h_(x_[i]));
  }
  x_[n] = kPi;
  s_[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    s_[i + 1] = s_[i] + cell_integral(x_[i], x_[i + 1]);
    if (!(s_[i + 1] > s_[i])) throw NumericalFailure("arc-length table lost monotonicity");
  }
  length_ = s_[n];
}

double ArcLengthMap::cell_integral(double a, double b) const {
  const Rule1D& g = gauss_legendre(8);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    acc += g.weights[k] * std::sqrt(h_(mid + half * g.nodes[k]));
  }
  return acc * half;
}

double ArcLengthMap::speed(double x) const { return std::sqrt(h_(x)); }

double ArcLengthMap::s_of_x(double x) const {
  const double turns = std::floor((x + kPi) / kTwoPi);
  const double x0 = x - turns * kTwoPi;
  const int n = static_cast<int>(x_.size()) - 1;
  const double dx = kTwoPi / n;
  int i = static_cast<int>(std::floor((x0 + kPi) / dx));
  i = std::clamp(i, 0, n - 1);
  return s_[i] + cell_integral(x_[i], x0) + turns * length_;
}

double ArcLengthMap::x_of_s(double s) const {
  const double turns = std::floor(s / length_);
  double s0 = s - turns * length_;
  if (s0 >= length_) s0 -= length_;
  if (s0 < 0.0) s0 = 0.0;
  const auto it = std::upper_bound(s_.begin(), s_.end(), s0);
  const int n = static_cast<int>(x_.size()) - 1;
  int i = static_cast<int>(it - s_.begin()) - 1;
  i = std::clamp(i, 0, n - 1);

  const double hs = s_[i + 1] - s_[i];
  const double t = (s0 - s_[i]) / hs;
  const double secant = (x_[i + 1] - x_[i]) / hs;
  double m0 = dxds_[i], m1 = dxds_[i + 1];
  const double a = m0 / secant, b = m1 / secant;
  if (a * a + b * b > 9.0) {  // Fritsch-Carlson limiter
    const double tau = 3.0 / std::sqrt(a * a + b * b);
    m0 = tau * a * secant;
    m1 = tau * b * secant;
  }
  const double t2 = t * t, t3 = t2 * t;
  double x = (2 * t3 - 3 * t2 + 1) * x_[i] + (t3 - 2 * t2 + t) * hs * m0 +
             (-2 * t3 + 3 * t2) * x_[i + 1] + (t3 - t2) * hs * m1;
  x -= (s_of_x(x) - s0) / speed(x);
  return wrap(x, -kPi, kTwoPi);
}

ArcLengthResult arc_length_reparam(const MetricProfile1D& h, int resolution) {
  auto map = std::make_shared<const ArcLengthMap>(h, resolution);
  return {map->length(), map};
}

// --- manifold models --------------------------------------------------------

std::string to_string(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::Circle1D: return "circle";
    case ManifoldKind::FlatTorus2D: return "torus2-flat";
    case ManifoldKind::WarpedTorus2D: return "torus2-warped";
    case ManifoldKind::Sphere2: return "sphere";
  }
  return "unknown";
}

ManifoldModel ManifoldModel::circle(const MetricProfile1D& h, int arc_resolution) {
  ManifoldModel m;
  m.kind_ = ManifoldKind::Circle1D;
  m.arc_ = std::make_shared<const ArcLengthMap>(h, arc_resolution);
  m.volume_ = m.arc_->length();
  const double lo = kTwoPi * std::sqrt(h.min_sample());
  const double hi = kTwoPi * std::sqrt(h.max_sample());
  if (m.volume_ < lo * (1 - 1e-12) || m.volume_ > hi * (1 + 1e-12)) {
    throw NumericalFailure("circle length violates the metric bounds");
  }
  return m;
}

ManifoldModel ManifoldModel::circle_of_length(double length) {
  require(length > 0.0, "circle length must be positive");
  const double r = length / kTwoPi;
  return circle(MetricProfile1D::constant(r * r), 64);
}

ManifoldModel ManifoldModel::flat_torus(double side_x, double side_y) {
  require(side_x > 0.0 && side_y > 0.0, "torus sides must be positive");
  ManifoldModel m;
  m.kind_ = ManifoldKind::FlatTorus2D;
  m.side_x_ = side_x;
  m.side_y_ = side_y;
  m.volume_ = side_x * side_y;
  return m;
}

ManifoldModel ManifoldModel::warped_torus(const MetricProfile1D& hy, int arc_resolution) {
  ManifoldModel m;
  m.kind_ = ManifoldKind::WarpedTorus2D;
  m.arc_ = std::make_shared<const ArcLengthMap>(hy, arc_resolution);
  m.side_x_ = kTwoPi;
  m.side_y_ = kTwoPi;
  m.volume_ = kTwoPi * m.arc_->length();
  return m;
}

ManifoldModel ManifoldModel::sphere() {
  ManifoldModel m;
  m.kind_ = ManifoldKind::Sphere2;
  m.volume_ = 4.0 * kPi;
  return m;
}

std::string ManifoldModel::name() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == ManifoldKind::Circle1D || kind_ == ManifoldKind::WarpedTorus2D) {
    os << "(h=" << arc_->profile().description() << ")";
  } else if (kind_ == ManifoldKind::FlatTorus2D) {
    os << "(" << side_x_ << "x" << side_y_ << ")";
  }
  return os.str();
}

int ManifoldModel::default_resolution() const {
  return kind_ == ManifoldKind::Circle1D ? 512 : 128;
}

const ArcLengthMap& ManifoldModel::arc() const {
  if (!arc_) throw InvalidInput(to_string(kind_) + " has no arc-length map");
  return *arc_;
}

Point ManifoldModel::canonical(Point p) const {
  switch (kind_) {
    case ManifoldKind::Circle1D:
      return {wrap(p[0], -kPi, kTwoPi), 0.0};
    case ManifoldKind::FlatTorus2D:
      return {wrap(p[0], 0.0, side_x_), wrap(p[1], 0.0, side_y_)};
    case ManifoldKind::WarpedTorus2D:
      return {wrap(p[0], 0.0, kTwoPi), wrap(p[1], -kPi, kTwoPi)};
    case ManifoldKind::Sphere2:
      return {std::clamp(p[0], 0.0, kPi), wrap(p[1], 0.0, kTwoPi)};
  }
  return p;
}

// --- grids -----------------------------------------------------------------

double QuadratureGrid::total_weight() const {
  double acc = 0.0;
  for (double w : weights) acc += w;
  return acc;
}

QuadratureGrid build_grid(const ManifoldModel& m, int resolution) {
  require(resolution >= 16, "build_grid: resolution must be >= 16");
  QuadratureGrid g{m, {}, {}, 0, 0};
  const int r = resolution;
  switch (m.kind()) {
    case ManifoldKind::Circle1D: {
      g.n1 = r;
      g.n2 = 1;
      for (int i = 0; i < r; ++i) {
        const double x = -kPi + kTwoPi * i / r;
        g.nodes.push_back({x, 0.0});
        g.weights.push_back(kTwoPi / r * m.arc().speed(x));
      }
      break;
    }
    case ManifoldKind::FlatTorus2D: {
      g.n1 = g.n2 = r;
      const double w = m.side_x() / r * m.side_y() / r;
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          g.nodes.push_back({m.side_x() * i / r, m.side_y() * j / r});
          g.weights.push_back(w);
        }
      }
      break;
    }
    case ManifoldKind::WarpedTorus2D: {
      g.n1 = g.n2 = r;
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          const double y = -kPi + kTwoPi * j / r;
          g.nodes.push_back({kTwoPi * i / r, y});
          g.weights.push_back(kTwoPi / r * kTwoPi / r * m.arc().speed(y));
        }
      }
      break;
    }
    case ManifoldKind::Sphere2: {
      const Rule1D& gl = gauss_legendre(r);
      const int nphi = 2 * r;
      g.n1 = r;
      g.n2 = nphi;
      for (int i = 0; i < r; ++i) {
        const double theta = std::acos(-gl.nodes[i]);
        for (int j = 0; j < nphi; ++j) {
          g.nodes.push_back({theta, kTwoPi * j / nphi});
          g.weights.push_back(gl.weights[i] * kTwoPi / nphi);
        }
      }
      break;
    }
  }
  return g;
}

// --- regions -----------------------------------------------------------------

namespace {

double period_x(const ManifoldModel& m) { return m.side_x(); }

double period_second(const ManifoldModel& m) {
  switch (m.kind()) {
    case ManifoldKind::FlatTorus2D: return m.side_y();
    case ManifoldKind::WarpedTorus2D: return m.arc().length();
    default: return kTwoPi;  // sphere phi
  }
}

bool arcs_overlap(const Interval& a, const Interval& b, double period) {
  // Positive-length intersection of two arcs on a circle of given period.
  const double tol = 1e-12 * period;
  for (int shift = -1; shift <= 1; ++shift) {
    const double lo = std::max(a.lo, b.lo + shift * period);
    const double hi = std::min(a.hi(), b.hi() + shift * period);
    if (hi - lo > tol) return true;
  }
  return false;
}

bool in_arc(double v, const Interval& a, double period) {
  const double tol = 1e-13 * period;
  if (a.length >= period) return true;
  const double u = wrap(v - a.lo, 0.0, period);
  return u <= a.length + tol || u >= period - tol;
}

Interval normalize_arc(Interval a, double period) {
  require(a.length >= 0.0, "region interval has negative length");
  require(a.length <= period * (1 + 1e-12), "region interval exceeds the period");
  a.length = std::min(a.length, period);
  a.lo = wrap(a.lo, 0.0, period);
  return a;
}

}  // namespace

std::vector<Interval> merge_arcs(std::vector<Interval> arcs, double period) {
  std::vector<Interval> out;
  for (auto& a : arcs) {
    if (a.length >= period) return {{0.0, period}};
    a.lo = wrap(a.lo, 0.0, period);
  }
  std::sort(arcs.begin(), arcs.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo;
  });
  for (const auto& a : arcs) {
    if (!out.empty() && a.lo <= out.back().hi()) {
      out.back().length = std::max(out.back().hi(), a.hi()) - out.back().lo;
    } else {
      out.push_back(a);
    }
  }
  // Wrap-around: the last arc may reach past the period into the first ones.
  while (out.size() > 1 && out.back().hi() >= out.front().lo + period) {
    out.back().length = std::max(out.back().hi(), out.front().hi() + period) - out.back().lo;
    out.erase(out.begin());
  }
  if (!out.empty() && out.back().length >= period) return {{0.0, period}};
  return out;
}

RegionSpec RegionSpec::whole(const ManifoldModel& m) {
  RegionSpec r;
  switch (m.kind()) {
    case ManifoldKind::Circle1D:
      r = arcs(m, {{0.0, m.volume()}});
      break;
    case ManifoldKind::Sphere2:
      r = cells(m, {{{0.0, kPi}, {0.0, kTwoPi}}});
      break;
    default:
      r = cells(m, {{{0.0, period_x(m)}, {0.0, period_second(m)}}});
      break;
  }
  r.shape_ = Shape::Whole;
  r.measure_ = m.volume();
  return r;
}

RegionSpec RegionSpec::arcs(const ManifoldModel& circle, std::vector<Interval> list) {
  require(circle.kind() == ManifoldKind::Circle1D, "arcs: manifold must be a circle");
  const double period = circle.volume();
  for (auto& a : list) a = normalize_arc(a, period);
  RegionSpec r;
  r.manifold_ = circle;
  r.shape_ = Shape::Arcs;
  r.arcs_ = merge_arcs(std::move(list), period);
  for (const auto& a : r.arcs_) r.measure_ += a.length;
  r.measure_ = std::min(r.measure_, period);
  return r;
}

RegionSpec RegionSpec::cells(const ManifoldModel& m,
                             std::vector<std::pair<Interval, Interval>> list) {
  require(m.dimension() == 2, "cells: manifold must be two-dimensional");
  const bool sphere = m.kind() == ManifoldKind::Sphere2;
  const double p2 = period_second(m);
  for (auto& [a, b] : list) {
    if (sphere) {
      require(a.lo >= -1e-15 && a.hi() <= kPi + 1e-12 && a.length >= 0.0,
              "sphere cell: theta interval must lie in [0, pi]");
      a.lo = std::max(a.lo, 0.0);
      a.length = std::min(a.length, kPi - a.lo);
    } else {
      a = normalize_arc(a, period_x(m));
    }
    b = normalize_arc(b, p2);
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      const bool first = sphere ? (std::min(list[i].first.hi(), list[j].first.hi()) -
                                       std::max(list[i].first.lo, list[j].first.lo) >
                                   1e-12)
                                : arcs_overlap(list[i].first, list[j].first, period_x(m));
      if (first && arcs_overlap(list[i].second, list[j].second, p2)) {
        throw InvalidInput("region cells overlap");
      }
    }
  }
  RegionSpec r;
  r.manifold_ = m;
  r.shape_ = Shape::Cells;
  r.cells_ = std::move(list);
  for (const auto& [a, b] : r.cells_) {
    r.measure_ += sphere ? b.length * (std::cos(a.lo) - std::cos(a.hi())) : a.length * b.length;
  }
  return r;
}

RegionSpec RegionSpec::equatorial_band(const ManifoldModel& sphere, double half_width) {
  require(sphere.kind() == ManifoldKind::Sphere2, "equatorial_band: manifold must be the sphere");
  require(half_width >= 0.0 && half_width <= kPi / 2, "band half-width must lie in [0, pi/2]");
  RegionSpec r = cells(sphere, {{{kPi / 2 - half_width, 2 * half_width}, {0.0, kTwoPi}}});
  r.measure_ = 4.0 * kPi * std::sin(half_width);
  return r;
}

bool RegionSpec::contains(Point p) const {
  if (shape_ == Shape::Whole) return true;
  const Point q = manifold_.canonical(p);
  switch (manifold_.kind()) {
    case ManifoldKind::Circle1D: {
      const double s = manifold_.arc().s_of_x(q[0]);
      return std::any_of(arcs_.begin(), arcs_.end(),
                         [&](const Interval& a) { return in_arc(s, a, manifold_.volume()); });
    }
    case ManifoldKind::Sphere2:
      return std::any_of(cells_.begin(), cells_.end(), [&](const auto& c) {
        return q[0] >= c.first.lo - 1e-13 && q[0] <= c.first.hi() + 1e-13 &&
               in_arc(q[1], c.second, kTwoPi);
      });
    default: {
      const double second = manifold_.kind() == ManifoldKind::WarpedTorus2D
                                ? manifold_.arc().s_of_x(q[1])
                                : q[1];
      return std::any_of(cells_.begin(), cells_.end(), [&](const auto& c) {
        return in_arc(q[0], c.first, period_x(manifold_)) &&
               in_arc(second, c.second, period_second(manifold_));
      });
    }
  }
}

std::string RegionSpec::description() const {
  std::ostringstream os;
  os.precision(10);
  if (shape_ == Shape::Whole) return "whole";
  if (shape_ == Shape::Arcs) {
    os << "arcs";
    for (const auto& a : arcs_) os << " [" << a.lo << "," << a.hi() << "]";
    return os.str();
  }
  os << (manifold_.kind() == ManifoldKind::Sphere2 ? "patches" : "rectangles");
  for (const auto& [a, b] : cells_) {
    os << " [" << a.lo << "," << a.hi() << "]x[" << b.lo << "," << b.hi() << "]";
  }
  return os.str();
}

RegionSpec::Rule RegionSpec::quadrature(double max_frequency) const {
  const double panel =
      max_frequency > 0.0 ? 12.0 / max_frequency : std::numeric_limits<double>::infinity();
  Rule out;
  if (manifold_.kind() == ManifoldKind::Circle1D) {
    for (const auto& a : arcs_) {
      const Rule1D r = panel_rule(a.lo, a.hi(), panel);
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        out.nodes.push_back({manifold_.arc().x_of_s(r.nodes[i]), 0.0});
        out.weights.push_back(r.weights[i]);
      }
    }
    return out;
  }
  const bool sphere = manifold_.kind() == ManifoldKind::Sphere2;
  const bool warped = manifold_.kind() == ManifoldKind::WarpedTorus2D;
  for (const auto& [a, b] : cells_) {
    const Rule1D ra = panel_rule(a.lo, a.hi(), panel);
    const Rule1D rb = panel_rule(b.lo, b.hi(), panel);
    for (std::size_t i = 0; i < ra.nodes.size(); ++i) {
      const double wa = sphere ? ra.weights[i] * std::sin(ra.nodes[i]) : ra.weights[i];
      for (std::size_t j = 0; j < rb.nodes.size(); ++j) {
        const double second = warped ? manifold_.arc().x_of_s(rb.nodes[j]) : rb.nodes[j];
        out.nodes.push_back(manifold_.canonical({ra.nodes[i], second}));
        out.weights.push_back(wa * rb.weights[j]);
      }
    }
  }
  return out;
}

std::vector<Point> RegionSpec::boundary_points() const {
  std::vector<Point> out;
  if (manifold_.kind() == ManifoldKind::Circle1D) {
    for (const auto& a : arcs_) {
      out.push_back({manifold_.arc().x_of_s(a.lo), 0.0});
      out.push_back({manifold_.arc().x_of_s(a.hi()), 0.0});
    }
    return out;
  }
  const bool warped = manifold_.kind() == ManifoldKind::WarpedTorus2D;
  for (const auto& [a, b] : cells_) {
    for (double u : {a.lo, a.lo + 0.5 * a.length, a.hi()}) {
      for (double v : {b.lo, b.lo + 0.5 * b.length, b.hi()}) {
        out.push_back(manifold_.canonical({u, warped ? manifold_.arc().x_of_s(v) : v}));
      }
    }
  }
  return out;
}

RegionSpec neighborhood(const RegionSpec& region, double r) {
  require(r > 0.0, "neighborhood: radius must be positive");
  const ManifoldModel& m = region.manifold();
  require(m.kind() == ManifoldKind::Circle1D, "neighborhood: region must lie on a circle");
  if (region.shape() == RegionSpec::Shape::Whole) return region;
  std::vector<Interval> grown;
  for (const auto& a : region.arc_list()) grown.push_back({a.lo - r, std::min(a.length + 2 * r, m.volume())});
  RegionSpec out = RegionSpec::arcs(m, grown);
  if (out.measure() >= m.volume()) return RegionSpec::whole(m);
  return out;
}

}  // namespace speclab
