#include "speclab/restriction.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <sstream>

#include "speclab/parallel.hpp"
#include "speclab/quadrature.hpp"

namespace speclab {

namespace {

constexpr int kCoarseSamples = 256;
constexpr int kCurvatureSamples = 4096;

Point min_image(Point d) { return {wrap(d[0], -kPi, kTwoPi), wrap(d[1], -kPi, kTwoPi)}; }

double dist2(Point a, Point b) {
  const Point d = min_image({a[0] - b[0], a[1] - b[1]});
  return d[0] * d[0] + d[1] * d[1];
}

bool is_sum_of_two_squares(long long k) {
  for (long long a = 0; 2 * a * a <= k; ++a) {
    const long long rest = k - a * a;
    auto b = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (b * b == rest) return true;
  }
  return false;
}

std::size_t distinct_in(double lo, double hi) {
  if (hi < lo) return 0;
  const auto k_lo = static_cast<long long>(std::ceil(std::max(0.0, lo) * std::max(0.0, lo) - 1e-9));
  const auto k_hi = static_cast<long long>(std::floor(hi * hi + 1e-9));
  std::size_t count = 0;
  for (long long k = k_lo; k <= k_hi; ++k) count += is_sum_of_two_squares(k) ? 1 : 0;
  return count;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den > 0 ? (n * sxy - sx * sy) / den : 0.0;
}

double conjugate(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return INFINITY;
  return p / (p - 1.0);
}

}  // namespace

// --- curves ------------------------------------------------------------------

CurveSpec::CurveSpec(Map gamma, Map d1, Map d2, double period, std::string description)
    : gamma_(std::move(gamma)), d1_(std::move(d1)), d2_(std::move(d2)), period_(period),
      description_(std::move(description)) {
  require(period_ > 0.0, "curve period must be positive");
  const Point a = gamma_(0.0), b = gamma_(period_);
  require(std::hypot(a[0] - b[0], a[1] - b[1]) < 1e-12, "curve is not closed");
  const Rule1D rule = panel_rule(0.0, period_, period_ / 64.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) length_ += rule.weights[i] * speed(rule.nodes[i]);
  min_curvature_ = INFINITY;
  max_curvature_ = 0.0;
  for (int i = 0; i < kCurvatureSamples; ++i) {
    const double k = curvature(period_ * i / kCurvatureSamples);
    min_curvature_ = std::min(min_curvature_, k);
    max_curvature_ = std::max(max_curvature_, k);
  }
  for (int i = 0; i < kCoarseSamples; ++i) coarse_.push_back(point(period_ * i / kCoarseSamples));
}

CurveSpec CurveSpec::circle(Point c, double radius) {
  require(radius > 0.0 && radius < kPi, "circle radius must lie in (0, pi)");
  std::ostringstream os;
  os.precision(10);
  os << "circle(center=(" << c[0] << "," << c[1] << "),radius=" << radius << ")";
  return CurveSpec(
      [=](double t) { return Point{c[0] + radius * std::cos(t), c[1] + radius * std::sin(t)}; },
      [=](double t) { return Point{-radius * std::sin(t), radius * std::cos(t)}; },
      [=](double t) { return Point{-radius * std::cos(t), -radius * std::sin(t)}; }, kTwoPi,
      os.str());
}

CurveSpec CurveSpec::ellipse(Point c, double a, double b) {
  require(a > 0.0 && b > 0.0 && a < kPi && b < kPi, "ellipse semi-axes must lie in (0, pi)");
  std::ostringstream os;
  os.precision(10);
  os << "ellipse(center=(" << c[0] << "," << c[1] << "),a=" << a << ",b=" << b << ")";
  return CurveSpec([=](double t) { return Point{c[0] + a * std::cos(t), c[1] + b * std::sin(t)}; },
                   [=](double t) { return Point{-a * std::sin(t), b * std::cos(t)}; },
                   [=](double t) { return Point{-a * std::cos(t), -b * std::sin(t)}; }, kTwoPi,
                   os.str());
}

CurveSpec CurveSpec::default_curve() { return circle({kPi, kPi}, 0.25); }

Point CurveSpec::point(double t) const {
  const Point p = gamma_(t);
  return {p[0], p[1] + offset_};
}

double CurveSpec::speed(double t) const {
  const Point v = d1_(t);
  return std::hypot(v[0], v[1]);
}

double CurveSpec::curvature(double t) const {
  const Point v = d1_(t), a = d2_(t);
  const double s = std::hypot(v[0], v[1]);
  return std::abs(v[0] * a[1] - v[1] * a[0]) / (s * s * s);
}

CurveSpec CurveSpec::translated(double dy) const {
  CurveSpec c = *this;
  c.offset_ += dy;
  for (auto& p : c.coarse_) p[1] += dy;
  std::ostringstream os;
  os.precision(10);
  os << description_ << "+(0," << dy << ")";
  c.description_ = os.str();
  return c;
}

double CurveSpec::distance(Point p) const {
  std::size_t best = 0;
  double best_d2 = INFINITY;
  for (std::size_t i = 0; i < coarse_.size(); ++i) {
    const double d = dist2(coarse_[i], p);
    if (d < best_d2) {
      best_d2 = d;
      best = i;
    }
  }
  const double h = period_ / kCoarseSamples;
  const double t0 = h * static_cast<double>(best);
  const auto res = boost::math::tools::brent_find_minima(
      [&](double t) { return dist2(point(t), p); }, t0 - h, t0 + h, 40);
  return std::sqrt(std::min(best_d2, res.second));
}

// --- exponents ---------------------------------------------------------------

DeltaExponent delta_exponent(int k, double p_tilde, int n) {
  require(n >= 2, "delta(k, p): n must be >= 2");
  require(k >= 1 && k <= n - 1, "delta(k, p): need 1 <= k <= n-1");
  require(p_tilde >= 2.0, "delta(k, p): need p >= 2");
  const double inv = std::isinf(p_tilde) ? 0.0 : 1.0 / p_tilde;
  DeltaExponent d;
  if (k == n - 1) {
    const double crit = 2.0 * n / (n - 1.0);
    if (p_tilde <= crit) {
      d.value = (n - 1) / 4.0 - (n - 2) * inv / 2.0;
      d.branch = 1;
    } else {
      d.value = (n - 1) / 2.0 - (n - 1) * inv;
      d.branch = 2;
    }
  } else {
    d.value = (n - 1) / 2.0 - k * inv;
    d.branch = 3;
  }
  d.log_loss = (k == n - 2 && p_tilde == 2.0);
  return d;
}

double log_factor_power(int k, double p, double q, int n) {
  require(p >= 1.0 && q >= 2.0, "need p >= 1 and q >= 2");
  const double pq = std::isinf(p) || std::isinf(q) ? INFINITY : p * q;
  const bool a = (k == n - 2 && pq == 2.0);
  const bool b = (k == n - 2 && q == 2.0);
  return 0.5 * ((a ? 1 : 0) + (b ? 1 : 0));
}

// --- restriction norms -------------------------------------------------------

double restriction_norm(const std::function<cplx(Point)>& e, const CurveSpec& curve, double y,
                        double q) {
  require(q >= 1.0, "restriction norm needs q >= 1");
  const CurveSpec c = y == 0.0 ? curve : curve.translated(y);
  if (std::isinf(q)) {
    constexpr int kSamples = 8192;
    const double h = c.period() / kSamples;
    double best = -1.0;
    int arg = 0;
    for (int i = 0; i < kSamples; ++i) {
      const double v = std::abs(e(c.point(h * i)));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    const auto res = boost::math::tools::brent_find_minima(
        [&](double t) { return -std::abs(e(c.point(t))); }, h * (arg - 1), h * (arg + 1), 50);
    return std::max(best, -res.second);
  }
  auto integral = [&](int panels) {
    const Rule1D r = panel_rule(0.0, c.period(), c.period() / panels);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      acc += r.weights[i] * std::pow(std::abs(e(c.point(r.nodes[i]))), q) * c.speed(r.nodes[i]);
    }
    return acc;
  };
  int panels = 16;
  double prev = integral(panels);
  while (true) {
    panels *= 2;
    const double next = integral(panels);
    if (std::abs(next - prev) <= 1e-11 * std::abs(next) + 1e-300) return std::pow(next, 1.0 / q);
    if (panels >= 1 << 14) {
      throw NumericalFailure("restriction quadrature did not converge on " + c.description());
    }
    prev = next;
  }
}

std::function<cplx(Point)> torus_real_eigenfunction(int m, int n, bool use_sin) {
  if (m == 0 && n == 0) {
    return [](Point) { return cplx(1.0 / kTwoPi, 0.0); };
  }
  const double c = 1.0 / (kPi * std::sqrt(2.0));
  if (use_sin) return [=](Point p) { return cplx(c * std::sin(m * p[0] + n * p[1]), 0.0); };
  return [=](Point p) { return cplx(c * std::cos(m * p[0] + n * p[1]), 0.0); };
}

// --- tubes -------------------------------------------------------------------

double tube_measure(const CurveSpec& curve, double r) {
  require(r > 0.0, "tube radius must be positive");
  if (r > curve.injectivity_bound() * (1 + 1e-12)) {
    throw InvalidInput("tube radius " + std::to_string(r) + " exceeds the injectivity bound " +
                       std::to_string(curve.injectivity_bound()) + " (self-overlapping tube)");
  }
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (int i = 0; i < 1024; ++i) {
    const Point p = curve.point(curve.period() * i / 1024.0);
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const double pad = r + 0.01 * (x1 - x0 + y1 - y0) + 1e-3;
  x0 -= pad;
  y0 -= pad;
  const double side = std::max(x1 + pad - x0, y1 + pad - y0);
  require(side < kTwoPi, "curve and tube must fit inside one fundamental domain");
  const double h_min = r / 64.0;

  // coarse level in parallel, then depth-first refinement per root cell
  constexpr int kRoots = 32;
  const double s0 = side / kRoots;
  std::vector<double> area(kRoots * kRoots, 0.0);
  parallel_for(area.size(), [&](std::size_t idx) {
    struct Cell {
      double x, y, s;
    };
    std::vector<Cell> stack{{x0 + s0 * static_cast<double>(idx % kRoots),
                             y0 + s0 * static_cast<double>(idx / kRoots), s0}};
    double acc = 0.0;
    while (!stack.empty()) {
      const Cell c = stack.back();
      stack.pop_back();
      const double d = curve.distance({c.x + 0.5 * c.s, c.y + 0.5 * c.s});
      const double half_diag = c.s * std::sqrt(0.5);
      if (d + half_diag <= r) {
        acc += c.s * c.s;
      } else if (d - half_diag > r) {
        continue;
      } else if (c.s <= h_min) {
        acc += c.s * c.s * std::clamp(0.5 + (r - d) / c.s, 0.0, 1.0);
      } else {
        const double hs = 0.5 * c.s;
        stack.push_back({c.x, c.y, hs});
        stack.push_back({c.x + hs, c.y, hs});
        stack.push_back({c.x, c.y + hs, hs});
        stack.push_back({c.x + hs, c.y + hs, hs});
      }
    }
    area[idx] = acc;
  });
  double total = 0.0;
  for (double a : area) total += a;
  return total;
}

// --- certificates ------------------------------------------------------------

std::vector<double> torus_distinct_eigenvalues(double lo, double hi) {
  require(lo >= 0.0 && hi >= lo, "need 0 <= lo <= hi");
  std::vector<double> out;
  const auto k_lo = static_cast<long long>(std::ceil(lo * lo - 1e-9));
  const auto k_hi = static_cast<long long>(std::floor(hi * hi + 1e-9));
  for (long long k = k_lo; k <= k_hi; ++k) {
    if (is_sum_of_two_squares(k)) out.push_back(std::sqrt(static_cast<double>(k)));
  }
  return out;
}

TubularReport tubular_certificate(double lambda, double R, double tube, const TubularOptions& o) {
  require(R >= 1.0, "R must be >= 1");
  require(lambda >= R, "need R <= lambda");
  require(tube > 0.0, "tube measure must be positive");
  TubularReport t;
  t.mode = o.mode;
  t.lambda = lambda;
  t.R = R;
  t.tube_measure = tube;
  t.A = o.A > 0.0 ? o.A : std::sqrt(R);
  const int n = t.n, k = t.k;
  if (o.mode == "stability") {
    t.p = INFINITY;
    t.q = 2.0;
    t.r = 3.0;
    t.window_lo = lambda - 1.0 / lambda;
    t.window_hi = lambda + 1.0 / lambda;
    t.window_count = distinct_in(t.window_lo, t.window_hi);
    if (t.window_count == 0) {
      t.vacuous = true;
      return t;
    }
    t.lhs = std::sqrt(static_cast<double>(t.window_count) * tube);
    t.rhs = std::pow(R, (n - k) / 4.0) / std::pow(t.A, 1.5);
    t.ratio = t.lhs / t.rhs;
    return t;
  }
  require(o.mode == "unit" || o.mode == "summation",
          "tubular mode must be unit, summation or stability");
  require(o.p >= 1.0 && o.q >= 2.0 && o.r > 1.0, "need p >= 1, q >= 2, r > 1");
  t.p = o.p;
  t.q = o.q;
  t.r = o.r;
  const bool unit = o.mode == "unit";
  t.window_lo = unit ? lambda : 0.0;
  t.window_hi = unit ? lambda + 1.0 : lambda;
  t.window_count = distinct_in(t.window_lo, t.window_hi);
  if (t.window_count == 0) {
    t.vacuous = true;
    return t;
  }
  const double pq = std::isinf(o.p) || std::isinf(o.q) ? INFINITY : o.p * o.q;
  t.delta_pq = delta_exponent(k, pq, n).value;
  t.delta_q = delta_exponent(k, o.q, n).value;
  t.log_power = log_factor_power(k, o.p, o.q, n);
  const double inv_p = std::isinf(o.p) ? 0.0 : 1.0 / o.p;
  const double inv_q = std::isinf(o.q) ? 0.0 : 1.0 / o.q;
  const double pc = conjugate(o.p);
  const double tube_exp = std::isinf(pc) ? 0.0 : inv_q / pc;
  t.lhs = std::pow(static_cast<double>(t.window_count), 1.0 / (o.r - 1.0)) * std::pow(tube, tube_exp);
  const double lam_exp = unit ? t.delta_pq + t.delta_q / (o.r - 1.0)
                              : t.delta_pq + (t.delta_q + o.r) / (o.r - 1.0);
  const double B = std::pow(std::log(lambda), t.log_power);
  t.rhs = std::pow(R, (n - k) * inv_q * (inv_p + 1.0 / (o.r - 1.0))) /
          (std::pow(t.A, o.r / (o.r - 1.0)) * std::pow(lambda, lam_exp) * B);
  t.ratio = t.lhs / t.rhs;
  return t;
}

TubularSweep tubular_sweep(const CurveSpec& curve, const std::vector<double>& Rs, double lo,
                           double hi, const TubularOptions& o) {
  require(!Rs.empty(), "tubular sweep needs at least one R");
  const std::vector<double> lambdas = torus_distinct_eigenvalues(lo, hi);
  require(!lambdas.empty(), "no torus eigenvalues in the sweep range");
  std::vector<double> tubes(Rs.size());
  for (std::size_t i = 0; i < Rs.size(); ++i) tubes[i] = tube_measure(curve, 1.0 / Rs[i]);
  TubularSweep s;
  s.min_ratio = INFINITY;
  s.max_ratio = 0.0;
  s.growth_exponent = -INFINITY;
  for (std::size_t i = 0; i < Rs.size(); ++i) {
    std::vector<double> lx, ly;
    for (double lam : lambdas) {
      if (lam < Rs[i]) {
        ++s.skipped;
        continue;
      }
      TubularReport t = tubular_certificate(lam, Rs[i], tubes[i], o);
      if (!t.vacuous) {
        s.min_ratio = std::min(s.min_ratio, t.ratio);
        s.max_ratio = std::max(s.max_ratio, t.ratio);
        lx.push_back(std::log(lam));
        ly.push_back(std::log(t.ratio));
      }
      s.reports.push_back(std::move(t));
    }
    if (lx.size() >= 2) s.growth_exponent = std::max(s.growth_exponent, slope(lx, ly));
  }
  return s;
}

BrScan br_ratio_scan(const CurveSpec& curve, double lo, double hi, double R, int offsets) {
  require(lo > 0.0 && hi >= lo, "need 0 < lo <= hi");
  require(R >= 1.0 && offsets >= 1, "need R >= 1 and at least one offset");
  require(curve.curvature_ok(), "curve curvature must not vanish");
  std::vector<std::pair<int, int>> lattice;
  const int mmax = static_cast<int>(std::ceil(hi));
  for (int m = 0; m <= mmax; ++m) {
    for (int n = -mmax; n <= mmax; ++n) {
      if (m == 0 && n <= 0) continue;
      const double l2 = static_cast<double>(m) * m + static_cast<double>(n) * n;
      if (l2 >= lo * lo - 1e-9 && l2 <= hi * hi + 1e-9) lattice.emplace_back(m, n);
    }
  }
  require(!lattice.empty(), "no lattice eigenvalues in the scan range");
  std::vector<double> ys{0.0};
  for (int i = 0; i < offsets; ++i) {
    ys.push_back(offsets == 1 ? 1.0 / R : -1.0 / R + 2.0 * i / (R * (offsets - 1)));
  }
  std::vector<CurveSpec> curves;
  for (double y : ys) curves.push_back(y == 0.0 ? curve : curve.translated(y));
  const std::size_t fns = 2 * lattice.size();
  std::vector<double> ratio(fns * ys.size());
  parallel_for(fns, [&](std::size_t f) {
    const auto [m, n] = lattice[f / 2];
    const auto e = torus_real_eigenfunction(m, n, f % 2 == 1);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      ratio[f * ys.size() + k] = restriction_norm(e, curves[k], 0.0, 2.0);
    }
  });
  BrScan s;
  s.functions = fns;
  s.offsets = ys.size() - 1;
  s.min_ratio_center = s.min_ratio = INFINITY;
  for (std::size_t f = 0; f < fns; ++f) {
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const double v = ratio[f * ys.size() + k];
      if (k == 0) {
        s.min_ratio_center = std::min(s.min_ratio_center, v);
        s.max_ratio_center = std::max(s.max_ratio_center, v);
      }
      s.min_ratio = std::min(s.min_ratio, v);
      s.max_ratio = std::max(s.max_ratio, v);
    }
  }
  s.widening = (s.max_ratio / s.min_ratio) / (s.max_ratio_center / s.min_ratio_center);
  return s;
}

HolderCheck holder_chain_check(const std::function<cplx(Point)>& f, const CurveSpec& curve,
                               double R, double p, double q) {
  require(R >= 1.0 && p >= 1.0 && q >= 1.0 && std::isfinite(q), "need R, p >= 1, finite q >= 1");
  const Rule1D rule = panel_rule(-1.0 / R, 1.0 / R, 2.0 / R, 32);
  const double pq = std::isinf(p) ? INFINITY : p * q;
  const double pc = conjugate(p);
  HolderCheck h;
  double sup_len = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const CurveSpec c = curve.translated(rule.nodes[i]);
    h.lhs += rule.weights[i] * std::pow(restriction_norm(f, c, 0.0, q), q);
    tail += rule.weights[i] * std::pow(restriction_norm(f, c, 0.0, pq), q);
    sup_len = std::max(sup_len, c.length());
  }
  h.rhs = (std::isinf(pc) ? 1.0 : std::pow(sup_len, 1.0 / pc)) * tail;
  h.holds = h.lhs <= h.rhs * (1 + 1e-9);
  return h;
}

}  // namespace speclab
