#include "speclab/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "speclab/parallel.hpp"
#include "speclab/quadrature.hpp"
#include "speclab/rng.hpp"

namespace speclab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

bool in_arcs(double s, const std::vector<Interval>& arcs, double period) {
  const double tol = 1e-13 * period;
  for (const auto& a : arcs) {
    if (a.length >= period) return true;
    const double u = wrap(s - a.lo, 0.0, period);
    if (u <= a.length + tol || u >= period - tol) return true;
  }
  return false;
}

// Integration sites over a region: arc-length coordinates on circles,
// manifold points in 2-D. Boundary sites carry no weight and only feed the
// supremum.
struct Sites {
  bool arc = false;
  std::vector<double> s;
  std::vector<Point> p;
  std::vector<double> w;
  std::vector<double> boundary_s;
  std::vector<Point> boundary_p;

  std::size_t size() const { return arc ? s.size() : p.size(); }
  std::size_t boundary_size() const { return arc ? boundary_s.size() : boundary_p.size(); }
};

double needed_frequency(const SpectralBasis& basis, const std::vector<std::size_t>& indices) {
  double top = 0.0;
  for (std::size_t j : indices) {
    const auto& e = basis.pair(j);
    top = std::max(top, basis.manifold().kind() == ManifoldKind::Sphere2
                            ? 2.0 * e.labels[0] + 1.0
                            : 2.0 * std::abs(e.lambda));
  }
  return std::max(1.0, top);
}

Sites region_sites(const SpectralBasis& basis, const RegionSpec& region, double frequency) {
  require(region.manifold().kind() == basis.manifold().kind(),
          "region and basis live on different manifolds");
  require(std::abs(region.manifold().volume() - basis.manifold().volume()) <=
              1e-9 * basis.manifold().volume(),
          "region and basis live on different manifolds");
  Sites out;
  const ManifoldModel& m = basis.manifold();
  if (m.kind() == ManifoldKind::Circle1D) {
    out.arc = true;
    const double length = m.volume();
    if (basis.source() == SpectrumSource::Discretized) {
      const std::size_t n = basis.native_grid().size();
      const double ds = length / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double s = ds * static_cast<double>(i);
        if (region.shape() == RegionSpec::Shape::Whole || in_arcs(s, region.arc_list(), length)) {
          out.s.push_back(s);
          out.w.push_back(ds);
        }
      }
      return out;
    }
    for (const auto& a : region.arc_list()) {
      const Rule1D r = panel_rule(a.lo, a.hi(), 12.0 / frequency);
      out.s.insert(out.s.end(), r.nodes.begin(), r.nodes.end());
      out.w.insert(out.w.end(), r.weights.begin(), r.weights.end());
      out.boundary_s.push_back(a.lo);
      out.boundary_s.push_back(a.hi());
    }
    return out;
  }
  RegionSpec::Rule rule = region.quadrature(frequency);
  out.p = std::move(rule.nodes);
  out.w = std::move(rule.weights);
  out.boundary_p = region.boundary_points();
  return out;
}

// Values e_j(site) for j in `indices`, written to out.
void eval_site(const SpectralBasis& basis, const Sites& sites, std::size_t i, bool boundary,
               const std::vector<std::size_t>& indices, std::vector<cplx>& out) {
  out.resize(indices.size());
  if (sites.arc) {
    basis.evaluate_arc(boundary ? sites.boundary_s[i] : sites.s[i], indices, out);
  } else {
    basis.evaluate(boundary ? sites.boundary_p[i] : sites.p[i], indices, out);
  }
}

// Positions of `sub` inside the sorted `all`.
std::vector<std::size_t> positions(const std::vector<std::size_t>& all,
                                   const std::vector<std::size_t>& sub) {
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  for (std::size_t j : sub) {
    out.push_back(static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), j) -
                                           all.begin()));
  }
  return out;
}

struct RegionIntegrals {
  double f_mass = 0.0;     // int_E |f|^2
  double a_integral = 0.0; // int_E A_S
  double a_sup = 0.0;      // max of A_S over sites and boundary
  double measure = 0.0;    // sum of weights
  std::size_t sites = 0;
};

RegionIntegrals integrate_region(const SpectralBasis& basis, const Field& f,
                                 const RegionSpec& region, const SpectralWindow& window) {
  std::vector<std::size_t> all = f.indices();
  all.insert(all.end(), window.indices().begin(), window.indices().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const auto f_pos = positions(all, f.indices());
  const auto w_pos = positions(all, window.indices());

  const Sites sites = region_sites(basis, region, needed_frequency(basis, all));
  const std::size_t n = sites.size();
  std::vector<double> f2(n), a(n);
  parallel_for((n + 255) / 256, [&](std::size_t block) {
    std::vector<cplx> vals;
    for (std::size_t i = block * 256; i < std::min(n, (block + 1) * 256); ++i) {
      eval_site(basis, sites, i, false, all, vals);
      cplx fv = 0.0;
      for (std::size_t k = 0; k < f_pos.size(); ++k) fv += f.coeffs()[k] * vals[f_pos[k]];
      double av = 0.0;
      for (std::size_t k : w_pos) av += std::norm(vals[k]);
      f2[i] = std::norm(fv);
      a[i] = av;
    }
  });
  RegionIntegrals out;
  out.sites = n;
  for (std::size_t i = 0; i < n; ++i) {
    out.f_mass += sites.w[i] * f2[i];
    out.a_integral += sites.w[i] * a[i];
    out.a_sup = std::max(out.a_sup, a[i]);
    out.measure += sites.w[i];
  }
  std::vector<cplx> vals;
  std::vector<std::size_t> widx = window.indices();
  for (std::size_t i = 0; i < sites.boundary_size(); ++i) {
    eval_site(basis, sites, i, true, widx, vals);
    double av = 0.0;
    for (const cplx& v : vals) av += std::norm(v);
    out.a_sup = std::max(out.a_sup, av);
  }
  return out;
}

}  // namespace

// --- windows -----------------------------------------------------------------

SpectralWindow SpectralWindow::from_groups(const SpectralBasis& basis,
                                           std::vector<std::size_t> groups) {
  require(!groups.empty(), "spectral window is empty");
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  SpectralWindow w;
  for (std::size_t g : groups) {
    require(g < basis.groups().size(), "window group id out of range");
    const auto& grp = basis.group(g);
    w.lambdas_.push_back(grp.lambda);
    for (std::size_t j = grp.first; j < grp.first + grp.count; ++j) w.indices_.push_back(j);
  }
  std::sort(w.indices_.begin(), w.indices_.end());
  return w;
}

SpectralWindow SpectralWindow::from_lambdas(const SpectralBasis& basis,
                                            const std::vector<double>& lambdas, double rel_tol) {
  std::vector<std::size_t> groups;
  for (double l : lambdas) groups.push_back(basis.group_of_lambda(l, rel_tol));
  return from_groups(basis, groups);
}

SpectralWindow SpectralWindow::lambda_range(const SpectralBasis& basis, double lo, double hi) {
  std::vector<std::size_t> groups;
  for (std::size_t g = 0; g < basis.groups().size(); ++g) {
    const double l = basis.group(g).lambda;
    if (l >= lo * (1 - 1e-12) - 1e-15 && l <= hi * (1 + 1e-12) + 1e-15) groups.push_back(g);
  }
  if (groups.empty()) {
    throw InvalidInput("no eigenvalues in [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  return from_groups(basis, groups);
}

SpectralWindow SpectralWindow::from_indices(const SpectralBasis& basis,
                                            std::vector<std::size_t> indices) {
  require(!indices.empty(), "spectral window is empty");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  SpectralWindow w;
  w.indices_ = std::move(indices);
  std::vector<std::size_t> seen_groups;
  for (std::size_t j : w.indices_) {
    require(j < basis.size(), "window index out of range");
    const std::size_t g = basis.pair(j).group_id;
    if (seen_groups.empty() || seen_groups.back() != g) {
      seen_groups.push_back(g);
      w.lambdas_.push_back(basis.group(g).lambda);
    }
  }
  for (std::size_t g : seen_groups) {
    const auto& grp = basis.group(g);
    for (std::size_t j = grp.first; j < grp.first + grp.count; ++j) {
      if (!w.contains(j)) w.whole_ = false;
    }
  }
  return w;
}

bool SpectralWindow::contains(std::size_t j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

std::string SpectralWindow::description() const {
  std::ostringstream os;
  os.precision(10);
  os << (whole_ ? "S={" : "I on {");
  for (std::size_t i = 0; i < lambdas_.size(); ++i) os << (i ? "," : "") << lambdas_[i];
  os << "} #=" << indices_.size();
  return os.str();
}

// --- fields ------------------------------------------------------------------

Field Field::from_coefficients(std::vector<std::size_t> indices, std::vector<cplx> coeffs) {
  require(indices.size() == coeffs.size(), "field: index and coefficient counts differ");
  std::vector<std::size_t> order(indices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return indices[a] < indices[b]; });
  Field f;
  for (std::size_t o : order) {
    if (!f.indices_.empty() && f.indices_.back() == indices[o]) {
      f.coeffs_.back() += coeffs[o];
    } else {
      f.indices_.push_back(indices[o]);
      f.coeffs_.push_back(coeffs[o]);
    }
  }
  f.norm2_ = f.coefficient_mass();
  return f;
}

Field Field::projected(std::vector<std::size_t> indices, std::vector<cplx> coeffs, double norm2) {
  Field f = from_coefficients(std::move(indices), std::move(coeffs));
  require(std::isfinite(norm2) && norm2 >= f.norm2_ * (1 - 1e-9),
          "field: norm below its coefficient mass (Bessel)");
  f.norm2_ = std::max(norm2, f.norm2_);
  return f;
}

Field Field::project_on_circle(const SpectralBasis& basis,
                               const std::function<double(double)>& f_of_s,
                               const RegionSpec& support) {
  require(basis.manifold().kind() == ManifoldKind::Circle1D,
          "project_on_circle: basis must live on a circle");
  std::vector<std::size_t> all(basis.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<double> s, w;
  const double length = basis.manifold().volume();
  if (basis.source() == SpectrumSource::Discretized) {
    const Sites st = region_sites(basis, support, 1.0);
    s = st.s;
    w = st.w;
  } else {
    const double freq = needed_frequency(basis, all);
    for (const auto& a : support.arc_list()) {
      const double panel = std::min(12.0 / freq, a.length / 128.0);
      const Rule1D r = panel_rule(a.lo, a.hi(), panel);
      s.insert(s.end(), r.nodes.begin(), r.nodes.end());
      w.insert(w.end(), r.weights.begin(), r.weights.end());
    }
  }
  std::vector<cplx> coeffs(all.size(), 0.0);
  double norm2 = 0.0;
  std::vector<cplx> vals(all.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double fv = f_of_s(wrap(s[i], 0.0, length));
    if (fv == 0.0) continue;
    norm2 += w[i] * fv * fv;
    basis.evaluate_arc(s[i], all, vals);
    for (std::size_t j = 0; j < all.size(); ++j) coeffs[j] += w[i] * fv * std::conj(vals[j]);
  }
  require(norm2 > 0.0, "project_on_circle: function vanishes on its support");
  return projected(std::move(all), std::move(coeffs), norm2);
}

double Field::coefficient_mass() const {
  double acc = 0.0;
  for (const cplx& c : coeffs_) acc += std::norm(c);
  return acc;
}

cplx Field::coefficient(std::size_t j) const {
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), j);
  if (it == indices_.end() || *it != j) return 0.0;
  return coeffs_[static_cast<std::size_t>(it - indices_.begin())];
}

cplx Field::value(const SpectralBasis& basis, Point p) const {
  std::vector<cplx> vals(indices_.size());
  basis.evaluate(p, indices_, vals);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) acc += coeffs_[k] * vals[k];
  return acc;
}

std::vector<cplx> Field::sample(const SpectralBasis& basis, const QuadratureGrid& grid) const {
  std::vector<cplx> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = value(basis, grid.nodes[i]); });
  return out;
}

// --- A_S and levels ----------------------------------------------------------

GridFunction a_s_field(const SpectralBasis& basis, const SpectralWindow& window,
                       const QuadratureGrid& grid) {
  require(window.count() > 0, "a_s_field: empty window");
  for (std::size_t j : window.indices()) require(j < basis.size(), "window index outside basis");
  GridFunction out;
  out.values.resize(grid.size());
  const std::vector<std::size_t>& idx = window.indices();
  parallel_for(grid.size(), [&](std::size_t i) {
    out.values[i] = basis.sum_abs2(grid.nodes[i], idx);
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.integral += grid.weights[i] * out.values[i];
    out.max = std::max(out.max, out.values[i]);
  }
  return out;
}

ConcentrationLevels concentration_levels(const SpectralBasis& basis, const Field& f,
                                         const RegionSpec& region, const SpectralWindow& window) {
  require(f.norm2() > 0.0, "concentration_levels: zero function");
  const RegionIntegrals ri = integrate_region(basis, f, region, window);
  ConcentrationLevels out;
  out.norm2 = f.norm2();
  out.inside_mass = ri.f_mass;
  for (std::size_t k = 0; k < f.indices().size(); ++k) {
    if (window.contains(f.indices()[k])) out.window_mass += std::norm(f.coeffs()[k]);
  }
  out.epsilon = clamp01(1.0 - out.inside_mass / out.norm2);
  out.epsilon_prime = clamp01(1.0 - out.window_mass / out.norm2);
  return out;
}

UncertaintyCertificate certify(const SpectralBasis& basis, const Field& f, const RegionSpec& region,
                               const SpectralWindow& window, double slack) {
  require(f.norm2() > 0.0, "certify: zero function");
  require(window.count() > 0, "certify: empty window");
  const RegionIntegrals ri = integrate_region(basis, f, region, window);
  UncertaintyCertificate c;
  double window_mass = 0.0;
  for (std::size_t k = 0; k < f.indices().size(); ++k) {
    if (window.contains(f.indices()[k])) window_mass += std::norm(f.coeffs()[k]);
  }
  c.epsilon = clamp01(1.0 - ri.f_mass / f.norm2());
  c.epsilon_prime = clamp01(1.0 - window_mass / f.norm2());
  c.level = 1.0 / std::sqrt(1.0 - c.epsilon * c.epsilon);
  c.level_prime = 1.0 / std::sqrt(1.0 - c.epsilon_prime * c.epsilon_prime);
  const bool discrete = basis.source() == SpectrumSource::Discretized;
  // the discrete eigenvectors are orthonormal for the grid measure, so E is
  // measured on that grid too
  c.region_measure = discrete ? ri.measure : region.measure();
  c.volume = basis.manifold().volume();
  c.window_count = window.count();
  c.sup_a_s = ri.a_sup;
  c.integral_a_s = ri.a_integral;
  c.defect = ri.a_sup / (static_cast<double>(c.window_count) / c.volume);
  c.rhs_classical = c.region_measure / c.volume * static_cast<double>(c.window_count);
  c.rhs_quant = c.rhs_classical * c.defect;
  c.sample_count = ri.sites;
  c.manifold = to_string(basis.manifold().kind());
  c.basis = basis.description();
  c.region = region.description();
  c.window = window.description();
  const double gap = 1.0 - c.epsilon - c.epsilon_prime;
  if (!(gap > 1e-12)) {
    c.vacuous = true;
    return c;
  }
  c.lhs = gap * gap;
  auto le = [slack](double a, double b) { return a <= b + slack * std::max(1.0, std::abs(b)); };
  c.holds_chain = le(c.lhs, c.integral_a_s) && le(c.integral_a_s, c.region_measure * c.sup_a_s);
  c.holds_quant = le(c.lhs, c.rhs_quant);
  c.holds_classical = le(c.lhs, c.rhs_classical);
  return c;
}

// --- Fourier ratio -----------------------------------------------------------

double fourier_ratio(const SpectralBasis& basis, const Field& f, double R) {
  require(R >= 1.0, "fourier_ratio: R must be >= 1");
  require(f.norm2() > 0.0, "fourier_ratio: zero function");
  const double cut = R * (1.0 - 1e-12);
  const bool in_span = f.norm2() <= f.coefficient_mass() * (1.0 + 1e-12);
  if (in_span) {
    double tail = 0.0;
    for (std::size_t k = 0; k < f.indices().size(); ++k) {
      if (std::abs(basis.pair(f.indices()[k]).lambda) >= cut) tail += std::norm(f.coeffs()[k]);
    }
    return std::sqrt(clamp01(tail / f.norm2()));
  }
  // projected from outside the span: every lambda < R must be resolved
  require(basis.lambda_max() >= R, "fourier_ratio: basis cutoff " + fmt(basis.lambda_max()) +
                                       " is below R=" + fmt(R));
  double low = 0.0;
  for (std::size_t k = 0; k < f.indices().size(); ++k) {
    if (std::abs(basis.pair(f.indices()[k]).lambda) < cut) low += std::norm(f.coeffs()[k]);
  }
  return std::sqrt(clamp01(1.0 - low / f.norm2()));
}

std::function<double(double)> smooth_bump(double center, double half_width, double length) {
  require(half_width > 0.0 && 2.0 * half_width <= length, "bump width must fit on the circle");
  return [=](double s) {
    const double u = wrap(s - center, -0.5 * length, length) / half_width;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
}

FourierRatioCheck fr_support_check(const SpectralBasis& circle,
                                     const std::function<double(double)>& f_of_s,
                                     const RegionSpec& region, double R) {
  require(circle.manifold().kind() == ManifoldKind::Circle1D,
          "fr_support_check: manifold must be a circle");
  require(R >= 1.0, "fr_support_check: R must be >= 1");
  require(region.shape() != RegionSpec::Shape::Cells, "fr_support_check: region must be arcs");
  FourierRatioCheck out;
  out.R = R;
  const double length = circle.manifold().volume();
  // mass off the support, on the complementary arcs
  std::vector<Interval> arcs = region.arc_list();
  double outside = 0.0, inside = 0.0;
  if (region.shape() != RegionSpec::Shape::Whole) {
    std::sort(arcs.begin(), arcs.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const double lo = arcs[i].hi();
      const double hi = i + 1 < arcs.size() ? arcs[i + 1].lo : arcs[0].lo + length;
      if (hi - lo <= 0.0) continue;
      const Rule1D r = panel_rule(lo, hi, (hi - lo) / 64.0);
      for (std::size_t k = 0; k < r.nodes.size(); ++k) {
        const double v = f_of_s(wrap(r.nodes[k], 0.0, length));
        outside += r.weights[k] * v * v;
      }
    }
  }
  const Field f = Field::project_on_circle(circle, f_of_s, region);
  inside = f.norm2();
  out.outside_mass = outside / (inside + outside);
  if (out.outside_mass >= 1e-10) {
    throw InvalidInput("fr_support_check: f is not supported in E (outside mass fraction " +
                       fmt(out.outside_mass) + ")");
  }
  out.fourier_ratio = fourier_ratio(circle, f, R);
  out.neighborhood_measure = neighborhood(region, 1.0 / R).measure();
  out.ratio = out.fourier_ratio * std::sqrt(R * out.neighborhood_measure);
  return out;
}

std::vector<FrSweepRow> fr_bump_sweep(int k_min, int k_max, bool unit_scale) {
  require(k_min >= 0 && k_max >= k_min && k_max <= 12, "fr sweep: need 0 <= k_min <= k_max <= 12");
  const ManifoldModel circle = ManifoldModel::circle_of_length(kTwoPi);
  const int n_max = (1 << k_max) + 2;
  const SpectralBasis basis = circle_basis(circle, n_max);
  std::vector<FrSweepRow> rows(static_cast<std::size_t>(k_max - k_min + 1));
  parallel_for(rows.size(), [&](std::size_t i) {
    const int k = k_min + static_cast<int>(i);
    const double width = std::ldexp(1.0, -k);
    const double center = kPi;
    const RegionSpec e = RegionSpec::arcs(circle, {{center - 0.5 * width, width}});
    const double R = unit_scale ? 1.0 : std::ldexp(1.0, k);
    rows[i] = {k, width,
               fr_support_check(basis, smooth_bump(center, 0.5 * width, kTwoPi), e, R)};
  });
  return rows;
}

// --- randomized suite --------------------------------------------------------

namespace {

SpectralBasis suite_basis(const std::string& name, const SuiteOptions& o) {
  if (name == "circle") {
    return circle_basis(ManifoldModel::circle(MetricProfile1D::parse(o.circle_metric)), 12);
  }
  if (name == "torus2-flat") return torus2_basis(ManifoldModel::flat_torus(), 6.0);
  if (name == "torus2-warped") {
    return torus2_basis(ManifoldModel::warped_torus(MetricProfile1D::parse(o.warped_metric)), 6.0);
  }
  if (name == "sphere") return sphere_basis(8);
  throw InvalidInput("unknown manifold '" + name + "'");
}

RegionSpec random_region(const ManifoldModel& m, CounterRng& rng) {
  switch (m.kind()) {
    case ManifoldKind::Circle1D: {
      const double length = m.volume();
      const auto pieces = rng.integer(1, 3);
      std::vector<Interval> arcs;
      for (long long i = 0; i < pieces; ++i) {
        arcs.push_back({rng.uniform(0.0, length),
                        rng.uniform(0.15, 0.9) * length / static_cast<double>(pieces)});
      }
      return RegionSpec::arcs(m, arcs);
    }
    case ManifoldKind::Sphere2: {
      if (rng.uniform() < 0.4) {
        const double half = rng.uniform(0.1, 1.0) * kPi / 2;
        return RegionSpec::equatorial_band(m, half);
      }
      const auto pieces = rng.integer(1, 2);
      std::vector<std::pair<Interval, Interval>> cells;
      for (long long i = 0; i < pieces; ++i) {
        const double slot = kPi / static_cast<double>(pieces);
        const double len = rng.uniform(0.4, 1.0) * slot;
        const double lo = slot * static_cast<double>(i) + rng.uniform(0.0, slot - len);
        cells.push_back({{lo, len}, {rng.uniform(0.0, kTwoPi), rng.uniform(0.4, 1.0) * kTwoPi}});
      }
      return RegionSpec::cells(m, cells);
    }
    default: {
      const double px = m.side_x();
      const double py =
          m.kind() == ManifoldKind::WarpedTorus2D ? m.arc().length() : m.side_y();
      const auto pieces = rng.integer(1, 2);
      std::vector<std::pair<Interval, Interval>> cells;
      for (long long i = 0; i < pieces; ++i) {
        const double slot = px / static_cast<double>(pieces);
        const double len = rng.uniform(0.4, 1.0) * slot;
        const double lo = slot * static_cast<double>(i) + rng.uniform(0.0, slot - len);
        cells.push_back({{lo, len}, {rng.uniform(0.0, py), rng.uniform(0.4, 1.0) * py}});
      }
      return RegionSpec::cells(m, cells);
    }
  }
}

SuiteDraw one_draw(const SpectralBasis& basis, std::uint64_t seed, std::uint64_t stream,
                   std::size_t draw) {
  CounterRng rng(seed, stream);
  const std::size_t groups = basis.groups().size();
  std::vector<std::size_t> window_idx;
  if (rng.uniform() < 0.25) {
    // arbitrary index set: part of one or two eigenspaces
    const auto picks = rng.integer(1, 2);
    for (long long p = 0; p < picks; ++p) {
      const auto& g = basis.group(static_cast<std::size_t>(rng.integer(0, groups - 1)));
      const auto take = rng.integer(1, static_cast<long long>(g.count));
      for (long long t = 0; t < take; ++t) {
        window_idx.push_back(g.first + static_cast<std::size_t>(rng.integer(0, g.count - 1)));
      }
    }
  } else {
    const auto picks = rng.integer(1, 3);
    for (long long p = 0; p < picks; ++p) {
      const auto& g = basis.group(static_cast<std::size_t>(rng.integer(0, groups - 1)));
      for (std::size_t j = g.first; j < g.first + g.count; ++j) window_idx.push_back(j);
    }
  }
  const SpectralWindow window = SpectralWindow::from_indices(basis, window_idx);
  std::vector<std::size_t> idx;
  std::vector<cplx> coef;
  for (std::size_t j : window.indices()) {
    idx.push_back(j);
    coef.emplace_back(rng.normal(), rng.normal());
  }
  if (rng.uniform() < 0.6) {
    const double scale = rng.uniform(0.0, 0.4);
    const auto leaks = rng.integer(1, 3);
    for (long long l = 0; l < leaks; ++l) {
      idx.push_back(static_cast<std::size_t>(rng.integer(0, basis.size() - 1)));
      coef.emplace_back(scale * rng.normal(), scale * rng.normal());
    }
  }
  const Field f = Field::from_coefficients(idx, coef);
  const RegionSpec region = random_region(basis.manifold(), rng);
  SuiteDraw d;
  d.draw = draw;
  d.fingerprint = CounterRng::mix(seed ^ CounterRng::mix(stream));
  d.certificate = certify(basis, f, region, window);
  return d;
}

}  // namespace

SuiteResult run_uncertainty_suite(const SuiteOptions& options) {
  require(options.valid_per_manifold > 0, "suite: valid_per_manifold must be positive");
  SuiteResult out;
  out.min_margin = std::numeric_limits<double>::infinity();
  constexpr std::size_t kBatch = 32;
  constexpr std::size_t kMaxDraws = 20000;
  for (std::size_t mi = 0; mi < options.manifolds.size(); ++mi) {
    const SpectralBasis basis = suite_basis(options.manifolds[mi], options);
    std::size_t valid = 0;
    for (std::size_t start = 0; valid < options.valid_per_manifold; start += kBatch) {
      if (start >= kMaxDraws) {
        throw NumericalFailure("suite: too many vacuous draws on " + options.manifolds[mi]);
      }
      std::vector<SuiteDraw> batch(kBatch);
      parallel_for(kBatch, [&](std::size_t b) {
        const std::size_t draw = start + b;
        batch[b] = one_draw(basis, options.seed, (std::uint64_t(mi) << 32) | draw, draw);
      });
      for (auto& d : batch) {
        if (valid >= options.valid_per_manifold) break;
        const auto& c = d.certificate;
        if (c.vacuous) {
          ++out.vacuous;
        } else {
          ++valid;
          ++out.valid;
          if (!c.holds_quant || !c.holds_chain) ++out.violations;
          out.min_margin = std::min(out.min_margin, c.rhs_quant - c.lhs);
        }
        out.draws.push_back(std::move(d));
      }
    }
  }
  return out;
}

}  // namespace speclab
