#include "speclab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "speclab/expression.hpp"
#include "speclab/rng.hpp"

namespace speclab {

namespace {

constexpr int kSphereMaxDegree = 128;
constexpr double kTorusPairBudget = 4.0e6;

// Normalized associated Legendre factors ybar[l][m] (m >= 0) such that
// Y_{l,m} = ybar_{l,|m|}(theta) e^{i m phi} is orthonormal on the sphere.
// Triangular storage: index l(l+1)/2 + m.
void legendre_table(int lmax, double theta, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>((lmax + 1) * (lmax + 2) / 2), 0.0);
  const double c = std::cos(theta), s = std::sin(theta);
  auto at = [&](int l, int m) -> double& { return out[l * (l + 1) / 2 + m]; };
  double diag = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) diag *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    at(m, m) = diag;
    if (m + 1 <= lmax) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * c * diag;
    for (int l = m + 2; l <= lmax; ++l) {
      const double l2 = double(l) * l, m2 = double(m) * m, lm1 = l - 1.0;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      const double b = std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
      at(l, m) = a * (c * at(l - 1, m) - b * at(l - 2, m));
    }
  }
}

// Tridiagonal LU with partial pivoting (the dgttrf/dgtts2 scheme) for the
// shifted solves of inverse iteration; tiny pivots are replaced by `floor`.
class ShiftedTridiagonal {
 public:
  ShiftedTridiagonal(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, double shift,
                     double floor)
      : n_(diag.size()), dl_(sub), d_(diag.array() - shift), du_(sub),
        du2_(Eigen::VectorXd::Zero(std::max<Eigen::Index>(n_ - 2, 0))), swap_(n_, false) {
    for (Eigen::Index i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (std::abs(d_[i]) < floor) d_[i] = std::copysign(floor, d_[i] == 0 ? 1.0 : d_[i]);
        const double f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double t = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = t - f * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
        swap_[i] = true;
      }
    }
    if (std::abs(d_[n_ - 1]) < floor) {
      d_[n_ - 1] = std::copysign(floor, d_[n_ - 1] == 0 ? 1.0 : d_[n_ - 1]);
    }
  }

  void solve(Eigen::VectorXd& b) const {
    for (Eigen::Index i = 0; i + 1 < n_; ++i) {
      if (!swap_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double t = b[i];
        b[i] = b[i + 1];
        b[i + 1] = t - dl_[i] * b[i];
      }
    }
    for (Eigen::Index i = n_ - 1; i >= 0; --i) {
      double v = b[i];
      if (i + 1 < n_) v -= du_[i] * b[i + 1];
      if (i + 2 < n_) v -= du2_[i] * b[i + 2];
      b[i] = v / d_[i];
    }
  }

 private:
  Eigen::Index n_;
  Eigen::VectorXd dl_, d_, du_, du2_;
  std::vector<bool> swap_;
};

// Number of eigenvalues of the symmetric tridiagonal (d, e) below x.
Eigen::Index sturm_count(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x,
                         double pivmin) {
  Eigen::Index count = 0;
  double q = d[0] - x;
  for (Eigen::Index i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
    if (i + 1 == d.size()) break;
    q = d[i + 1] - x - e[i] * e[i] / q;
  }
  return count;
}

// k smallest eigenvalues by Sturm-sequence bisection (the dstebz scheme).
std::vector<double> lowest_tridiagonal_eigenvalues(const Eigen::VectorXd& d,
                                                   const Eigen::VectorXd& e, int k,
                                                   double tnorm) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, tnorm * tnorm);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < d.size()) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double pad = 2.0 * eps * tnorm + pivmin;
  lo -= pad;
  hi += pad;
  std::vector<double> out(k);
  for (int j = 0; j < k; ++j) {
    double a = j > 0 ? out[j - 1] - pad : lo, b = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (b - a <= 2.0 * eps * std::max(std::abs(a), std::abs(b)) + pivmin || mid == a ||
          mid == b) {
        break;
      }
      if (sturm_count(d, e, mid, pivmin) > j) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out[j] = 0.5 * (a + b);
  }
  return out;
}

// k lowest eigenvectors of a dense symmetric matrix: Householder reduction to
// tridiagonal form, bisection eigenvalues, inverse iteration for the wanted
// vectors (reorthogonalized inside clusters), then back-transformation.
Eigen::MatrixXd lowest_eigenvectors(const Eigen::MatrixXd& a, int k) {
  const Eigen::Index n = a.rows();
  Eigen::Tridiagonalization<Eigen::MatrixXd> tri(a);
  const Eigen::VectorXd diag = tri.diagonal();
  const Eigen::VectorXd sub = tri.subDiagonal();
  double tnorm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(sub[i - 1]);
    if (i + 1 < n) row += std::abs(sub[i]);
    tnorm = std::max(tnorm, row);
  }
  const std::vector<double> ev = lowest_tridiagonal_eigenvalues(diag, sub, k, tnorm);

  const double eps = std::numeric_limits<double>::epsilon();
  const double cluster_gap = 1e-3 * tnorm;

  Eigen::MatrixXd y(n, k);
  CounterRng rng(0x5eed, 17);
  int cluster_start = 0;
  for (int j = 0; j < k; ++j) {
    if (j > 0 && ev[j] - ev[j - 1] > cluster_gap) cluster_start = j;
    // members of one cluster get slightly separated shifts, as in dstein
    const double shift = ev[j] + (j - cluster_start) * 10.0 * eps * tnorm;
    const ShiftedTridiagonal lu(diag, sub, shift, eps * tnorm);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
    for (int iter = 0; iter < 6; ++iter) {
      lu.solve(x);
      for (int pass = 0; pass < 2; ++pass) {
        for (int c = cluster_start; c < j; ++c) x -= y.col(c).dot(x) * y.col(c);
      }
      const double norm = x.norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw NumericalFailure("inverse iteration broke down at eigenpair " + std::to_string(j));
      }
      x /= norm;
    }
    y.col(j) = x;
  }
  return tri.matrixQ() * y;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

// --- potentials --------------------------------------------------------------

PotentialProfile::PotentialProfile(std::function<double(double)> v, std::string description)
    : v_(std::move(v)), description_(std::move(description)) {}

PotentialProfile PotentialProfile::zero() { return constant(0.0); }

PotentialProfile PotentialProfile::constant(double c) {
  require(std::isfinite(c), "potential constant must be finite");
  return PotentialProfile([c](double) { return c; }, fmt(c));
}

PotentialProfile PotentialProfile::parse(const std::string& expr, double circumference) {
  const Expression e = Expression::parse(expr, {{"L", circumference}});
  return PotentialProfile([e](double s) { return e(s); }, expr);
}

// --- basis -------------------------------------------------------------------

std::size_t SpectralBasis::group_of_lambda(double lambda, double rel_tol) const {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (std::abs(groups_[g].lambda - lambda) <= rel_tol * std::max(1.0, std::abs(lambda))) {
      return g;
    }
  }
  throw InvalidInput("eigenvalue " + fmt(lambda) + " is not in the basis");
}

void SpectralBasis::finalize_groups(const std::vector<long long>& keys, double merge_rel_tol) {
  groups_.clear();
  for (std::size_t j = 0; j < pairs_.size(); ++j) {
    pairs_[j].index = j;
    bool fresh = groups_.empty();
    if (!fresh && keys[j] != keys[j - 1]) {
      const double a = pairs_[j - 1].energy, b = pairs_[j].energy;
      fresh = std::abs(b - a) > merge_rel_tol * std::max(1.0, std::abs(b));
    }
    if (fresh) groups_.push_back({j, 0, pairs_[j].lambda});
    groups_.back().count += 1;
    pairs_[j].group_id = groups_.size() - 1;
  }
}

cplx SpectralBasis::evaluate(std::size_t j, Point p) const {
  cplx out;
  const std::size_t idx[1] = {j};
  evaluate(p, idx, {&out, 1});
  return out;
}

void SpectralBasis::evaluate(Point p, std::span<const std::size_t> indices,
                             std::span<cplx> out) const {
  require(out.size() >= indices.size(), "evaluate: output span too small");
  for (std::size_t j : indices) {
    if (j >= pairs_.size()) throw InvalidInput("eigenpair index out of range");
  }
  const Point q = manifold_.canonical(p);
  if (manifold_.kind() == ManifoldKind::Circle1D) {
    evaluate_arc(manifold_.arc().s_of_x(q[0]), indices, out);
    return;
  }
  switch (manifold_.kind()) {
    case ManifoldKind::Circle1D:
      return;
    case ManifoldKind::FlatTorus2D: {
      const double sx = manifold_.side_x(), sy = manifold_.side_y();
      const double amp = 1.0 / std::sqrt(sx * sy);
      for (std::size_t k = 0; k < indices.size(); ++k) {
        const auto [m, n] = pairs_[indices[k]].labels;
        out[k] = std::polar(amp, kTwoPi * (m * q[0] / sx + n * q[1] / sy));
      }
      return;
    }
    case ManifoldKind::WarpedTorus2D: {
      const double ly = manifold_.arc().length();
      const double s = wrap(manifold_.arc().s_of_x(q[1]), 0.0, ly);
      const double amp = 1.0 / std::sqrt(kTwoPi * ly);
      for (std::size_t k = 0; k < indices.size(); ++k) {
        const auto [m, n] = pairs_[indices[k]].labels;
        out[k] = std::polar(amp, m * q[0] + kTwoPi * n * s / ly);
      }
      return;
    }
    case ManifoldKind::Sphere2: {
      int lmax = 0;
      for (std::size_t j : indices) lmax = std::max(lmax, pairs_[j].labels[0]);
      thread_local std::vector<double> table;
      legendre_table(lmax, q[0], table);
      for (std::size_t k = 0; k < indices.size(); ++k) {
        const auto [l, m] = pairs_[indices[k]].labels;
        const int am = std::abs(m);
        out[k] = std::polar(table[l * (l + 1) / 2 + am], m * q[1]);
      }
      return;
    }
  }
}

void SpectralBasis::evaluate_arc(double s, std::span<const std::size_t> indices,
                                 std::span<cplx> out) const {
  require(manifold_.kind() == ManifoldKind::Circle1D, "evaluate_arc: basis is not on a circle");
  require(out.size() >= indices.size(), "evaluate: output span too small");
  for (std::size_t j : indices) {
    if (j >= pairs_.size()) throw InvalidInput("eigenpair index out of range");
  }
  const double length = manifold_.volume();
  const double s0 = wrap(s, 0.0, length);
  if (source_ == SpectrumSource::ClosedForm) {
    const double amp = 1.0 / std::sqrt(length);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const int n = pairs_[indices[k]].labels[0];
      out[k] = std::polar(amp, kTwoPi * n * s0 / length);
    }
    return;
  }
  const auto ns = static_cast<long long>(sample_count_);
  auto node = [&](long long i) { return static_cast<std::size_t>(((i % ns) + ns) % ns); };
  const double t = s0 / length * static_cast<double>(ns);
  const double nearest = std::round(t);
  if (std::abs(t - nearest) < 1e-9) {  // on the native grid: no interpolation
    const std::size_t i = node(static_cast<long long>(nearest));
    for (std::size_t k = 0; k < indices.size(); ++k) out[k] = native_sample(indices[k], i);
    return;
  }
  const double fl = std::floor(t);
  const double u = t - fl;
  const auto i0 = static_cast<long long>(fl);
  // 4-point Lagrange weights on nodes i0-1 .. i0+2
  const double w[4] = {-u * (u - 1) * (u - 2) / 6, (u + 1) * (u - 1) * (u - 2) / 2,
                       -(u + 1) * u * (u - 2) / 2, (u + 1) * u * (u - 1) / 6};
  for (std::size_t k = 0; k < indices.size(); ++k) {
    double acc = 0.0;
    for (int d = 0; d < 4; ++d) acc += w[d] * native_sample(indices[k], node(i0 - 1 + d));
    out[k] = acc;
  }
}

double SpectralBasis::sum_abs2(Point p, std::span<const std::size_t> indices) const {
  thread_local std::vector<cplx> buf;
  buf.resize(indices.size());
  evaluate(p, indices, buf);
  double acc = 0.0;
  for (const cplx& v : buf) acc += std::norm(v);
  return acc;
}

double SpectralBasis::product_frequency() const {
  if (manifold_.kind() == ManifoldKind::Sphere2) {
    return 2.0 * pairs_.back().labels[0] + 1.0;
  }
  double top = 0.0;
  for (const auto& e : pairs_) top = std::max(top, std::abs(e.lambda));
  return std::max(1.0, 2.0 * top);
}

const QuadratureGrid& SpectralBasis::native_grid() const {
  if (!native_) throw InvalidInput("basis has no native grid");
  return *native_;
}

std::string SpectralBasis::description() const { return description_; }

// --- closed forms ------------------------------------------------------------

SpectralBasis circle_basis(const ManifoldModel& circle, int n_max) {
  require(circle.kind() == ManifoldKind::Circle1D, "circle_basis: manifold must be a circle");
  require(n_max >= 0, "circle_basis: n_max must be nonnegative");
  SpectralBasis b;
  b.manifold_ = circle;
  const double length = circle.volume();
  std::vector<long long> keys;
  for (int a = 0; a <= n_max; ++a) {
    for (int n : {-a, a}) {
      const double lam = kTwoPi * a / length;
      b.pairs_.push_back({0, lam, lam * lam, 0, {n, 0}});
      keys.push_back(a);
      if (a == 0) break;
    }
  }
  b.lambda_max_ = kTwoPi * n_max / length;
  b.finalize_groups(keys, 1e-12);
  b.description_ = circle.name() + " n_max=" + std::to_string(n_max);
  return b;
}

SpectralBasis circle_basis(double length, int n_max) {
  return circle_basis(ManifoldModel::circle_of_length(length), n_max);
}

double torus2_count_estimate(const ManifoldModel& torus, double lambda_max) {
  // lattice points in an ellipse: area plus a perimeter allowance
  const double area = kPi * lambda_max * lambda_max * torus.volume() / (4.0 * kPi * kPi);
  return area + 4.0 * lambda_max + 1.0;
}

SpectralBasis torus2_basis(const ManifoldModel& torus, double lambda_max) {
  const bool flat = torus.kind() == ManifoldKind::FlatTorus2D;
  require(flat || torus.kind() == ManifoldKind::WarpedTorus2D,
          "torus2_basis: manifold must be a 2-torus");
  require(lambda_max >= 1.0 && std::isfinite(lambda_max), "torus2_basis: lambda_max must be >= 1");
  const double estimate = torus2_count_estimate(torus, lambda_max);
  if (estimate > kTorusPairBudget) {
    throw InvalidInput("torus2_basis: lambda_max=" + fmt(lambda_max) + " needs about " +
                       fmt(estimate) + " eigenpairs, over the budget of " +
                       fmt(kTorusPairBudget));
  }
  // Angular frequency per unit label in each direction.
  const double kx = flat ? kTwoPi / torus.side_x() : 1.0;
  const double ky = kTwoPi / (flat ? torus.side_y() : torus.arc().length());
  const bool square = flat && torus.side_x() == kTwoPi && torus.side_y() == kTwoPi;
  const auto max_n = static_cast<long long>(std::floor(lambda_max / ky + 1e-9));
  const auto max_m = static_cast<long long>(std::floor(lambda_max / kx + 1e-9));
  // Integer cutoff on the standard torus; elsewhere a relative float cutoff.
  const auto cut2 = static_cast<long long>(std::floor(lambda_max * lambda_max + 1e-9));
  const double fcut = lambda_max * lambda_max * (1.0 + 1e-12);

  struct Row {
    double energy;
    long long key;
    int m, n;
  };
  std::vector<Row> rows;
  for (long long m = -max_m; m <= max_m; ++m) {
    for (long long n = -max_n; n <= max_n; ++n) {
      if (square) {
        const long long k = m * m + n * n;
        if (k <= cut2) rows.push_back({double(k), k, int(m), int(n)});
      } else {
        const double e = (kx * m) * (kx * m) + (ky * n) * (ky * n);
        if (e <= fcut) {
          rows.push_back({e, std::abs(m) * 1'000'000LL + std::abs(n), int(m), int(n)});
        }
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.key != b.key) return a.key < b.key;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  SpectralBasis b;
  b.manifold_ = torus;
  std::vector<long long> keys;
  keys.reserve(rows.size());
  for (const auto& r : rows) {
    b.pairs_.push_back({0, std::sqrt(r.energy), r.energy, 0, {r.m, r.n}});
    keys.push_back(r.key);
  }
  b.lambda_max_ = lambda_max;
  b.finalize_groups(keys, 1e-12);
  b.description_ = torus.name() + " lambda_max=" + fmt(lambda_max);
  return b;
}

SpectralBasis sphere_basis(int l_max) {
  require(l_max >= 0, "sphere_basis: l_max must be nonnegative");
  if (l_max > kSphereMaxDegree) {
    throw InvalidInput("sphere_basis: l_max=" + std::to_string(l_max) +
                       " exceeds the recurrence guard of " + std::to_string(kSphereMaxDegree));
  }
  SpectralBasis b;
  b.manifold_ = ManifoldModel::sphere();
  std::vector<long long> keys;
  for (int l = 0; l <= l_max; ++l) {
    const double e = double(l) * (l + 1);
    for (int m = -l; m <= l; ++m) {
      b.pairs_.push_back({0, std::sqrt(e), e, 0, {l, m}});
      keys.push_back(l);
    }
  }
  b.lambda_max_ = std::sqrt(double(l_max) * (l_max + 1));
  b.finalize_groups(keys, 1e-12);
  b.description_ = "sphere l_max=" + std::to_string(l_max);
  return b;
}

// --- discretized -------------------------------------------------------------

SpectralBasis fd_eigensolve_circle(const MetricProfile1D& h, const PotentialProfile& v,
                                   int grid_n, int k) {
  require(grid_n >= 128, "fd_eigensolve_circle: grid_n must be >= 128");
  require(k >= 1 && k <= grid_n / 8, "fd_eigensolve_circle: need 1 <= k <= grid_n/8");
  SpectralBasis b;
  b.manifold_ = ManifoldModel::circle(h);
  b.source_ = SpectrumSource::Discretized;
  const int n = grid_n;
  const double length = b.manifold_.volume();
  const double ds = length / n;
  const double inv = 1.0 / (ds * ds);

  std::vector<double> pot(n);
  double vmax = 0.0;
  for (int i = 0; i < n; ++i) {
    pot[i] = v(i * ds);
    require(std::isfinite(pot[i]), "potential is not finite at s=" + fmt(i * ds));
    vmax = std::max(vmax, std::abs(pot[i]));
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0 * inv + pot[i];
    a(i, (i + 1) % n) -= inv;
    a(i, (i + n - 1) % n) -= inv;
  }
  const Eigen::MatrixXd vecs = lowest_eigenvectors(a, k);
  std::vector<double> w(k);
  for (int j = 0; j < k; ++j) w[j] = vecs.col(j).dot(a * vecs.col(j));

  struct Mode {
    double energy;
    std::vector<double> u;
  };
  std::vector<Mode> modes(k);
  const double scale = 4.0 * inv + vmax;
  for (int j = 0; j < k; ++j) {
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = vecs(i, j);
    double num = 0.0, den = 0.0, res = 0.0;
    for (int i = 0; i < n; ++i) {
      const double up = u[(i + 1) % n], um = u[(i + n - 1) % n];
      const double d = up - u[i];
      num += d * d * inv + pot[i] * u[i] * u[i];
      den += u[i] * u[i];
      res = std::max(res, std::abs((2.0 * u[i] - up - um) * inv + pot[i] * u[i] - w[j] * u[i]));
    }
    if (!(res <= 1e-9 * scale)) {
      throw NumericalFailure("eigenvector " + std::to_string(j) + " residual " + fmt(res) +
                             " exceeds tolerance " + fmt(1e-9 * scale));
    }
    // sum ds u^2 = 1, first clearly nonzero entry positive
    const double norm = std::sqrt(ds * den);
    double peak = 0.0;
    for (double x : u) peak = std::max(peak, std::abs(x));
    double sign = 1.0;
    for (double x : u) {
      if (std::abs(x) > 1e-6 * peak) {
        sign = x > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (double& x : u) x *= sign / norm;
    modes[j] = {num / den, std::move(u)};
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& x, const Mode& y) { return x.energy < y.energy; });

  b.sample_count_ = std::size_t(n);
  b.samples_.reserve(std::size_t(n) * k);
  std::vector<long long> keys;
  for (int j = 0; j < k; ++j) {
    const double e = modes[j].energy;
    const double lam = std::copysign(std::sqrt(std::abs(e)), e);
    b.pairs_.push_back({0, lam, e, 0, {j, 0}});
    keys.push_back(j);
    b.samples_.insert(b.samples_.end(), modes[j].u.begin(), modes[j].u.end());
  }
  b.lambda_max_ = b.pairs_.back().lambda;
  b.finalize_groups(keys, 1e-9);

  auto grid = std::make_shared<QuadratureGrid>();
  grid->manifold = b.manifold_;
  grid->n1 = n;
  grid->n2 = 1;
  for (int i = 0; i < n; ++i) {
    grid->nodes.push_back({b.manifold_.arc().x_of_s(i * ds), 0.0});
    grid->weights.push_back(ds);
  }
  b.native_ = std::move(grid);
  b.description_ = b.manifold_.name() + " V=" + v.description() + " fd grid_n=" +
                   std::to_string(n) + " k=" + std::to_string(k);
  return b;
}

void write_spectrum_csv(std::ostream& os, const SpectralBasis& basis) {
  const auto old = os.precision(17);
  os << "j,lambda,group_id,multiplicity\n";
  for (const auto& e : basis.pairs()) {
    os << e.index << ',' << e.lambda << ',' << e.group_id << ','
       << basis.group(e.group_id).count << '\n';
  }
  os.precision(old);
}

}  // namespace speclab
