#include "speclab/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "speclab/parallel.hpp"

namespace speclab {

double unit_ball_volume(int n) {
  require(n >= 1, "dimension must be positive");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double weyl_leading(int n, double volume, double lambda) {
  return std::pow(kTwoPi, -n) * unit_ball_volume(n) * std::pow(lambda, n) * volume;
}

// --- spectra for counting ------------------------------------------------------

CountingSpectrum counting_spectrum(const SpectralBasis& basis) {
  CountingSpectrum out;
  out.manifold = basis.manifold().name();
  out.dimension = basis.manifold().dimension();
  out.volume = basis.manifold().volume();
  out.lambda_max = basis.lambda_max();
  for (const auto& g : basis.groups()) {
    out.lambdas.push_back(g.lambda);
    out.multiplicity.push_back(static_cast<long long>(g.count));
  }
  return out;
}

CountingSpectrum exact_counting_spectrum(const ManifoldModel& m, double lambda_max) {
  require(lambda_max > 0.0 && std::isfinite(lambda_max), "lambda_max must be positive");
  CountingSpectrum out;
  out.manifold = m.name();
  out.dimension = m.dimension();
  out.volume = m.volume();
  out.lambda_max = lambda_max;
  switch (m.kind()) {
    case ManifoldKind::Circle1D: {
      const double step = kTwoPi / m.volume();
      const auto n_max = static_cast<long long>(std::floor(lambda_max / step + 1e-9));
      require(n_max <= 50'000'000, "circle cutoff too large");
      for (long long n = 0; n <= n_max; ++n) {
        out.lambdas.push_back(step * static_cast<double>(n));
        out.multiplicity.push_back(n == 0 ? 1 : 2);
      }
      break;
    }
    case ManifoldKind::Sphere2: {
      for (long long l = 0;; ++l) {
        const double lam = std::sqrt(static_cast<double>(l * (l + 1)));
        if (lam > lambda_max * (1 + 1e-12)) break;
        out.lambdas.push_back(lam);
        out.multiplicity.push_back(2 * l + 1);
      }
      break;
    }
    case ManifoldKind::FlatTorus2D:
    case ManifoldKind::WarpedTorus2D: {
      const double ax = kTwoPi / m.side_x();
      const double ay =
          kTwoPi / (m.kind() == ManifoldKind::WarpedTorus2D ? m.arc().length() : m.side_y());
      const bool square = m.kind() == ManifoldKind::FlatTorus2D &&
                          std::abs(ax - 1.0) < 1e-15 && std::abs(ay - 1.0) < 1e-15;
      if (square) {
        // r(k) = #{(m, n) : m^2 + n^2 = k}, integer arithmetic throughout
        const auto k_max = static_cast<long long>(std::floor(lambda_max * lambda_max + 1e-9));
        require(k_max <= 400'000'000, "torus cutoff too large");
        std::vector<long long> r(static_cast<std::size_t>(k_max) + 1, 0);
        const auto m_max = static_cast<long long>(std::sqrt(static_cast<double>(k_max))) + 1;
        for (long long a = -m_max; a <= m_max; ++a) {
          const long long rest = k_max - a * a;
          if (rest < 0) continue;
          auto b = static_cast<long long>(std::sqrt(static_cast<double>(rest)));
          while (b * b > rest) --b;
          while ((b + 1) * (b + 1) <= rest) ++b;
          for (long long bb = -b; bb <= b; ++bb) ++r[static_cast<std::size_t>(a * a + bb * bb)];
        }
        for (long long k = 0; k <= k_max; ++k) {
          if (r[static_cast<std::size_t>(k)] == 0) continue;
          out.lambdas.push_back(std::sqrt(static_cast<double>(k)));
          out.multiplicity.push_back(r[static_cast<std::size_t>(k)]);
        }
        break;
      }
      std::vector<double> energies;
      const auto mx = static_cast<long long>(lambda_max / ax) + 1;
      const auto ny = static_cast<long long>(lambda_max / ay) + 1;
      require(static_cast<double>(mx) * static_cast<double>(ny) <= 1e8, "torus cutoff too large");
      const double e_max = lambda_max * lambda_max * (1 + 1e-12);
      for (long long a = -mx; a <= mx; ++a) {
        for (long long b = -ny; b <= ny; ++b) {
          const double e = (ax * a) * (ax * a) + (ay * b) * (ay * b);
          if (e <= e_max) energies.push_back(e);
        }
      }
      std::sort(energies.begin(), energies.end());
      for (double e : energies) {
        if (!out.lambdas.empty() &&
            std::abs(out.lambdas.back() * out.lambdas.back() - e) <= 1e-12 * std::max(1.0, e)) {
          ++out.multiplicity.back();
        } else {
          out.lambdas.push_back(std::sqrt(e));
          out.multiplicity.push_back(1);
        }
      }
      break;
    }
  }
  return out;
}

// --- scans -------------------------------------------------------------------

namespace {

// N(lambda) with a relative tolerance so closed-form eigenvalues equal to a
// scan value are counted.
std::size_t groups_below(const CountingSpectrum& s, double lambda) {
  const double cut = lambda * (1 + 1e-12) + 1e-14;
  return static_cast<std::size_t>(std::upper_bound(s.lambdas.begin(), s.lambdas.end(), cut) -
                                  s.lambdas.begin());
}

}  // namespace

WeylReport counting_scan(const CountingSpectrum& spectrum, const std::vector<double>& lambdas) {
  require(!lambdas.empty(), "counting scan needs at least one lambda");
  std::vector<long long> cumulative(spectrum.lambdas.size() + 1, 0);
  for (std::size_t g = 0; g < spectrum.lambdas.size(); ++g) {
    cumulative[g + 1] = cumulative[g] + spectrum.multiplicity[g];
  }
  WeylReport r;
  r.manifold = spectrum.manifold;
  r.dimension = spectrum.dimension;
  r.volume = spectrum.volume;
  const int n = spectrum.dimension;
  auto lead = [&](double l) { return weyl_leading(n, spectrum.volume, l); };
  for (double lam : lambdas) {
    require(lam >= 0.0, "scan values must be nonnegative");
    if (lam > spectrum.lambda_max * (1 + 1e-12)) {
      throw InvalidInput("scan value " + std::to_string(lam) + " exceeds the spectrum cutoff " +
                         std::to_string(spectrum.lambda_max));
    }
    const std::size_t g = groups_below(spectrum, lam);
    const long long count = cumulative[g];
    r.lambdas.push_back(lam);
    r.counts.push_back(count);
    r.leading.push_back(lead(lam));
    r.remainder.push_back(static_cast<double>(count) - lead(lam));
    // |N - leading| peaks at the jumps: check both one-sided limits there
    const std::size_t g_lo = groups_below(spectrum, 0.5 * lam);
    double w = std::max(std::abs(r.remainder.back()),
                        std::abs(static_cast<double>(cumulative[g_lo]) - lead(0.5 * lam)));
    for (std::size_t k = g_lo; k < g; ++k) {
      const double l = lead(spectrum.lambdas[k]);
      w = std::max(w, std::abs(static_cast<double>(cumulative[k + 1]) - l));
      w = std::max(w, std::abs(static_cast<double>(cumulative[k]) - l));
    }
    r.window_max.push_back(w);
  }
  return r;
}

WeylReport counting_scan(const SpectralBasis& basis, const std::vector<double>& lambdas,
                         const QuadratureGrid* grid) {
  WeylReport r = counting_scan(counting_spectrum(basis), lambdas);
  if (grid == nullptr) return r;
  // per node: prefix sums of |e_j|^2 in basis order (sorted by lambda)
  const std::size_t nodes = grid->size();
  std::vector<std::size_t> cut;
  for (long long c : r.counts) cut.push_back(static_cast<std::size_t>(c));
  std::vector<double> values(nodes * cut.size());
  std::vector<std::size_t> all(basis.size());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  parallel_for(nodes, [&](std::size_t i) {
    std::vector<cplx> e(all.size());
    basis.evaluate(grid->nodes[i], all, e);
    double acc = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < cut.size(); ++k) {
      for (; j < cut[k]; ++j) acc += std::norm(e[j]);
      values[k * nodes + i] = acc;
    }
  });
  for (std::size_t k = 0; k < cut.size(); ++k) {
    double integral = 0.0, lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < nodes; ++i) {
      const double v = values[k * nodes + i];
      integral += grid->weights[i] * v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    r.pointwise_integral.push_back(integral);
    r.pointwise_min.push_back(lo);
    r.pointwise_max.push_back(hi);
  }
  return r;
}

double remainder_fit(const WeylReport& report) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < report.lambdas.size(); ++i) {
    if (report.lambdas[i] > 0.0 && report.window_max[i] > 1e-12) {
      xs.push_back(std::log(report.lambdas[i]));
      ys.push_back(std::log(report.window_max[i]));
    }
  }
  require(xs.size() >= 10, "remainder fit needs at least 10 usable scan points");
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  require(*mx - *mn >= std::log(2.0) - 1e-12, "remainder fit needs a dyadic span of lambdas");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  require(lo > 0.0 && hi >= lo && n >= 2, "log_spaced needs 0 < lo <= hi and n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  out.back() = hi;
  return out;
}

void write_weyl_csv(std::ostream& os, const WeylReport& report) {
  const auto old = os.precision(17);
  os << "lambda,N,leading,remainder\n";
  for (std::size_t i = 0; i < report.lambdas.size(); ++i) {
    os << report.lambdas[i] << ',' << report.counts[i] << ',' << report.leading[i] << ','
       << report.remainder[i] << '\n';
  }
  os.precision(old);
}

// --- homogeneity and the n-dimensional expansion -------------------------------

HomogeneityDefect homogeneity_defect(const SpectralBasis& basis, double lambda,
                                     const QuadratureGrid& grid) {
  const std::size_t g = basis.group_of_lambda(lambda);
  require(g > 0, "homogeneity defect needs a previous distinct eigenvalue");
  const auto& grp = basis.group(g);
  HomogeneityDefect d;
  d.lambda = grp.lambda;
  d.multiplicity = static_cast<long long>(grp.count);
  d.eps1 = 0.5 * (grp.lambda - basis.group(g - 1).lambda);
  require(d.eps1 > 0.0, "eigenvalue groups are not separated");
  std::vector<std::size_t> idx(grp.count);
  for (std::size_t k = 0; k < grp.count; ++k) idx[k] = grp.first + k;
  const double mean = static_cast<double>(grp.count) / basis.manifold().volume();
  std::vector<double> slice(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { slice[i] = basis.sum_abs2(grid.nodes[i], idx); });
  double dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    d.slice_integral += grid.weights[i] * slice[i];
    dev = std::max(dev, std::abs(slice[i] - mean));
  }
  d.relative_deviation = dev / mean;
  d.c1_sup = dev / d.eps1;
  return d;
}

std::vector<double> cnk_coefficients(int n, double eps1, double c) {
  require(n >= 2, "c_{n,k} needs n >= 2");
  auto binom = [](int a, int b) {
    double v = 1.0;
    for (int i = 1; i <= b; ++i) v = v * (a - b + i) / i;
    return v;
  };
  const double lead = std::pow(kTwoPi, -n) * unit_ball_volume(n);
  std::vector<double> out;
  for (int k = 0; k <= n - 2; ++k) {
    const double sign = ((n - 1 - k) % 2 == 0) ? 1.0 : -1.0;
    out.push_back((lead * binom(n, k) * eps1 - c * binom(n - 1, k)) * sign);
  }
  return out;
}

UpForHvCertificate up_for_hv_check(const SpectralBasis& basis, const RegionSpec& region,
                                   const SpectralWindow& window, const Field& f, double a0) {
  require(a0 > 0.0 && a0 < 1.0, "a0 must lie in (0, 1)");
  require(window.whole_eigenspaces(), "S must be a set of eigenvalues (whole eigenspaces)");
  const bool discrete = basis.source() == SpectrumSource::Discretized;
  require(basis.manifold().dimension() == 2 || discrete,
          "needs a 2-D basis or a discretized Schrodinger spectrum");
  UpForHvCertificate c;
  c.mode = discrete ? "schrodinger-1d" : "laplace-2d";
  c.a0 = a0;
  c.min_s = *std::min_element(window.eigenvalues().begin(), window.eigenvalues().end());
  c.base = certify(basis, f, region, window);
  c.vacuous = c.base.vacuous;
  c.rhs = c.base.rhs_classical;
  const double mean = static_cast<double>(window.count()) / basis.manifold().volume();
  if (discrete) {
    double sup = 0.0;
    const std::size_t nodes = basis.native_grid().size();
    for (std::size_t i = 0; i < nodes; ++i) {
      double a = 0.0;
      for (std::size_t j : window.indices()) {
        const double u = basis.native_sample(j, i);
        a += u * u;
      }
      sup = std::max(sup, a);
    }
    c.c_v = sup / mean;
  } else {
    c.c_v = std::max(c.base.defect, 0.0);
  }
  if (c.vacuous) return c;
  c.lhs = c.base.lhs;
  c.integral_a_s = c.base.integral_a_s;
  c.constant = c.lhs / c.rhs;
  c.holds_chain = c.base.holds_chain;
  const double slack = kCertificateSlack * std::max(1.0, c.rhs);
  c.holds = discrete ? c.lhs / c.c_v <= c.rhs + slack : a0 * c.lhs <= c.rhs + slack;
  return c;
}

}  // namespace speclab
