#pragma once

#include <functional>
#include <vector>

namespace speclab {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
/// Rules are cached; repeated calls with the same n are cheap.
const Rule1D& gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b], split into equal panels so that each
/// panel spans at most `max_panel` units.
Rule1D panel_rule(double a, double b, double max_panel, int points_per_panel = 16);

/// Adaptive Gauss-Kronrod integral of f over [a, b] to relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-14);

}  // namespace speclab
