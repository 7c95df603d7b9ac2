#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace speclab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Manifold coordinates. Circle: (x, -) with x in [-pi, pi). Tori: (x, y).
// Sphere: (theta, phi).
using Point = std::array<double, 2>;

// Rejected input: violated precondition, malformed configuration.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure broke down (non-convergence, lost monotonicity).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified inequality that is a theorem came out false. Always a bug.
class InequalityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

/// Wrap t into [lo, lo + period).
inline double wrap(double t, double lo, double period) {
  double u = std::fmod(t - lo, period);
  if (u < 0) u += period;
  if (u >= period) u -= period;
  return lo + u;
}

}  // namespace speclab
