#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace pht {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Numeric tolerances shared by the 2D event geometry and the decision sweep.
struct Tolerances {
  /// Angles closer than this are the same event.
  double angle = 1e-10;
  /// Curve values closer than this are equal (tangency, dedup, coincidence).
  double value = 1e-9;
  /// Relative slack of the decision procedure: decide(lambda) accepts
  /// H <= lambda + decision * (1 + R_K + R_K').
  double decision = 1e-11;
};

namespace detail {
inline Tolerances load_tolerances() {
  Tolerances t;
  // Testing hook: overrides the value tolerance.
  if (const char* env = std::getenv("PHT_TOLERANCE_OVERRIDE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) t.value = v;
  }
  return t;
}
}  // namespace detail

inline const Tolerances& tolerances() {
  static const Tolerances t = detail::load_tolerances();
  return t;
}

/// Maps an angle onto [0, 2pi).
inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

/// Shortest circular distance between two angles.
inline double angle_distance(double a, double b) {
  const double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > std::numbers::pi ? kTwoPi - d : d;
}

}  // namespace pht
