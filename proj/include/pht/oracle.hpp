#pragma once

// Independent reference computations: dense sampling with a Lipschitz
// certificate, brute-force matchings, quadrature. Slow on purpose.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bottleneck.hpp"
#include "complex.hpp"
#include "persistence.hpp"

namespace pht {

/// H(omega) = d_B(PHT_K(omega), PHT_K'(omega)).
inline double evaluate_H(const Complex& k, const Complex& kp, const Direction& omega) {
  return bottleneck_distance(compute_persistence(k, omega), compute_persistence(kp, omega));
}

inline double evaluate_H(const Complex& k, const Complex& kp, double theta) {
  return evaluate_H(k, kp, Direction::angle(theta));
}

/// Certified enclosure of the maximum from m equispaced samples.
struct SampledBound {
  double lower = 0.0;
  double upper = 0.0;
  double argmax = 0.0;
};

/// H is (R_K + R_K')-Lipschitz in omega; every angle is within half a gap of
/// a sample, i.e. within chord 2 sin(pi / 2m).
inline SampledBound sampled_dinf(const Complex& k, const Complex& kp, int m, double offset = 0.0) {
  if (m <= 0) throw std::invalid_argument("sample count must be positive");
  SampledBound b;
  for (int i = 0; i < m; ++i) {
    const double t = offset + kTwoPi * i / m;
    const double h = evaluate_H(k, kp, t);
    if (h > b.lower) {
      b.lower = h;
      b.argmax = wrap_angle(t);
    }
  }
  const double lip = enclosing_radius(k) + enclosing_radius(kp);
  b.upper = b.lower + lip * 2.0 * std::sin(std::numbers::pi / (2.0 * m));
  return b;
}

/// Periodic trapezoid rule for the integral of H over the circle.
inline double sampled_d1(const Complex& k, const Complex& kp, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += evaluate_H(k, kp, kTwoPi * i / m);
  return s * kTwoPi / m;
}

namespace detail {
inline void exhaustive_rec(const std::vector<DiagramPoint>& x, const std::vector<DiagramPoint>& y, std::size_t i,
                           std::vector<char>& used, double cost, double& best) {
  if (cost >= best) return;
  if (i == x.size()) {
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!used[j]) cost = std::max(cost, half_persistence(y[j]));
    best = std::min(best, cost);
    return;
  }
  exhaustive_rec(x, y, i + 1, used, std::max(cost, half_persistence(x[i])), best);
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    exhaustive_rec(x, y, i + 1, used, std::max(cost, linf(x[i], y[j])), best);
    used[j] = 0;
  }
}
}  // namespace detail

inline constexpr std::size_t kExhaustiveLimit = 12;

/// Bottleneck distance of one dimension by enumerating every partial
/// matching (off-diagonal) and every permutation (essential classes).
inline double exhaustive_bottleneck(const std::vector<DiagramPoint>& x, const std::vector<DiagramPoint>& y,
                                    std::vector<double> ess_x = {}, std::vector<double> ess_y = {}) {
  if (x.size() + y.size() > kExhaustiveLimit || ess_x.size() > 8)
    throw std::invalid_argument("instance too large for exhaustive matching");
  if (ess_x.size() != ess_y.size()) return kInf;
  double ess = kInf;
  std::sort(ess_y.begin(), ess_y.end());
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < ess_x.size(); ++i) c = std::max(c, std::fabs(ess_x[i] - ess_y[i]));
    ess = std::min(ess, c);
  } while (std::next_permutation(ess_y.begin(), ess_y.end()));
  double best = kInf;
  std::vector<char> used(y.size(), 0);
  detail::exhaustive_rec(x, y, 0, used, 0.0, best);
  return std::max(best, ess);
}

inline double exhaustive_bottleneck(const Diagram& a, const Diagram& b) {
  double d = 0.0;
  for (int dim = 0; dim <= compared_max_dim(a, b); ++dim)
    d = std::max(d, exhaustive_bottleneck(detail::off_diagonal(a, dim), detail::off_diagonal(b, dim),
                                          a.essential_births(dim), b.essential_births(dim)));
  return d;
}

}  // namespace pht
