#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "bottleneck.hpp"
#include "curves2d.hpp"
#include "maxdist2d.hpp"
#include "persistence.hpp"

namespace pht {

namespace detail {
// Antiderivative of |cos x|: continuous, increases by 2 every pi.
inline double abs_cos_primitive(double x) {
  const double k = std::floor((x + 0.5 * std::numbers::pi) / std::numbers::pi);
  return 2.0 * k + std::sin(x - k * std::numbers::pi);
}
}  // namespace detail

/// Exact integral of f * |<d, omega>| over [a, b].
inline double integrate_piece(const CurvePiece& p, double a, double b) {
  const double r = p.d.norm();
  if (r == 0.0 || b <= a) return 0.0;
  const double phi = p.phase();
  return p.factor * r * (detail::abs_cos_primitive(b - phi) - detail::abs_cos_primitive(a - phi));
}

/// Exact integral of a difference curve over [a, b] within [0, 2pi].
inline double integrate_curve(const DifferenceCurve& c, double a, double b) {
  double total = 0.0;
  for (const auto& p : c.pieces) {
    const double lo = std::max(a, p.lo), hi = std::min(b, p.hi);
    if (hi > lo) total += integrate_piece(p, lo, hi);
  }
  return total;
}

struct D1Interval {
  double lo = 0.0;
  double hi = 0.0;
  double integral = 0.0;
  int curve = -1;  // realizing curve, -1 where H vanishes identically
  double r = 0.0;   // realizing piece: f * r * |cos(theta - phi)|
  double phi = 0.0;
  double factor = 0.0;
};

struct D1Result {
  double value = 0.0;
  std::vector<D1Interval> intervals;
};

/// Integral of the bottleneck distance over the circle. Between consecutive
/// breakpoints, structural angles and curve crossings a single difference
/// curve realizes H; it is integrated in closed form.
inline D1Result d1(const Complex& k, const Complex& kp) {
  D1Result res;
  DecisionSweep sweep(k, kp);
  if (sweep.essential_mismatch()) {
    res.value = kInf;
    return res;
  }
  const CurveFamily fam(k, kp);
  const auto& cs = fam.curves();
  std::vector<double> cuts = sweep.arc_bounds();
  for (const auto& c : cs)
    for (const auto& p : c.pieces) cuts.push_back(p.lo);
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      for (const auto& e : curve_intersections(cs[i], cs[j])) cuts.push_back(e.theta);
  unique_angles(cuts);
  std::vector<double> bounds{0.0};
  for (double t : cuts)
    if (t > 0.0 && t < kTwoPi) bounds.push_back(t);
  bounds.push_back(kTwoPi);

  for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
    const double a = bounds[s], b = bounds[s + 1];
    if (b <= a) continue;
    const double mid = 0.5 * (a + b);
    const double h = bottleneck_distance(compute_persistence(k, Direction::angle(mid)),
                                         compute_persistence(kp, Direction::angle(mid)));
    D1Interval iv{a, b, 0.0, -1};
    if (h > 0.0) {
      double gap = kInf;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const double g = std::fabs(cs[i].value(mid) - h);
        if (g < gap) {
          gap = g;
          iv.curve = static_cast<int>(i);
        }
      }
      const auto& piece = cs[iv.curve].piece_at(mid);
      iv.r = piece.d.norm();
      iv.phi = piece.phase();
      iv.factor = piece.factor;
      iv.integral = integrate_curve(cs[iv.curve], a, b);
    }
    res.value += iv.integral;
    res.intervals.push_back(iv);
  }
  return res;
}

inline void write_intervals_csv(std::ostream& out, const D1Result& r) {
  out << "theta_lo,theta_hi,r,phi,f,contribution\n";
  const auto prec = out.precision(17);
  for (const auto& iv : r.intervals)
    out << iv.lo << ',' << iv.hi << ',' << iv.r << ',' << iv.phi << ',' << iv.factor << ',' << iv.integral << '\n';
  out.precision(prec);
}

}  // namespace pht
