#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

#include "complex.hpp"
#include "tolerance.hpp"

namespace pht {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  bool operator==(const Vec2&) const = default;
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// <d, omega(theta)>
inline double height(Vec2 d, double theta) { return d.x * std::cos(theta) + d.y * std::sin(theta); }

inline Vec2 vertex_position(const Complex& k, int v) {
  const auto& c = k.vertices()[v].coords;
  return {c[0], c[1]};
}

inline std::vector<Vec2> simplex_vertices(const Complex& k, const Simplex& s) {
  std::vector<Vec2> out;
  for (int v : s.vertex_ids) out.push_back(vertex_position(k, v));
  return out;
}

/// Both angles where <d, omega> = 0; empty for d = 0.
inline std::vector<double> orthogonal_angles(Vec2 d) {
  if (d.x == 0.0 && d.y == 0.0) return {};
  const double phi = std::atan2(d.y, d.x);
  return {wrap_angle(phi + 0.5 * std::numbers::pi), wrap_angle(phi + 1.5 * std::numbers::pi)};
}

/// Sorts angles and merges those within the angle tolerance (circularly).
inline void unique_angles(std::vector<double>& a) {
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double t : a)
    if (out.empty() || t - out.back() > tolerances().angle) out.push_back(t);
  if (out.size() > 1 && out.front() + kTwoPi - out.back() <= tolerances().angle) out.pop_back();
  a = std::move(out);
}

/// Index of the vertex of maximal height at theta; ties go to the lowest index.
inline int active_vertex(std::span<const Vec2> verts, double theta) {
  int best = 0;
  double h = height(verts[0], theta);
  for (std::size_t i = 1; i < verts.size(); ++i) {
    const double hi = height(verts[i], theta);
    if (hi > h) {
      h = hi;
      best = static_cast<int>(i);
    }
  }
  return best;
}

/// Angles where the maximizing vertex of the simplex changes.
inline std::vector<double> insertion_breakpoints(std::span<const Vec2> verts) {
  std::vector<double> cand;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      for (double t : orthogonal_angles(verts[i] - verts[j])) cand.push_back(t);
  unique_angles(cand);
  if (cand.size() < 2) {
    // A single candidate on a circle cannot change the maximizer and back.
    if (cand.size() == 1) cand.clear();
    return cand;
  }
  std::vector<double> out;
  const std::size_t n = cand.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = k == 0 ? cand[n - 1] - kTwoPi : cand[k - 1];
    const double next = k + 1 == n ? cand[0] + kTwoPi : cand[k + 1];
    if (active_vertex(verts, 0.5 * (prev + cand[k])) != active_vertex(verts, 0.5 * (cand[k] + next)))
      out.push_back(cand[k]);
  }
  return out;
}

inline std::vector<double> insertion_breakpoints(const Simplex& s, const Complex& k) {
  const auto v = simplex_vertices(k, s);
  return insertion_breakpoints(std::span<const Vec2>(v));
}

/// Identity of a difference curve: simplex pair (global ids) and complex flag.
struct CurveId {
  int alpha = -1;
  int sigma = -1;
  bool same_complex = false;

  auto operator<=>(const CurveId&) const = default;
  bool shares(const CurveId& o) const {
    return alpha == o.alpha || alpha == o.sigma || sigma == o.alpha || sigma == o.sigma;
  }
  bool involves(int s) const { return alpha == s || sigma == s; }
};

/// f * |<d, omega(theta)>| on [lo, hi).
struct CurvePiece {
  Vec2 d;
  double factor = 1.0;
  double lo = 0.0;
  double hi = kTwoPi;

  double value(double theta) const { return factor * std::fabs(height(d, theta)); }
  double amplitude() const { return factor * d.norm(); }
  /// Phase of the maximum: value = amplitude * |cos(theta - phase)|.
  double phase() const { return std::atan2(d.y, d.x); }
  bool contains(double theta, double slack = 0.0) const { return theta >= lo - slack && theta < hi + slack; }
};

struct DifferenceCurve {
  CurveId id;
  std::vector<CurvePiece> pieces;  // partition of [0, 2pi), ascending

  const CurvePiece& piece_at(double theta) const {
    const double t = wrap_angle(theta);
    for (const auto& p : pieces)
      if (t < p.hi) return p;
    return pieces.back();
  }
  double value(double theta) const { return piece_at(theta).value(wrap_angle(theta)); }
};

/// Difference curve of two simplices; pieces follow the active-vertex pair.
inline DifferenceCurve difference_curve(std::span<const Vec2> alpha, std::span<const Vec2> sigma, CurveId id) {
  std::vector<double> bounds = insertion_breakpoints(alpha);
  for (double t : insertion_breakpoints(sigma)) bounds.push_back(t);
  unique_angles(bounds);
  if (bounds.empty() || bounds.front() > tolerances().angle) bounds.insert(bounds.begin(), 0.0);
  else bounds.front() = 0.0;
  bounds.push_back(kTwoPi);
  const double f = id.same_complex ? 0.5 : 1.0;
  DifferenceCurve c;
  c.id = id;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    const double mid = 0.5 * (bounds[k] + bounds[k + 1]);
    const Vec2 d = alpha[active_vertex(alpha, mid)] - sigma[active_vertex(sigma, mid)];
    if (!c.pieces.empty() && c.pieces.back().d == d) {
      c.pieces.back().hi = bounds[k + 1];
    } else {
      c.pieces.push_back({d, f, bounds[k], bounds[k + 1]});
    }
  }
  return c;
}

enum class EventKind { LocalMax, ThresholdCross, CurveIntersect, InsertionIntersect, OverlapEndpoint };

struct EventPoint {
  double theta = 0.0;
  double value = 0.0;
  EventKind kind = EventKind::LocalMax;
  CurveId first;
  CurveId second;  // unset (alpha = -1) for single-curve events
};

namespace detail {
// d/dtheta of f|<d, omega>| from one side, at a point where <d, omega> != 0.
inline double one_sided_slope(const CurvePiece& p, double theta) {
  const double h = height(p.d, theta);
  const double dh = -p.d.x * std::sin(theta) + p.d.y * std::cos(theta);
  return p.factor * (h >= 0.0 ? dh : -dh);
}

// Candidate angles of `theta` and its 2pi shift that fall in [lo, hi].
template <class F>
void for_each_in_range(double theta, double lo, double hi, double slack, F&& fn) {
  for (double t : {theta, theta + kTwoPi, theta - kTwoPi})
    if (t >= lo - slack && t <= hi + slack) fn(std::clamp(t, lo, hi));
}

inline void dedupe_events(std::vector<EventPoint>& ev) {
  std::stable_sort(ev.begin(), ev.end(), [](const EventPoint& a, const EventPoint& b) { return a.theta < b.theta; });
  std::vector<EventPoint> out;
  const double eps = tolerances().angle;
  for (auto& e : ev) {
    if (!out.empty() && e.theta - out.back().theta <= eps) {
      if (e.value > out.back().value && e.kind == out.back().kind) out.back() = e;
      continue;
    }
    out.push_back(e);
  }
  if (out.size() > 1 && out.front().theta + kTwoPi - out.back().theta <= eps) out.pop_back();
  ev = std::move(out);
}
}  // namespace detail

/// Local maxima: stationary points inside pieces and corner maxima.
inline std::vector<EventPoint> local_maxima(const DifferenceCurve& c) {
  const auto& tol = tolerances();
  std::vector<EventPoint> out;
  for (const auto& p : c.pieces) {
    const double amp = p.amplitude();
    if (amp <= tol.value) continue;
    for (double s : {p.phase(), p.phase() + std::numbers::pi})
      detail::for_each_in_range(wrap_angle(s), p.lo, p.hi, tol.angle, [&](double t) {
        out.push_back({wrap_angle(t), amp, EventKind::LocalMax, c.id, {}});
      });
  }
  const std::size_t n = c.pieces.size();
  for (std::size_t k = 0; k < n && n > 1; ++k) {
    const auto& left = c.pieces[k == 0 ? n - 1 : k - 1];
    const auto& right = c.pieces[k];
    const double b = right.lo;
    const double v = std::max(left.value(b), right.value(b));
    if (v <= tol.value) continue;
    if (detail::one_sided_slope(left, b) >= 0.0 && detail::one_sided_slope(right, b) <= 0.0)
      out.push_back({b, v, EventKind::LocalMax, c.id, {}});
  }
  detail::dedupe_events(out);
  return out;
}

/// Angles where the curve equals lambda.
inline std::vector<double> threshold_crossings(const DifferenceCurve& c, double lambda) {
  const auto& tol = tolerances();
  std::vector<double> out;
  for (const auto& p : c.pieces) {
    const double amp = p.amplitude();
    if (amp <= 0.0 || lambda > amp + tol.value) continue;
    std::vector<double> raw;
    const double phi = p.phase();
    if (std::fabs(lambda - amp) <= tol.value) {
      raw = {phi, phi + std::numbers::pi};
    } else {
      const double beta = std::acos(lambda / amp);
      raw = {phi - beta, phi + beta, phi + std::numbers::pi - beta, phi + std::numbers::pi + beta};
    }
    for (double t : raw) {
      const double w = wrap_angle(t);
      detail::for_each_in_range(w, p.lo, p.hi, tol.angle, [&](double x) { out.push_back(wrap_angle(x)); });
    }
  }
  unique_angles(out);
  return out;
}

/// Isolated crossings of two curves; where pieces coincide, the piece
/// boundaries of the coincident stretch are reported instead.
inline std::vector<EventPoint> curve_intersections(const DifferenceCurve& first, const DifferenceCurve& second) {
  const DifferenceCurve& c1 = first.id <= second.id ? first : second;
  const DifferenceCurve& c2 = first.id <= second.id ? second : first;
  const auto& tol = tolerances();
  std::vector<double> bounds;
  for (const auto& p : c1.pieces) bounds.push_back(p.lo);
  for (const auto& p : c2.pieces) bounds.push_back(p.lo);
  bounds.push_back(kTwoPi);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  struct Span {
    double lo, hi;
  };
  std::vector<Span> overlaps;
  std::vector<EventPoint> ev;
  std::size_t i1 = 0, i2 = 0;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    const double a = bounds[k], b = bounds[k + 1];
    if (b - a <= 0.0) continue;
    const double mid = 0.5 * (a + b);
    while (c1.pieces[i1].hi <= mid) ++i1;
    while (c2.pieces[i2].hi <= mid) ++i2;
    const CurvePiece& p1 = c1.pieces[i1];
    const CurvePiece& p2 = c2.pieces[i2];
    const Vec2 s1 = p1.factor * p1.d, s2 = p2.factor * p2.d;
    const Vec2 minus = s1 - s2, plus = s1 + s2;
    const bool same = (p1.d == p2.d && p1.factor == p2.factor) || minus.norm() <= tol.value || plus.norm() <= tol.value;
    if (same) {
      overlaps.push_back({a, b});
      continue;
    }
    for (const Vec2& g : {minus, plus})
      for (double t : orthogonal_angles(g))
        detail::for_each_in_range(t, a, b, tol.angle, [&](double x) {
          const double th = wrap_angle(x);
          ev.push_back({th, p1.value(th), EventKind::CurveIntersect, c1.id, c2.id});
        });
  }
  auto inside = [&](double t) {
    for (const auto& o : overlaps)
      for (double s : {t, t - kTwoPi, t + kTwoPi})
        if (s > o.lo + tol.angle && s < o.hi - tol.angle) return true;
    return false;
  };
  std::erase_if(ev, [&](const EventPoint& e) { return inside(e.theta); });
  for (const auto& o : overlaps)
    for (double t : {o.lo, o.hi}) {
      const double th = wrap_angle(t);
      ev.push_back({th, c1.value(th), EventKind::OverlapEndpoint, c1.id, c2.id});
    }
  detail::dedupe_events(ev);
  return ev;
}

/// Debug dump: curve id, theta, value.
inline void write_curve_samples(std::ostream& out, std::span<const DifferenceCurve> curves, int samples) {
  const auto old = out.precision(17);
  out << "alpha,sigma,same_complex,theta,value\n";
  for (const auto& c : curves)
    for (int i = 0; i < samples; ++i) {
      const double t = kTwoPi * i / samples;
      out << c.id.alpha << ',' << c.id.sigma << ',' << c.id.same_complex << ',' << t << ',' << c.value(t) << '\n';
    }
  out.precision(old);
}

/// All difference curves that can realize a bottleneck cost between K and K'.
/// Global simplex ids: K's simplices first, then K''s (offset by |K|).
/// Kept pairs: cross-complex of equal dimension (matched births, deaths,
/// essential births) and same-complex with dimensions differing by one
/// (half persistence of a point).
class CurveFamily {
 public:
  CurveFamily(const Complex& k, const Complex& kp) : k_(&k), kp_(&kp) {
    const int n = static_cast<int>(k.size()), np = static_cast<int>(kp.size());
    verts_.reserve(n + np);
    dims_.reserve(n + np);
    for (int i = 0; i < n; ++i) {
      verts_.push_back(simplex_vertices(k, k.simplex(i)));
      dims_.push_back(k.simplex(i).dim());
    }
    for (int i = 0; i < np; ++i) {
      verts_.push_back(simplex_vertices(kp, kp.simplex(i)));
      dims_.push_back(kp.simplex(i).dim());
    }
    by_simplex_.assign(n + np, {});
    auto add = [&](int a, int b, bool same) {
      const CurveId id{a, b, same};
      by_simplex_[a].push_back(static_cast<int>(curves_.size()));
      by_simplex_[b].push_back(static_cast<int>(curves_.size()));
      curves_.push_back(difference_curve(verts_[a], verts_[b], id));
    };
    for (int a = 0; a < n; ++a)
      for (int b = n; b < n + np; ++b)
        if (dims_[a] == dims_[b]) add(a, b, false);
    for (int base : {0, n}) {
      const int end = base == 0 ? n : n + np;
      for (int a = base; a < end; ++a)
        for (int b = a + 1; b < end; ++b)
          if (std::abs(dims_[a] - dims_[b]) == 1) add(a, b, true);
    }
  }

  const std::vector<DifferenceCurve>& curves() const { return curves_; }
  const DifferenceCurve& curve(int i) const { return curves_[i]; }
  /// Curve indices involving a simplex.
  const std::vector<int>& curves_of(int simplex) const { return by_simplex_[simplex]; }
  int simplex_count() const { return static_cast<int>(verts_.size()); }
  int first_count() const { return static_cast<int>(k_->size()); }
  const std::vector<Vec2>& vertices_of(int simplex) const { return verts_[simplex]; }

 private:
  const Complex* k_;
  const Complex* kp_;
  std::vector<std::vector<Vec2>> verts_;
  std::vector<int> dims_;
  std::vector<DifferenceCurve> curves_;
  std::vector<std::vector<int>> by_simplex_;
};

}  // namespace pht
