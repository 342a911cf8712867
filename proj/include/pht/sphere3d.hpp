#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "complex.hpp"
#include "oracle.hpp"
#include "persistence.hpp"

namespace pht {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  bool operator==(const Vec3&) const = default;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Vec3 normalized() const { return (1.0 / norm()) * *this; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }

inline Vec3 vertex_position3(const Complex& k, int v) {
  const auto& c = k.vertices()[v].coords;
  return {c[0], c[1], c[2]};
}

inline Direction to_direction(Vec3 w) { return Direction::unit({w.x, w.y, w.z}); }

inline double evaluate_H3(const Complex& k, const Complex& kp, const Direction& omega) {
  if (k.ambient_dim() != 3 || kp.ambient_dim() != 3) throw InputError("3D evaluation needs 3D complexes");
  return evaluate_H(k, kp, omega);
}

// ---------------------------------------------------------------- covering

/// Geodesic icosphere: level L splits every icosahedron edge into 2^L parts.
struct SphereMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  /// Upper bound on the chordal distance from any point of S^2 to the nearest
  /// mesh vertex: the largest chordal circumradius over the triangles.
  double covering_radius() const {
    double r = 0.0;
    for (const auto& t : triangles) {
      const Vec3 a = vertices[t[0]], b = vertices[t[1]], c = vertices[t[2]];
      Vec3 n = cross(b - a, c - a).normalized();
      if (dot(n, a) < 0) n = -1.0 * n;
      r = std::max({r, (n - a).norm(), (n - b).norm(), (n - c).norm()});
    }
    return r;
  }
};

inline SphereMesh icosphere(int level) {
  if (level < 0) throw std::invalid_argument("negative subdivision level");
  const double p = 0.5 * (1.0 + std::sqrt(5.0));
  SphereMesh m;
  for (Vec3 v : {Vec3{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p}, {0, -1, -p}, {0, 1, -p},
                 {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}})
    m.vertices.push_back(v.normalized());
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                 {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                 {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      m.vertices.push_back((m.vertices[a] + m.vertices[b]).normalized());
      const int id = static_cast<int>(m.vertices.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(m.triangles.size() * 4);
    for (const auto& t : m.triangles) {
      const int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }
  return m;
}

struct SphereSample {
  Vec3 omega;
  double h = 0.0;
};

struct SampledBound3 {
  double lower = 0.0;
  double upper = 0.0;
  double delta = 0.0;  // covering radius actually used
  int level = 0;
  Vec3 argmax;
  std::vector<SphereSample> samples;
};

inline SampledBound3 sampled_dinf3_level(const Complex& k, const Complex& kp, int level) {
  const SphereMesh mesh = icosphere(level);
  SampledBound3 b;
  b.level = level;
  b.delta = mesh.covering_radius();
  b.samples.reserve(mesh.vertices.size());
  for (const Vec3& w : mesh.vertices) {
    const double h = evaluate_H3(k, kp, to_direction(w));
    b.samples.push_back({w, h});
    if (h > b.lower) {
      b.lower = h;
      b.argmax = w;
    }
  }
  b.upper = b.lower + (enclosing_radius(k) + enclosing_radius(kp)) * b.delta;
  return b;
}

/// Certified bracket of the maximum over S^2 using the coarsest icosphere
/// whose covering radius is at most `delta`.
inline SampledBound3 sampled_dinf3(const Complex& k, const Complex& kp, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("covering parameter must be positive");
  int level = 0;
  while (icosphere(level).covering_radius() > delta) {
    if (++level > 9) throw std::invalid_argument("covering parameter too small");
  }
  return sampled_dinf3_level(k, kp, level);
}

inline void write_sphere_samples(std::ostream& out, const SampledBound3& b) {
  const auto prec = out.precision(17);
  out << "omega_x,omega_y,omega_z,H\n";
  for (const auto& s : b.samples) out << s.omega.x << ',' << s.omega.y << ',' << s.omega.z << ',' << s.h << '\n';
  out.precision(prec);
}

// ---------------------------------------------------------------- surfaces

/// Region of S^2 where the active vertices (u of alpha, w of sigma) are fixed;
/// there the surface is f * |<u - w, omega>|.
struct SurfaceRegion {
  int u = 0, w = 0;          // indices into the simplices' vertex lists
  Vec3 d;                    // u - w
  double factor = 1.0;
  std::vector<Vec3> bounds;  // region = { omega : <n, omega> >= 0 for all n }
};

struct DifferenceSurface {
  std::vector<Vec3> alpha, sigma;
  double factor = 1.0;
  std::vector<SurfaceRegion> regions;
};

inline DifferenceSurface difference_surface(std::vector<Vec3> alpha, std::vector<Vec3> sigma, double factor = 1.0) {
  DifferenceSurface s{std::move(alpha), std::move(sigma), factor, {}};
  for (std::size_t i = 0; i < s.alpha.size(); ++i)
    for (std::size_t j = 0; j < s.sigma.size(); ++j) {
      SurfaceRegion r{static_cast<int>(i), static_cast<int>(j), s.alpha[i] - s.sigma[j], factor, {}};
      for (std::size_t o = 0; o < s.alpha.size(); ++o)
        if (o != i && !(s.alpha[o] == s.alpha[i])) r.bounds.push_back(s.alpha[i] - s.alpha[o]);
      for (std::size_t o = 0; o < s.sigma.size(); ++o)
        if (o != j && !(s.sigma[o] == s.sigma[j])) r.bounds.push_back(s.sigma[j] - s.sigma[o]);
      s.regions.push_back(std::move(r));
    }
  return s;
}

inline double surface_value(const DifferenceSurface& s, Vec3 omega) {
  double a = -kInf, b = -kInf;
  for (const auto& v : s.alpha) a = std::max(a, dot(v, omega));
  for (const auto& v : s.sigma) b = std::max(b, dot(v, omega));
  return s.factor * std::fabs(a - b);
}

/// Arc of the great circle {cos t p + sin t q : t in [t0, t1]} with normal
/// `normal` (so p, q, normal are orthonormal).
struct GreatCircleArc {
  Vec3 normal, p, q;
  double t0 = 0.0, t1 = kTwoPi;
  int region1 = -1, region2 = -1;

  Vec3 at(double t) const { return std::cos(t) * p + std::sin(t) * q; }
};

struct SurfaceIntersection {
  bool full_overlap = false;
  std::vector<GreatCircleArc> arcs;
};

namespace detail {
using Intervals = std::vector<std::pair<double, double>>;

inline Intervals intersect(const Intervals& a, const Intervals& b) {
  Intervals out;
  for (auto [a0, a1] : a)
    for (auto [b0, b1] : b) {
      const double lo = std::max(a0, b0), hi = std::min(a1, b1);
      if (hi > lo) out.emplace_back(lo, hi);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// { t in [0, 2pi] : a cos t + b sin t >= 0 } as at most two intervals.
inline Intervals half_circle(double a, double b) {
  if (a == 0.0 && b == 0.0) return {{0.0, kTwoPi}};
  const double c = wrap_angle(std::atan2(b, a));
  const double lo = c - 0.5 * std::numbers::pi, hi = c + 0.5 * std::numbers::pi;
  if (lo < 0.0) return {{0.0, hi}, {lo + kTwoPi, kTwoPi}};
  if (hi > kTwoPi) return {{0.0, hi - kTwoPi}, {lo, kTwoPi}};
  return {{lo, hi}};
}

inline std::pair<Vec3, Vec3> circle_basis(Vec3 n) {
  n = n.normalized();
  const Vec3 helper = std::fabs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 p = cross(n, helper).normalized();
  return {p, cross(n, p)};
}
}  // namespace detail

/// Great-circle arcs where two difference surfaces agree: per region pair, the
/// sign split <f1 d1 -/+ f2 d2, omega> = 0 clipped to both regions.
inline SurfaceIntersection surface_intersection_arcs(const DifferenceSurface& s1, const DifferenceSurface& s2) {
  SurfaceIntersection out;
  if (s1.factor == s2.factor && s1.alpha == s2.alpha && s1.sigma == s2.sigma) {
    out.full_overlap = true;
    return out;
  }
  const double eps = tolerances().value;
  for (std::size_t i = 0; i < s1.regions.size(); ++i)
    for (std::size_t j = 0; j < s2.regions.size(); ++j) {
      const auto& r1 = s1.regions[i];
      const auto& r2 = s2.regions[j];
      for (double sign : {1.0, -1.0}) {
        const Vec3 g = r1.factor * r1.d - sign * r2.factor * r2.d;
        if (g.norm() <= eps) continue;  // coincident pieces: no transverse arc
        const auto [p, q] = detail::circle_basis(g);
        detail::Intervals allowed{{0.0, kTwoPi}};
        for (const auto* r : {&r1, &r2})
          for (const Vec3& n : r->bounds) allowed = detail::intersect(allowed, detail::half_circle(dot(n, p), dot(n, q)));
        for (auto [a, b] : allowed) out.arcs.push_back({g.normalized(), p, q, a, b, static_cast<int>(i), static_cast<int>(j)});
      }
    }
  return out;
}

/// Level set { omega : f |<d, omega>| = lambda } as the two planes
/// <d/|d|, omega> = +-offset; empty (offset > 1) when lambda exceeds f|d|.
struct ThresholdCircles {
  Vec3 axis;
  double offset = 0.0;
  bool empty = true;
};

inline ThresholdCircles threshold_circles(Vec3 d, double factor, double lambda) {
  ThresholdCircles c;
  const double r = factor * d.norm();
  if (r == 0.0) return c;
  c.axis = d.normalized();
  c.offset = lambda / r;
  c.empty = c.offset > 1.0;
  return c;
}

}  // namespace pht
