#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace pht {

/// Raised for any malformed or invalid input (files, CLI arguments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  std::vector<double> coords;

  double norm() const {
    double s = 0.0;
    for (double c : coords) s += c * c;
    return std::sqrt(s);
  }
  double dot(const std::vector<double>& w) const {
    double s = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) s += coords[i] * w[i];
    return s;
  }
  bool operator==(const Point&) const = default;
};

struct Simplex {
  std::vector<int> vertex_ids;  // strictly increasing

  int dim() const { return static_cast<int>(vertex_ids.size()) - 1; }

  /// Canonical order: by dimension, then lexicographic.
  friend bool operator<(const Simplex& a, const Simplex& b) {
    if (a.vertex_ids.size() != b.vertex_ids.size())
      return a.vertex_ids.size() < b.vertex_ids.size();
    return a.vertex_ids < b.vertex_ids;
  }
  bool operator==(const Simplex&) const = default;
};

/// Immutable, validated, face-closed simplicial complex with vertex coordinates.
class Complex {
 public:
  Complex() = default;

  /// Validates and canonicalizes. Throws InputError on any violation.
  Complex(int ambient_dim, std::vector<Point> vertices, std::vector<Simplex> simplices)
      : ambient_dim_(ambient_dim), vertices_(std::move(vertices)), simplices_(std::move(simplices)) {
    validate_and_canonicalize();
  }

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  const Simplex& simplex(std::size_t i) const { return simplices_[i]; }
  int max_dim() const { return simplices_.empty() ? -1 : simplices_.back().dim(); }

  /// Index of a simplex given its sorted vertex ids, or -1.
  int find(const std::vector<int>& ids) const {
    auto it = index_.find(ids);
    return it == index_.end() ? -1 : it->second;
  }

  /// Indices of the codimension-one faces of simplex i (empty for vertices).
  const std::vector<int>& boundary(std::size_t i) const { return boundary_[i]; }

  /// The complex with every vertex moved by `offset`.
  Complex translated(const std::vector<double>& offset) const {
    std::vector<Point> moved = vertices_;
    for (auto& p : moved)
      for (std::size_t k = 0; k < p.coords.size(); ++k) p.coords[k] += offset[k];
    return Complex(ambient_dim_, std::move(moved), simplices_);
  }

 private:
  void validate_and_canonicalize() {
    if (ambient_dim_ != 2 && ambient_dim_ != 3) throw InputError("ambient dimension must be 2 or 3");
    if (vertices_.empty() || simplices_.empty()) throw InputError("empty complex");
    for (const auto& p : vertices_) {
      if (static_cast<int>(p.coords.size()) != ambient_dim_) throw InputError("wrong coordinate arity");
      for (double c : p.coords)
        if (!std::isfinite(c)) throw InputError("non-finite coordinate");
    }
    const int nv = static_cast<int>(vertices_.size());
    for (auto& s : simplices_) {
      if (s.vertex_ids.empty()) throw InputError("empty simplex");
      std::sort(s.vertex_ids.begin(), s.vertex_ids.end());
      if (std::adjacent_find(s.vertex_ids.begin(), s.vertex_ids.end()) != s.vertex_ids.end())
        throw InputError("repeated vertex in simplex");
      if (s.dim() > ambient_dim_) throw InputError("simplex dimension exceeds ambient dimension");
      for (int v : s.vertex_ids)
        if (v < 0 || v >= nv) throw InputError("index out of range");
    }
    std::sort(simplices_.begin(), simplices_.end());
    if (std::adjacent_find(simplices_.begin(), simplices_.end()) != simplices_.end())
      throw InputError("duplicate simplex");
    index_.clear();
    for (std::size_t i = 0; i < simplices_.size(); ++i)
      index_.emplace(simplices_[i].vertex_ids, static_cast<int>(i));
    for (int v = 0; v < nv; ++v)
      if (!index_.contains({v})) throw InputError("vertex " + std::to_string(v) + " has no 0-simplex");
    boundary_.assign(simplices_.size(), {});
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
      const auto& ids = simplices_[i].vertex_ids;
      if (ids.size() < 2) continue;
      for (std::size_t drop = 0; drop < ids.size(); ++drop) {
        std::vector<int> face;
        for (std::size_t k = 0; k < ids.size(); ++k)
          if (k != drop) face.push_back(ids[k]);
        auto it = index_.find(face);
        if (it == index_.end()) throw InputError("missing face");
        boundary_[i].push_back(it->second);
      }
      std::sort(boundary_[i].begin(), boundary_[i].end());
    }
  }

  int ambient_dim_ = 2;
  std::vector<Point> vertices_;
  std::vector<Simplex> simplices_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<int>> boundary_;
};

inline Complex parse_complex(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed syntax: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices") || !j.contains("simplices"))
      throw InputError("malformed syntax: expected object with dim, vertices, simplices");
    const int dim = j.at("dim").get<int>();
    std::vector<Point> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(Point{v.get<std::vector<double>>()});
    std::vector<Simplex> simplices;
    for (const auto& s : j.at("simplices")) simplices.push_back(Simplex{s.get<std::vector<int>>()});
    return Complex(dim, std::move(vertices), std::move(simplices));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed syntax: ") + e.what());
  }
}

inline Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  return parse_complex(in);
}

/// Canonical serialization; doubles printed with 17 significant digits.
inline std::string serialize_complex(const Complex& k) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "{\"dim\": " << k.ambient_dim() << ", \"vertices\": [";
  for (std::size_t i = 0; i < k.vertices().size(); ++i) {
    if (i) out << ", ";
    out << "[";
    const auto& c = k.vertices()[i].coords;
    for (std::size_t j = 0; j < c.size(); ++j) out << (j ? ", " : "") << c[j];
    out << "]";
  }
  out << "], \"simplices\": [";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out << ", ";
    out << "[";
    const auto& ids = k.simplex(i).vertex_ids;
    for (std::size_t j = 0; j < ids.size(); ++j) out << (j ? ", " : "") << ids[j];
    out << "]";
  }
  out << "]}";
  return out.str();
}

/// Largest vertex norm; the Lipschitz constant of the directional height.
inline double enclosing_radius(const Complex& k) {
  if (k.vertices().empty()) throw InputError("empty complex");
  double r = 0.0;
  for (const auto& v : k.vertices()) r = std::max(r, v.norm());
  return r;
}

namespace detail {
/// Rank over Z/2 of the boundary map from dimension-`dim` simplices.
inline int boundary_rank(const Complex& k, int dim) {
  std::vector<std::vector<int>> columns;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k.simplex(i).dim() == dim) columns.push_back(k.boundary(i));
  std::map<int, std::vector<int>> pivots;  // lowest row -> reduced column
  int rank = 0;
  for (auto col : columns) {
    while (!col.empty()) {
      auto it = pivots.find(col.back());
      if (it == pivots.end()) break;
      std::vector<int> sum;
      std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(sum));
      col = std::move(sum);
    }
    if (!col.empty()) {
      pivots.emplace(col.back(), col);
      ++rank;
    }
  }
  return rank;
}
}  // namespace detail

/// Betti numbers over Z/2 for dims 0..m-1 (2D) or 0..m (3D).
inline std::vector<int> betti_numbers(const Complex& k) {
  const int top = k.ambient_dim() == 2 ? 1 : 3;
  std::vector<int> counts(top + 2, 0);
  for (const auto& s : k.simplices()) counts[s.dim()]++;
  std::vector<int> ranks(top + 3, 0);
  for (int d = 1; d <= top + 1; ++d) ranks[d] = detail::boundary_rank(k, d);
  std::vector<int> betti(top + 1);
  for (int d = 0; d <= top; ++d) betti[d] = counts[d] - ranks[d] - ranks[d + 1];
  return betti;
}

}  // namespace pht
