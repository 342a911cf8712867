#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "complex.hpp"
#include "tolerance.hpp"

namespace pht {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A direction on S^{m-1}: an angle for the circle, a unit vector for the sphere.
struct Direction {
  std::vector<double> w;
  double theta = 0.0;  // meaningful for m = 2 only

  static Direction angle(double t) {
    const double c = wrap_angle(t);
    return Direction{{std::cos(c), std::sin(c)}, c};
  }
  static Direction unit(std::vector<double> v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (std::fabs(n - 1.0) > 1e-12) throw InputError("direction must have unit norm");
    Direction d{std::move(v), 0.0};
    if (d.w.size() == 2) d.theta = wrap_angle(std::atan2(d.w[1], d.w[0]));
    return d;
  }
};

/// Vertex heights <v, w>.
inline std::vector<double> vertex_heights(const Complex& k, const std::vector<double>& w) {
  if (w.size() != static_cast<std::size_t>(k.ambient_dim()))
    throw InputError("direction dimension does not match complex");
  std::vector<double> h;
  h.reserve(k.vertices().size());
  for (const auto& v : k.vertices()) h.push_back(v.dot(w));
  return h;
}

/// Lower-star filtration: simplices by (value, dimension, id).
struct Filtration {
  std::vector<int> order;      // simplex ids in filtration order
  std::vector<double> values;  // value per simplex id

  std::size_t size() const { return order.size(); }
};

inline Filtration lower_star_filtration_from_heights(const Complex& k, const std::vector<double>& heights) {
  Filtration f;
  f.values.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    double v = -kInf;
    for (int id : k.simplex(i).vertex_ids) v = std::max(v, heights[id]);
    f.values[i] = v;
  }
  f.order.resize(k.size());
  std::iota(f.order.begin(), f.order.end(), 0);
  std::sort(f.order.begin(), f.order.end(), [&](int a, int b) {
    if (f.values[a] != f.values[b]) return f.values[a] < f.values[b];
    const int da = k.simplex(a).dim(), db = k.simplex(b).dim();
    if (da != db) return da < db;
    return a < b;
  });
  return f;
}

inline Filtration lower_star_filtration(const Complex& k, const Direction& omega) {
  return lower_star_filtration_from_heights(k, vertex_heights(k, omega.w));
}

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInf;
  int birth_simplex = -1;
  int death_simplex = -1;  // -1 for essential classes

  bool essential() const { return death_simplex < 0; }
  bool zero_persistence() const { return !essential() && death == birth; }
  double persistence() const { return death - birth; }
};

struct Diagram {
  std::vector<PersistencePair> pairs;
  Direction direction;

  /// Off-diagonal finite points of one homology dimension.
  std::vector<PersistencePair> finite(int dim) const {
    std::vector<PersistencePair> out;
    for (const auto& p : pairs)
      if (p.dim == dim && !p.essential() && !p.zero_persistence()) out.push_back(p);
    return out;
  }
  /// Births of essential classes of one dimension, ascending.
  std::vector<double> essential_births(int dim) const {
    std::vector<double> out;
    for (const auto& p : pairs)
      if (p.dim == dim && p.essential()) out.push_back(p.birth);
    std::sort(out.begin(), out.end());
    return out;
  }
  int essential_count(int dim) const {
    int c = 0;
    for (const auto& p : pairs) c += (p.dim == dim && p.essential());
    return c;
  }
  int max_dim() const {
    int m = -1;
    for (const auto& p : pairs) m = std::max(m, p.dim);
    return m;
  }
};

/// Canonical pair order, used to compare diagrams as multisets.
inline bool pair_less(const PersistencePair& a, const PersistencePair& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.death != b.death) return a.death < b.death;
  if (a.birth_simplex != b.birth_simplex) return a.birth_simplex < b.birth_simplex;
  return a.death_simplex < b.death_simplex;
}

/// Standard Z/2 column reduction of the filtered boundary matrix.
inline Diagram compute_persistence(const Complex& k, const Filtration& f) {
  const std::size_t n = f.size();
  std::vector<int> pos(k.size());
  for (std::size_t i = 0; i < n; ++i) pos[f.order[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int face : k.boundary(f.order[j])) cols[j].push_back(pos[face]);
    std::sort(cols[j].begin(), cols[j].end());
  }
  std::vector<int> low_owner(n, -1);
  std::vector<bool> killed(n, false);
  Diagram dg;
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = cols[j];
    while (!col.empty() && low_owner[col.back()] >= 0) {
      const auto& other = cols[low_owner[col.back()]];
      std::vector<int> sum;
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(sum));
      col = std::move(sum);
    }
    if (!col.empty()) {
      const int i = col.back();
      low_owner[i] = static_cast<int>(j);
      killed[i] = true;
      const int b = f.order[i], d = f.order[j];
      dg.pairs.push_back({k.simplex(b).dim(), f.values[b], f.values[d], b, d});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (killed[i] || !cols[i].empty()) continue;
    const int b = f.order[i];
    dg.pairs.push_back({k.simplex(b).dim(), f.values[b], kInf, b, -1});
  }
  std::sort(dg.pairs.begin(), dg.pairs.end(), pair_less);
  return dg;
}

inline Diagram compute_persistence(const Complex& k, const Direction& omega) {
  Diagram d = compute_persistence(k, lower_star_filtration(k, omega));
  d.direction = omega;
  return d;
}

/// R = D V decomposition of a filtered boundary matrix supporting adjacent
/// transpositions of the filtration order (vineyard updates).
class PairingState {
 public:
  PairingState(const Complex& k, const Filtration& f) : complex_(&k), order_(f.order), values_(f.values) {
    const std::size_t n = order_.size();
    pos_.assign(k.size(), -1);
    for (std::size_t i = 0; i < n; ++i) pos_[order_[i]] = static_cast<int>(i);
    r_.assign(n, std::vector<char>(n, 0));
    v_.assign(n, std::vector<char>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
      for (int face : k.boundary(order_[j])) r_[j][pos_[face]] = 1;
      v_[j][j] = 1;
    }
    low_.assign(n, -1);
    owner_.assign(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
      int l = compute_low(j);
      while (l >= 0 && owner_[l] >= 0) {
        add_column(owner_[l], j);
        l = compute_low(j);
      }
      low_[j] = l;
      if (l >= 0) owner_[l] = static_cast<int>(j);
    }
  }

  std::size_t size() const { return order_.size(); }
  const std::vector<int>& order() const { return order_; }
  int position(int simplex) const { return pos_[simplex]; }
  void set_values(const std::vector<double>& values) { values_ = values; }
  const std::vector<double>& values() const { return values_; }

  /// True if positions i and i+1 hold a face/coface pair.
  bool incident(std::size_t i) const {
    const auto& bd = complex_->boundary(order_[i + 1]);
    return std::binary_search(bd.begin(), bd.end(), order_[i]);
  }

  /// Swaps filtration positions i and i+1, keeping R = D V reduced.
  void transpose(std::size_t i) {
    if (i + 1 >= order_.size()) throw std::out_of_range("transpose position out of range");
    if (incident(i)) throw std::invalid_argument("illegal swap of incident simplices");
    const std::size_t j = i + 1;
    const bool pos_i = low_[i] < 0, pos_j = low_[j] < 0;
    if (pos_i && pos_j) {
      if (v_[j][i]) add_column(i, j);  // R col i is zero, only V changes
      const int k = owner_[i], l = owner_[j];
      if (k >= 0 && l >= 0 && r_[l][i]) {
        permute(i);
        if (k < l) {
          add_column(k, l);
        } else {
          add_column(l, k);
        }
      } else {
        permute(i);
      }
    } else if (!pos_i && !pos_j) {
      if (v_[j][i]) {
        const int low_i = low_[i], low_j = low_[j];
        add_column(i, j);
        if (low_i < low_j) {
          permute(i);
        } else {
          permute(i);
          add_column(i, j);
        }
      } else {
        permute(i);
      }
    } else if (!pos_i && pos_j) {
      if (v_[j][i]) {
        add_column(i, j);
        permute(i);
        add_column(i, j);
      } else {
        permute(i);
      }
    } else {
      if (v_[j][i]) add_column(i, j);  // R col i is zero, only V changes
      permute(i);
    }
    refresh_lows();
  }

  Diagram diagram() const {
    Diagram dg;
    const std::size_t n = order_.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (low_[j] < 0) continue;
      const int b = order_[low_[j]], d = order_[j];
      dg.pairs.push_back({complex_->simplex(b).dim(), values_[b], values_[d], b, d});
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (low_[i] >= 0 || owner_[i] >= 0) continue;
      const int b = order_[i];
      dg.pairs.push_back({complex_->simplex(b).dim(), values_[b], kInf, b, -1});
    }
    std::sort(dg.pairs.begin(), dg.pairs.end(), pair_less);
    return dg;
  }

  /// Applies adjacent transpositions until the order equals `target`.
  /// Only inverted neighbours are swapped, so every step is legal when both
  /// orders are valid filtrations. Returns the number of swaps.
  std::size_t reorder(const std::vector<int>& target) {
    std::size_t swaps = 0;
    for (std::size_t t = 0; t < target.size(); ++t) {
      std::size_t p = static_cast<std::size_t>(pos_[target[t]]);
      while (p > t) {
        transpose(p - 1);
        --p;
        ++swaps;
      }
    }
    return swaps;
  }

 private:
  int compute_low(std::size_t j) const {
    for (std::size_t r = r_[j].size(); r-- > 0;)
      if (r_[j][r]) return static_cast<int>(r);
    return -1;
  }
  void add_column(std::size_t src, std::size_t dst) {
    for (std::size_t r = 0; r < r_[src].size(); ++r) {
      r_[dst][r] ^= r_[src][r];
      v_[dst][r] ^= v_[src][r];
    }
  }
  // v_[col][row]: V stored column-major like R.
  void permute(std::size_t i) {
    const std::size_t j = i + 1;
    std::swap(r_[i], r_[j]);
    std::swap(v_[i], v_[j]);
    for (auto& c : r_) std::swap(c[i], c[j]);
    for (auto& c : v_) std::swap(c[i], c[j]);
    std::swap(order_[i], order_[j]);
    pos_[order_[i]] = static_cast<int>(i);
    pos_[order_[j]] = static_cast<int>(j);
  }
  void refresh_lows() {
    std::fill(owner_.begin(), owner_.end(), -1);
    for (std::size_t j = 0; j < order_.size(); ++j) {
      low_[j] = compute_low(j);
      if (low_[j] >= 0) {
        if (owner_[low_[j]] >= 0) throw std::logic_error("vineyard update left R unreduced");
        owner_[low_[j]] = static_cast<int>(j);
      }
    }
  }

  const Complex* complex_;
  std::vector<int> order_;
  std::vector<double> values_;
  std::vector<int> pos_;
  std::vector<std::vector<char>> r_, v_;  // column-major: r_[col][row]
  std::vector<int> low_, owner_;
};

inline void write_diagram_csv(std::ostream& out, const Diagram& d) {
  const auto old = out.precision(17);
  out << "dim,birth,death,birth_simplex,death_simplex\n";
  for (const auto& p : d.pairs) {
    out << p.dim << ',' << p.birth << ',';
    if (p.essential()) out << "inf"; else out << p.death;
    out << ',' << p.birth_simplex << ',';
    if (p.essential()) out << "none"; else out << p.death_simplex;
    out << '\n';
  }
  out.precision(old);
}

/// Reads dim,birth,death[,birth_simplex,death_simplex]; a header line is optional.
inline Diagram read_diagram_csv(std::istream& in) {
  Diagram d;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("dim", 0) == 0) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() < 3) throw InputError("diagram line " + std::to_string(lineno) + ": expected dim,birth,death");
    try {
      PersistencePair p;
      p.dim = std::stoi(fields[0]);
      p.birth = std::stod(fields[1]);
      const bool ess = fields[2] == "inf" || fields[2] == "+inf";
      p.death = ess ? kInf : std::stod(fields[2]);
      p.birth_simplex = fields.size() > 3 ? std::stoi(fields[3]) : static_cast<int>(d.pairs.size());
      if (ess) {
        p.death_simplex = -1;
      } else {
        p.death_simplex = (fields.size() > 4 && fields[4] != "none") ? std::stoi(fields[4])
                                                                      : static_cast<int>(d.pairs.size());
      }
      if (!std::isfinite(p.birth) || (!ess && (!std::isfinite(p.death) || p.death < p.birth)))
        throw InputError("diagram line " + std::to_string(lineno) + ": need finite birth <= death");
      d.pairs.push_back(p);
    } catch (const std::logic_error&) {
      throw InputError("diagram line " + std::to_string(lineno) + ": bad number");
    }
  }
  return d;
}

}  // namespace pht
