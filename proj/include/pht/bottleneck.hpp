#pragma once

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "persistence.hpp"

namespace pht {

/// Dense bipartite graph on n + n vertices; adj(u, v) is a flat bitmap.
class BipartiteGraph {
 public:
  explicit BipartiteGraph(std::size_t n = 0) : n_(n), adj_(n * n, 0) {}
  std::size_t size() const { return n_; }
  bool has(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
  void set(std::size_t u, std::size_t v, bool present) { adj_[u * n_ + v] = present ? 1 : 0; }

 private:
  std::size_t n_;
  std::vector<char> adj_;
};

struct Matching {
  std::vector<int> mate_u;  // U index -> V index or -1
  std::vector<int> mate_v;  // V index -> U index or -1
  double lambda = 0.0;

  explicit Matching(std::size_t n = 0) : mate_u(n, -1), mate_v(n, -1) {}
  std::size_t cardinality() const {
    return static_cast<std::size_t>(std::count_if(mate_u.begin(), mate_u.end(), [](int v) { return v >= 0; }));
  }
  bool perfect() const { return cardinality() == mate_u.size(); }
  void unmatch(int u) {
    if (u < 0 || mate_u[u] < 0) return;
    mate_v[mate_u[u]] = -1;
    mate_u[u] = -1;
  }
};

/// Maximum matching by Hopcroft-Karp.
inline Matching hopcroft_karp(const BipartiteGraph& g) {
  const int n = static_cast<int>(g.size());
  Matching m(g.size());
  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<int> dist(n);
  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < n; ++u) {
      if (m.mate_u[u] < 0) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kUnreached;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        if (!g.has(u, v)) continue;
        const int w = m.mate_v[v];
        if (w < 0) {
          found = true;
        } else if (dist[w] == kUnreached) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  std::function<bool(int)> dfs = [&](int u) {
    for (int v = 0; v < n; ++v) {
      if (!g.has(u, v)) continue;
      const int w = m.mate_v[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        m.mate_u[u] = v;
        m.mate_v[v] = u;
        return true;
      }
    }
    dist[u] = kUnreached;
    return false;
  };
  while (bfs())
    for (int u = 0; u < n; ++u)
      if (m.mate_u[u] < 0) dfs(u);
  return m;
}

/// Alternating BFS from an exposed U vertex; augments and returns true if an
/// exposed V vertex is reachable.
inline bool augment_from(const BipartiteGraph& g, Matching& m, int root) {
  const int n = static_cast<int>(g.size());
  std::vector<int> parent_v(n, -1);  // V vertex -> U vertex it was reached from
  std::vector<char> seen_u(n, 0);
  std::queue<int> q;
  q.push(root);
  seen_u[root] = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      if (!g.has(u, v) || parent_v[v] >= 0 || m.mate_u[u] == v) continue;
      parent_v[v] = u;
      const int w = m.mate_v[v];
      if (w < 0) {
        int cur_v = v;
        while (cur_v >= 0) {
          const int pu = parent_v[cur_v];
          const int next_v = m.mate_u[pu];
          m.mate_u[pu] = cur_v;
          m.mate_v[cur_v] = pu;
          cur_v = pu == root ? -1 : next_v;
        }
        return true;
      }
      if (!seen_u[w]) {
        seen_u[w] = 1;
        q.push(w);
      }
    }
  }
  return false;
}

/// Off-diagonal diagram point with simplex provenance.
struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;
  int birth_simplex = -1;
  int death_simplex = -1;
};

inline double linf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::fabs(a.birth - b.birth), std::fabs(a.death - b.death));
}
inline double half_persistence(const DiagramPoint& a) { return 0.5 * (a.death - a.birth); }

/// Bipartite graph G of the reduction lemma for one homology dimension.
/// U = X followed by projections of Y; V = Y followed by projections of X.
struct BipartiteInstance {
  std::vector<DiagramPoint> x, y;
  std::vector<double> essential_x, essential_y;  // ascending births
  bool infinite = false;                         // unequal essential counts

  std::size_t size() const { return x.size() + y.size(); }

  double weight(std::size_t u, std::size_t v) const {
    const std::size_t nx = x.size(), ny = y.size();
    if (u < nx) {
      if (v < ny) return linf(x[u], y[v]);
      const std::size_t k = v - ny;
      if (k == u) return half_persistence(x[u]);
      const double m = 0.5 * (x[k].birth + x[k].death);
      return std::max(std::fabs(x[u].birth - m), std::fabs(x[u].death - m));
    }
    const std::size_t k = u - nx;
    if (v >= ny) return 0.0;
    if (k == v) return half_persistence(y[v]);
    const double m = 0.5 * (y[k].birth + y[k].death);
    return std::max(std::fabs(y[v].birth - m), std::fabs(y[v].death - m));
  }

  double essential_cost() const {
    if (infinite) return kInf;
    double c = 0.0;
    for (std::size_t i = 0; i < essential_x.size(); ++i)
      c = std::max(c, std::fabs(essential_x[i] - essential_y[i]));
    return c;
  }

  BipartiteGraph threshold_graph(double lambda) const {
    BipartiteGraph g(size());
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v = 0; v < size(); ++v) g.set(u, v, weight(u, v) <= lambda);
    return g;
  }
};

namespace detail {
inline std::vector<DiagramPoint> off_diagonal(const Diagram& d, int dim) {
  std::vector<DiagramPoint> out;
  for (const auto& p : d.finite(dim)) out.push_back({p.birth, p.death, p.birth_simplex, p.death_simplex});
  return out;
}
}  // namespace detail

inline BipartiteInstance build_instance(const Diagram& x, const Diagram& y, int dim) {
  BipartiteInstance inst;
  inst.x = detail::off_diagonal(x, dim);
  inst.y = detail::off_diagonal(y, dim);
  inst.essential_x = x.essential_births(dim);
  inst.essential_y = y.essential_births(dim);
  inst.infinite = inst.essential_x.size() != inst.essential_y.size();
  return inst;
}

/// d_B(I) <= lambda: perfect matching in G_lambda and essential layer within lambda.
inline bool decide_matching(const BipartiteInstance& inst, double lambda) {
  if (inst.infinite || inst.essential_cost() > lambda) return false;
  if (inst.size() == 0) return true;
  return hopcroft_karp(inst.threshold_graph(lambda)).perfect();
}

/// Sorted distinct values a bottleneck cost can take: matched L-inf
/// distances, half persistences, essential birth gaps.
inline std::vector<double> candidate_costs(const BipartiteInstance& inst) {
  std::vector<double> c{0.0};
  for (const auto& a : inst.x)
    for (const auto& b : inst.y) c.push_back(linf(a, b));
  for (const auto& a : inst.x) c.push_back(half_persistence(a));
  for (const auto& b : inst.y) c.push_back(half_persistence(b));
  if (!inst.infinite)
    for (std::size_t i = 0; i < inst.essential_x.size(); ++i)
      c.push_back(std::fabs(inst.essential_x[i] - inst.essential_y[i]));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

/// Exact bottleneck distance of one instance by binary search over candidate costs.
inline double bottleneck_distance(const BipartiteInstance& inst) {
  if (inst.infinite) return kInf;
  const auto c = candidate_costs(inst);
  std::size_t lo = 0, hi = c.size() - 1;  // the largest candidate always suffices
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (decide_matching(inst, c[mid])) hi = mid; else lo = mid + 1;
  }
  return c[lo];
}

/// Homology dimensions compared between two diagrams.
inline int compared_max_dim(const Diagram& x, const Diagram& y) { return std::max(x.max_dim(), y.max_dim()); }

/// Per-dimension bottleneck distances, combined by max.
inline double bottleneck_distance(const Diagram& x, const Diagram& y) {
  double d = 0.0;
  for (int dim = 0; dim <= compared_max_dim(x, y); ++dim) d = std::max(d, bottleneck_distance(build_instance(x, y, dim)));
  return d;
}

struct Edge {
  int u = -1;
  int v = -1;
};

/// Restores perfection after `removed` leaves G_lambda. Failure (nullopt)
/// means G_lambda minus the edge has no perfect matching.
inline std::optional<Matching> repair_matching(Matching m, Edge removed, const BipartiteInstance& inst, double lambda) {
  if (removed.u < 0 || m.mate_u[removed.u] != removed.v) return m;
  BipartiteGraph g = inst.threshold_graph(lambda);
  g.set(removed.u, removed.v, false);
  m.unmatch(removed.u);
  if (!augment_from(g, m, removed.u)) return std::nullopt;
  m.lambda = lambda;
  return m;
}

}  // namespace pht
