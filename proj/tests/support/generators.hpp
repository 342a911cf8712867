#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <pht/complex.hpp>

namespace pht::gen {

/// Random planar complex: n vertices, about `edge_prob` of the pairs joined,
/// every 3-clique filled with probability `tri_prob`.
inline Complex random_complex(std::mt19937_64& rng, int n, double edge_prob = 0.4, double tri_prob = 0.5,
                              int dim = 2) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0), coin(0.0, 1.0);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.coords.resize(dim);
    for (auto& c : p.coords) c = coord(rng);
  }
  std::vector<Simplex> simplices;
  for (int i = 0; i < n; ++i) simplices.push_back({{i}});
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < edge_prob) {
        edges.insert({i, j});
        simplices.push_back({{i, j}});
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (edges.contains({i, j}) && edges.contains({j, k}) && edges.contains({i, k}) && coin(rng) < tri_prob)
          simplices.push_back({{i, j, k}});
  return Complex(dim, std::move(pts), std::move(simplices));
}

/// Same combinatorics, every coordinate moved by up to `eps`.
inline Complex perturbed(const Complex& k, std::mt19937_64& rng, double eps) {
  std::uniform_real_distribution<double> d(-eps, eps);
  auto pts = k.vertices();
  for (auto& p : pts)
    for (auto& c : p.coords) c += d(rng);
  return Complex(k.ambient_dim(), std::move(pts), k.simplices());
}

}  // namespace pht::gen
