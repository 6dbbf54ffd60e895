#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "tam/assembly.hpp"

namespace tam {

struct BondEdge {
  std::size_t u = 0;  // indices into BindingGraph::vertices
  std::size_t v = 0;
  int weight = 0;

  friend bool operator==(const BondEdge&, const BondEdge&) = default;
};

/// Weighted graph on the occupied points of an assembly, with one edge per
/// pair of adjacent interacting tiles. Vertices are in y-major point order.
struct BindingGraph {
  std::vector<Point> vertices;
  std::vector<BondEdge> edges;
};

inline BindingGraph binding_graph(const Assembly& alpha, const TileSystem& sys) {
  alpha.check_tiles(sys);
  BindingGraph g;
  g.vertices = alpha.domain();
  const auto placements = alpha.placements();
  for (std::size_t i = 0; i < placements.size(); ++i) {
    for (Direction d : {Direction::East, Direction::North}) {
      const Point q = neighbor(placements[i].point, d);
      auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), q);
      if (it == g.vertices.end() || *it != q) continue;
      const auto j = static_cast<std::size_t>(it - g.vertices.begin());
      const int w = sys.bond(placements[i].tile, d, placements[j].tile);
      if (w > 0) g.edges.push_back({i, j, w});
    }
  }
  return g;
}

/// Global minimum cut weight of an undirected weighted graph (Stoer-Wagner).
/// Returns nullopt for graphs with fewer than two vertices, where no cut exists.
inline std::optional<long long> min_cut_weight(std::size_t vertex_count,
                                               std::span<const BondEdge> edges) {
  if (vertex_count < 2) return std::nullopt;
  const std::size_t n = vertex_count;
  std::vector<long long> w(n * n, 0);
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    w[e.u * n + e.v] += e.weight;
    w[e.v * n + e.u] += e.weight;
  }

  std::vector<std::size_t> alive(n);
  for (std::size_t i = 0; i < n; ++i) alive[i] = i;
  long long best = std::numeric_limits<long long>::max();
  std::vector<long long> key(n);
  std::vector<bool> added(n);

  while (alive.size() > 1) {
    // Maximum adjacency ordering over the surviving super-vertices.
    std::fill(key.begin(), key.end(), 0);
    std::fill(added.begin(), added.end(), false);
    std::size_t prev = alive[0], last = alive[0];
    for (std::size_t step = 0; step < alive.size(); ++step) {
      std::size_t pick = n;
      for (std::size_t v : alive)
        if (!added[v] && (pick == n || key[v] > key[pick])) pick = v;
      added[pick] = true;
      prev = last;
      last = pick;
      if (step + 1 == alive.size()) {
        best = std::min(best, key[pick]);
        break;
      }
      for (std::size_t v : alive)
        if (!added[v]) key[v] += w[pick * n + v];
    }
    // Merge `last` into `prev`.
    for (std::size_t v : alive) {
      w[prev * n + v] += w[last * n + v];
      w[v * n + prev] = w[prev * n + v];
    }
    w[prev * n + prev] = 0;
    alive.erase(std::find(alive.begin(), alive.end(), last));
  }
  return best;
}

/// alpha is tau-stable iff every cut of its binding graph has weight >= tau.
/// Single-tile assemblies are stable (there is no cut).
inline bool is_tau_stable(const Assembly& alpha, const TileSystem& sys, int tau = kTemperature) {
  const BindingGraph g = binding_graph(alpha, sys);
  const auto cut = min_cut_weight(g.vertices.size(), g.edges);
  return !cut || *cut >= tau;
}

}  // namespace tam
