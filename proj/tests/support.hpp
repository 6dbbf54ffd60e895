#pragma once

// Fixtures, generators and brute-force oracles shared by the test suites.
// The oracles deliberately avoid the library's hot paths: they compare glue
// strings directly and never use canonical keys or the bond tables.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tam/tam.hpp"

namespace tam::testing {

inline Glue G(std::string label, int strength) { return Glue{std::move(label), strength}; }

/// Seed with an east double glue; two tile types that both bind there.
inline TileSystem nds() {
  return TileSystem({make_tile({.name = "S", .east = G("g", 2)}),
                     make_tile({.name = "B", .west = G("g", 2)}),
                     make_tile({.name = "C", .west = G("g", 2)})},
                    0, {0, 0}, "nds");
}

/// 2x2 square whose corner K needs two cooperating single bonds.
inline TileSystem coop() {
  return TileSystem({make_tile({.name = "S", .north = G("n", 2), .east = G("e", 2)}),
                     make_tile({.name = "R", .north = G("c", 1), .west = G("e", 2)}),
                     make_tile({.name = "U", .east = G("c", 1), .south = G("n", 2)}),
                     make_tile({.name = "K", .south = G("c", 1), .west = G("c", 1)})},
                    0, {0, 0}, "coop");
}

/// Infinite eastward ray.
inline TileSystem ray() {
  return TileSystem({make_tile({.name = "S", .east = G("r", 2)}),
                     make_tile({.name = "R", .east = G("r", 2), .west = G("r", 2)})},
                    0, {0, 0}, "ray");
}

inline Shape square2() { return Shape{{0, 0}, {1, 0}, {0, 1}, {1, 1}}; }
inline Shape domino() { return Shape{{0, 0}, {1, 0}}; }

/// Random normalized system: k tile types, glue labels drawn from `labels`
/// letters, each side null with probability `p_null`.
inline TileSystem random_system(std::mt19937_64& rng, std::size_t k, int labels, double p_null,
                                double p_double = 0.5) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> lab(0, labels - 1);
  RawTileSystem raw;
  raw.name = "random";
  for (std::size_t t = 0; t < k; ++t) {
    TileType tile;
    tile.name = "t" + std::to_string(t);
    for (Direction d : kDirections) {
      if (u(rng) < p_null) continue;
      tile.glue(d) = Glue{std::string(1, static_cast<char>('a' + lab(rng))), u(rng) < p_double ? 2 : 1};
    }
    raw.tile_types.push_back(std::move(tile));
  }
  raw.seed_tile = 0;
  return normalize_system(std::move(raw)).system;
}

/// Random system whose seed is guaranteed to grow: its east glue is a double
/// glue that tile 1 accepts on its west side.
inline TileSystem random_growing_system(std::mt19937_64& rng, std::size_t k, int labels,
                                        double p_null) {
  RawTileSystem raw = to_raw(random_system(rng, std::max<std::size_t>(k, 2), labels, p_null));
  raw.tile_types[0].glue(Direction::East) = Glue{"z", 2};
  raw.tile_types[1].glue(Direction::West) = Glue{"z", 2};
  return normalize_system(std::move(raw)).system;
}

// ---------------------------------------------------------------------------
// Oracles

using PlainAssembly = std::vector<std::pair<Point, TileIndex>>;  // sorted by point

inline PlainAssembly plain(const Assembly& a) {
  PlainAssembly out;
  for (const auto& pl : a.placements()) out.emplace_back(pl.point, pl.tile);
  return out;
}

/// Bond strength from raw glue strings.
inline int raw_bond(const TileType& a, Direction d, const TileType& b) {
  const Glue& x = a.glues[index(d)];
  const Glue& y = b.glues[index(opposite(d))];
  if (x.strength <= 0 || y.strength <= 0) return 0;
  return (x.label == y.label && x.strength == y.strength) ? x.strength : 0;
}

inline int raw_strength_at(const TileSystem& sys, const std::map<Point, TileIndex>& cells, Point p,
                           TileIndex t) {
  int total = 0;
  for (Direction d : kDirections) {
    auto it = cells.find(neighbor(p, d));
    if (it != cells.end()) total += raw_bond(sys.tile(t), d, sys.tile(it->second));
  }
  return total;
}

/// Minimum cut by enumerating every bipartition of the vertex set.
inline long long brute_force_min_cut(std::size_t n, const std::vector<BondEdge>& edges) {
  long long best = -1;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    if (!(mask & 1)) continue;  // fix vertex 0 on one side
    long long w = 0;
    for (const auto& e : edges)
      if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) w += e.weight;
    if (best < 0 || w < best) best = w;
  }
  return best;
}

struct BruteForceResult {
  std::set<PlainAssembly> producible;
  std::set<PlainAssembly> terminal;
};

/// Producible and terminal assemblies inside the width x height rectangle at
/// `origin`, by generate-and-test: every assignment of {empty} + tile types to
/// the rectangle's cells (seed fixed) is checked for producibility by growing
/// it tile by tile from the seed. Works on a padded grid so that terminality
/// also sees attachments just outside the rectangle.
inline BruteForceResult brute_force_explore(const TileSystem& sys, int width, int height, Point origin) {
  BruteForceResult out;
  const std::size_t k = sys.size();
  const int W = width + 2, H = height + 2;
  auto id = [&](Point p) { return (p.y - origin.y + 1) * W + (p.x - origin.x + 1); };
  constexpr int kEmpty = -1;

  // bond[a][d][b] from raw glue strings.
  std::vector<int> bond(k * 4 * k);
  for (std::size_t a = 0; a < k; ++a)
    for (Direction d : kDirections)
      for (std::size_t b = 0; b < k; ++b)
        bond[(a * 4 + index(d)) * k + b] =
            raw_bond(sys.tile(static_cast<TileIndex>(a)), d, sys.tile(static_cast<TileIndex>(b)));
  const int step[4] = {W, 1, -W, -1};  // N, E, S, W in cell ids
  auto strength = [&](const std::vector<int>& grid, int cell, int t) {
    int total = 0;
    for (int d = 0; d < 4; ++d) {
      const int u = grid[static_cast<std::size_t>(cell + step[d])];
      if (u != kEmpty) total += bond[(static_cast<std::size_t>(t) * 4 + static_cast<std::size_t>(d)) * k +
                                     static_cast<std::size_t>(u)];
    }
    return total;
  };

  // Inner cells in y-major order; the seed cell is fixed.
  std::vector<int> cells;
  std::vector<Point> points;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const Point p{origin.x + x, origin.y + y};
      cells.push_back(id(p));
      points.push_back(p);
    }
  const int seed_cell = id(sys.seed_position());
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] != seed_cell) free.push_back(i);

  std::vector<int> target(static_cast<std::size_t>(W * H), kEmpty), grown(target.size(), kEmpty);
  std::vector<int> digit(free.size(), 0);
  while (true) {
    std::fill(target.begin(), target.end(), kEmpty);
    target[static_cast<std::size_t>(seed_cell)] = static_cast<int>(sys.seed_tile());
    std::size_t want = 1;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (digit[i] > 0) {
        target[static_cast<std::size_t>(cells[free[i]])] = digit[i] - 1;
        ++want;
      }

    // Greedy growth restricted to the target's placements.
    std::fill(grown.begin(), grown.end(), kEmpty);
    grown[static_cast<std::size_t>(seed_cell)] = target[static_cast<std::size_t>(seed_cell)];
    std::size_t have = 1;
    for (bool progress = true; progress && have < want;) {
      progress = false;
      for (int c : cells) {
        const auto uc = static_cast<std::size_t>(c);
        if (target[uc] == kEmpty || grown[uc] != kEmpty) continue;
        if (strength(grown, c, target[uc]) >= 2) {
          grown[uc] = target[uc];
          ++have;
          progress = true;
        }
      }
    }
    if (have == want) {
      PlainAssembly pa;
      bool terminal = true;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const int c = cells[i];
        if (target[static_cast<std::size_t>(c)] == kEmpty) continue;
        pa.emplace_back(points[i], static_cast<TileIndex>(target[static_cast<std::size_t>(c)]));
        for (int d = 0; d < 4 && terminal; ++d) {
          const int q = c + step[d];
          if (target[static_cast<std::size_t>(q)] != kEmpty) continue;
          // Padding cells have out-of-grid neighbors; guard the lookup.
          const int qx = q % W, qy = q / W;
          if (qx == 0 || qy == 0 || qx == W - 1 || qy == H - 1) {
            // Outside the rectangle: neighbors other than c are empty.
            for (std::size_t t = 0; t < k && terminal; ++t)
              if (bond[(t * 4 + index(opposite(static_cast<Direction>(d)))) * k +
                       static_cast<std::size_t>(target[static_cast<std::size_t>(c)])] >= 2)
                terminal = false;
          } else {
            for (std::size_t t = 0; t < k && terminal; ++t)
              if (strength(target, q, static_cast<int>(t)) >= 2) terminal = false;
          }
        }
      }
      if (terminal) out.terminal.insert(pa);
      out.producible.insert(std::move(pa));
    }

    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == static_cast<int>(k) + 1) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return out;
}

/// Every raw system with k tile types whose glues come from `labels` letters
/// at strengths 1 or 2 (plus null), deduplicated up to glue renaming and
/// reordering of tile types. Systems are normalized.
inline std::vector<TileSystem> all_small_systems(std::size_t max_tiles, int labels) {
  std::set<std::vector<int>> seen;
  std::vector<TileSystem> out;
  const int options = 1 + 2 * labels;
  for (std::size_t k = 1; k <= max_tiles; ++k) {
    const std::size_t n = 4 * k;
    std::vector<int> digit(n, 0);
    while (true) {
      RawTileSystem raw;
      for (std::size_t t = 0; t < k; ++t) {
        TileType tile;
        tile.name = "t" + std::to_string(t);
        for (std::size_t d = 0; d < 4; ++d) {
          const int v = digit[t * 4 + d];
          if (v > 0)
            tile.glues[d] = Glue{std::string(1, static_cast<char>('a' + (v - 1) / 2)), 1 + (v - 1) % 2};
        }
        raw.tile_types.push_back(std::move(tile));
      }
      const RawTileSystem normalized = to_raw(normalize_system(raw).system);
      for (std::size_t seed = 0; seed < k; ++seed) {
        // Canonical form: seed first, labels renamed in order of appearance;
        // minimum over orders of the remaining tiles.
        std::vector<std::size_t> order(k);
        for (std::size_t i = 0; i < k; ++i) order[i] = i;
        std::vector<int> best;
        std::vector<std::size_t> best_order;
        do {
          if (order[0] != seed) continue;
          std::map<std::pair<std::string, int>, int> names;
          std::vector<int> form{static_cast<int>(k)};
          for (std::size_t ti : order)
            for (const Glue& g : normalized.tile_types[ti].glues) {
              if (g.strength == 0) {
                form.push_back(-1);
                continue;
              }
              auto [it, fresh] = names.emplace(std::make_pair(g.label, g.strength),
                                               static_cast<int>(names.size()));
              form.push_back(it->second * 4 + g.strength);
            }
          if (best.empty() || form < best) {
            best = form;
            best_order = order;
          }
        } while (std::next_permutation(order.begin(), order.end()));
        if (!seen.insert(best).second) continue;
        RawTileSystem chosen;
        chosen.name = "small";
        for (std::size_t ti : best_order) chosen.tile_types.push_back(normalized.tile_types[ti]);
        for (std::size_t i = 0; i < k; ++i) chosen.tile_types[i].name = "t" + std::to_string(i);
        chosen.seed_tile = 0;
        out.push_back(normalize_system(std::move(chosen)).system);
      }
      std::size_t i = 0;
      while (i < n && ++digit[i] == options) digit[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

/// Every assembly sequence is checked: consecutive assemblies differ by one
/// legal attachment and each is a subassembly of the last.
inline bool valid_sequence(const TileSystem& sys, const AssemblySequence& seq) {
  Assembly a = Assembly::seed_of(sys);
  std::vector<Assembly> chain{a};
  for (const auto& s : seq.steps) {
    const auto front = frontier_attachments(sys, a);
    if (std::find_if(front.begin(), front.end(), [&](const Attachment& f) {
          return f.point == s.point && f.tile == s.tile;
        }) == front.end())
      return false;
    a = attach(a, s.point, s.tile, sys);
    chain.push_back(a);
  }
  if (!(a == seq.final_assembly)) return false;
  for (const auto& c : chain)
    if (!is_subassembly(c, a)) return false;
  return true;
}

}  // namespace tam::testing
