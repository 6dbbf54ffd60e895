#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tam/assembly.hpp"

namespace tam {

/// A legal single-tile growth step: tile `tile` binds at empty `point` with
/// total strength `strength` >= 2.
struct Attachment {
  Point point;
  TileIndex tile = 0;
  int strength = 0;

  friend bool operator==(const Attachment&, const Attachment&) = default;
  friend auto operator<=>(const Attachment&, const Attachment&) = default;
};

/// Empty points 4-adjacent to the domain, sorted.
inline std::vector<Point> empty_neighbors(const Assembly& alpha) {
  std::vector<Point> out;
  out.reserve(alpha.size() * 2 + 2);
  for (const auto& pl : alpha.placements())
    for (Direction d : kDirections) {
      const Point q = neighbor(pl.point, d);
      if (!alpha.occupied(q)) out.push_back(q);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Reusable per-thread buffers for attachments_at().
struct FrontierScratch {
  explicit FrontierScratch(std::size_t tiles) : sum(tiles, 0) {}
  std::vector<int> sum;
  std::vector<TileIndex> touched;
};

/// Appends the attachments available at empty point `p`, in tile order.
inline void attachments_at(const TileSystem& sys, const Assembly& alpha, Point p,
                           FrontierScratch& scratch, std::vector<Attachment>& out) {
  scratch.touched.clear();
  for (Direction d : kDirections) {
    const auto occupant = alpha.at(neighbor(p, d));
    if (!occupant) continue;
    // Our side d faces the occupant's side opposite(d).
    for (const auto& [tile, strength] : sys.partners(*occupant, opposite(d))) {
      if (scratch.sum[tile] == 0) scratch.touched.push_back(tile);
      scratch.sum[tile] += strength;
    }
  }
  std::sort(scratch.touched.begin(), scratch.touched.end());
  for (TileIndex t : scratch.touched) {
    if (scratch.sum[t] >= kTemperature) out.push_back({p, t, scratch.sum[t]});
    scratch.sum[t] = 0;
  }
}

/// Every (point, tile) at which a tile can stably attach to alpha, sorted by
/// point (y-major) then tile index. Incremental attachment needs no global
/// stability recheck: a stable assembly plus a tile bound with strength >= 2
/// is stable.
inline std::vector<Attachment> frontier_attachments(const TileSystem& sys, const Assembly& alpha) {
  std::vector<Attachment> out;
  FrontierScratch scratch(sys.size());
  for (Point p : empty_neighbors(alpha)) attachments_at(sys, alpha, p, scratch, out);
  return out;
}

/// The frontier as a point set.
inline std::vector<Point> frontier_points(const TileSystem& sys, const Assembly& alpha) {
  std::vector<Point> pts;
  for (const auto& a : frontier_attachments(sys, alpha))
    if (pts.empty() || pts.back() != a.point) pts.push_back(a.point);
  return pts;
}

inline bool is_terminal(const TileSystem& sys, const Assembly& alpha) {
  return frontier_attachments(sys, alpha).empty();
}

/// Total bond strength tile `t` would have at empty point `p`.
inline int binding_strength(const TileSystem& sys, const Assembly& alpha, Point p, TileIndex t) {
  int total = 0;
  for (Direction d : kDirections)
    if (auto occ = alpha.at(neighbor(p, d))) total += sys.bond(t, d, *occ);
  return total;
}

/// alpha + (p -> t). Throws if the step is not a frontier attachment.
inline Assembly attach(const Assembly& alpha, Point p, TileIndex t, const TileSystem& sys) {
  if (t >= sys.size()) throw Error("tile index " + std::to_string(t) + " outside the system");
  if (alpha.occupied(p)) throw Error("cannot attach at occupied point " + to_string(p));
  const int strength = binding_strength(sys, alpha, p, t);
  if (strength < kTemperature)
    throw Error("tile '" + sys.tile(t).name + "' binds at " + to_string(p) + " with strength " +
                std::to_string(strength) + " < 2");
  return alpha.with_placement(p, t);
}

/// An attachment order that builds `target` from the seed, or nullopt if
/// target is not producible. Adding tiles of target never removes a legal
/// attachment of another target tile, so greedy growth decides producibility.
inline std::optional<std::vector<Placement>> assembly_sequence_for(const TileSystem& sys,
                                                                   const Assembly& target) {
  target.check_tiles(sys);
  const Point seed = sys.seed_position();
  if (target.at(seed) != sys.seed_tile()) return std::nullopt;
  Assembly current = Assembly::seed_of(sys);
  std::vector<Placement> steps;
  bool progress = true;
  while (progress && current.size() < target.size()) {
    progress = false;
    for (const auto& pl : target.placements()) {
      if (current.occupied(pl.point)) continue;
      if (binding_strength(sys, current, pl.point, pl.tile) >= kTemperature) {
        current = current.with_placement(pl.point, pl.tile);
        steps.push_back(pl);
        progress = true;
      }
    }
  }
  if (current.size() < target.size()) return std::nullopt;
  return steps;
}

inline bool is_producible(const TileSystem& sys, const Assembly& target) {
  return assembly_sequence_for(sys, target).has_value();
}

}  // namespace tam
