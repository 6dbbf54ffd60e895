#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tam/geometry.hpp"
#include "tam/tile_system.hpp"

namespace tam {

struct Placement {
  Point point;
  TileIndex tile = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

/// Deterministic byte string identifying an assembly: a little-endian u32
/// count, then every position (y-major order) as two little-endian i32
/// (x then y), then every tile index as a little-endian u32 in the same order.
using CanonicalKey = std::string;

/// A finite assembly: a partial map from lattice points to tile indices whose
/// domain is non-empty and connected. Immutable value; growth returns a copy.
class Assembly {
 public:
  /// Validating constructor. Throws on empty, duplicate or disconnected input.
  static Assembly from_placements(std::vector<Placement> placements) {
    std::sort(placements.begin(), placements.end());
    if (placements.empty()) throw Error("assembly is empty");
    for (std::size_t i = 1; i < placements.size(); ++i)
      if (placements[i].point == placements[i - 1].point)
        throw Error("assembly places two tiles at " + to_string(placements[i].point));
    Assembly a(std::move(placements));
    const auto dom = a.domain();
    if (!is_connected(dom)) throw Error("assembly domain not connected");
    return a;
  }

  static Assembly single(Point p, TileIndex t) { return Assembly({{p, t}}); }

  /// Seed assembly of a tile system.
  static Assembly seed_of(const TileSystem& sys) {
    return single(sys.seed_position(), sys.seed_tile());
  }

  std::span<const Placement> placements() const { return placements_; }
  std::size_t size() const { return placements_.size(); }

  std::optional<TileIndex> at(Point p) const {
    auto it = std::lower_bound(placements_.begin(), placements_.end(), p,
                               [](const Placement& pl, Point q) { return pl.point < q; });
    if (it == placements_.end() || it->point != p) return std::nullopt;
    return it->tile;
  }
  bool occupied(Point p) const { return at(p).has_value(); }

  std::vector<Point> domain() const {
    std::vector<Point> pts;
    pts.reserve(placements_.size());
    for (const auto& pl : placements_) pts.push_back(pl.point);
    return pts;
  }

  /// Copy with one more placement. `p` must be empty and 4-adjacent to the
  /// domain; callers outside the library should use attach().
  Assembly with_placement(Point p, TileIndex t) const {
    std::vector<Placement> next;
    next.reserve(placements_.size() + 1);
    auto it = std::lower_bound(placements_.begin(), placements_.end(), p,
                               [](const Placement& pl, Point q) { return pl.point < q; });
    next.insert(next.end(), placements_.begin(), it);
    next.push_back({p, t});
    next.insert(next.end(), it, placements_.end());
    return Assembly(std::move(next));
  }

  /// Throws if any placement references a tile index outside `sys`.
  void check_tiles(const TileSystem& sys) const {
    for (const auto& pl : placements_)
      if (pl.tile >= sys.size())
        throw Error("placement at " + to_string(pl.point) + " references tile index " +
                    std::to_string(pl.tile) + " outside the system");
  }

  CanonicalKey canonical_key() const {
    CanonicalKey key;
    key.reserve(4 + placements_.size() * 12);
    auto put = [&key](std::uint32_t v) {
      for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
    };
    put(static_cast<std::uint32_t>(placements_.size()));
    for (const auto& pl : placements_) {
      put(static_cast<std::uint32_t>(pl.point.x));
      put(static_cast<std::uint32_t>(pl.point.y));
    }
    for (const auto& pl : placements_) put(pl.tile);
    return key;
  }

  friend bool operator==(const Assembly&, const Assembly&) = default;
  friend auto operator<=>(const Assembly& a, const Assembly& b) {
    return a.placements_ <=> b.placements_;
  }

 private:
  explicit Assembly(std::vector<Placement> sorted) : placements_(std::move(sorted)) {}

  std::vector<Placement> placements_;
};

/// Hex rendering of a canonical key, used in reports.
inline std::string to_hex(const CanonicalKey& key) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(key.size() * 2);
  for (unsigned char c : key) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

/// alpha is a subassembly of beta: same tile at every point of alpha's domain.
inline bool is_subassembly(const Assembly& alpha, const Assembly& beta) {
  for (const auto& pl : alpha.placements()) {
    auto t = beta.at(pl.point);
    if (!t || *t != pl.tile) return false;
  }
  return true;
}

inline Shape shape_of(const Assembly& a) { return Shape(a.domain()); }

}  // namespace tam
