#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tam/geometry.hpp"

namespace tam {

using TileIndex = std::uint32_t;

/// Temperature of every system handled by the library.
inline constexpr int kTemperature = 2;

struct Glue {
  std::string label;
  int strength = 0;

  bool is_null() const { return strength <= 0; }
  friend bool operator==(const Glue&, const Glue&) = default;
};

struct TileType {
  std::string name;
  std::array<Glue, 4> glues;  // indexed N, E, S, W

  const Glue& glue(Direction d) const { return glues[index(d)]; }
  Glue& glue(Direction d) { return glues[index(d)]; }

  friend bool operator==(const TileType&, const TileType&) = default;
};

/// Bond strength between tile `a` and tile `b` placed on a's `d` side.
/// Glues interact iff they agree in label and strength and the strength is positive.
inline int interacts(const TileType& a, Direction d, const TileType& b) {
  const Glue& ga = a.glue(d);
  const Glue& gb = b.glue(opposite(d));
  return (ga.strength > 0 && ga == gb) ? ga.strength : 0;
}

/// Raw tile set as read from a document, before normalization.
struct RawTileSystem {
  std::string name;
  std::vector<TileType> tile_types;
  std::size_t seed_tile = 0;
  Point seed_position{0, 0};
  int temperature = kTemperature;
};

struct NormalizationWarning {
  enum class Kind { Clamped, EffectivelyNull };
  Kind kind;
  std::size_t tile;
  Direction side;
  std::string message;

  friend bool operator==(const NormalizationWarning&, const NormalizationWarning&) = default;
};

/// A singly-seeded temperature-2 tile assembly system. Always normalized:
/// strengths are in {0,1,2} and every positive glue has a partner on the
/// opposite side of some tile type. Immutable after construction.
class TileSystem {
 public:
  /// Validates an already-normalized system. Throws if it is not normalized;
  /// use normalize_system() for arbitrary input.
  TileSystem(std::vector<TileType> tile_types, TileIndex seed_tile, Point seed_position = {0, 0},
             std::string name = {})
      : name_(std::move(name)),
        tiles_(std::move(tile_types)),
        seed_tile_(seed_tile),
        seed_position_(seed_position) {
    if (tiles_.empty()) throw Error("tile system has no tile types");
    if (seed_tile_ >= tiles_.size()) throw Error("seed tile index out of range");
    for (const auto& t : tiles_)
      for (const auto& g : t.glues)
        if (g.strength < 0 || g.strength > 2) throw Error("glue strength outside {0,1,2}");
    build_tables();
    for (std::size_t t = 0; t < tiles_.size(); ++t)
      for (Direction d : kDirections)
        if (tiles_[t].glue(d).strength > 0 && partners_[t][index(d)].empty())
          throw Error("tile '" + tiles_[t].name + "' has an effectively null glue on side " +
                      std::string(short_name(d)));
  }

  const std::string& name() const { return name_; }
  std::span<const TileType> tile_types() const { return tiles_; }
  const TileType& tile(TileIndex t) const { return tiles_.at(t); }
  std::size_t size() const { return tiles_.size(); }
  TileIndex seed_tile() const { return seed_tile_; }
  Point seed_position() const { return seed_position_; }
  int temperature() const { return kTemperature; }

  /// Bond strength between tile a and tile b sitting on a's `d` side.
  int bond(TileIndex a, Direction d, TileIndex b) const {
    return bonds_[(static_cast<std::size_t>(a) * 4 + index(d)) * tiles_.size() + b];
  }

  /// Tiles (with strengths) that bind to the `d` side of tile `a`.
  std::span<const std::pair<TileIndex, int>> partners(TileIndex a, Direction d) const {
    return partners_[a][index(d)];
  }

  /// Lookup by tile name; returns size() when absent.
  TileIndex find(std::string_view tile_name) const {
    for (std::size_t i = 0; i < tiles_.size(); ++i)
      if (tiles_[i].name == tile_name) return static_cast<TileIndex>(i);
    return static_cast<TileIndex>(tiles_.size());
  }

  friend bool operator==(const TileSystem& a, const TileSystem& b) {
    return a.name_ == b.name_ && a.tiles_ == b.tiles_ && a.seed_tile_ == b.seed_tile_ &&
           a.seed_position_ == b.seed_position_;
  }

 private:
  void build_tables() {
    const std::size_t n = tiles_.size();
    bonds_.assign(n * 4 * n, 0);
    partners_.assign(n, {});
    for (std::size_t a = 0; a < n; ++a)
      for (Direction d : kDirections)
        for (std::size_t b = 0; b < n; ++b) {
          const int s = interacts(tiles_[a], d, tiles_[b]);
          bonds_[(a * 4 + index(d)) * n + b] = static_cast<std::uint8_t>(s);
          if (s > 0) partners_[a][index(d)].emplace_back(static_cast<TileIndex>(b), s);
        }
  }

  std::string name_;
  std::vector<TileType> tiles_;
  TileIndex seed_tile_;
  Point seed_position_;
  std::vector<std::uint8_t> bonds_;
  std::vector<std::array<std::vector<std::pair<TileIndex, int>>, 4>> partners_;
};

struct NormalizedSystem {
  TileSystem system;
  std::vector<NormalizationWarning> warnings;
};

/// Clamps strengths above 2 to 2 and demotes effectively null glues (positive
/// glues with no partner on the opposite side of any tile type) to strength 0.
inline NormalizedSystem normalize_system(RawTileSystem raw) {
  if (raw.tile_types.empty()) throw Error("tile system has no tile types");
  if (raw.seed_tile >= raw.tile_types.size()) throw Error("seed tile index out of range");
  if (raw.temperature != kTemperature)
    throw Error("temperature must be 2 (got " + std::to_string(raw.temperature) + ")");

  std::vector<NormalizationWarning> warnings;
  for (std::size_t t = 0; t < raw.tile_types.size(); ++t) {
    for (Direction d : kDirections) {
      Glue& g = raw.tile_types[t].glue(d);
      if (g.strength < 0)
        throw Error("tile '" + raw.tile_types[t].name + "' has a negative glue strength");
      if (g.strength > 2) {
        warnings.push_back({NormalizationWarning::Kind::Clamped, t, d,
                            "clamped: tile '" + raw.tile_types[t].name + "' side " +
                                std::string(short_name(d)) + " glue '" + g.label + "' strength " +
                                std::to_string(g.strength) + " -> 2"});
        g.strength = 2;
      }
    }
  }

  // A demoted glue cannot have been the partner of another glue (that glue
  // would have been its partner too), so one pass reaches the fixed point.
  std::map<std::pair<std::string, int>, std::array<bool, 4>> present;
  for (const auto& tile : raw.tile_types)
    for (Direction d : kDirections)
      if (const Glue& g = tile.glue(d); g.strength > 0) present[{g.label, g.strength}][index(d)] = true;
  for (std::size_t t = 0; t < raw.tile_types.size(); ++t) {
    for (Direction d : kDirections) {
      Glue& g = raw.tile_types[t].glue(d);
      if (g.strength == 0) continue;
      if (present[{g.label, g.strength}][index(opposite(d))]) continue;
      warnings.push_back({NormalizationWarning::Kind::EffectivelyNull, t, d,
                          "effectively null: tile '" + raw.tile_types[t].name + "' side " +
                              std::string(short_name(d)) + " glue '" + g.label +
                              "' has no partner on the opposite side; demoted to strength 0"});
      g.strength = 0;
    }
  }

  return {TileSystem(std::move(raw.tile_types), static_cast<TileIndex>(raw.seed_tile),
                     raw.seed_position, std::move(raw.name)),
          std::move(warnings)};
}

inline RawTileSystem to_raw(const TileSystem& sys) {
  return {sys.name(), std::vector<TileType>(sys.tile_types().begin(), sys.tile_types().end()),
          sys.seed_tile(), sys.seed_position(), kTemperature};
}

/// Convenience for building tile types in code: unspecified sides are null.
struct TileSpec {
  std::string name;
  Glue north{}, east{}, south{}, west{};
};

inline TileType make_tile(TileSpec spec) {
  TileType t;
  t.name = std::move(spec.name);
  t.glue(Direction::North) = std::move(spec.north);
  t.glue(Direction::East) = std::move(spec.east);
  t.glue(Direction::South) = std::move(spec.south);
  t.glue(Direction::West) = std::move(spec.west);
  return t;
}

}  // namespace tam
