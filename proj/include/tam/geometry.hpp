#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lattice point. Ordered y-major, x-minor; this is the order used by
/// canonical keys and by every sorted container in the library.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Point, Point) = default;
  friend constexpr std::strong_ordering operator<=>(Point a, Point b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
};

inline std::string to_string(Point p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

/// Tile sides in the standardized order N, E, S, W.
enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::North, Direction::East,
                                                        Direction::South, Direction::West};

constexpr std::size_t index(Direction d) { return static_cast<std::size_t>(d); }

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<std::uint8_t>(d) + 2) % 4);
}

constexpr Point unit_vector(Direction d) {
  switch (d) {
    case Direction::North: return {0, 1};
    case Direction::East: return {1, 0};
    case Direction::South: return {0, -1};
    case Direction::West: return {-1, 0};
  }
  return {0, 0};
}

constexpr Point neighbor(Point p, Direction d) { return p + unit_vector(d); }

constexpr std::string_view short_name(Direction d) {
  constexpr std::array<std::string_view, 4> names = {"N", "E", "S", "W"};
  return names[index(d)];
}

constexpr std::string_view long_name(Direction d) {
  constexpr std::array<std::string_view, 4> names = {"north", "east", "south", "west"};
  return names[index(d)];
}

/// A finite set of lattice points, stored sorted. Used for exploration bounds;
/// no connectivity requirement.
class Region {
 public:
  Region() = default;
  Region(std::initializer_list<Point> pts) : Region(std::vector<Point>(pts)) {}
  explicit Region(std::vector<Point> pts) : points_(std::move(pts)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  /// The width x height rectangle whose lower-left corner is `origin`.
  static Region rectangle(int width, int height, Point origin = {0, 0}) {
    if (width < 1 || height < 1) throw Error("rectangle dimensions must be positive");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) pts.push_back({origin.x + x, origin.y + y});
    return Region(std::move(pts));
  }

  bool contains(Point p) const { return std::binary_search(points_.begin(), points_.end(), p); }
  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::vector<Point> points_;
};

namespace detail {

// Counts connected components of the full grid graph on a sorted point list.
inline std::size_t component_count(std::span<const Point> sorted) {
  const std::size_t n = sorted.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::size_t components = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (Direction d : {Direction::East, Direction::North}) {
      const Point q = neighbor(sorted[i], d);
      auto it = std::lower_bound(sorted.begin(), sorted.end(), q);
      if (it == sorted.end() || *it != q) continue;
      const std::size_t a = find(i), b = find(static_cast<std::size_t>(it - sorted.begin()));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

inline std::size_t adjacency_edge_count(std::span<const Point> sorted) {
  std::size_t edges = 0;
  for (Point p : sorted)
    for (Direction d : {Direction::East, Direction::North})
      edges += std::binary_search(sorted.begin(), sorted.end(), neighbor(p, d)) ? 1 : 0;
  return edges;
}

}  // namespace detail

inline bool is_connected(std::span<const Point> sorted_points) {
  return !sorted_points.empty() && detail::component_count(sorted_points) == 1;
}

/// A non-empty point set whose full grid graph is connected.
class Shape {
 public:
  explicit Shape(Region region) : region_(std::move(region)) {
    if (region_.empty()) throw Error("shape is empty");
    if (!is_connected(region_.points())) throw Error("shape not connected");
  }
  Shape(std::initializer_list<Point> pts) : Shape(Region(pts)) {}
  explicit Shape(std::vector<Point> pts) : Shape(Region(std::move(pts))) {}

  const Region& region() const { return region_; }
  operator const Region&() const { return region_; }  // NOLINT: a shape is usable as a bound
  bool contains(Point p) const { return region_.contains(p); }
  std::span<const Point> points() const { return region_.points(); }
  std::size_t size() const { return region_.size(); }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  Region region_;
};

/// True iff the full grid graph of `s` is acyclic.
inline bool is_tree(const Shape& s) {
  return detail::adjacency_edge_count(s.points()) + 1 == s.size();
}

/// The eight symmetries of the square lattice, as maps on points.
/// Index 0 is the identity.
inline Point apply_symmetry(int which, Point p) {
  switch (which) {
    case 0: return {p.x, p.y};
    case 1: return {-p.y, p.x};
    case 2: return {-p.x, -p.y};
    case 3: return {p.y, -p.x};
    case 4: return {-p.x, p.y};
    case 5: return {p.x, -p.y};
    case 6: return {p.y, p.x};
    case 7: return {-p.y, -p.x};
  }
  throw Error("symmetry index out of range");
}

/// Translations composed with lattice symmetries that map `s` onto itself.
/// Each returned entry maps a point of `s` to its image.
inline std::vector<std::vector<std::pair<Point, Point>>> shape_automorphisms(const Shape& s) {
  std::vector<std::vector<std::pair<Point, Point>>> result;
  const Point anchor = s.points().front();
  for (int g = 0; g < 8; ++g) {
    std::vector<Point> image;
    image.reserve(s.size());
    for (Point p : s.points()) image.push_back(apply_symmetry(g, p));
    const Point lowest = *std::min_element(image.begin(), image.end());
    const Point shift{anchor.x - lowest.x, anchor.y - lowest.y};
    std::vector<std::pair<Point, Point>> map;
    map.reserve(s.size());
    bool ok = true;
    for (Point p : s.points()) {
      const Point q = apply_symmetry(g, p) + shift;
      if (!s.contains(q)) {
        ok = false;
        break;
      }
      map.emplace_back(p, q);
    }
    if (ok) result.push_back(std::move(map));
  }
  return result;
}

/// One representative (the least point) of every orbit of `s` under its
/// automorphism group.
inline std::vector<Point> orbit_representatives(const Shape& s) {
  const auto autos = shape_automorphisms(s);
  std::vector<Point> reps;
  for (Point p : s.points()) {
    bool least = true;
    for (const auto& map : autos) {
      for (const auto& [from, to] : map) {
        if (from == p && to < p) least = false;
      }
    }
    if (least) reps.push_back(p);
  }
  return reps;
}

}  // namespace tam
