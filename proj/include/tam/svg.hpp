#pragma once

#include <array>
#include <string>
#include <vector>

#include "tam/frontier.hpp"

namespace tam {

struct SvgOptions {
  bool show_frontier = false;
  int cell = 40;    // pixels per lattice unit
  int margin = 10;  // pixels
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline const char* tile_fill(TileIndex t) {
  static constexpr std::array<const char*, 8> palette = {
      "#cfe3f7", "#f7dcc9", "#d5efd2", "#efd2ea", "#f3efc5", "#d2ecec", "#e4dccf", "#dcd9f2"};
  return palette[t % palette.size()];
}

inline std::string attr(const char* name, int v) {
  return std::string(" ") + name + "=\"" + std::to_string(v) + "\"";
}

}  // namespace detail

/// Deterministic SVG of an assembly: one labeled square per tile, one tick
/// per unit of glue strength on each side (none for null glues), and
/// optionally a dashed outline on every frontier point.
inline std::string render_svg(const Assembly& alpha, const TileSystem& sys,
                              const SvgOptions& opts = {}) {
  alpha.check_tiles(sys);
  const std::vector<Point> frontier =
      opts.show_frontier ? frontier_points(sys, alpha) : std::vector<Point>{};

  int minx = alpha.placements().front().point.x, maxx = minx;
  int miny = alpha.placements().front().point.y, maxy = miny;
  auto extend = [&](Point p) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  };
  for (const auto& pl : alpha.placements()) extend(pl.point);
  for (Point p : frontier) extend(p);

  const int c = opts.cell;
  const int width = (maxx - minx + 1) * c + 2 * opts.margin;
  const int height = (maxy - miny + 1) * c + 2 * opts.margin;
  auto left = [&](Point p) { return opts.margin + (p.x - minx) * c; };
  auto top = [&](Point p) { return opts.margin + (maxy - p.y) * c; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\"" + detail::attr("width", width) +
         detail::attr("height", height) + " viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\"" + detail::attr("width", width) +
         detail::attr("height", height) + " fill=\"#ffffff\"/>\n";

  for (Point p : frontier) {
    out += "<rect class=\"frontier\"" + detail::attr("x", left(p) + 2) + detail::attr("y", top(p) + 2) +
           detail::attr("width", c - 4) + detail::attr("height", c - 4) +
           " fill=\"none\" stroke=\"#d04040\" stroke-dasharray=\"4 2\"/>\n";
  }

  const int tick = std::max(3, c / 8);  // tick length
  const int gap = std::max(2, c / 10);  // spacing between double ticks
  for (const auto& pl : alpha.placements()) {
    const int x = left(pl.point), y = top(pl.point);
    const bool seed = pl.point == sys.seed_position() && pl.tile == sys.seed_tile();
    const TileType& tile = sys.tile(pl.tile);
    out += "<g class=\"tile\" data-x=\"" + std::to_string(pl.point.x) + "\" data-y=\"" +
           std::to_string(pl.point.y) + "\">\n";
    out += "<rect" + detail::attr("x", x) + detail::attr("y", y) + detail::attr("width", c) +
           detail::attr("height", c) + " fill=\"" + detail::tile_fill(pl.tile) +
           "\" stroke=\"#333333\" stroke-width=\"" + (seed ? "3" : "1") + "\"/>\n";
    out += "<text" + detail::attr("x", x + c / 2) + detail::attr("y", y + c / 2 + 4) +
           " font-family=\"monospace\" font-size=\"" + std::to_string(std::max(8, c / 4)) +
           "\" text-anchor=\"middle\">" + detail::xml_escape(tile.name) + "</text>\n";
    for (Direction d : kDirections) {
      const int s = tile.glue(d).strength;
      if (s <= 0) continue;
      for (int i = 0; i < s; ++i) {
        // Offsets of the tick along the side: centered, spread by `gap`.
        const int along = (s == 1) ? 0 : (i == 0 ? -gap : gap);
        int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
        switch (d) {
          case Direction::North: x1 = x2 = x + c / 2 + along; y1 = y; y2 = y + tick; break;
          case Direction::South: x1 = x2 = x + c / 2 + along; y1 = y + c; y2 = y + c - tick; break;
          case Direction::East: y1 = y2 = y + c / 2 + along; x1 = x + c; x2 = x + c - tick; break;
          case Direction::West: y1 = y2 = y + c / 2 + along; x1 = x; x2 = x + tick; break;
        }
        out += std::string("<line class=\"") + (s == 1 ? "glue-single" : "glue-double") +
               "\" data-side=\"" + std::string(short_name(d)) + "\"" + detail::attr("x1", x1) +
               detail::attr("y1", y1) + detail::attr("x2", x2) + detail::attr("y2", y2) +
               " stroke=\"#000000\" stroke-width=\"2\"/>\n";
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tam
