#pragma once

#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tam/exploration.hpp"
#include "tam/minimizer.hpp"
#include "tam/sequence.hpp"

namespace tam {

using json = nlohmann::json;

/// Malformed or schema-violating input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline void reject_unknown(const json& obj, const std::string& path,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok |= key == a;
    if (!ok) throw ParseError(path + "." + key + ": unknown field");
  }
}

inline const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing required field");
  return *it;
}

inline void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected object");
}

inline long long expect_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected integer");
  return j.get<long long>();
}

inline std::string expect_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected string");
  return j.get<std::string>();
}

inline Point expect_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError(path + ": expected [x, y] integer pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("$: invalid JSON: ") + e.what());
  }
}

}  // namespace detail

inline json to_json(Point p) { return json::array({p.x, p.y}); }

// ---------------------------------------------------------------------------
// System documents

struct ParsedSystem {
  TileSystem system;
  std::vector<std::string> warnings;
};

inline ParsedSystem system_from_json(const json& doc) {
  using namespace detail;
  expect_object(doc, "$");
  reject_unknown(doc, "$", {"schema_version", "name", "temperature", "tile_types", "seed"});

  if (auto it = doc.find("schema_version"); it != doc.end()) {
    if (expect_integer(*it, "$.schema_version") != kSchemaVersion)
      throw ParseError("$.schema_version: unsupported version");
  }
  RawTileSystem raw;
  if (auto it = doc.find("name"); it != doc.end()) raw.name = expect_string(*it, "$.name");
  if (auto it = doc.find("temperature"); it != doc.end()) {
    if (expect_integer(*it, "$.temperature") != kTemperature)
      throw ParseError("$.temperature: temperature must be 2");
  }

  const json& tiles = require(doc, "$", "tile_types");
  if (!tiles.is_array() || tiles.empty())
    throw ParseError("$.tile_types: expected non-empty array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const std::string path = "$.tile_types[" + std::to_string(i) + "]";
    const json& t = tiles[i];
    expect_object(t, path);
    reject_unknown(t, path, {"name", "north", "east", "south", "west"});
    TileType tile;
    tile.name = expect_string(require(t, path, "name"), path + ".name");
    if (tile.name.empty()) throw ParseError(path + ".name: tile name must be non-empty");
    if (!names.insert(tile.name).second)
      throw ParseError(path + ".name: duplicate tile name '" + tile.name + "'");
    for (Direction d : kDirections) {
      auto it = t.find(std::string(long_name(d)));
      if (it == t.end()) continue;  // missing glue is the null glue
      const std::string gp = path + "." + std::string(long_name(d));
      expect_object(*it, gp);
      reject_unknown(*it, gp, {"label", "strength"});
      Glue g;
      if (auto l = it->find("label"); l != it->end()) g.label = expect_string(*l, gp + ".label");
      if (auto s = it->find("strength"); s != it->end()) {
        const long long v = expect_integer(*s, gp + ".strength");
        if (v < 0) throw ParseError(gp + ".strength: negative strengths are not supported");
        g.strength = static_cast<int>(std::min<long long>(v, 1'000'000));
      }
      if (g.strength > 0 && g.label.empty())
        throw ParseError(gp + ".label: a positive glue needs a non-empty label");
      tile.glue(d) = std::move(g);
    }
    raw.tile_types.push_back(std::move(tile));
  }

  const json& seed = require(doc, "$", "seed");
  expect_object(seed, "$.seed");
  reject_unknown(seed, "$.seed", {"tile", "position"});
  const std::string seed_name = expect_string(require(seed, "$.seed", "tile"), "$.seed.tile");
  raw.seed_tile = raw.tile_types.size();
  for (std::size_t i = 0; i < raw.tile_types.size(); ++i)
    if (raw.tile_types[i].name == seed_name) raw.seed_tile = i;
  if (raw.seed_tile == raw.tile_types.size())
    throw ParseError("$.seed.tile: unknown seed tile '" + seed_name + "'");
  if (auto it = seed.find("position"); it != seed.end())
    raw.seed_position = expect_point(*it, "$.seed.position");

  auto normalized = normalize_system(std::move(raw));
  ParsedSystem out{std::move(normalized.system), {}};
  for (auto& w : normalized.warnings) out.warnings.push_back(std::move(w.message));
  return out;
}

inline ParsedSystem parse_system(std::string_view text) {
  return system_from_json(detail::parse_json(text));
}

inline json to_json(const TileSystem& sys) {
  json tiles = json::array();
  for (const auto& t : sys.tile_types()) {
    json jt = {{"name", t.name}};
    for (Direction d : kDirections)
      jt[std::string(long_name(d))] = {{"label", t.glue(d).label}, {"strength", t.glue(d).strength}};
    tiles.push_back(std::move(jt));
  }
  return {{"schema_version", kSchemaVersion},
          {"name", sys.name()},
          {"temperature", kTemperature},
          {"tile_types", std::move(tiles)},
          {"seed",
           {{"tile", sys.tile(sys.seed_tile()).name}, {"position", to_json(sys.seed_position())}}}};
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string serialize_system(const TileSystem& sys) { return to_json(sys).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Shape documents

enum class ShapeForm { Auto, Points, Grid };

namespace detail {

// Rows top to bottom; the last row is y = origin.y, the first column x = origin.x.
inline std::vector<Point> parse_grid_rows(const std::vector<std::string>& rows, Point origin) {
  std::vector<Point> pts;
  const int h = static_cast<int>(rows.size());
  for (int r = 0; r < h; ++r) {
    const std::string& row = rows[static_cast<std::size_t>(r)];
    for (std::size_t c = 0; c < row.size(); ++c) {
      const char ch = row[c];
      if (ch == '#') {
        pts.push_back({origin.x + static_cast<int>(c), origin.y + (h - 1 - r)});
      } else if (ch != '.') {
        throw ParseError("grid row " + std::to_string(r + 1) + ", column " +
                         std::to_string(c + 1) + ": unexpected character '" +
                         std::string(1, ch) + "' (only '#' and '.' allowed)");
      }
    }
  }
  return pts;
}

inline std::vector<std::string> split_rows(std::string_view text) {
  std::vector<std::string> rows;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      rows.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  rows.push_back(cur);
  // Trailing whitespace on rows and blank leading/trailing lines are ignored.
  for (auto& r : rows)
    while (!r.empty() && (r.back() == ' ' || r.back() == '\t')) r.pop_back();
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  while (!rows.empty() && rows.front().empty()) rows.erase(rows.begin());
  return rows;
}

inline Shape make_shape(std::vector<Point> pts) {
  if (pts.empty()) throw ParseError("shape is empty");
  try {
    return Shape(std::move(pts));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace detail

inline Shape shape_from_json(const json& doc) {
  using namespace detail;
  expect_object(doc, "$");
  reject_unknown(doc, "$", {"schema_version", "name", "points", "grid", "origin"});
  const bool has_points = doc.contains("points");
  const bool has_grid = doc.contains("grid");
  if (has_points == has_grid) throw ParseError("$: exactly one of 'points' or 'grid' is required");
  if (has_points) {
    if (doc.contains("origin")) throw ParseError("$.origin: only allowed with 'grid'");
    const json& pts = doc["points"];
    if (!pts.is_array()) throw ParseError("$.points: expected array");
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
      out.push_back(expect_point(pts[i], "$.points[" + std::to_string(i) + "]"));
    const std::size_t n = out.size();
    std::sort(out.begin(), out.end());
    if (std::unique(out.begin(), out.end()) != out.end() || n != out.size())
      throw ParseError("$.points: duplicate point");
    return make_shape(std::move(out));
  }
  Point origin{0, 0};
  if (auto it = doc.find("origin"); it != doc.end()) origin = expect_point(*it, "$.origin");
  const json& grid = doc["grid"];
  std::vector<std::string> rows;
  if (grid.is_string()) {
    rows = split_rows(grid.get<std::string>());
  } else if (grid.is_array()) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back(expect_string(grid[i], "$.grid[" + std::to_string(i) + "]"));
  } else {
    throw ParseError("$.grid: expected string or array of strings");
  }
  return make_shape(parse_grid_rows(rows, origin));
}

/// Parses a shape document. JSON text (first non-blank character '{') is a
/// points or grid object; anything else is a bare ASCII grid anchored at (0,0).
inline Shape parse_shape(std::string_view text, ShapeForm form = ShapeForm::Auto) {
  if (form == ShapeForm::Auto) {
    const auto first = text.find_first_not_of(" \t\r\n");
    form = (first != std::string_view::npos && text[first] == '{') ? ShapeForm::Points
                                                                    : ShapeForm::Grid;
  }
  if (form == ShapeForm::Points) return shape_from_json(detail::parse_json(text));
  return detail::make_shape(detail::parse_grid_rows(detail::split_rows(text), {0, 0}));
}

inline json to_json(const Shape& s) {
  json pts = json::array();
  for (Point p : s.points()) pts.push_back(to_json(p));
  return {{"points", std::move(pts)}};
}

/// ASCII grid rendering (rows top to bottom) and its lower-left origin.
inline std::pair<std::string, Point> to_grid(const Shape& s) {
  int minx = s.points().front().x, maxx = minx, miny = s.points().front().y, maxy = miny;
  for (Point p : s.points()) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  std::string out;
  for (int y = maxy; y >= miny; --y) {
    for (int x = minx; x <= maxx; ++x) out.push_back(s.contains({x, y}) ? '#' : '.');
    out.push_back('\n');
  }
  return {out, {minx, miny}};
}

/// "WxH+X+Y": width x height rectangle with lower-left corner (X, Y).
inline Region parse_bound(std::string_view spec) {
  int w = 0, h = 0, x = 0, y = 0;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in{std::string(spec)};
  if (!(in >> w >> c1 >> h) || (c1 != 'x' && c1 != 'X'))
    throw ParseError("bound '" + std::string(spec) + "': expected WxH+X+Y");
  if (in >> c2) {
    if ((c2 != '+' && c2 != '-') || !(in >> x)) throw ParseError("bound: malformed X offset");
    if (c2 == '-') x = -x;
    if (!(in >> c3) || (c3 != '+' && c3 != '-') || !(in >> y))
      throw ParseError("bound: malformed Y offset");
    if (c3 == '-') y = -y;
  }
  if (in >> c1) throw ParseError("bound: trailing characters");
  if (w < 1 || h < 1) throw ParseError("bound: width and height must be positive");
  return Region::rectangle(w, h, {x, y});
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const Assembly& a, const TileSystem& sys) {
  json out = json::array();
  for (const auto& pl : a.placements())
    out.push_back({{"point", to_json(pl.point)}, {"tile", sys.tile(pl.tile).name}});
  return out;
}

inline json to_json(const ExplorationReport& r, const TileSystem& sys) {
  json terminals = json::array();
  for (std::size_t i = 0; i < r.terminals.size(); ++i)
    terminals.push_back({{"key", to_hex(r.terminal_keys[i])}, {"assembly", to_json(r.terminals[i], sys)}});
  json positions = json::array();
  for (const auto& [p, types] : r.position_types) {
    json names = json::array();
    for (TileIndex t : types) names.push_back(sys.tile(t).name);
    positions.push_back({{"point", to_json(p)}, {"tiles", std::move(names)}});
  }
  json out = {{"status", std::string(to_string(r.status))},
              {"producible_count", r.producible_count},
              {"terminal_count", r.terminals.size()},
              {"terminals", std::move(terminals)},
              {"position_types", std::move(positions)},
              {"escape_witness", nullptr}};
  if (r.escape_witness)
    out["escape_witness"] = {{"assembly", to_json(r.escape_witness->assembly, sys)},
                             {"point", to_json(r.escape_witness->point)},
                             {"tile", sys.tile(r.escape_witness->tile).name}};
  return out;
}

inline json to_json(const Verdict& v, const TileSystem& sys) {
  json out = {{"answer", std::string(to_string(v.answer))},
              {"status", std::string(to_string(v.status))},
              {"explored", v.explored}};
  if (!v.witness) return out;
  std::visit(
      [&](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, ConflictWitness>) {
          out["witness"] = {{"kind", "conflict"},
                            {"point", to_json(w.point)},
                            {"tiles", {sys.tile(w.first).name, sys.tile(w.second).name}},
                            {"assemblies", {to_json(w.alpha, sys), to_json(w.beta, sys)}}};
        } else if constexpr (std::is_same_v<W, WrongShapeWitness>) {
          out["witness"] = {{"kind", "wrong_shape_terminal"}, {"assembly", to_json(w.terminal, sys)}};
        } else {
          out["witness"] = {{"kind", "out_of_shape"},
                            {"assembly", to_json(w.assembly, sys)},
                            {"point", to_json(w.point)},
                            {"tile", sys.tile(w.tile).name}};
        }
      },
      *v.witness);
  return out;
}

inline json to_json(const MinResult& r) {
  json out = {{"mode", std::string(to_string(r.mode))},
              {"status", std::string(to_string(r.status))},
              {"kmax", r.kmax},
              {"k_star", nullptr},
              {"exhausted_k", r.exhausted_k},
              {"systems_tested", r.systems_tested},
              {"certificate", nullptr}};
  if (r.k_star) out["k_star"] = *r.k_star;
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  return out;
}

inline json to_json(const GapResult& g) {
  json out = {{"general", to_json(g.general)}, {"directed", to_json(g.directed)}, {"gap", nullptr}};
  if (auto d = g.gap()) out["gap"] = *d;
  return out;
}

inline json to_json(const AssemblySequence& seq, const TileSystem& sys) {
  json steps = json::array();
  for (const auto& s : seq.steps)
    steps.push_back({{"point", to_json(s.point)}, {"tile", sys.tile(s.tile).name}, {"strength", s.strength}});
  return {{"steps", std::move(steps)},
          {"terminal", seq.terminal},
          {"final", to_json(seq.final_assembly, sys)}};
}

}  // namespace tam
