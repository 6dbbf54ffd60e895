#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tam/exploration.hpp"

namespace tam {

// ---------------------------------------------------------------------------
// Search space
//
// A k-tile candidate is described by its 4k glue slots (slot = 4*tile + side,
// sides in N, E, S, W order). Slots are split into one null class and a set
// of positive classes; each positive class is a distinct glue label with one
// strength. Two systems that differ only by renaming labels have the same
// description, so enumerating descriptions enumerates systems up to glue
// relabeling.
//
// Enumeration order: number of positive slots ascending, then the positive
// slot subset in lexicographic order, then its set partition in restricted
// growth string order, then class strengths (1 before 2, first class most
// significant), then seed position over shape orbit representatives.

struct GlueAssignment {
  std::size_t tiles = 0;
  std::vector<int> slot_class;      // -1 = null, else positive class index
  std::vector<int> class_strength;  // 1 or 2

  int strength(std::size_t tile, Direction d) const {
    const int c = slot_class[tile * 4 + index(d)];
    return c < 0 ? 0 : class_strength[static_cast<std::size_t>(c)];
  }
  int label(std::size_t tile, Direction d) const { return slot_class[tile * 4 + index(d)]; }
};

/// Builds the tile system for an assignment. The seed is always tile 0: any
/// other choice is a renaming of tile types, which preserves every verdict.
inline TileSystem to_system(const GlueAssignment& ga, Point seed_position, std::string name = {}) {
  std::vector<TileType> tiles(ga.tiles);
  for (std::size_t t = 0; t < ga.tiles; ++t) {
    tiles[t].name = "T" + std::to_string(t);
    for (Direction d : kDirections) {
      const int c = ga.label(t, d);
      if (c >= 0) tiles[t].glue(d) = Glue{"g" + std::to_string(c), ga.strength(t, d)};
    }
  }
  return TileSystem(std::move(tiles), 0, seed_position, std::move(name));
}

/// Necessary conditions for strict self-assembly checked before exploration.
enum class PruneRule {
  /// (a) With more than one cell, the lone seed must bind its first neighbor
  /// through a single side, so it needs a double glue on a side facing into
  /// the shape.
  SeedCannotGrow,
  /// (b) A double glue on the seed facing out of the shape attracts its
  /// partner there (no effectively null glues), so growth leaves the shape.
  SeedDoubleGlueFacesOut,
  /// (c) The shape's binding graph must be connected, and every bond runs
  /// along an axis (E-W or N-S) for which some glue class occurs on both
  /// sides. The shape's adjacency graph restricted to such axes must be
  /// connected.
  AxisDisconnected,
};

inline std::string_view to_string(PruneRule r) {
  switch (r) {
    case PruneRule::SeedCannotGrow: return "seed-cannot-grow";
    case PruneRule::SeedDoubleGlueFacesOut: return "seed-double-glue-faces-out";
    case PruneRule::AxisDisconnected: return "axis-disconnected";
  }
  return "?";
}

/// First pruning rule that refutes strict self-assembly of `shape` by the
/// candidate with its seed at `seed_position`, if any.
inline std::optional<PruneRule> prune_reason(const GlueAssignment& ga, Point seed_position,
                                             const Shape& shape) {
  if (shape.size() == 1) return std::nullopt;
  bool grows = false;
  for (Direction d : kDirections) {
    if (ga.strength(0, d) != 2) continue;
    if (!shape.contains(neighbor(seed_position, d))) return PruneRule::SeedDoubleGlueFacesOut;
    grows = true;
  }
  if (!grows) return PruneRule::SeedCannotGrow;

  bool horizontal = false, vertical = false;
  const std::size_t classes = ga.class_strength.size();
  std::vector<std::array<bool, 4>> sides(classes, {false, false, false, false});
  for (std::size_t s = 0; s < ga.slot_class.size(); ++s)
    if (ga.slot_class[s] >= 0) sides[static_cast<std::size_t>(ga.slot_class[s])][s % 4] = true;
  for (const auto& sd : sides) {
    horizontal |= sd[index(Direction::East)] && sd[index(Direction::West)];
    vertical |= sd[index(Direction::North)] && sd[index(Direction::South)];
  }
  if (!(horizontal && vertical)) {
    // Connectivity of the shape using only the available axis.
    std::vector<Point> pts(shape.points().begin(), shape.points().end());
    std::vector<std::size_t> parent(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    std::size_t components = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (Direction d : {Direction::East, Direction::North}) {
        if (d == Direction::East && !horizontal) continue;
        if (d == Direction::North && !vertical) continue;
        auto it = std::lower_bound(pts.begin(), pts.end(), neighbor(pts[i], d));
        if (it == pts.end() || *it != neighbor(pts[i], d)) continue;
        const std::size_t a = find(i), b = find(static_cast<std::size_t>(it - pts.begin()));
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
    }
    if (components != 1) return PruneRule::AxisDisconnected;
  }
  return std::nullopt;
}

struct EnumerationOptions {
  bool prune = true;
  bool symmetry_reduction = true;  // seed positions over orbit representatives only
};

struct Candidate {
  GlueAssignment glues;
  Point seed_position;
};

namespace detail {

// Restricted growth strings of length n in lexicographic order.
template <typename Fn>
bool for_each_rgs(std::size_t n, Fn&& fn) {
  std::vector<int> a(n, 0);
  if (n == 0) return fn(a, 0);
  std::vector<int> maxprefix(n, 0);  // max of a[0..i]
  while (true) {
    if (!fn(a, static_cast<std::size_t>(maxprefix[n - 1] + 1))) return false;
    // Next string: rightmost position that can be incremented.
    std::size_t i = n - 1;
    while (i > 0 && a[i] > maxprefix[i - 1]) --i;
    if (i == 0) return true;
    ++a[i];
    maxprefix[i] = std::max(maxprefix[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      maxprefix[j] = maxprefix[j - 1];
    }
  }
}

// Lexicographic m-subsets of {0..n-1}.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t m, Fn&& fn) {
  if (m > n) return true;
  std::vector<std::size_t> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = i;
  while (true) {
    if (!fn(c)) return false;
    std::size_t i = m;
    while (i > 0 && c[i - 1] == n - m + i - 1) --i;
    if (i == 0) return true;
    ++c[i - 1];
    for (std::size_t j = i; j < m; ++j) c[j] = c[j - 1] + 1;
  }
}

// Every positive slot's class must also occur on the opposite side;
// otherwise the glue is effectively null and the normalized form of this
// description is another description with fewer positive slots.
inline bool normalized(const GlueAssignment& ga) {
  std::vector<std::array<bool, 4>> sides(ga.class_strength.size(), {false, false, false, false});
  for (std::size_t s = 0; s < ga.slot_class.size(); ++s)
    if (ga.slot_class[s] >= 0) sides[static_cast<std::size_t>(ga.slot_class[s])][s % 4] = true;
  for (std::size_t s = 0; s < ga.slot_class.size(); ++s) {
    if (ga.slot_class[s] < 0) continue;
    const auto side = static_cast<Direction>(s % 4);
    if (!sides[static_cast<std::size_t>(ga.slot_class[s])][index(opposite(side))]) return false;
  }
  return true;
}

}  // namespace detail

/// Streams every canonical candidate with exactly k tile types for `shape`,
/// in enumeration order. `visit(const Candidate&)` returns false to stop.
/// Returns false iff the visitor stopped the stream.
template <typename Visitor>
bool for_each_canonical_candidate(std::size_t k, const Shape& shape, Visitor&& visit,
                                  EnumerationOptions opts = {}) {
  if (k < 1) throw Error("tile count must be at least 1");
  const std::size_t n = 4 * k;
  const std::vector<Point> seeds = opts.symmetry_reduction
                                       ? orbit_representatives(shape)
                                       : std::vector<Point>(shape.points().begin(), shape.points().end());
  Candidate cand;
  cand.glues.tiles = k;
  cand.glues.slot_class.assign(n, -1);

  for (std::size_t m = 0; m <= n; ++m) {
    const bool go_on = detail::for_each_subset(n, m, [&](const std::vector<std::size_t>& subset) {
      return detail::for_each_rgs(m, [&](const std::vector<int>& rgs, std::size_t classes) {
        std::fill(cand.glues.slot_class.begin(), cand.glues.slot_class.end(), -1);
        for (std::size_t i = 0; i < m; ++i) cand.glues.slot_class[subset[i]] = rgs[i];
        cand.glues.class_strength.assign(m == 0 ? 0 : classes, 1);
        if (!detail::normalized(cand.glues)) return true;
        const std::size_t nc = cand.glues.class_strength.size();
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << nc); ++bits) {
          for (std::size_t c = 0; c < nc; ++c)
            cand.glues.class_strength[c] = ((bits >> (nc - 1 - c)) & 1u) ? 2 : 1;
          for (Point seed : seeds) {
            cand.seed_position = seed;
            if (opts.prune && prune_reason(cand.glues, seed, shape)) continue;
            if (!visit(static_cast<const Candidate&>(cand))) return false;
          }
        }
        return true;
      });
    });
    if (!go_on) return false;
  }
  return true;
}

/// All canonical k-tile systems for `shape` (small k only).
inline std::vector<TileSystem> enumerate_canonical_systems(std::size_t k, const Shape& shape,
                                                           EnumerationOptions opts = {}) {
  std::vector<TileSystem> out;
  for_each_canonical_candidate(
      k, shape,
      [&](const Candidate& c) {
        out.push_back(to_system(c.glues, c.seed_position));
        return true;
      },
      opts);
  return out;
}

// ---------------------------------------------------------------------------
// Search

enum class SearchMode { General, Directed };
enum class MinStatus { Found, NotFoundUpTo, BudgetExceeded };

inline std::string_view to_string(SearchMode m) {
  return m == SearchMode::General ? "general" : "directed";
}

inline std::string_view to_string(MinStatus s) {
  switch (s) {
    case MinStatus::Found: return "Found";
    case MinStatus::NotFoundUpTo: return "NotFoundUpTo";
    case MinStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

struct SearchBudget {
  std::uint64_t max_systems = std::numeric_limits<std::uint64_t>::max();
  std::optional<std::chrono::duration<double>> time_limit;
  std::size_t exploration_budget = 100'000;  // assemblies per candidate
  unsigned threads = 1;
};

struct MinResult {
  SearchMode mode = SearchMode::General;
  MinStatus status = MinStatus::NotFoundUpTo;
  std::size_t kmax = 0;
  std::optional<std::size_t> k_star;
  std::optional<TileSystem> certificate;
  std::size_t exhausted_k = 0;  // largest k fully searched without an accept
  std::uint64_t systems_tested = 0;
};

/// Strictness and directedness of one candidate from a single bounded exploration.
struct CandidateVerdict {
  Answer strict = Answer::Inconclusive;
  Answer directed = Answer::Inconclusive;
};

inline CandidateVerdict evaluate_candidate(const TileSystem& sys, const Shape& shape,
                                           std::size_t exploration_budget) {
  ExploreOptions opts;
  opts.budget = exploration_budget;
  opts.stop_on_escape = true;
  opts.record_witnesses = false;
  const ExplorationReport r = explore(sys, shape.region(), opts);
  CandidateVerdict v;
  if (r.escape_witness) {
    v.strict = v.directed = Answer::No;
    return v;
  }
  for (const auto& t : r.terminals)
    if (t.size() != shape.size()) {
      v.strict = v.directed = Answer::No;
      return v;
    }
  if (r.status != ExplorationStatus::Complete) return v;
  v.strict = Answer::Yes;
  v.directed = Answer::Yes;
  for (const auto& [p, types] : r.position_types)
    if (types.size() > 1) v.directed = Answer::No;
  return v;
}

namespace detail {

struct ModeState {
  bool active = false;
  bool done = false;
  MinResult result;
};

inline void verify_certificate(const MinResult& r, const Shape& shape, std::size_t budget) {
  if (!r.certificate) return;
  ExploreOptions opts;
  opts.budget = budget;
  if (strictly_self_assembles(*r.certificate, shape, opts).answer != Answer::Yes)
    throw std::logic_error("certificate failed strictness re-verification");
  if (r.mode == SearchMode::Directed &&
      is_directed(*r.certificate, shape.region(), opts).answer != Answer::Yes)
    throw std::logic_error("certificate failed directedness re-verification");
}

// One pass over the candidate stream serves both modes: a directed accept is
// also a strict accept, so the general answer for each k is settled no later
// than the directed one.
inline std::pair<MinResult, MinResult> joint_search(const Shape& shape, std::size_t kmax,
                                                    const SearchBudget& budget, bool general,
                                                    bool directed) {
  if (kmax < 1) throw Error("kmax must be at least 1");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  ModeState modes[2];
  modes[0].active = general;
  modes[1].active = directed;
  modes[0].result.mode = SearchMode::General;
  modes[1].result.mode = SearchMode::Directed;
  for (auto& m : modes) m.result.kmax = kmax;
  std::uint64_t tested = 0;
  bool out_of_budget = false;

  auto pending = [&] {
    return (modes[0].active && !modes[0].done) || (modes[1].active && !modes[1].done);
  };

  const unsigned threads = std::max(1u, budget.threads);
  const std::size_t batch_size = threads > 1 ? 512 : 1;

  for (std::size_t k = 1; k <= kmax && pending() && !out_of_budget; ++k) {
    std::vector<Candidate> batch;
    std::vector<CandidateVerdict> verdicts;

    auto over_budget = [&] {
      if (tested >= budget.max_systems) return true;
      return budget.time_limit && Clock::now() - start > *budget.time_limit;
    };

    // Returns false when the stream for this k should stop.
    auto flush = [&]() -> bool {
      verdicts.assign(batch.size(), {});
      auto work = [&](std::size_t i) {
        verdicts[i] = evaluate_candidate(to_system(batch[i].glues, batch[i].seed_position), shape,
                                         budget.exploration_budget);
      };
      if (threads > 1 && batch.size() > 1) {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
          pool.emplace_back([&, w] {
            for (std::size_t i = w; i < batch.size(); i += threads) work(i);
          });
        for (auto& t : pool) t.join();
      } else {
        for (std::size_t i = 0; i < batch.size(); ++i) work(i);
      }
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (over_budget()) {
          out_of_budget = true;
          return false;
        }
        ++tested;
        for (auto& m : modes)
          if (m.active && !m.done) ++m.result.systems_tested;
        const auto& v = verdicts[i];
        if (v.strict == Answer::Inconclusive) {
          out_of_budget = true;
          return false;
        }
        for (std::size_t mi = 0; mi < 2; ++mi) {
          auto& m = modes[mi];
          if (!m.active || m.done) continue;
          const bool accept = mi == 0 ? v.strict == Answer::Yes
                                      : v.strict == Answer::Yes && v.directed == Answer::Yes;
          if (!accept) continue;
          m.done = true;
          m.result.status = MinStatus::Found;
          m.result.k_star = k;
          m.result.certificate = to_system(batch[i].glues, batch[i].seed_position,
                                           "min-" + std::string(to_string(m.result.mode)) + "-k" +
                                               std::to_string(k));
        }
        if (!pending()) return false;
      }
      batch.clear();
      return true;
    };

    for_each_canonical_candidate(k, shape, [&](const Candidate& c) {
      batch.push_back(c);
      if (batch.size() < batch_size) return true;
      return flush();
    });
    if (!batch.empty() && pending() && !out_of_budget) flush();

    if (!out_of_budget)
      for (auto& m : modes)
        if (m.active && !m.done) m.result.exhausted_k = k;
  }

  for (auto& m : modes) {
    if (!m.active || m.done) continue;
    m.result.status = out_of_budget ? MinStatus::BudgetExceeded : MinStatus::NotFoundUpTo;
  }
  for (auto& m : modes) {
    if (m.active && m.done) {
      m.result.exhausted_k = *m.result.k_star - 1;
      verify_certificate(m.result, shape, budget.exploration_budget);
    }
  }
  return {modes[0].result, modes[1].result};
}

}  // namespace detail

/// Smallest k <= kmax for which some k-tile system strictly self-assembles
/// `shape` (and, in Directed mode, is directed), with a certificate.
/// Exact exhaustive search: only feasible for a handful of cells.
inline MinResult min_tile_set(const Shape& shape, SearchMode mode, std::size_t kmax,
                              const SearchBudget& budget = {}) {
  auto [general, directed] = detail::joint_search(shape, kmax, budget, mode == SearchMode::General,
                                                  mode == SearchMode::Directed);
  return mode == SearchMode::General ? general : directed;
}

struct GapResult {
  MinResult general;
  MinResult directed;

  /// Directed minus general minimum, when both were found.
  std::optional<long long> gap() const {
    if (!general.k_star || !directed.k_star) return std::nullopt;
    return static_cast<long long>(*directed.k_star) - static_cast<long long>(*general.k_star);
  }
};

/// Both minima from one shared pass over the candidate stream.
inline GapResult complexity_gap(const Shape& shape, std::size_t kmax,
                                const SearchBudget& budget = {}) {
  auto [general, directed] = detail::joint_search(shape, kmax, budget, true, true);
  return {std::move(general), std::move(directed)};
}

}  // namespace tam
