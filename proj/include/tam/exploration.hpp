#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <variant>
#include <vector>

#include "tam/frontier.hpp"

namespace tam {

enum class ExplorationStatus {
  Complete,        // every enumerated assembly was fully expanded inside the bound
  BoundExceeded,   // closure inside the bound is complete, but growth escapes it
  BudgetExceeded,  // stopped after `budget` distinct assemblies
  Stopped,         // a caller-requested early stop fired (conflict or escape)
};

enum class ExplorationOrder { BreadthFirst, DepthFirst, Random };

struct ExploreOptions {
  std::size_t budget = 1'000'000;
  ExplorationOrder order = ExplorationOrder::BreadthFirst;
  std::uint64_t rng_seed = 0;  // Random order only
  unsigned threads = 1;        // BreadthFirst only; results do not depend on it
  bool keep_assemblies = false;
  bool record_witnesses = true;
  bool stop_on_conflict = false;
  bool stop_on_escape = false;
};

/// A producible assembly together with a frontier attachment outside the bound.
struct EscapeWitness {
  Assembly assembly;
  Point point;
  TileIndex tile = 0;
};

struct ExplorationReport {
  ExplorationStatus status = ExplorationStatus::Complete;
  std::size_t producible_count = 0;
  std::vector<CanonicalKey> terminal_keys;  // sorted
  std::vector<Assembly> terminals;          // parallel to terminal_keys
  std::map<Point, std::set<TileIndex>> position_types;
  std::optional<EscapeWitness> escape_witness;
  /// Every enumerated assembly, sorted, when ExploreOptions::keep_assemblies.
  std::vector<Assembly> assemblies;
  /// For each (point, tile) ever placed, the least producible assembly whose
  /// last step placed it. Filled when ExploreOptions::record_witnesses.
  std::map<Placement, Assembly> placement_witnesses;
};

namespace detail {

class Explorer {
 public:
  Explorer(const TileSystem& sys, const Region& bound, const ExploreOptions& opts)
      : sys_(sys), bound_(bound), opts_(opts) {}

  ExplorationReport run() {
    if (!bound_.contains(sys_.seed_position()))
      throw Error("seed position " + to_string(sys_.seed_position()) + " outside the bound");
    if (opts_.budget < 1) throw Error("exploration budget must be at least 1");

    const Assembly seed = Assembly::seed_of(sys_);
    seen_.insert(seed.canonical_key());
    report_.producible_count = 1;
    record_placement({sys_.seed_position(), sys_.seed_tile()}, seed);
    if (opts_.keep_assemblies) report_.assemblies.push_back(seed);

    switch (opts_.order) {
      case ExplorationOrder::BreadthFirst: breadth_first(seed); break;
      case ExplorationOrder::DepthFirst:
      case ExplorationOrder::Random: worklist(seed); break;
    }

    if (halted_) {
      report_.status = budget_hit_ ? ExplorationStatus::BudgetExceeded : ExplorationStatus::Stopped;
    } else {
      report_.status = report_.escape_witness ? ExplorationStatus::BoundExceeded
                                              : ExplorationStatus::Complete;
    }
    finish();
    return std::move(report_);
  }

 private:
  // Consumes the precomputed frontier of `alpha`. Returns false to halt.
  bool expand(const Assembly& alpha, const std::vector<Attachment>& attachments,
              std::vector<Assembly>& fresh) {
    if (attachments.empty()) {
      terminals_.push_back(alpha);
      return true;
    }
    for (const auto& att : attachments) {
      if (!bound_.contains(att.point)) {
        note_escape(alpha, att);
        if (opts_.stop_on_escape) return false;
        continue;
      }
      Assembly child = alpha.with_placement(att.point, att.tile);
      const bool conflict = record_placement({att.point, att.tile}, child);
      CanonicalKey key = child.canonical_key();
      if (!seen_.contains(key)) {
        if (report_.producible_count >= opts_.budget) {
          budget_hit_ = true;
          return false;
        }
        seen_.insert(std::move(key));
        ++report_.producible_count;
        if (opts_.keep_assemblies) report_.assemblies.push_back(child);
        fresh.push_back(std::move(child));
      }
      if (conflict && opts_.stop_on_conflict) return false;
    }
    return true;
  }

  void breadth_first(const Assembly& seed) {
    std::vector<Assembly> level{seed};
    std::vector<std::vector<Attachment>> frontiers;
    while (!level.empty()) {
      std::sort(level.begin(), level.end());
      compute_frontiers(level, frontiers);
      std::vector<Assembly> next;
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (!expand(level[i], frontiers[i], next)) {
          halted_ = true;
          return;
        }
      }
      level = std::move(next);
    }
  }

  void compute_frontiers(const std::vector<Assembly>& level,
                         std::vector<std::vector<Attachment>>& out) const {
    out.assign(level.size(), {});
    const unsigned workers =
        std::max(1u, std::min<unsigned>(opts_.threads, static_cast<unsigned>(level.size() / 64)));
    if (workers <= 1) {
      for (std::size_t i = 0; i < level.size(); ++i) out[i] = frontier_attachments(sys_, level[i]);
      return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < level.size(); i += workers)
          out[i] = frontier_attachments(sys_, level[i]);
      });
    }
    for (auto& t : pool) t.join();
  }

  void worklist(const Assembly& seed) {
    std::vector<Assembly> pending{seed};
    std::mt19937_64 rng(opts_.rng_seed);
    while (!pending.empty()) {
      if (opts_.order == ExplorationOrder::Random) {
        const std::size_t i = static_cast<std::size_t>(rng() % pending.size());
        std::swap(pending[i], pending.back());
      }
      Assembly alpha = std::move(pending.back());
      pending.pop_back();
      std::vector<Assembly> fresh;
      if (!expand(alpha, frontier_attachments(sys_, alpha), fresh)) {
        halted_ = true;
        return;
      }
      for (auto& f : fresh) pending.push_back(std::move(f));
    }
  }

  // Returns true when this placement creates a second tile type at its point.
  bool record_placement(Placement pl, const Assembly& introduced_by) {
    auto& types = report_.position_types[pl.point];
    const bool inserted = types.insert(pl.tile).second;
    if (opts_.record_witnesses) {
      auto it = report_.placement_witnesses.find(pl);
      if (it == report_.placement_witnesses.end())
        report_.placement_witnesses.emplace(pl, introduced_by);
      else if (introduced_by < it->second)
        it->second = introduced_by;
    }
    return inserted && types.size() >= 2;
  }

  void note_escape(const Assembly& alpha, const Attachment& att) {
    auto& w = report_.escape_witness;
    if (!w || std::tie(alpha, att.point, att.tile) < std::tie(w->assembly, w->point, w->tile))
      w = EscapeWitness{alpha, att.point, att.tile};
  }

  void finish() {
    std::vector<std::pair<CanonicalKey, Assembly>> keyed;
    keyed.reserve(terminals_.size());
    for (auto& t : terminals_) keyed.emplace_back(t.canonical_key(), std::move(t));
    std::sort(keyed.begin(), keyed.end());
    for (auto& [k, a] : keyed) {
      report_.terminal_keys.push_back(std::move(k));
      report_.terminals.push_back(std::move(a));
    }
    std::sort(report_.assemblies.begin(), report_.assemblies.end());
  }

  const TileSystem& sys_;
  const Region& bound_;
  const ExploreOptions& opts_;
  ExplorationReport report_;
  std::unordered_set<CanonicalKey> seen_;
  std::vector<Assembly> terminals_;
  bool halted_ = false;
  bool budget_hit_ = false;
};

}  // namespace detail

/// Closure of the seed under attachments inside `bound`, deduplicated by
/// canonical key. Attachments outside the bound are recorded as an escape
/// witness and not expanded.
inline ExplorationReport explore(const TileSystem& sys, const Region& bound,
                                 const ExploreOptions& opts = {}) {
  return detail::Explorer(sys, bound, opts).run();
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Answer { Yes, No, Inconclusive };

inline std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    case Answer::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline std::string_view to_string(ExplorationStatus s) {
  switch (s) {
    case ExplorationStatus::Complete: return "Complete";
    case ExplorationStatus::BoundExceeded: return "BoundExceeded";
    case ExplorationStatus::BudgetExceeded: return "BudgetExceeded";
    case ExplorationStatus::Stopped: return "Stopped";
  }
  return "?";
}

/// Two producible assemblies that disagree at `point`.
struct ConflictWitness {
  Point point;
  TileIndex first = 0;
  TileIndex second = 0;
  Assembly alpha;  // alpha(point) == first
  Assembly beta;   // beta(point) == second
};

/// A terminal assembly whose shape differs from the target.
struct WrongShapeWitness {
  Assembly terminal;
};

/// A producible assembly with a frontier attachment outside the target shape.
struct OutOfShapeWitness {
  Assembly assembly;
  Point point;
  TileIndex tile = 0;
};

using Witness = std::variant<ConflictWitness, WrongShapeWitness, OutOfShapeWitness>;

struct Verdict {
  Answer answer = Answer::Inconclusive;
  std::optional<Witness> witness;
  ExplorationStatus status = ExplorationStatus::Complete;
  std::size_t explored = 0;
};

namespace detail {

inline std::optional<ConflictWitness> first_conflict(const ExplorationReport& report) {
  for (const auto& [p, types] : report.position_types) {
    if (types.size() < 2) continue;
    auto it = types.begin();
    const TileIndex a = *it++;
    const TileIndex b = *it;
    ConflictWitness w{p, a, b, Assembly::single(p, a), Assembly::single(p, b)};
    if (auto wa = report.placement_witnesses.find({p, a}); wa != report.placement_witnesses.end())
      w.alpha = wa->second;
    if (auto wb = report.placement_witnesses.find({p, b}); wb != report.placement_witnesses.end())
      w.beta = wb->second;
    return w;
  }
  return std::nullopt;
}

}  // namespace detail

/// Directedness within `bound`: No as soon as two producible assemblies
/// disagree at some point; Yes only if the exploration completed without
/// escaping the bound; Inconclusive otherwise.
inline Verdict is_directed(const TileSystem& sys, const Region& bound, ExploreOptions opts = {}) {
  opts.stop_on_conflict = true;
  opts.stop_on_escape = false;
  opts.record_witnesses = true;
  const ExplorationReport report = explore(sys, bound, opts);
  Verdict v;
  v.status = report.status;
  v.explored = report.producible_count;
  if (auto c = detail::first_conflict(report)) {
    v.answer = Answer::No;
    v.witness = std::move(*c);
  } else if (report.status == ExplorationStatus::Complete) {
    v.answer = Answer::Yes;
  } else {
    v.answer = Answer::Inconclusive;
  }
  return v;
}

/// Strict self-assembly of `shape`: every terminal assembly has exactly that
/// shape.
///
/// A frontier attachment outside the shape refutes strictness immediately:
/// the attachment yields a producible assembly containing a point outside the
/// shape, and every fair continuation of it, finite or its infinite limit, is
/// a terminal assembly containing that point.
inline Verdict strictly_self_assembles(const TileSystem& sys, const Shape& shape,
                                       ExploreOptions opts = {}) {
  opts.stop_on_escape = true;
  opts.stop_on_conflict = false;
  const ExplorationReport report = explore(sys, shape.region(), opts);
  Verdict v;
  v.status = report.status;
  v.explored = report.producible_count;
  if (report.escape_witness) {
    v.answer = Answer::No;
    v.witness = OutOfShapeWitness{report.escape_witness->assembly, report.escape_witness->point,
                                  report.escape_witness->tile};
    return v;
  }
  for (const auto& t : report.terminals) {
    if (t.size() != shape.size()) {
      v.answer = Answer::No;
      v.witness = WrongShapeWitness{t};
      return v;
    }
  }
  v.answer = report.status == ExplorationStatus::Complete ? Answer::Yes : Answer::Inconclusive;
  return v;
}

struct LintViolation {
  Point point;
  Direction side;
  TileIndex tile = 0;

  friend bool operator==(const LintViolation&, const LintViolation&) = default;
};

/// Double glues observed facing a point outside `shape`. In a normalized
/// system such a glue always has a partner that can attach there with
/// strength 2, so any violation refutes strict self-assembly of `shape`.
inline std::vector<LintViolation> double_glue_lint(const TileSystem& sys, const Shape& shape,
                                                   const ExplorationReport& report) {
  std::vector<LintViolation> out;
  for (const auto& [p, types] : report.position_types)
    for (TileIndex t : types)
      for (Direction d : kDirections)
        if (sys.tile(t).glue(d).strength == 2 && !shape.contains(neighbor(p, d)))
          out.push_back({p, d, t});
  return out;
}

}  // namespace tam
