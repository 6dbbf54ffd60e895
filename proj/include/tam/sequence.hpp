#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "tam/frontier.hpp"

namespace tam {

enum class SequencePolicy {
  Uniform,      // uniform over all (point, tile) attachments
  FairFifo,     // oldest frontier point first; tile uniform among its candidates
  Interactive,  // steps supplied by a caller-provided chooser
};

/// Chooser for SequencePolicy::Interactive. Receives the current assembly and
/// its sorted frontier; returns the step to take, or nullopt to stop.
using StepChooser =
    std::function<std::optional<Attachment>(const Assembly&, std::span<const Attachment>)>;

struct AssemblySequence {
  std::vector<Attachment> steps;
  Assembly final_assembly;
  bool terminal = false;
};

namespace detail {

// Unbiased draw in [0, n) from the raw 64-bit generator output. The mapping is
// fixed here (not delegated to a distribution) so runs replay identically
// across standard library implementations.
inline std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % range);
}

// Frontier maintained incrementally: attaching at p can only change the
// attachments available at empty neighbors of p.
class IncrementalFrontier {
 public:
  IncrementalFrontier(const TileSystem& sys, const Assembly& alpha)
      : sys_(sys), scratch_(sys.size()) {
    for (Point p : empty_neighbors(alpha)) refresh(alpha, p);
  }

  void after_attach(const Assembly& alpha, Point p) {
    by_point_.erase(p);
    entered_.erase(p);
    for (Direction d : kDirections) {
      const Point q = neighbor(p, d);
      if (!alpha.occupied(q)) refresh(alpha, q);
    }
  }

  bool empty() const { return by_point_.empty(); }

  std::vector<Attachment> all() const {
    std::vector<Attachment> out;
    for (const auto& [p, atts] : by_point_) out.insert(out.end(), atts.begin(), atts.end());
    return out;
  }

  /// The frontier point that entered earliest (ties broken by point order).
  Point oldest() const {
    Point best{};
    std::uint64_t best_time = std::numeric_limits<std::uint64_t>::max();
    for (const auto& [p, t] : entered_)
      if (t < best_time) {
        best_time = t;
        best = p;
      }
    return best;
  }

  const std::vector<Attachment>& at(Point p) const { return by_point_.at(p); }

 private:
  void refresh(const Assembly& alpha, Point p) {
    std::vector<Attachment> atts;
    attachments_at(sys_, alpha, p, scratch_, atts);
    if (atts.empty()) {
      by_point_.erase(p);
      entered_.erase(p);
      return;
    }
    by_point_[p] = std::move(atts);
    if (!entered_.contains(p)) entered_[p] = clock_++;
  }

  const TileSystem& sys_;
  FrontierScratch scratch_;
  std::map<Point, std::vector<Attachment>> by_point_;
  std::map<Point, std::uint64_t> entered_;
  std::uint64_t clock_ = 0;
};

}  // namespace detail

/// Samples one assembly sequence from the seed. Stops at a terminal assembly,
/// after `max_steps` steps, or when an interactive chooser returns nullopt.
///
/// FairFifo is the finite-horizon stand-in for fairness: a point that joins
/// the frontier is serviced before any point that joined after it.
inline AssemblySequence sample_sequence(const TileSystem& sys, std::uint64_t rng_seed,
                                        SequencePolicy policy, std::size_t max_steps,
                                        const StepChooser& chooser = {}) {
  if (policy == SequencePolicy::Interactive && !chooser)
    throw Error("interactive policy requires a step chooser");
  std::mt19937_64 rng(rng_seed);
  Assembly current = Assembly::seed_of(sys);
  detail::IncrementalFrontier frontier(sys, current);
  std::vector<Attachment> steps;

  while (steps.size() < max_steps && !frontier.empty()) {
    Attachment step;
    switch (policy) {
      case SequencePolicy::Uniform: {
        const auto all = frontier.all();
        step = all[detail::draw_index(rng, all.size())];
        break;
      }
      case SequencePolicy::FairFifo: {
        const auto& here = frontier.at(frontier.oldest());
        step = here[detail::draw_index(rng, here.size())];
        break;
      }
      case SequencePolicy::Interactive: {
        const auto all = frontier.all();
        auto chosen = chooser(current, all);
        if (!chosen) return {std::move(steps), std::move(current), false};
        auto it = std::find_if(all.begin(), all.end(), [&](const Attachment& a) {
          return a.point == chosen->point && a.tile == chosen->tile;
        });
        if (it == all.end())
          throw Error("chosen step at " + to_string(chosen->point) + " is not a frontier attachment");
        step = *it;
        break;
      }
    }
    current = current.with_placement(step.point, step.tile);
    frontier.after_attach(current, step.point);
    steps.push_back(step);
  }
  const bool terminal = frontier.empty();
  return {std::move(steps), std::move(current), terminal};
}

}  // namespace tam
