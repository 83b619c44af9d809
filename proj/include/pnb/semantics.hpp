#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pnb/net.hpp"

namespace pnb {

enum class StepMode {
  full,               // every independent subset of enabled transitions
  boundary_complete,  // boundary subsets, internal singletons, empty step
};

/// A step: a set of pairwise independent transitions fired simultaneously.
struct Step {
  std::vector<uint32_t> transitions;  // indices, sorted
};

inline constexpr size_t kDefaultStateBudget = 1'000'000;

std::vector<Step> enabled_steps(const Pnb& net, const Marking& m, StepMode mode);

Marking fire_step(const Pnb& net, const Marking& m, const Step& s);

/// Boundary observation of a step: bit i set iff some member engages port i.
std::pair<Bits, Bits> step_labels(const Pnb& net, const Step& s);

struct LtsEdge {
  uint32_t src = 0;
  uint32_t dst = 0;
  Bits left;
  Bits right;
  auto key() const { return std::tie(src, left, right, dst); }
  bool operator==(const LtsEdge& o) const { return key() == o.key(); }
  bool operator<(const LtsEdge& o) const { return key() < o.key(); }
};

/// Two-labelled transition system over the markings of a net. Reflexive by
/// construction: the empty step yields an all-zeros self-loop everywhere.
struct TwoLts {
  uint32_t left_arity = 0;
  uint32_t right_arity = 0;
  std::vector<Marking> states;
  std::vector<LtsEdge> edges;  // sorted, unique

  std::optional<uint32_t> state_of(const Marking& m) const {
    auto it = index.find(m);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::unordered_map<Marking, uint32_t, BitsHash> index;
};

/// Explores all markings reachable from the seeds under the given step mode.
/// Throws BudgetError once more than `budget` states have been discovered.
TwoLts build_two_lts(const Pnb& net, const std::vector<Marking>& seeds, StepMode mode,
                     size_t budget = kDefaultStateBudget);

}  // namespace pnb
