#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnb/checker.hpp"
#include "pnb/net.hpp"

namespace pnb {

/// A closed reachability problem over one flat net.
struct FlatProblem {
  Pnb net;  // type (0,0)
  Marking init;
  Marking target;
  AcceptanceMode mode = AcceptanceMode::exact;
};

/// A replayable firing sequence, by composite transition name.
struct Witness {
  std::vector<std::string> firings;
};

inline constexpr size_t kOracleStateBudget = size_t{1} << 22;

/// Folds the expression's nets into one global net; leaf markings move to
/// the qualified global places.
FlatProblem flatten(const Expr& e);

struct SearchResult {
  bool reachable = false;
  std::optional<Witness> witness;
  std::optional<size_t> distance;
};

/// Breadth-first search over markings, firing one transition at a time.
/// Returns a shortest firing sequence when the target is reachable.
SearchResult search(const FlatProblem& p, size_t budget = kOracleStateBudget);

struct RandomLimits {
  uint32_t max_places = 3;
  uint32_t max_transitions = 4;
  uint32_t max_arity = 2;
};

/// Deterministic net generator for property tests. Output always validates.
Pnb random_pnb(uint64_t seed, const RandomLimits& limits);

/// Same generator with both boundary arities pinned.
Pnb random_pnb(uint64_t seed, const RandomLimits& limits, uint32_t left, uint32_t right);

}  // namespace pnb
