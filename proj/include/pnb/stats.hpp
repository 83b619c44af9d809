#pragma once

#include <string>

#include "pnb/checker.hpp"

namespace pnb {

/// Machine-readable rendering of a check run. Serialized as JSON with a
/// fixed key set, versioned by `format`; see the README for the schema.
struct StatsReport {
  int format = 1;
  std::string verdict;   // "reachable" | "unreachable"
  std::string engine;    // "compositional" | "monolithic"
  std::string reduce;    // "none" | "trim" | "standard"
  bool memo = true;
  std::string semantics_mode;  // "full" | "boundary-complete"
  size_t state_budget = 0;
  size_t memo_hits = 0;
  double total_time_ms = 0.0;
  std::vector<NodeStats> nodes;

  bool operator==(const StatsReport& o) const;
};

StatsReport make_stats(const CheckResult& result, const CheckOptions& opts);

std::string stats_to_json(const StatsReport& report);
StatsReport stats_from_json(const std::string& text);

void write_stats(const std::string& path, const StatsReport& report);

}  // namespace pnb
