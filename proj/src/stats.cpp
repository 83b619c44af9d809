#include "pnb/stats.hpp"

#include <fstream>

#include "json.hpp"

namespace pnb {

namespace {

using nlohmann::json;

}  // namespace

bool StatsReport::operator==(const StatsReport& o) const {
  if (format != o.format || verdict != o.verdict || engine != o.engine || reduce != o.reduce ||
      memo != o.memo || semantics_mode != o.semantics_mode || state_budget != o.state_budget ||
      memo_hits != o.memo_hits || total_time_ms != o.total_time_ms ||
      nodes.size() != o.nodes.size())
    return false;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const auto& a = nodes[i];
    const auto& b = o.nodes[i];
    if (a.node != b.node || a.states_before != b.states_before ||
        a.states_after != b.states_after || a.time_ms != b.time_ms)
      return false;
  }
  return true;
}

StatsReport make_stats(const CheckResult& result, const CheckOptions& opts) {
  StatsReport r;
  r.verdict = result.reachable ? "reachable" : "unreachable";
  r.engine = opts.engine == Engine::compositional ? "compositional" : "monolithic";
  switch (opts.reduce_level) {
    case ReduceLevel::none: r.reduce = "none"; break;
    case ReduceLevel::trim: r.reduce = "trim"; break;
    case ReduceLevel::standard: r.reduce = "standard"; break;
  }
  r.memo = opts.memo;
  r.semantics_mode = opts.semantics_mode == StepMode::full ? "full" : "boundary-complete";
  r.state_budget = opts.state_budget;
  r.memo_hits = result.memo_hits;
  r.total_time_ms = result.total_time_ms;
  r.nodes = result.node_stats;
  return r;
}

std::string stats_to_json(const StatsReport& r) {
  json nodes = json::array();
  for (const auto& n : r.nodes)
    nodes.push_back({{"id", n.node},
                     {"statesBefore", n.states_before},
                     {"statesAfter", n.states_after},
                     {"timeMs", n.time_ms}});
  json doc = {{"format", r.format},
              {"verdict", r.verdict},
              {"engine", r.engine},
              {"reduce", r.reduce},
              {"memo", r.memo},
              {"semanticsMode", r.semantics_mode},
              {"stateBudget", r.state_budget},
              {"memoHits", r.memo_hits},
              {"totalTimeMs", r.total_time_ms},
              {"nodes", nodes}};
  return doc.dump(2) + "\n";
}

StatsReport stats_from_json(const std::string& text) {
  json doc = json::parse(text);
  StatsReport r;
  r.format = doc.at("format").get<int>();
  r.verdict = doc.at("verdict").get<std::string>();
  r.engine = doc.at("engine").get<std::string>();
  r.reduce = doc.at("reduce").get<std::string>();
  r.memo = doc.at("memo").get<bool>();
  r.semantics_mode = doc.at("semanticsMode").get<std::string>();
  r.state_budget = doc.at("stateBudget").get<size_t>();
  r.memo_hits = doc.at("memoHits").get<size_t>();
  r.total_time_ms = doc.at("totalTimeMs").get<double>();
  for (const auto& n : doc.at("nodes")) {
    NodeStats ns;
    ns.node = n.at("id").get<std::string>();
    ns.states_before = n.at("statesBefore").get<size_t>();
    ns.states_after = n.at("statesAfter").get<size_t>();
    ns.time_ms = n.at("timeMs").get<double>();
    r.nodes.push_back(std::move(ns));
  }
  return r;
}

void write_stats(const std::string& path, const StatsReport& report) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open stats file '" + path + "' for writing");
  out << stats_to_json(report);
}

}  // namespace pnb
