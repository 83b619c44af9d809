#include "pnb/semantics.hpp"

#include <deque>
#include <functional>

namespace pnb {

namespace {

/// Per-net bit masks precomputed once per exploration.
struct Compiled {
  std::vector<Bits> pre, post, post_minus_pre;
  std::vector<Bits> lword, rword;
  std::vector<bool> boundary;               // touches a visible boundary port
  std::vector<std::vector<bool>> conflict;  // pairwise non-independence

  explicit Compiled(const Pnb& net) {
    const auto np = static_cast<uint32_t>(net.places.size());
    const auto nt = net.transitions.size();
    pre.reserve(nt);
    for (const auto& t : net.transitions) {
      pre.push_back(Bits::of(np, t.pre));
      post.push_back(Bits::of(np, t.post));
      Bits d = post.back();
      d.subtract(pre.back());
      post_minus_pre.push_back(std::move(d));
      lword.push_back(Bits::of(net.type.left, t.lports));
      rword.push_back(Bits::of(net.type.right, t.rports));
      boundary.push_back(!t.lports.empty() || !t.rports.empty());
    }
    conflict.assign(nt, std::vector<bool>(nt, false));
    for (size_t i = 0; i < nt; ++i)
      for (size_t j = i + 1; j < nt; ++j)
        conflict[i][j] = conflict[j][i] = !independent(net.transitions[i], net.transitions[j]);
  }

  bool enabled(size_t t, const Marking& m) const {
    return pre[t].subset_of(m) && !post_minus_pre[t].intersects(m);
  }
};

void check_marking(const Pnb& net, const Marking& m) {
  if (m.size() != net.places.size())
    throw InputError("marking has " + std::to_string(m.size()) + " places but net '" + net.name +
                     "' has " + std::to_string(net.places.size()));
}

std::vector<Step> steps_at(const Pnb& net, const Compiled& c, const Marking& m, StepMode mode) {
  std::vector<uint32_t> enabled;
  for (uint32_t t = 0; t < net.transitions.size(); ++t)
    if (c.enabled(t, m)) enabled.push_back(t);

  std::vector<Step> out;
  std::vector<uint32_t> chosen;
  std::vector<uint32_t> candidates;
  if (mode == StepMode::full) {
    candidates = enabled;
  } else {
    for (uint32_t t : enabled)
      if (c.boundary[t]) candidates.push_back(t);
  }

  // All independent subsets of the candidate list.
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == candidates.size()) {
      out.push_back({chosen});
      return;
    }
    rec(i + 1);
    for (uint32_t x : chosen)
      if (c.conflict[x][candidates[i]]) return;
    chosen.push_back(candidates[i]);
    rec(i + 1);
    chosen.pop_back();
  };
  rec(0);
  for (auto& s : out) std::sort(s.transitions.begin(), s.transitions.end());

  if (mode == StepMode::boundary_complete)
    for (uint32_t t : enabled)
      if (!c.boundary[t]) out.push_back({{t}});

  return out;
}

}  // namespace

std::vector<Step> enabled_steps(const Pnb& net, const Marking& m, StepMode mode) {
  check_marking(net, m);
  Compiled c(net);
  return steps_at(net, c, m, mode);
}

Marking fire_step(const Pnb& net, const Marking& m, const Step& s) {
  check_marking(net, m);
  Compiled c(net);
  for (size_t i = 0; i < s.transitions.size(); ++i) {
    uint32_t t = s.transitions[i];
    if (t >= net.transitions.size()) throw InputError("step references unknown transition");
    if (!c.enabled(t, m))
      throw ContractError("step is not enabled: transition '" + net.transitions[t].name +
                          "' cannot fire at this marking");
    for (size_t j = i + 1; j < s.transitions.size(); ++j)
      if (c.conflict[t][s.transitions[j]])
        throw ContractError("step is not enabled: transitions '" + net.transitions[t].name +
                            "' and '" + net.transitions[s.transitions[j]].name +
                            "' are not independent");
  }
  Marking r = m;
  for (uint32_t t : s.transitions) r.subtract(c.pre[t]);
  for (uint32_t t : s.transitions) r |= c.post[t];
  return r;
}

std::pair<Bits, Bits> step_labels(const Pnb& net, const Step& s) {
  Bits l(net.type.left), r(net.type.right);
  for (uint32_t t : s.transitions) {
    for (uint32_t p : net.transitions[t].lports) l.set(p);
    for (uint32_t p : net.transitions[t].rports) r.set(p);
  }
  return {l, r};
}

TwoLts build_two_lts(const Pnb& net, const std::vector<Marking>& seeds, StepMode mode,
                     size_t budget) {
  Compiled c(net);
  TwoLts lts;
  lts.left_arity = net.type.left;
  lts.right_arity = net.type.right;

  std::deque<uint32_t> work;
  auto intern = [&](const Marking& m) {
    auto it = lts.index.find(m);
    if (it != lts.index.end()) return it->second;
    if (lts.states.size() >= budget)
      throw BudgetError("state budget of " + std::to_string(budget) +
                        " exceeded while translating net '" + net.name + "'");
    auto id = static_cast<uint32_t>(lts.states.size());
    lts.states.push_back(m);
    lts.index.emplace(m, id);
    work.push_back(id);
    return id;
  };

  for (const auto& seed : seeds) {
    check_marking(net, seed);
    intern(seed);
  }

  while (!work.empty()) {
    uint32_t src = work.front();
    work.pop_front();
    Marking m = lts.states[src];
    for (const auto& s : steps_at(net, c, m, mode)) {
      Marking next = m;
      for (uint32_t t : s.transitions) next.subtract(c.pre[t]);
      for (uint32_t t : s.transitions) next |= c.post[t];
      auto [l, r] = step_labels(net, s);
      uint32_t dst = intern(next);
      lts.edges.push_back({src, dst, std::move(l), std::move(r)});
    }
  }

  std::sort(lts.edges.begin(), lts.edges.end());
  lts.edges.erase(std::unique(lts.edges.begin(), lts.edges.end()), lts.edges.end());
  return lts;
}

}  // namespace pnb
