#include "pnb/oracle.hpp"

#include <deque>
#include <random>
#include <unordered_map>

namespace pnb {

namespace {

struct FlatPiece {
  Pnb net;
  Marking init;
  Marking target;
};

Marking shifted_union(const Marking& a, const Marking& b, uint32_t total) {
  Marking m(total);
  for (uint32_t i : a.indices()) m.set(i);
  for (uint32_t i : b.indices()) m.set(a.size() + i);
  return m;
}

FlatPiece flatten_node(const Expr& e, std::optional<AcceptanceMode>& mode) {
  if (e.kind == Expr::Kind::leaf) {
    if (mode && *mode != e.leaf.mode)
      throw InputError("expression mixes acceptance modes across leaves");
    mode = e.leaf.mode;
    return {*e.leaf.net, e.leaf.init, e.leaf.target};
  }
  FlatPiece l = flatten_node(*e.left, mode);
  FlatPiece r = flatten_node(*e.right, mode);
  FlatPiece out;
  out.net = e.kind == Expr::Kind::seq ? compose(l.net, r.net) : tensor(l.net, r.net);
  const auto total = static_cast<uint32_t>(out.net.places.size());
  out.init = shifted_union(l.init, r.init, total);
  out.target = shifted_union(l.target, r.target, total);
  return out;
}

}  // namespace

FlatProblem flatten(const Expr& e) {
  BoundaryType type = typecheck(e);
  if (type.left != 0 || type.right != 0)
    throw TypeError("cannot flatten an expression with open boundaries (" +
                    std::to_string(type.left) + "," + std::to_string(type.right) + ")");
  std::optional<AcceptanceMode> mode;
  FlatPiece piece = flatten_node(e, mode);
  return {std::move(piece.net), std::move(piece.init), std::move(piece.target),
          mode.value_or(AcceptanceMode::exact)};
}

SearchResult search(const FlatProblem& p, size_t budget) {
  const Pnb& net = p.net;
  const auto np = static_cast<uint32_t>(net.places.size());
  if (p.init.size() != np || p.target.size() != np)
    throw InputError("problem markings do not match the flat net");

  std::vector<Bits> pre, post, post_minus_pre;
  for (const auto& t : net.transitions) {
    pre.push_back(Bits::of(np, t.pre));
    post.push_back(Bits::of(np, t.post));
    Bits d = post.back();
    d.subtract(pre.back());
    post_minus_pre.push_back(std::move(d));
  }

  auto satisfies = [&](const Marking& m) {
    return p.mode == AcceptanceMode::exact ? m == p.target : p.target.subset_of(m);
  };

  struct Visit {
    uint32_t parent = UINT32_MAX;
    uint32_t via = UINT32_MAX;
  };
  std::vector<Marking> states{p.init};
  std::vector<Visit> visits{{}};
  std::unordered_map<Marking, uint32_t, BitsHash> index{{p.init, 0}};
  std::vector<size_t> dist{0};

  auto finish = [&](uint32_t goal) {
    SearchResult r;
    r.reachable = true;
    r.distance = dist[goal];
    Witness w;
    for (uint32_t s = goal; visits[s].via != UINT32_MAX; s = visits[s].parent)
      w.firings.push_back(net.transitions[visits[s].via].name);
    std::reverse(w.firings.begin(), w.firings.end());
    r.witness = std::move(w);
    return r;
  };

  if (satisfies(p.init)) return finish(0);

  std::deque<uint32_t> work{0};
  while (!work.empty()) {
    uint32_t cur = work.front();
    work.pop_front();
    Marking m = states[cur];
    for (uint32_t t = 0; t < net.transitions.size(); ++t) {
      if (!pre[t].subset_of(m) || post_minus_pre[t].intersects(m)) continue;
      Marking next = m;
      next.subtract(pre[t]);
      next |= post[t];
      if (index.contains(next)) continue;
      if (states.size() >= budget)
        throw BudgetError("oracle state budget of " + std::to_string(budget) + " exceeded");
      auto id = static_cast<uint32_t>(states.size());
      index.emplace(next, id);
      states.push_back(next);
      visits.push_back({cur, t});
      dist.push_back(dist[cur] + 1);
      if (satisfies(next)) return finish(id);
      work.push_back(id);
    }
  }
  return {};
}

Pnb random_pnb(uint64_t seed, const RandomLimits& limits) {
  std::mt19937_64 gen(seed);
  auto pick = [&](uint32_t n) { return n == 0 ? 0u : static_cast<uint32_t>(gen() % n); };
  uint32_t left = pick(limits.max_arity + 1);
  uint32_t right = pick(limits.max_arity + 1);
  // Re-derive from the same stream so pinned-arity generation stays aligned.
  std::mt19937_64 rest(gen());
  return random_pnb(rest(), limits, left, right);
}

Pnb random_pnb(uint64_t seed, const RandomLimits& limits, uint32_t left, uint32_t right) {
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
  auto pick = [&](uint32_t n) { return n == 0 ? 0u : static_cast<uint32_t>(gen() % n); };
  auto chance = [&](uint32_t percent) { return gen() % 100 < percent; };

  Pnb net;
  net.name = "rnd" + std::to_string(seed & 0xffff);
  net.type = {left, right};
  uint32_t nplaces = pick(limits.max_places + 1);
  for (uint32_t i = 0; i < nplaces; ++i) net.places.push_back("p" + std::to_string(i));

  uint32_t ntrans = 1 + pick(limits.max_transitions);
  for (uint32_t k = 0; k < ntrans && net.transitions.size() < limits.max_transitions;) {
    Transition t;
    t.name = "t" + std::to_string(net.transitions.size());
    t.parts = {t.name};
    for (uint32_t i = 0; i < nplaces; ++i) {
      if (chance(35)) t.pre.push_back(i);
      if (chance(35)) t.post.push_back(i);
    }
    // Port inclusion rate tuned so that well over half of all generated
    // nets carry at least one boundary-touching transition.
    for (uint32_t i = 0; i < left; ++i)
      if (chance(45)) t.lports.push_back(i);
    for (uint32_t i = 0; i < right; ++i)
      if (chance(45)) t.rports.push_back(i);

    ++k;
    if (t.pre.empty() && t.post.empty() && t.lports.empty() && t.rports.empty()) continue;
    bool dup = false;
    for (const auto& other : net.transitions)
      if (other.same_structure(t)) dup = true;
    if (dup) continue;
    net.transitions.push_back(std::move(t));
  }
  return net;
}

}  // namespace pnb
