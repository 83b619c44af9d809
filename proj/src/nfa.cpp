#include "pnb/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace pnb {

namespace {

std::vector<uint32_t> sorted_unique_ids(std::vector<uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Bits to_bitset(const std::vector<uint32_t>& ids, uint32_t n) {
  Bits b(n);
  for (uint32_t i : ids) b.set(i);
  return b;
}

/// Outgoing edges grouped by source state.
std::vector<std::vector<const NfaEdge*>> adjacency(const Nfa& a) {
  std::vector<std::vector<const NfaEdge*>> adj(a.num_states);
  for (const auto& e : a.edges) adj[e.src].push_back(&e);
  return adj;
}

/// Forward closure of each state under silent non-loop moves.
std::vector<Bits> silent_closures(const Nfa& a) {
  std::vector<std::vector<uint32_t>> succ(a.num_states);
  for (const auto& e : a.edges)
    if (e.letter.silent() && e.src != e.dst) succ[e.src].push_back(e.dst);

  std::vector<Bits> closure(a.num_states, Bits(a.num_states));
  for (uint32_t s = 0; s < a.num_states; ++s) {
    std::deque<uint32_t> work{s};
    closure[s].set(s);
    while (!work.empty()) {
      uint32_t x = work.front();
      work.pop_front();
      for (uint32_t y : succ[x])
        if (!closure[s].test(y)) {
          closure[s].set(y);
          work.push_back(y);
        }
    }
  }
  return closure;
}

void check_same_arity(const Nfa& a, const Nfa& b) {
  if (a.left_arity != b.left_arity || a.right_arity != b.right_arity)
    throw TypeError("automata have different boundary arities: (" +
                    std::to_string(a.left_arity) + "," + std::to_string(a.right_arity) +
                    ") vs (" + std::to_string(b.left_arity) + "," +
                    std::to_string(b.right_arity) + ")");
}

}  // namespace

std::string Letter::to_string() const {
  std::string l = left.size() == 0 ? "e" : left.to_string();
  std::string r = right.size() == 0 ? "e" : right.to_string();
  return l + "/" + r;
}

void Nfa::canonicalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  initial = sorted_unique_ids(std::move(initial));
  accepting = sorted_unique_ids(std::move(accepting));
}

std::vector<Letter> Nfa::letters(bool include_silent) const {
  std::vector<Letter> out;
  for (const auto& e : edges)
    if (include_silent || !e.letter.silent()) out.push_back(e.letter);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Nfa from_two_lts(const TwoLts& lts, const Marking& init, const Marking& target,
                 AcceptanceMode mode) {
  Nfa a;
  a.left_arity = lts.left_arity;
  a.right_arity = lts.right_arity;
  a.num_states = static_cast<uint32_t>(lts.states.size());
  for (const auto& e : lts.edges) a.edges.push_back({e.src, e.dst, {e.left, e.right}});

  auto init_id = lts.state_of(init);
  if (!init_id)
    throw InputError("initial marking is not a state of the transition system");
  a.initial = {*init_id};

  for (uint32_t s = 0; s < lts.states.size(); ++s) {
    const Marking& m = lts.states[s];
    bool acc = mode == AcceptanceMode::exact ? m == target : target.subset_of(m);
    if (acc) a.accepting.push_back(s);
  }

  a.origin.reserve(lts.states.size());
  for (const auto& m : lts.states) {
    std::string o = "{";
    bool first = true;
    for (uint32_t i : m.indices()) {
      if (!first) o += ",";
      o += std::to_string(i);
      first = false;
    }
    a.origin.push_back(o + "}");
  }

  a.canonicalize();
  return a;
}

Nfa compose_nfa(const Nfa& a, const Nfa& b, std::vector<std::pair<uint32_t, uint32_t>>* pairs,
                size_t budget) {
  if (a.right_arity != b.left_arity)
    throw TypeError("cannot compose automata: left has right arity " +
                    std::to_string(a.right_arity) + " but right has left arity " +
                    std::to_string(b.left_arity));

  std::vector<std::vector<const NfaEdge*>> adj_a = adjacency(a);
  std::vector<std::vector<const NfaEdge*>> adj_b(b.num_states);
  for (const auto& e : b.edges) adj_b[e.src].push_back(&e);

  Nfa r;
  r.left_arity = a.left_arity;
  r.right_arity = b.right_arity;

  std::map<std::pair<uint32_t, uint32_t>, uint32_t> ids;
  std::deque<std::pair<uint32_t, uint32_t>> work;
  std::vector<std::pair<uint32_t, uint32_t>> order;
  auto intern = [&](uint32_t x, uint32_t y) {
    auto it = ids.find({x, y});
    if (it != ids.end()) return it->second;
    if (order.size() >= budget)
      throw BudgetError("state budget of " + std::to_string(budget) +
                        " exceeded in automaton composition");
    auto id = static_cast<uint32_t>(order.size());
    ids.emplace(std::make_pair(x, y), id);
    order.emplace_back(x, y);
    work.emplace_back(x, y);
    return id;
  };

  for (uint32_t x : a.initial)
    for (uint32_t y : b.initial) r.initial.push_back(intern(x, y));

  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    uint32_t src = ids.at({x, y});
    for (const NfaEdge* ea : adj_a[x])
      for (const NfaEdge* eb : adj_b[y])
        if (ea->letter.right == eb->letter.left) {
          uint32_t dst = intern(ea->dst, eb->dst);
          r.edges.push_back({src, dst, {ea->letter.left, eb->letter.right}});
        }
  }

  r.num_states = static_cast<uint32_t>(order.size());
  Bits acc_a = to_bitset(a.accepting, a.num_states);
  Bits acc_b = to_bitset(b.accepting, b.num_states);
  for (uint32_t s = 0; s < order.size(); ++s)
    if (acc_a.test(order[s].first) && acc_b.test(order[s].second)) r.accepting.push_back(s);

  r.origin.reserve(order.size());
  for (auto [x, y] : order) {
    std::string ox = x < a.origin.size() ? a.origin[x] : std::to_string(x);
    std::string oy = y < b.origin.size() ? b.origin[y] : std::to_string(y);
    r.origin.push_back("(" + ox + "," + oy + ")");
  }
  if (pairs) *pairs = order;

  r.canonicalize();
  return r;
}

Nfa tensor_nfa(const Nfa& a, const Nfa& b, size_t budget) {
  Nfa r;
  r.left_arity = a.left_arity + b.left_arity;
  r.right_arity = a.right_arity + b.right_arity;
  size_t total = static_cast<size_t>(a.num_states) * b.num_states;
  if (total > budget)
    throw BudgetError("state budget of " + std::to_string(budget) +
                      " exceeded in automaton tensor");
  r.num_states = static_cast<uint32_t>(total);

  auto id = [&](uint32_t x, uint32_t y) { return x * b.num_states + y; };
  for (const auto& ea : a.edges)
    for (const auto& eb : b.edges)
      r.edges.push_back({id(ea.src, eb.src), id(ea.dst, eb.dst),
                         {ea.letter.left.concat(eb.letter.left),
                          ea.letter.right.concat(eb.letter.right)}});

  for (uint32_t x : a.initial)
    for (uint32_t y : b.initial) r.initial.push_back(id(x, y));
  for (uint32_t x : a.accepting)
    for (uint32_t y : b.accepting) r.accepting.push_back(id(x, y));

  if (!a.origin.empty() || !b.origin.empty()) {
    r.origin.reserve(total);
    for (uint32_t x = 0; x < a.num_states; ++x)
      for (uint32_t y = 0; y < b.num_states; ++y) {
        std::string ox = x < a.origin.size() ? a.origin[x] : std::to_string(x);
        std::string oy = y < b.origin.size() ? b.origin[y] : std::to_string(y);
        r.origin.push_back("(" + ox + "," + oy + ")");
      }
  }

  r.canonicalize();
  return r;
}

Nfa saturate_acceptance(const Nfa& a) {
  // Backward reachability along silent edges, starting from acceptance.
  std::vector<std::vector<uint32_t>> pred(a.num_states);
  for (const auto& e : a.edges)
    if (e.letter.silent() && e.src != e.dst) pred[e.dst].push_back(e.src);

  Bits acc = to_bitset(a.accepting, a.num_states);
  std::deque<uint32_t> work(a.accepting.begin(), a.accepting.end());
  while (!work.empty()) {
    uint32_t s = work.front();
    work.pop_front();
    for (uint32_t p : pred[s])
      if (!acc.test(p)) {
        acc.set(p);
        work.push_back(p);
      }
  }

  Nfa r = a;
  r.accepting = acc.indices();
  return r;
}

Nfa eliminate_silent(const Nfa& a) {
  Nfa sat = saturate_acceptance(a);
  std::vector<Bits> closure = silent_closures(a);

  // inv[p] = states whose silent closure contains p
  std::vector<std::vector<uint32_t>> inv(a.num_states);
  for (uint32_t s = 0; s < a.num_states; ++s)
    for (uint32_t p : closure[s].indices()) inv[p].push_back(s);

  Nfa r;
  r.left_arity = a.left_arity;
  r.right_arity = a.right_arity;
  r.num_states = a.num_states;
  r.initial = sat.initial;
  r.accepting = sat.accepting;
  r.origin = a.origin;

  Letter silent = a.silent_letter();
  for (uint32_t s = 0; s < a.num_states; ++s) r.edges.push_back({s, s, silent});
  for (const auto& e : a.edges) {
    if (e.letter.silent()) continue;
    for (uint32_t src : inv[e.src])
      for (uint32_t dst : closure[e.dst].indices()) r.edges.push_back({src, dst, e.letter});
  }

  r.canonicalize();
  return r;
}

Nfa canonical_empty(uint32_t left_arity, uint32_t right_arity) {
  Nfa r;
  r.left_arity = left_arity;
  r.right_arity = right_arity;
  r.num_states = 1;
  r.initial = {0};
  r.edges.push_back({0, 0, r.silent_letter()});
  return r;
}

Nfa universal_nfa(uint32_t left_arity, uint32_t right_arity) {
  if (left_arity + right_arity > 16)
    throw InputError("universal automaton alphabet too large");
  Nfa r;
  r.left_arity = left_arity;
  r.right_arity = right_arity;
  r.num_states = 1;
  r.initial = {0};
  r.accepting = {0};
  for (uint64_t l = 0; l < (uint64_t{1} << left_arity); ++l)
    for (uint64_t w = 0; w < (uint64_t{1} << right_arity); ++w) {
      Letter letter{Bits(left_arity), Bits(right_arity)};
      for (uint32_t i = 0; i < left_arity; ++i)
        if ((l >> i) & 1) letter.left.set(i);
      for (uint32_t i = 0; i < right_arity; ++i)
        if ((w >> i) & 1) letter.right.set(i);
      r.edges.push_back({0, 0, letter});
    }
  r.canonicalize();
  return r;
}

Nfa trim(const Nfa& a) {
  std::vector<std::vector<uint32_t>> succ(a.num_states), pred(a.num_states);
  for (const auto& e : a.edges) {
    succ[e.src].push_back(e.dst);
    pred[e.dst].push_back(e.src);
  }

  auto reach = [&](const std::vector<uint32_t>& from,
                   const std::vector<std::vector<uint32_t>>& next) {
    Bits seen(a.num_states);
    std::deque<uint32_t> work;
    for (uint32_t s : from) {
      if (!seen.test(s)) {
        seen.set(s);
        work.push_back(s);
      }
    }
    while (!work.empty()) {
      uint32_t s = work.front();
      work.pop_front();
      for (uint32_t t : next[s])
        if (!seen.test(t)) {
          seen.set(t);
          work.push_back(t);
        }
    }
    return seen;
  };

  Bits fwd = reach(a.initial, succ);
  Bits bwd = reach(a.accepting, pred);
  Bits keep = fwd & bwd;

  std::vector<uint32_t> remap(a.num_states, UINT32_MAX);
  uint32_t count = 0;
  bool has_initial = false;
  for (uint32_t s = 0; s < a.num_states; ++s)
    if (keep.test(s)) remap[s] = count++;
  for (uint32_t s : a.initial)
    if (keep.test(s)) has_initial = true;
  if (count == 0 || !has_initial) return canonical_empty(a.left_arity, a.right_arity);

  Nfa r;
  r.left_arity = a.left_arity;
  r.right_arity = a.right_arity;
  r.num_states = count;
  for (const auto& e : a.edges)
    if (keep.test(e.src) && keep.test(e.dst)) r.edges.push_back({remap[e.src], remap[e.dst], e.letter});
  for (uint32_t s : a.initial)
    if (keep.test(s)) r.initial.push_back(remap[s]);
  for (uint32_t s : a.accepting)
    if (keep.test(s)) r.accepting.push_back(remap[s]);
  if (!a.origin.empty()) {
    r.origin.resize(count);
    for (uint32_t s = 0; s < a.num_states; ++s)
      if (keep.test(s)) r.origin[remap[s]] = a.origin[s];
  }

  r.canonicalize();
  return r;
}

/*
 * Weak bisimilarity coincides with strong bisimilarity over the weak step
 * relation s ==x==> t (silent* x silent*, with x possibly empty). Partition
 * refinement over weak-step block signatures, starting from the saturated
 * acceptance split, therefore computes the coarsest weak bisimulation.
 */
Nfa quotient_weak_bisim(const Nfa& a) {
  if (a.num_states == 0) return a;

  Nfa sat = saturate_acceptance(a);
  Bits acc = to_bitset(sat.accepting, a.num_states);
  std::vector<Bits> closure = silent_closures(a);
  std::vector<Letter> alphabet = a.letters();

  // weak_post[x][s]: states reachable from s via silent* x silent*
  std::vector<std::vector<Bits>> weak_post(alphabet.size(),
                                           std::vector<Bits>(a.num_states, Bits(a.num_states)));
  {
    std::vector<std::vector<std::pair<size_t, uint32_t>>> lettered(a.num_states);
    for (const auto& e : a.edges) {
      if (e.letter.silent()) continue;
      size_t x = static_cast<size_t>(
          std::lower_bound(alphabet.begin(), alphabet.end(), e.letter) - alphabet.begin());
      lettered[e.src].emplace_back(x, e.dst);
    }
    for (uint32_t s = 0; s < a.num_states; ++s)
      for (uint32_t mid : closure[s].indices())
        for (auto [x, dst] : lettered[mid]) weak_post[x][s] |= closure[dst];
  }

  std::vector<uint32_t> block(a.num_states);
  for (uint32_t s = 0; s < a.num_states; ++s) block[s] = acc.test(s) ? 1 : 0;

  // Rounds refine the partition monotonically (each signature embeds the
  // current block), so equal block counts across a round mean stability.
  size_t nblocks = 0;
  for (;;) {
    // Signature: own acceptance class plus the set of blocks reachable per
    // weak letter and per silent closure.
    std::map<std::vector<uint32_t>, uint32_t> sig_ids;
    std::vector<uint32_t> next(a.num_states);
    for (uint32_t s = 0; s < a.num_states; ++s) {
      std::vector<uint32_t> sig{block[s], UINT32_MAX};
      std::vector<uint32_t> hit;
      for (uint32_t t : closure[s].indices()) hit.push_back(block[t]);
      std::sort(hit.begin(), hit.end());
      hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
      sig.insert(sig.end(), hit.begin(), hit.end());
      for (size_t x = 0; x < alphabet.size(); ++x) {
        sig.push_back(UINT32_MAX);
        hit.clear();
        for (uint32_t t : weak_post[x][s].indices()) hit.push_back(block[t]);
        std::sort(hit.begin(), hit.end());
        hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
        sig.insert(sig.end(), hit.begin(), hit.end());
      }
      auto [it, fresh] = sig_ids.emplace(std::move(sig), static_cast<uint32_t>(sig_ids.size()));
      next[s] = it->second;
      (void)fresh;
    }
    bool stable = sig_ids.size() == nblocks;
    nblocks = sig_ids.size();
    block = next;
    if (stable) break;
  }

  // Renumber blocks by their smallest member for determinism.
  std::vector<uint32_t> rep(nblocks, UINT32_MAX);
  std::vector<uint32_t> renumber(nblocks, UINT32_MAX);
  uint32_t count = 0;
  for (uint32_t s = 0; s < a.num_states; ++s)
    if (renumber[block[s]] == UINT32_MAX) {
      renumber[block[s]] = count;
      rep[count] = s;
      ++count;
    }
  for (uint32_t s = 0; s < a.num_states; ++s) block[s] = renumber[block[s]];

  Nfa r;
  r.left_arity = a.left_arity;
  r.right_arity = a.right_arity;
  r.num_states = count;
  for (const auto& e : a.edges) r.edges.push_back({block[e.src], block[e.dst], e.letter});
  for (uint32_t s : a.initial) r.initial.push_back(block[s]);
  for (uint32_t s : sat.accepting) r.accepting.push_back(block[s]);
  if (!a.origin.empty()) {
    r.origin.resize(count);
    for (uint32_t bidx = 0; bidx < count; ++bidx) r.origin[bidx] = a.origin[rep[bidx]];
  }

  r.canonicalize();
  return r;
}

Nfa reduce(const Nfa& a, ReduceLevel level) {
  switch (level) {
    case ReduceLevel::none:
      return a;
    case ReduceLevel::trim:
      return saturate_acceptance(trim(a));
    case ReduceLevel::standard:
      return saturate_acceptance(trim(quotient_weak_bisim(eliminate_silent(trim(a)))));
  }
  return a;
}

EmptinessResult is_empty(const Nfa& a) {
  // 0-1 BFS: silent moves are free, visible letters cost one.
  struct Back {
    uint32_t prev = UINT32_MAX;
    int32_t edge = -1;
  };
  std::vector<uint32_t> dist(a.num_states, UINT32_MAX);
  std::vector<Back> back(a.num_states);
  auto adj = adjacency(a);

  std::deque<uint32_t> work;
  for (uint32_t s : a.initial) {
    dist[s] = 0;
    work.push_back(s);
  }
  Bits acc = to_bitset(a.accepting, a.num_states);

  while (!work.empty()) {
    uint32_t s = work.front();
    work.pop_front();
    for (const NfaEdge* e : adj[s]) {
      uint32_t w = e->letter.silent() ? 0 : 1;
      if (dist[s] + w < dist[e->dst]) {
        dist[e->dst] = dist[s] + w;
        back[e->dst] = {s, static_cast<int32_t>(e - a.edges.data())};
        if (w == 0)
          work.push_front(e->dst);
        else
          work.push_back(e->dst);
      }
    }
  }

  uint32_t best = UINT32_MAX, best_state = UINT32_MAX;
  for (uint32_t s = 0; s < a.num_states; ++s)
    if (acc.test(s) && dist[s] < best) {
      best = dist[s];
      best_state = s;
    }
  if (best_state == UINT32_MAX) return {true, {}};

  EmptinessResult r;
  r.empty = false;
  for (uint32_t s = best_state; back[s].edge >= 0; s = back[s].prev) {
    const auto& letter = a.edges[back[s].edge].letter;
    if (!letter.silent()) r.witness.push_back(letter);
  }
  std::reverse(r.witness.begin(), r.witness.end());
  return r;
}

/*
 * Equivalence uses the classic bisimulation-up-to-congruence scheme: explore
 * pairs of determinized state sets and discharge a pair when it lies in the
 * congruence closure of the pairs already processed, computed by saturating
 * each side with the union rules of known pairs.
 */
bool equivalent(const Nfa& a_in, const Nfa& b_in) {
  check_same_arity(a_in, b_in);
  Nfa a = eliminate_silent(a_in);
  Nfa b = eliminate_silent(b_in);

  std::vector<Letter> alphabet = a.letters();
  {
    auto lb = b.letters();
    alphabet.insert(alphabet.end(), lb.begin(), lb.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  }

  auto post_table = [&](const Nfa& n) {
    std::vector<std::vector<Bits>> post(alphabet.size(),
                                        std::vector<Bits>(n.num_states, Bits(n.num_states)));
    for (const auto& e : n.edges) {
      if (e.letter.silent()) continue;
      auto it = std::lower_bound(alphabet.begin(), alphabet.end(), e.letter);
      post[it - alphabet.begin()][e.src].set(e.dst);
    }
    return post;
  };
  auto post_a = post_table(a);
  auto post_b = post_table(b);
  Bits acc_a = to_bitset(a.accepting, a.num_states);
  Bits acc_b = to_bitset(b.accepting, b.num_states);

  auto step = [](const std::vector<Bits>& post, const Bits& set, uint32_t n) {
    Bits out(n);
    for (uint32_t s : set.indices()) out |= post[s];
    return out;
  };

  using SetPair = std::pair<Bits, Bits>;
  std::vector<SetPair> relation;
  std::deque<SetPair> todo;
  todo.emplace_back(to_bitset(a.initial, a.num_states), to_bitset(b.initial, b.num_states));

  auto in_congruence = [&](const Bits& x, const Bits& y) {
    // Normalize both sides under the union rules of relation + todo.
    Bits xa = x, xb = Bits(b.num_states);
    Bits ya = Bits(a.num_states), yb = y;
    auto saturate = [&](Bits& wa, Bits& wb) {
      bool changed = true;
      while (changed) {
        changed = false;
        auto apply = [&](const SetPair& p) {
          if (p.first.subset_of(wa) || p.second.subset_of(wb)) {
            Bits na = wa | p.first;
            Bits nb = wb | p.second;
            if (na != wa || nb != wb) {
              wa = std::move(na);
              wb = std::move(nb);
              changed = true;
            }
          }
        };
        for (const auto& p : relation) apply(p);
        for (const auto& p : todo) apply(p);
      }
    };
    saturate(xa, xb);
    saturate(ya, yb);
    return xa == ya && xb == yb;
  };

  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    if (acc_a.intersects(x) != acc_b.intersects(y)) return false;
    if (in_congruence(x, y)) continue;
    relation.emplace_back(x, y);
    for (size_t l = 0; l < alphabet.size(); ++l)
      todo.emplace_back(step(post_a[l], x, a.num_states), step(post_b[l], y, b.num_states));
  }
  return true;
}

bool is_reflexive(const Nfa& a) {
  Bits seen(a.num_states);
  for (const auto& e : a.edges)
    if (e.src == e.dst && e.letter.silent()) seen.set(e.src);
  return seen.count() == a.num_states;
}

}  // namespace pnb
