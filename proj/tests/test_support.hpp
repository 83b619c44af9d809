#pragma once

#include <deque>
#include <map>
#include <random>
#include <set>

#include "pnb/checker.hpp"
#include "pnb/nfa.hpp"
#include "pnb/oracle.hpp"
#include "pnb/semantics.hpp"

namespace testsupport {

using namespace pnb;

inline std::vector<Marking> all_markings(const Pnb& net) {
  const auto np = static_cast<uint32_t>(net.places.size());
  std::vector<Marking> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << np); ++mask) {
    Marking m(np);
    for (uint32_t i = 0; i < np; ++i)
      if ((mask >> i) & 1) m.set(i);
    out.push_back(std::move(m));
  }
  return out;
}

/// Wraps a transition system as an automaton with every state both initial
/// and accepting, so composition keeps the whole product.
inline Nfa lts_as_nfa(const TwoLts& lts) {
  Nfa a;
  a.left_arity = lts.left_arity;
  a.right_arity = lts.right_arity;
  a.num_states = static_cast<uint32_t>(lts.states.size());
  for (const auto& e : lts.edges) a.edges.push_back({e.src, e.dst, {e.left, e.right}});
  for (uint32_t s = 0; s < a.num_states; ++s) {
    a.initial.push_back(s);
    a.accepting.push_back(s);
  }
  a.canonicalize();
  return a;
}

/// Checks that composing the component semantics equals the semantics of the
/// composed net, under the marking-pair bijection, as an exact edge-set
/// isomorphism in full step mode.
inline bool compositionality_iso(const Pnb& m, const Pnb& n, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  TwoLts lm = build_two_lts(m, all_markings(m), StepMode::full);
  TwoLts ln = build_two_lts(n, all_markings(n), StepMode::full);
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  Nfa prod = compose_nfa(lts_as_nfa(lm), lts_as_nfa(ln), &pairs);

  Pnb flat = compose(m, n);
  TwoLts lf = build_two_lts(flat, all_markings(flat), StepMode::full);

  if (prod.num_states != lf.states.size()) return fail("state counts differ");

  std::vector<uint32_t> to_flat(prod.num_states);
  for (uint32_t s = 0; s < prod.num_states; ++s) {
    Marking joint = lm.states[pairs[s].first].concat(ln.states[pairs[s].second]);
    auto id = lf.state_of(joint);
    if (!id) return fail("product state has no flat counterpart");
    to_flat[s] = *id;
  }

  std::set<std::tuple<uint32_t, Bits, Bits, uint32_t>> from_product, from_flat;
  for (const auto& e : prod.edges)
    from_product.insert({to_flat[e.src], e.letter.left, e.letter.right, to_flat[e.dst]});
  for (const auto& e : lf.edges) from_flat.insert({e.src, e.left, e.right, e.dst});
  if (from_product != from_flat) return fail("edge sets differ");
  return true;
}

/// Independent weak-language decision: own silent closures, full subset
/// construction, product search. Deliberately avoids the library's
/// eliminate_silent / equivalent code paths.
class BruteDfa {
 public:
  explicit BruteDfa(const Nfa& a) : nfa_(a) {
    closure_.assign(a.num_states, {});
    std::vector<std::vector<uint32_t>> silent(a.num_states);
    for (const auto& e : a.edges)
      if (e.letter.silent()) silent[e.src].push_back(e.dst);
    for (uint32_t s = 0; s < a.num_states; ++s) {
      std::set<uint32_t> seen{s};
      std::deque<uint32_t> work{s};
      while (!work.empty()) {
        uint32_t x = work.front();
        work.pop_front();
        for (uint32_t y : silent[x])
          if (seen.insert(y).second) work.push_back(y);
      }
      closure_[s].assign(seen.begin(), seen.end());
    }
    for (uint32_t s : a.accepting) accepting_.insert(s);
  }

  std::set<uint32_t> start() const {
    std::set<uint32_t> out;
    for (uint32_t s : nfa_.initial)
      for (uint32_t t : closure_[s]) out.insert(t);
    return out;
  }

  std::set<uint32_t> move(const std::set<uint32_t>& from, const Letter& x) const {
    std::set<uint32_t> out;
    for (const auto& e : nfa_.edges)
      if (e.letter == x && from.count(e.src))
        for (uint32_t t : closure_[e.dst]) out.insert(t);
    return out;
  }

  bool accepts(const std::set<uint32_t>& set) const {
    for (uint32_t s : set)
      if (accepting_.count(s)) return true;
    return false;
  }

 private:
  const Nfa& nfa_;
  std::vector<std::vector<uint32_t>> closure_;
  std::set<uint32_t> accepting_;
};

inline bool brute_equivalent(const Nfa& a, const Nfa& b) {
  std::vector<Letter> alphabet = a.letters();
  {
    auto lb = b.letters();
    alphabet.insert(alphabet.end(), lb.begin(), lb.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  }

  BruteDfa da(a), db(b);
  using Pair = std::pair<std::set<uint32_t>, std::set<uint32_t>>;
  std::set<Pair> seen;
  std::deque<Pair> work{{da.start(), db.start()}};
  while (!work.empty()) {
    Pair p = work.front();
    work.pop_front();
    if (!seen.insert(p).second) continue;
    if (da.accepts(p.first) != db.accepts(p.second)) return false;
    for (const auto& x : alphabet) work.push_back({da.move(p.first, x), db.move(p.second, x)});
  }
  return true;
}

inline Nfa random_nfa(std::mt19937_64& gen, uint32_t max_states, uint32_t la, uint32_t ra) {
  auto pick = [&](uint32_t n) { return static_cast<uint32_t>(gen() % n); };
  Nfa a;
  a.left_arity = la;
  a.right_arity = ra;
  a.num_states = 1 + pick(max_states);
  for (uint32_t s = 0; s < a.num_states; ++s) a.edges.push_back({s, s, a.silent_letter()});

  uint32_t extra = pick(3 * a.num_states + 3);
  for (uint32_t i = 0; i < extra; ++i) {
    Letter letter{Bits(la), Bits(ra)};
    for (uint32_t p = 0; p < la; ++p)
      if (gen() % 2) letter.left.set(p);
    for (uint32_t p = 0; p < ra; ++p)
      if (gen() % 2) letter.right.set(p);
    a.edges.push_back({pick(a.num_states), pick(a.num_states), letter});
  }

  a.initial.push_back(pick(a.num_states));
  if (gen() % 3 == 0) a.initial.push_back(pick(a.num_states));
  for (uint32_t s = 0; s < a.num_states; ++s)
    if (gen() % 10 < 4) a.accepting.push_back(s);

  a.canonicalize();
  return a;
}

inline Marking random_marking(std::mt19937_64& gen, uint32_t places) {
  Marking m(places);
  for (uint32_t i = 0; i < places; ++i)
    if (gen() % 2) m.set(i);
  return m;
}

inline ExprPtr random_expr(std::mt19937_64& gen, uint32_t left, uint32_t right, int depth,
                           AcceptanceMode mode) {
  RandomLimits limits{2, 3, 2};
  uint32_t roll = static_cast<uint32_t>(gen() % 10);
  if (depth <= 0 || roll < 4) {
    auto net = std::make_shared<const Pnb>(random_pnb(gen(), limits, left, right));
    auto places = static_cast<uint32_t>(net->places.size());
    return Expr::make_leaf({net, random_marking(gen, places), random_marking(gen, places), mode});
  }
  if (roll < 8) {
    uint32_t k = static_cast<uint32_t>(gen() % 3);
    return Expr::make_seq(random_expr(gen, left, k, depth - 1, mode),
                          random_expr(gen, k, right, depth - 1, mode));
  }
  uint32_t l1 = left == 0 ? 0 : static_cast<uint32_t>(gen() % (left + 1));
  uint32_t r1 = right == 0 ? 0 : static_cast<uint32_t>(gen() % (right + 1));
  return Expr::make_tensor(random_expr(gen, l1, r1, depth - 1, mode),
                           random_expr(gen, left - l1, right - r1, depth - 1, mode));
}

/// Replays a witness by firing one named transition at a time.
inline bool replay_witness(const FlatProblem& p, const Witness& w) {
  Marking m = p.init;
  for (const auto& name : w.firings) {
    uint32_t idx = UINT32_MAX;
    for (uint32_t t = 0; t < p.net.transitions.size(); ++t)
      if (p.net.transitions[t].name == name) idx = t;
    if (idx == UINT32_MAX) return false;
    try {
      m = fire_step(p.net, m, {{idx}});
    } catch (const Error&) {
      return false;
    }
  }
  return p.mode == AcceptanceMode::exact ? m == p.target : p.target.subset_of(m);
}

}  // namespace testsupport
