#include "pnb/net.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pnb {

using detail::sort_unique;
using detail::sorted_disjoint;
using detail::sorted_union;

namespace {

std::vector<uint32_t> neighbourhood(const Transition& t) {
  return sorted_union(t.pre, t.post);
}

std::string render_parts(const std::vector<std::string>& parts) {
  if (parts.size() == 1) return parts.front();
  std::string s = "{";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  s += "}";
  return s;
}

std::vector<std::string> prefixed(const std::vector<std::string>& v, const char* pfx) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(pfx + s);
  return out;
}

void append_place_names(std::vector<std::string>& out, const Pnb& net, const char* pfx) {
  for (const auto& p : net.places) out.push_back(pfx + p);
}

}  // namespace

uint32_t Pnb::place_index(std::string_view place) const {
  for (uint32_t i = 0; i < places.size(); ++i)
    if (places[i] == place) return i;
  throw InputError("net '" + name + "' has no place named '" + std::string(place) + "'");
}

Marking Pnb::marking_of(std::initializer_list<std::string_view> names) const {
  Marking m(static_cast<uint32_t>(places.size()));
  for (auto nme : names) m.set(place_index(nme));
  return m;
}

Marking Pnb::marking_of(const std::vector<std::string>& names) const {
  Marking m(static_cast<uint32_t>(places.size()));
  for (const auto& nme : names) m.set(place_index(nme));
  return m;
}

void add_transition(Pnb& net, std::string name, const std::vector<std::string>& pre,
                    const std::vector<std::string>& post, std::vector<uint32_t> lports,
                    std::vector<uint32_t> rports) {
  Transition t;
  t.name = std::move(name);
  t.parts = {t.name};
  for (const auto& p : pre) t.pre.push_back(net.place_index(p));
  for (const auto& p : post) t.post.push_back(net.place_index(p));
  t.lports = std::move(lports);
  t.rports = std::move(rports);
  sort_unique(t.pre);
  sort_unique(t.post);
  sort_unique(t.lports);
  sort_unique(t.rports);
  net.transitions.push_back(std::move(t));
}

std::vector<std::string> validate(const Pnb& net) {
  std::vector<std::string> out;
  std::ostringstream os;

  std::set<std::string> seen;
  for (const auto& p : net.places)
    if (!seen.insert(p).second) out.push_back("duplicate place '" + p + "'");

  const auto nplaces = static_cast<uint32_t>(net.places.size());
  for (const auto& t : net.transitions) {
    for (uint32_t i : t.pre)
      if (i >= nplaces)
        out.push_back("transition '" + t.name + "': pre place index " + std::to_string(i) +
                      " out of range");
    for (uint32_t i : t.post)
      if (i >= nplaces)
        out.push_back("transition '" + t.name + "': post place index " + std::to_string(i) +
                      " out of range");
    for (uint32_t i : t.lports)
      if (i >= net.type.left)
        out.push_back("transition '" + t.name + "': left port " + std::to_string(i) +
                      " out of range for arity " + std::to_string(net.type.left));
    for (uint32_t i : t.rports)
      if (i >= net.type.right)
        out.push_back("transition '" + t.name + "': right port " + std::to_string(i) +
                      " out of range for arity " + std::to_string(net.type.right));
    if (t.pre.empty() && t.post.empty() && t.lports.empty() && t.rports.empty() &&
        t.sync_tokens.empty())
      out.push_back("transition '" + t.name + "' is completely empty");
  }

  for (size_t i = 0; i < net.transitions.size(); ++i)
    for (size_t j = i + 1; j < net.transitions.size(); ++j)
      if (net.transitions[i].same_structure(net.transitions[j]))
        out.push_back("transitions '" + net.transitions[i].name + "' and '" +
                      net.transitions[j].name + "' are structurally identical");

  return out;
}

bool independent(const Transition& a, const Transition& b) {
  return sorted_disjoint(neighbourhood(a), neighbourhood(b)) &&
         sorted_disjoint(a.lports, b.lports) && sorted_disjoint(a.rports, b.rports) &&
         sorted_disjoint(a.sync_tokens, b.sync_tokens);
}

/*
 * Minimal synchronisations are found by growing a pair (U, V) from a seed
 * transition of the left operand. At each step the smallest boundary port
 * covered on one side but not the other dictates which side to extend, and
 * every transition covering that port branches the search. Each grown pair
 * is connected by construction (every addition shares a port with the pair
 * built so far), hence minimal; conversely any minimal synchronisation is
 * reconstructed exactly once, from the member holding its smallest port.
 */
std::vector<Synchronization> minimal_synchronizations(const Pnb& m, const Pnb& n) {
  std::vector<Synchronization> out;

  for (uint32_t i = 0; i < m.transitions.size(); ++i)
    if (m.transitions[i].rports.empty()) out.push_back({{i}, {}});
  for (uint32_t j = 0; j < n.transitions.size(); ++j)
    if (n.transitions[j].lports.empty()) out.push_back({{}, {j}});

  const uint32_t k = m.type.right;
  auto footprint = [k](const std::vector<uint32_t>& trans, const Pnb& net, bool right) {
    Bits f(k);
    for (uint32_t i : trans)
      for (uint32_t p : right ? net.transitions[i].rports : net.transitions[i].lports)
        f.set(p);
    return f;
  };

  std::function<void(std::vector<uint32_t>&, std::vector<uint32_t>&, uint32_t)> grow =
      [&](std::vector<uint32_t>& u, std::vector<uint32_t>& v, uint32_t seed_min) {
        Bits ru = footprint(u, m, true);
        Bits lv = footprint(v, n, false);
        if (ru == lv) {
          Synchronization s{u, v};
          sort_unique(s.left_set);
          sort_unique(s.right_set);
          out.push_back(std::move(s));
          return;
        }
        uint32_t p = k;
        for (uint32_t i = 0; i < k; ++i)
          if (ru.test(i) != lv.test(i)) {
            p = i;
            break;
          }
        if (ru.test(p)) {
          // V lacks port p.
          for (uint32_t j = 0; j < n.transitions.size(); ++j) {
            const auto& cand = n.transitions[j];
            if (std::find(cand.lports.begin(), cand.lports.end(), p) == cand.lports.end())
              continue;
            bool ok = true;
            for (uint32_t x : v)
              if (!independent(cand, n.transitions[x])) ok = false;
            if (!ok) continue;
            v.push_back(j);
            grow(u, v, seed_min);
            v.pop_back();
          }
        } else {
          // U lacks port p.
          for (uint32_t i = 0; i < m.transitions.size(); ++i) {
            const auto& cand = m.transitions[i];
            if (std::find(cand.rports.begin(), cand.rports.end(), p) == cand.rports.end())
              continue;
            if (cand.rports.front() < seed_min) continue;  // another seed's job
            bool ok = true;
            for (uint32_t x : u)
              if (!independent(cand, m.transitions[x])) ok = false;
            if (!ok) continue;
            u.push_back(i);
            grow(u, v, seed_min);
            u.pop_back();
          }
        }
      };

  for (uint32_t i = 0; i < m.transitions.size(); ++i) {
    if (m.transitions[i].rports.empty()) continue;
    std::vector<uint32_t> u{i}, v;
    grow(u, v, m.transitions[i].rports.front());
  }
  return out;
}

Pnb compose(const Pnb& m, const Pnb& n) {
  if (m.type.right != n.type.left)
    throw TypeError("cannot compose: left operand has right arity " +
                    std::to_string(m.type.right) + " but right operand has left arity " +
                    std::to_string(n.type.left));

  Pnb r;
  r.name = m.name + ";" + n.name;
  r.type = {m.type.left, n.type.right};
  append_place_names(r.places, m, "L.");
  append_place_names(r.places, n, "R.");
  const uint32_t off = static_cast<uint32_t>(m.places.size());

  for (const auto& sync : minimal_synchronizations(m, n)) {
    Transition t;
    Bits fp(m.type.right);
    for (uint32_t i : sync.left_set) {
      const auto& u = m.transitions[i];
      t.pre.insert(t.pre.end(), u.pre.begin(), u.pre.end());
      t.post.insert(t.post.end(), u.post.begin(), u.post.end());
      t.lports.insert(t.lports.end(), u.lports.begin(), u.lports.end());
      for (uint32_t p : u.rports) fp.set(p);
      for (const auto& tok : u.sync_tokens) t.sync_tokens.push_back("l." + tok);
      for (const auto& part : u.parts) t.parts.push_back("L." + part);
    }
    for (uint32_t j : sync.right_set) {
      const auto& v = n.transitions[j];
      for (uint32_t p : v.pre) t.pre.push_back(p + off);
      for (uint32_t p : v.post) t.post.push_back(p + off);
      t.rports.insert(t.rports.end(), v.rports.begin(), v.rports.end());
      for (const auto& tok : v.sync_tokens) t.sync_tokens.push_back("r." + tok);
      for (const auto& part : v.parts) t.parts.push_back("R." + part);
    }
    for (uint32_t p : fp.indices()) t.sync_tokens.push_back("b" + std::to_string(p));
    sort_unique(t.pre);
    sort_unique(t.post);
    sort_unique(t.lports);
    sort_unique(t.rports);
    sort_unique(t.sync_tokens);
    std::sort(t.parts.begin(), t.parts.end());
    t.name = render_parts(t.parts);
    r.transitions.push_back(std::move(t));
  }

  // Set semantics: structurally equal fusions collapse to one.
  std::stable_sort(r.transitions.begin(), r.transitions.end(),
                   [](const Transition& a, const Transition& b) { return a.key() < b.key(); });
  r.transitions.erase(std::unique(r.transitions.begin(), r.transitions.end(),
                                  [](const Transition& a, const Transition& b) {
                                    return a.same_structure(b);
                                  }),
                      r.transitions.end());
  return r;
}

Pnb tensor(const Pnb& m, const Pnb& n) {
  Pnb r;
  r.name = m.name + "+" + n.name;
  r.type = {m.type.left + n.type.left, m.type.right + n.type.right};
  append_place_names(r.places, m, "L.");
  append_place_names(r.places, n, "R.");
  const uint32_t off = static_cast<uint32_t>(m.places.size());

  for (const auto& u : m.transitions) {
    Transition t = u;
    t.sync_tokens = prefixed(u.sync_tokens, "l.");
    t.parts = prefixed(u.parts, "L.");
    t.name = render_parts(t.parts);
    r.transitions.push_back(std::move(t));
  }
  for (const auto& v : n.transitions) {
    Transition t;
    for (uint32_t p : v.pre) t.pre.push_back(p + off);
    for (uint32_t p : v.post) t.post.push_back(p + off);
    for (uint32_t p : v.lports) t.lports.push_back(p + m.type.left);
    for (uint32_t p : v.rports) t.rports.push_back(p + m.type.right);
    t.sync_tokens = prefixed(v.sync_tokens, "r.");
    t.parts = prefixed(v.parts, "R.");
    t.name = render_parts(t.parts);
    r.transitions.push_back(std::move(t));
  }
  return r;
}

Pnb empty_net(uint32_t left, uint32_t right, std::string name) {
  Pnb r;
  r.name = std::move(name);
  r.type = {left, right};
  return r;
}

Pnb wire_net(uint32_t k) {
  Pnb r;
  r.name = "wire" + std::to_string(k);
  r.type = {k, k};
  for (uint32_t i = 0; i < k; ++i) add_transition(r, "w" + std::to_string(i), {}, {}, {i}, {i});
  return r;
}

}  // namespace pnb
