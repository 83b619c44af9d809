#include "pnb/dot.hpp"

#include <algorithm>
#include <sstream>

namespace pnb {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_dot_net(const Pnb& net, const Marking* marking) {
  std::ostringstream os;
  os << "digraph net {\n";
  os << "  rankdir=LR;\n";
  os << "  label=" << quoted(net.name) << ";\n";

  if (net.type.left > 0) {
    os << "  { rank=min;";
    for (uint32_t i = 0; i < net.type.left; ++i)
      os << " lp" << i << " [shape=plaintext,label=" << quoted("l" + std::to_string(i)) << "];";
    os << " }\n";
  }
  if (net.type.right > 0) {
    os << "  { rank=max;";
    for (uint32_t i = 0; i < net.type.right; ++i)
      os << " rp" << i << " [shape=plaintext,label=" << quoted("r" + std::to_string(i)) << "];";
    os << " }\n";
  }

  for (uint32_t i = 0; i < net.places.size(); ++i) {
    os << "  p" << i << " [shape=circle,label=" << quoted(net.places[i]);
    if (marking && marking->test(i)) os << ",style=filled,fillcolor=black,fontcolor=white";
    os << "];\n";
  }

  std::vector<uint32_t> order(net.transitions.size());
  for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return net.transitions[a].name < net.transitions[b].name;
  });

  for (uint32_t idx : order) {
    const Transition& t = net.transitions[idx];
    os << "  t" << idx << " [shape=box,height=0.1,style=filled,fillcolor=black,"
       << "fontcolor=white,label=" << quoted(t.name) << "];\n";
    for (uint32_t p : t.pre) os << "  p" << p << " -> t" << idx << ";\n";
    for (uint32_t p : t.post) os << "  t" << idx << " -> p" << p << ";\n";
    for (uint32_t p : t.lports) os << "  lp" << p << " -> t" << idx << " [dir=none,style=dashed];\n";
    for (uint32_t p : t.rports) os << "  t" << idx << " -> rp" << p << " [dir=none,style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_dot_nfa(const Nfa& a, bool show_silent_loops) {
  std::ostringstream os;
  os << "digraph nfa {\n";
  os << "  rankdir=LR;\n";

  Bits acc(a.num_states);
  for (uint32_t s : a.accepting) acc.set(s);
  Bits init(a.num_states);
  for (uint32_t s : a.initial) init.set(s);

  for (uint32_t s = 0; s < a.num_states; ++s) {
    std::string label =
        s < a.origin.size() && !a.origin[s].empty() ? a.origin[s] : std::to_string(s);
    os << "  s" << s << " [shape=" << (acc.test(s) ? "doublecircle" : "circle");
    if (init.test(s)) os << ",penwidth=2.5,color=blue";
    os << ",label=" << quoted(label) << "];\n";
  }
  for (const auto& e : a.edges) {
    if (!show_silent_loops && e.src == e.dst && e.letter.silent()) continue;
    os << "  s" << e.src << " -> s" << e.dst << " [label=" << quoted(e.letter.to_string())
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pnb
