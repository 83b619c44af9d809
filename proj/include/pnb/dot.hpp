#pragma once

#include <string>

#include "pnb/net.hpp"
#include "pnb/nfa.hpp"

namespace pnb {

/// Deterministic DOT rendering: places as circles (filled when marked),
/// transitions as bars, boundary ports as terminals on the outer ranks.
std::string emit_dot_net(const Pnb& net, const Marking* marking = nullptr);

/// Deterministic DOT rendering of an automaton; silent self-loops are
/// suppressed unless requested.
std::string emit_dot_nfa(const Nfa& a, bool show_silent_loops = false);

}  // namespace pnb
