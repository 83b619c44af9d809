#pragma once

#include "pnb/checker.hpp"
#include "pnb/net.hpp"

namespace pnb {

/// One counter bit: a token on `zero` flips to `one` on an inc; the next
/// inc flips back and engages the carry port on the left.
Pnb counter_bit();

/// Drives the inc port: one boundary-only transition, no places.
Pnb counter_driver();

/// Absorbs the top carry, so the counter wraps around.
Pnb counter_cap();

/// Refuses the top carry: no transitions at all.
Pnb counter_cap_blocking();

/// Like counter_cap, but wrapping marks a flag place.
Pnb counter_cap_flag();

/// cap ; (bit ; (bit ; ... ; driver)), asking whether all-ones is reachable
/// from all-zeros. Right-grouped so the evaluator's fold stabilises.
ExprPtr counter_expr(int bits, AcceptanceMode mode = AcceptanceMode::exact);

/// Variant with the blocking cap, asking for all-zeros from all-ones; the
/// wrap the question needs can never fire.
ExprPtr counter_expr_blocked(int bits);

}  // namespace pnb
