#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnb/checker.hpp"
#include "pnb/net.hpp"

namespace pnb {

/// Options a problem file may preset; command-line flags override them.
struct ParsedOptions {
  std::optional<ReduceLevel> reduce;
  std::optional<bool> memo;
  std::optional<StepMode> mode;
  std::optional<size_t> budget;
  std::optional<Engine> engine;
  bool operator==(const ParsedOptions&) const = default;
};

struct ProblemFile {
  std::vector<std::shared_ptr<const Pnb>> nets;  // in definition order
  ExprPtr expr;
  AcceptanceMode mode = AcceptanceMode::exact;
  ParsedOptions options;

  std::shared_ptr<const Pnb> net(std::string_view name) const;
  CheckOptions check_options(const CheckOptions& base = {}) const;
};

/// Parses the line-oriented problem syntax:
///
///   net <name> (<left>,<right>) {
///     place <p>;
///     trans <t> pre {p,...} post {p,...} lports {i,...} rports {j,...};
///   }
///   check reachable|coverable
///   option <key> <value>
///   expr <term>
///
/// where a term is `<net>[{init}->{target}]`, `(term ; term)` or
/// `(term + term)`; `;` associates left and `+` binds tighter; a bare net
/// name carries empty markings. `#` starts a comment. Errors carry
/// line/column and the offending token. The expression is typechecked.
ProblemFile parse_problem(std::string_view text);

std::string print_problem(const ProblemFile& pf);

/// Structural equality, for round-trip checks.
bool problem_equal(const ProblemFile& a, const ProblemFile& b);

}  // namespace pnb
