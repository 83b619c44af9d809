#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pnb/net.hpp"
#include "pnb/nfa.hpp"

namespace pnb {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// A net occurrence with its local reachability question.
struct LeafSpec {
  std::shared_ptr<const Pnb> net;
  Marking init;
  Marking target;
  AcceptanceMode mode = AcceptanceMode::exact;
};

/// Expression over net components: leaves composed with `;` and `+`.
struct Expr {
  enum class Kind { leaf, seq, tensor };

  Kind kind = Kind::leaf;
  LeafSpec leaf;         // kind == leaf
  ExprPtr left, right;   // kind != leaf

  static ExprPtr make_leaf(LeafSpec spec);
  static ExprPtr make_seq(ExprPtr l, ExprPtr r);
  static ExprPtr make_tensor(ExprPtr l, ExprPtr r);
};

/// Returns the composite boundary type, or throws TypeError naming the
/// offending node path and both arities.
BoundaryType typecheck(const Expr& e);

enum class Engine { compositional, monolithic };

struct CheckOptions {
  ReduceLevel reduce_level = ReduceLevel::standard;
  bool memo = true;
  StepMode semantics_mode = StepMode::boundary_complete;
  size_t state_budget = kDefaultStateBudget;
  Engine engine = Engine::compositional;

  /// When positive, every k-th memo hit is re-verified against a fresh
  /// recomputation (test builds).
  int memo_audit_every = 0;

  /// Diagnostics hook invoked on every automaton the evaluator produces.
  std::function<void(const Nfa&)> inspect;
};

struct NodeStats {
  std::string node;       // path such as "root.l.r"
  size_t states_before = 0;
  size_t states_after = 0;
  double time_ms = 0.0;
};

struct CheckResult {
  bool reachable = false;
  std::vector<NodeStats> node_stats;
  size_t memo_hits = 0;
  double total_time_ms = 0.0;
};

/// Composition results reused across language-equivalent argument pairs.
/// A structural signature (arities, state count, letter histogram) filters
/// candidates before the equivalence test; lookups succeed only when both
/// arguments are equivalent to the stored representatives.
class MemoTable {
 public:
  std::shared_ptr<const Nfa> find(char op, const Nfa& a, const Nfa& b) const;
  void insert(char op, const Nfa& a, const Nfa& b, std::shared_ptr<const Nfa> result);
  size_t size() const;

 private:
  struct Signature {
    uint32_t la = 0, ra = 0, states = 0;
    std::vector<std::pair<Letter, uint32_t>> letter_counts;
    bool operator==(const Signature&) const = default;
  };
  static Signature signature_of(const Nfa& a);

  struct Entry {
    char op;
    Signature sig_a, sig_b;
    std::shared_ptr<const Nfa> a, b, result;
  };

  mutable std::mutex mu_;
  std::vector<Entry> entries_;
};

/// Bottom-up evaluation: translate leaves, reduce, compose, reduce again,
/// short-circuiting once any node's language is empty.
Nfa evaluate(const Expr& e, const CheckOptions& opts = {});

CheckResult check(const Expr& e, const CheckOptions& opts = {});

/// Folds `step` onto `base` with reduce until two consecutive iterates are
/// language-equivalent; returns how many folds that took, if within budget.
std::optional<int> fixpoint_probe(const Nfa& base, const Nfa& step, int max_iters,
                                  ReduceLevel level = ReduceLevel::standard);

}  // namespace pnb
