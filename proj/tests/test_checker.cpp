#include <random>

#include "doctest.h"
#include "pnb/counter.hpp"
#include "pnb/oracle.hpp"
#include "test_support.hpp"

using namespace pnb;

namespace {

Nfa leaf_nfa(const Pnb& net, const Marking& init, const Marking& target) {
  TwoLts lts = build_two_lts(net, {init}, StepMode::boundary_complete);
  return from_two_lts(lts, init, target, AcceptanceMode::exact);
}

Nfa bit_aut() {
  Pnb bit = counter_bit();
  return reduce(leaf_nfa(bit, bit.marking_of({"zero"}), bit.marking_of({"one"})),
                ReduceLevel::standard);
}

Nfa driver_aut() {
  return reduce(leaf_nfa(counter_driver(), Marking(0), Marking(0)), ReduceLevel::standard);
}

}  // namespace

TEST_CASE("the counter expression typechecks to a closed boundary") {
  CHECK(typecheck(*counter_expr(3)) == BoundaryType{0, 0});
  CHECK(typecheck(*counter_expr(1)) == BoundaryType{0, 0});
}

TEST_CASE("typecheck names the offending node and both arities") {
  auto bit = std::make_shared<const Pnb>(counter_bit());
  auto cap = std::make_shared<const Pnb>(counter_cap());
  Marking m2(2), m0(0);
  ExprPtr bad = Expr::make_seq(Expr::make_leaf({bit, m2, m2, AcceptanceMode::exact}),
                               Expr::make_leaf({cap, m0, m0, AcceptanceMode::exact}));
  try {
    typecheck(*bad);
    CHECK(false);
  } catch (const TypeError& e) {
    std::string msg = e.what();
    CHECK(msg.find("root") != std::string::npos);
    CHECK(msg.find("1") != std::string::npos);
    CHECK(msg.find("0") != std::string::npos);
  }
}

TEST_CASE("tensor types add componentwise") {
  auto bit = std::make_shared<const Pnb>(counter_bit());
  auto driver = std::make_shared<const Pnb>(counter_driver());
  Marking m2(2), m0(0);
  ExprPtr t = Expr::make_tensor(Expr::make_leaf({bit, m2, m2, AcceptanceMode::exact}),
                                Expr::make_leaf({driver, m0, m0, AcceptanceMode::exact}));
  CHECK(typecheck(*t) == BoundaryType{2, 1});
}

TEST_CASE("the counter evaluates to the trivially accepting automaton") {
  Nfa root = evaluate(*counter_expr(3));
  CHECK(!is_empty(root).empty);
  CHECK(equivalent(root, universal_nfa(0, 0)));
}

TEST_CASE("an empty leaf short-circuits its siblings") {
  // Left leaf target is unreachable (both places marked at once), so the
  // right subtree must never be evaluated.
  Pnb move;
  move.name = "move";
  move.type = {0, 0};
  move.places = {"A", "B"};
  add_transition(move, "t", {"A"}, {"B"}, {}, {});
  auto net = std::make_shared<const Pnb>(move);
  auto dead = Expr::make_leaf(
      {net, move.marking_of({"A"}), move.marking_of({"A", "B"}), AcceptanceMode::exact});
  auto live = Expr::make_leaf(
      {net, move.marking_of({"A"}), move.marking_of({"B"}), AcceptanceMode::exact});

  CheckResult r = check(*Expr::make_tensor(dead, live));
  CHECK(!r.reachable);
  for (const auto& n : r.node_stats) CHECK(n.node.find("root.r") == std::string::npos);
}

TEST_CASE("after the first fold every further composition hits the memo") {
  for (int n : {4, 7, 10}) {
    CheckOptions opts;
    CheckResult r = check(*counter_expr(n), opts);
    CHECK(r.reachable);
    CHECK(r.memo_hits == static_cast<size_t>(n - 1));
  }
}

TEST_CASE("memo hits survive an audit against fresh recomputation") {
  CheckOptions opts;
  opts.memo_audit_every = 10;  // re-verify every 10th hit
  CheckResult r = check(*counter_expr(32), opts);
  CHECK(r.reachable);
  CHECK(r.memo_hits == 31);
}

TEST_CASE("checking the three-bit counter") {
  CheckResult r = check(*counter_expr(3));
  CHECK(r.reachable);
  CHECK(r.memo_hits <= 4);  // internal nodes only
  CHECK(r.node_stats.size() == 9);  // 5 leaves + 4 internal nodes
}

TEST_CASE("the blocked counter cannot wrap back to zero") {
  CheckResult r = check(*counter_expr_blocked(3));
  CHECK(!r.reachable);
  SearchResult s = search(flatten(*counter_expr_blocked(3)));
  CHECK(!s.reachable);
}

TEST_CASE("a flag cap records the wrap and covering finds it") {
  // Same chain as the counter but ask for the flag, covering the rest.
  Pnb bit = counter_bit();
  auto flag_cap = std::make_shared<const Pnb>(counter_cap_flag());
  auto bitp = std::make_shared<const Pnb>(bit);
  auto driver = std::make_shared<const Pnb>(counter_driver());
  Marking none(0);
  Marking zero = bit.marking_of({"zero"});
  Marking free(2);
  ExprPtr e = Expr::make_leaf({driver, none, none, AcceptanceMode::covering});
  for (int i = 0; i < 3; ++i)
    e = Expr::make_seq(Expr::make_leaf({bitp, zero, free, AcceptanceMode::covering}), e);
  Marking cap_empty(1);
  ExprPtr root = Expr::make_seq(
      Expr::make_leaf({flag_cap, cap_empty, flag_cap->marking_of({"flag"}),
                       AcceptanceMode::covering}),
      e);

  CheckResult r = check(*root);
  CHECK(r.reachable);
  SearchResult s = search(flatten(*root));
  REQUIRE(s.reachable);
  CHECK(*s.distance == 8);  // seven increments, then the wrap
}

TEST_CASE("the one-bit counter needs a single increment") {
  CheckResult r = check(*counter_expr(1));
  CHECK(r.reachable);
  SearchResult s = search(flatten(*counter_expr(1)));
  REQUIRE(s.reachable);
  CHECK(*s.distance == 1);
}

TEST_CASE("open-boundary roots are rejected") {
  auto bit = std::make_shared<const Pnb>(counter_bit());
  Marking m2(2);
  ExprPtr open = Expr::make_leaf({bit, m2, m2, AcceptanceMode::exact});
  CHECK_THROWS_AS(check(*open), TypeError);
}

TEST_CASE("the counter fold stabilises after one composition") {
  auto k = fixpoint_probe(driver_aut(), bit_aut(), 10);
  REQUIRE(k.has_value());
  CHECK(*k == 1);
}

TEST_CASE("folding the identity wire stabilises immediately") {
  Nfa wire = reduce(leaf_nfa(wire_net(1), Marking(0), Marking(0)), ReduceLevel::standard);
  auto k = fixpoint_probe(driver_aut(), wire, 10);
  REQUIRE(k.has_value());
  CHECK(*k == 1);
}

TEST_CASE("a strictly growing fold exhausts the probe budget") {
  // step relates (1 . w) on the left to w on the right, so each fold
  // lengthens the accepted words by one.
  Nfa base = canonical_empty(1, 0);
  base.accepting = {0};  // accepts exactly the empty word

  Nfa step;
  step.left_arity = 1;
  step.right_arity = 1;
  step.num_states = 2;
  step.edges = {{0, 0, {Bits(1), Bits(1)}},
                {1, 1, {Bits(1), Bits(1)}},
                {0, 1, {Bits::of(1, {0}), Bits(1)}},
                {1, 1, {Bits::of(1, {0}), Bits::of(1, {0})}}};
  step.initial = {0};
  step.accepting = {1};
  step.canonicalize();

  CHECK(!fixpoint_probe(base, step, 3).has_value());
  CHECK(fixpoint_probe(base, reduce(step, ReduceLevel::standard), 3) == std::nullopt);
}

TEST_CASE("the probe rejects non-composable arities") {
  CHECK_THROWS_AS(fixpoint_probe(driver_aut(), driver_aut(), 3), TypeError);
}

TEST_CASE("the evaluated language is independent of evaluation options") {
  std::mt19937_64 gen(421);
  for (int i = 0; i < 30; ++i) {
    ExprPtr e = testsupport::random_expr(gen, 0, i % 2, 2, AcceptanceMode::exact);
    CheckOptions base;
    Nfa reference = evaluate(*e, base);
    for (auto level : {ReduceLevel::none, ReduceLevel::trim})
      for (auto sem : {StepMode::full, StepMode::boundary_complete}) {
        CheckOptions opts;
        opts.reduce_level = level;
        opts.semantics_mode = sem;
        opts.memo = !base.memo;
        CAPTURE(i);
        CHECK(equivalent(reference, evaluate(*e, opts)));
      }
  }
}

TEST_CASE("verdicts are invariant under options and match the oracle") {
  std::mt19937_64 gen(211);
  for (int i = 0; i < 50; ++i) {
    ExprPtr e = testsupport::random_expr(gen, 0, 0, 2,
                                         i % 2 ? AcceptanceMode::covering
                                               : AcceptanceMode::exact);
    bool oracle_verdict = search(flatten(*e)).reachable;
    for (auto level : {ReduceLevel::none, ReduceLevel::trim, ReduceLevel::standard})
      for (bool memo : {true, false})
        for (auto mode : {StepMode::full, StepMode::boundary_complete}) {
          CheckOptions opts;
          opts.reduce_level = level;
          opts.memo = memo;
          opts.semantics_mode = mode;
          CAPTURE(i);
          CHECK(check(*e, opts).reachable == oracle_verdict);
        }
  }
}

TEST_CASE("the monolithic engine routes through the flat search") {
  CheckOptions opts;
  opts.engine = Engine::monolithic;
  CHECK(check(*counter_expr(3), opts).reachable);
  CHECK(!check(*counter_expr_blocked(3), opts).reachable);
}

TEST_CASE("memo lookups succeed only for equivalent arguments under one op") {
  MemoTable memo;
  Nfa bit = bit_aut();
  Nfa driver = driver_aut();
  auto stored = std::make_shared<const Nfa>(reduce(compose_nfa(bit, driver), ReduceLevel::standard));
  memo.insert(';', bit, driver, stored);
  CHECK(memo.size() == 1);

  CHECK(memo.find(';', bit, driver) == stored);
  CHECK(memo.find('+', bit, driver) == nullptr);

  // Same structural signature, different language: acceptance swapped.
  Nfa other = bit;
  other.accepting = {0};
  CHECK(memo.find(';', other, driver) == nullptr);
}
