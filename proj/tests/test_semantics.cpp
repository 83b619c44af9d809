#include <random>

#include "doctest.h"
#include "pnb/counter.hpp"
#include "pnb/oracle.hpp"
#include "pnb/semantics.hpp"
#include "test_support.hpp"

using namespace pnb;
using testsupport::all_markings;

namespace {

Pnb token_move() {
  Pnb net;
  net.name = "move";
  net.type = {0, 0};
  net.places = {"A", "B"};
  add_transition(net, "t", {"A"}, {"B"}, {}, {});
  return net;
}

Pnb buffer_cell() {
  Pnb net;
  net.name = "cell";
  net.type = {1, 1};
  net.places = {"p"};
  add_transition(net, "fill", {}, {"p"}, {0}, {});
  add_transition(net, "drain", {"p"}, {}, {}, {0});
  return net;
}

}  // namespace

TEST_CASE("enabled steps at a single token") {
  Pnb net = token_move();
  auto steps = enabled_steps(net, net.marking_of({"A"}), StepMode::full);
  REQUIRE(steps.size() == 2);  // the empty step and {t}
  Marking after = fire_step(net, net.marking_of({"A"}), {{0}});
  CHECK(after == net.marking_of({"B"}));
}

TEST_CASE("1-safety disables a transition whose output is occupied") {
  Pnb net = token_move();
  auto steps = enabled_steps(net, net.marking_of({"A", "B"}), StepMode::full);
  REQUIRE(steps.size() == 1);
  CHECK(steps.front().transitions.empty());
}

TEST_CASE("boundary-complete mode drops multi-internal steps only") {
  Pnb net;
  net.name = "two";
  net.type = {0, 0};
  net.places = {"a", "b", "c", "d"};
  add_transition(net, "t1", {"a"}, {"b"}, {}, {});
  add_transition(net, "t2", {"c"}, {"d"}, {}, {});
  Marking m = net.marking_of({"a", "c"});
  CHECK(enabled_steps(net, m, StepMode::full).size() == 4);
  CHECK(enabled_steps(net, m, StepMode::boundary_complete).size() == 3);
}

TEST_CASE("enabled steps reject a marking over the wrong net") {
  CHECK_THROWS_AS(enabled_steps(token_move(), Marking(1), StepMode::full), InputError);
}

TEST_CASE("the empty step is the identity") {
  Pnb net = token_move();
  Marking m = net.marking_of({"B"});
  CHECK(fire_step(net, m, {}) == m);
}

TEST_CASE("a consume-and-replace loop keeps its token") {
  Pnb net;
  net.name = "loop";
  net.type = {0, 0};
  net.places = {"p"};
  add_transition(net, "t", {"p"}, {"p"}, {}, {});
  Marking m = net.marking_of({"p"});
  auto steps = enabled_steps(net, m, StepMode::full);
  CHECK(steps.size() == 2);
  CHECK(fire_step(net, m, {{0}}) == m);
}

TEST_CASE("firing a disabled step is a contract violation") {
  Pnb net = token_move();
  CHECK_THROWS_AS(fire_step(net, net.marking_of({"B"}), {{0}}), ContractError);
}

TEST_CASE("step labels observe engaged ports") {
  Pnb cell = buffer_cell();
  auto [l1, r1] = step_labels(cell, {{0}});  // fill
  CHECK(l1.to_string() == "1");
  CHECK(r1.to_string() == "0");

  auto [l0, r0] = step_labels(cell, {});
  CHECK(l0.none());
  CHECK(r0.none());

  Pnb bit = counter_bit();
  uint32_t carry = 1;  // pre {one} post {zero} lports {0} rports {0}
  auto [lc, rc] = step_labels(bit, {{carry}});
  CHECK(lc.to_string() == "1");
  CHECK(rc.to_string() == "1");
}

TEST_CASE("the buffer cell translates to the two-state fill/drain system") {
  Pnb cell = buffer_cell();
  Marking none(1);
  TwoLts lts = build_two_lts(cell, {none}, StepMode::full);
  REQUIRE(lts.states.size() == 2);

  auto empty_id = *lts.state_of(none);
  auto full_id = *lts.state_of(cell.marking_of({"p"}));
  std::vector<LtsEdge> expect{
      {empty_id, empty_id, Bits(1), Bits(1)},
      {empty_id, full_id, Bits::of(1, {0}), Bits(1)},  // 1/0
      {full_id, empty_id, Bits(1), Bits::of(1, {0})},  // 0/1
      {full_id, full_id, Bits(1), Bits(1)},
  };
  std::sort(expect.begin(), expect.end());
  CHECK(lts.edges == expect);
}

TEST_CASE("seeding the token-move net with all markings") {
  Pnb net = token_move();
  TwoLts lts = build_two_lts(net, all_markings(net), StepMode::full);
  CHECK(lts.states.size() == 4);
  int non_loop = 0;
  for (const auto& e : lts.edges)
    if (e.src != e.dst) ++non_loop;
  CHECK(non_loop == 1);
  auto a = *lts.state_of(net.marking_of({"A"}));
  auto b = *lts.state_of(net.marking_of({"B"}));
  bool found = false;
  for (const auto& e : lts.edges)
    if (e.src == a && e.dst == b && e.left.none() && e.right.none()) found = true;
  CHECK(found);
}

TEST_CASE("a net without transitions yields a single looping state") {
  Pnb net = empty_net(0, 0);
  net.places = {"p"};
  TwoLts lts = build_two_lts(net, {Marking(1)}, StepMode::full);
  CHECK(lts.states.size() == 1);
  REQUIRE(lts.edges.size() == 1);
  CHECK(lts.edges.front().src == lts.edges.front().dst);
}

TEST_CASE("the state budget is an error, not a truncation") {
  Pnb bit = counter_bit();
  CHECK_THROWS_AS(build_two_lts(bit, all_markings(bit), StepMode::full, 2), BudgetError);
}

TEST_CASE("reflexivity: every state carries the all-zeros self-loop") {
  RandomLimits limits{3, 4, 2};
  std::mt19937_64 gen(23);
  for (int i = 0; i < 30; ++i) {
    Pnb net = random_pnb(gen(), limits);
    TwoLts lts = build_two_lts(net, all_markings(net), StepMode::boundary_complete);
    for (uint32_t s = 0; s < lts.states.size(); ++s) {
      bool loop = false;
      for (const auto& e : lts.edges)
        if (e.src == s && e.dst == s && e.left.none() && e.right.none()) loop = true;
      CHECK(loop);
    }
  }
}

TEST_CASE("independent transitions fire the same in any order or at once") {
  RandomLimits limits{4, 4, 2};
  std::mt19937_64 gen(29);
  int checked = 0;
  for (uint64_t seed = 0; checked < 200 && seed < 4000; ++seed) {
    Pnb net = random_pnb(gen(), limits);
    Marking m = testsupport::random_marking(gen, static_cast<uint32_t>(net.places.size()));
    for (const auto& step : enabled_steps(net, m, StepMode::full)) {
      if (step.transitions.size() < 2) continue;
      ++checked;
      Marking at_once = fire_step(net, m, step);
      auto order = step.transitions;
      do {
        Marking seq = m;
        for (uint32_t t : order) seq = fire_step(net, seq, {{t}});
        CHECK(seq == at_once);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  CHECK(checked >= 50);
}

TEST_CASE("full and boundary-complete modes have the same weak language") {
  RandomLimits limits{3, 4, 2};
  std::mt19937_64 gen(31);
  for (int i = 0; i < 60; ++i) {
    Pnb net = random_pnb(gen(), limits);
    const auto np = static_cast<uint32_t>(net.places.size());
    Marking init = testsupport::random_marking(gen, np);
    Marking target = testsupport::random_marking(gen, np);

    TwoLts full = build_two_lts(net, {init}, StepMode::full);
    TwoLts bc = build_two_lts(net, {init}, StepMode::boundary_complete);
    Nfa af = from_two_lts(full, init, target, AcceptanceMode::exact);
    Nfa ab = from_two_lts(bc, init, target, AcceptanceMode::exact);
    CAPTURE(i);
    CHECK(equivalent(af, ab));
  }
}

TEST_CASE("composing semantics equals the semantics of the composition") {
  RandomLimits limits{3, 4, 2};
  std::mt19937_64 gen(37);
  int failures = 0;
  for (int i = 0; i < 60; ++i) {
    uint32_t k = static_cast<uint32_t>(gen() % 3);
    Pnb m = random_pnb(gen(), limits, static_cast<uint32_t>(gen() % 3), k);
    Pnb n = random_pnb(gen(), limits, k, static_cast<uint32_t>(gen() % 3));
    std::string why;
    if (!testsupport::compositionality_iso(m, n, &why)) {
      ++failures;
      CAPTURE(i);
      CAPTURE(why);
      CHECK(false);
    }
  }
  CHECK(failures == 0);
}
