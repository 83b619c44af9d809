#include "pnb/counter.hpp"

namespace pnb {

Pnb counter_bit() {
  Pnb net;
  net.name = "bit";
  net.type = {1, 1};
  net.places = {"zero", "one"};
  add_transition(net, "inc", {"zero"}, {"one"}, {}, {0});
  add_transition(net, "carry", {"one"}, {"zero"}, {0}, {0});
  return net;
}

Pnb counter_driver() {
  Pnb net;
  net.name = "driver";
  net.type = {1, 0};
  add_transition(net, "tick", {}, {}, {0}, {});
  return net;
}

Pnb counter_cap() {
  Pnb net;
  net.name = "leftcap";
  net.type = {0, 1};
  add_transition(net, "wrap", {}, {}, {}, {0});
  return net;
}

Pnb counter_cap_blocking() {
  Pnb net;
  net.name = "capstop";
  net.type = {0, 1};
  return net;
}

Pnb counter_cap_flag() {
  Pnb net;
  net.name = "capflag";
  net.type = {0, 1};
  net.places = {"flag"};
  add_transition(net, "wrap", {}, {"flag"}, {}, {0});
  return net;
}

namespace {

ExprPtr chain(const Pnb& cap, int bits, const Marking& init, const Marking& target,
              AcceptanceMode mode) {
  auto bit = std::make_shared<const Pnb>(counter_bit());
  auto driver = std::make_shared<const Pnb>(counter_driver());
  auto cap_net = std::make_shared<const Pnb>(cap);

  Marking none(0);
  ExprPtr e = Expr::make_leaf({driver, none, none, mode});
  for (int i = 0; i < bits; ++i)
    e = Expr::make_seq(Expr::make_leaf({bit, init, target, mode}), e);
  Marking cap_empty(static_cast<uint32_t>(cap.places.size()));
  return Expr::make_seq(Expr::make_leaf({cap_net, cap_empty, cap_empty, mode}), e);
}

}  // namespace

ExprPtr counter_expr(int bits, AcceptanceMode mode) {
  Pnb bit = counter_bit();
  return chain(counter_cap(), bits, bit.marking_of({"zero"}), bit.marking_of({"one"}), mode);
}

ExprPtr counter_expr_blocked(int bits) {
  Pnb bit = counter_bit();
  return chain(counter_cap_blocking(), bits, bit.marking_of({"one"}), bit.marking_of({"zero"}),
               AcceptanceMode::exact);
}

}  // namespace pnb
