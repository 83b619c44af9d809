#include "doctest.h"
#include "pnb/bits.hpp"

using pnb::Bits;

TEST_CASE("bit vector basics") {
  Bits b(70);
  CHECK(b.none());
  b.set(0);
  b.set(69);
  CHECK(b.test(0));
  CHECK(b.test(69));
  CHECK(!b.test(33));
  CHECK(b.count() == 2);
  CHECK(b.indices() == std::vector<uint32_t>{0, 69});

  Bits c(70);
  c.set(69);
  CHECK(c.subset_of(b));
  CHECK(!b.subset_of(c));
  CHECK(b.intersects(c));
  b.subtract(c);
  CHECK(!b.test(69));
  CHECK(b.count() == 1);
}

TEST_CASE("concatenation appends on the right") {
  Bits a = Bits::of(2, {1});
  Bits b = Bits::of(3, {0, 2});
  Bits c = a.concat(b);
  CHECK(c.size() == 5);
  CHECK(c.to_string() == "01101");
}

TEST_CASE("ordering and hashing distinguish sizes") {
  Bits a(3), b(4);
  CHECK(a != b);
  CHECK(a < b);
  CHECK(Bits::of(3, {1}) == Bits::of(3, {1}));
  CHECK(Bits::of(3, {1}).hash() != Bits::of(3, {2}).hash());
}
