#include <doctest.h>

#include <random>
#include <unordered_set>

#include "mocsfs/bitmask.hpp"
#include "mocsfs/error.hpp"

using mocsfs::BitMask;

TEST_CASE("bitmask basics") {
  BitMask m(70);
  CHECK(m.size() == 70);
  CHECK(m.none());
  m.set(0);
  m.set(69);
  CHECK(m.count() == 2);
  CHECK(m.test(69));
  CHECK(m.ones() == std::vector<std::size_t>{0, 69});
  m.flip(69);
  CHECK_FALSE(m.test(69));
  const BitMask f = m.flipped(3);
  CHECK(f.test(3));
  CHECK_FALSE(m.test(3));

  const BitMask all(70, true);
  CHECK(all.count() == 70);
}

TEST_CASE("bit strings round-trip, bit 0 first") {
  const auto m = BitMask::from_string("1010");
  CHECK(m.test(0));
  CHECK_FALSE(m.test(1));
  CHECK(m.to_string() == "1010");
  CHECK_THROWS_AS(BitMask::from_string("10x"), mocsfs::Error);
}

TEST_CASE("hex packing is big-endian and zero-padded") {
  CHECK(BitMask::from_string("1010").to_hex() == "a");
  CHECK(BitMask::from_string("10000").to_hex() == "80");
  CHECK(BitMask::from_string("00000001").to_hex() == "01");
  CHECK(BitMask::from_string("1").to_hex() == "8");
  CHECK(BitMask(9, true).to_hex() == "ff8");
}

TEST_CASE("hex round-trips for random masks of many lengths") {
  std::mt19937_64 rng(5);
  for (std::size_t d = 1; d <= 130; ++d) {
    BitMask m(d);
    for (std::size_t i = 0; i < d; ++i) m.set(i, rng() & 1u);
    const auto hex = m.to_hex();
    CHECK(hex.size() == (d + 3) / 4);
    CHECK(BitMask::from_hex(hex, d) == m);
  }
}

TEST_CASE("from_hex rejects bad input") {
  CHECK_THROWS_AS(BitMask::from_hex("a", 5), mocsfs::Error);   // wrong digit count
  CHECK_THROWS_AS(BitMask::from_hex("84", 5), mocsfs::Error);  // padding bit set
  CHECK_THROWS_AS(BitMask::from_hex("g", 4), mocsfs::Error);
}

TEST_CASE("equality and hashing") {
  auto a = BitMask::from_string("0110");
  auto b = BitMask::from_string("0110");
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK_FALSE(a == BitMask::from_string("01100"));
  std::unordered_set<BitMask> set{a, b, BitMask::from_string("1110")};
  CHECK(set.size() == 2);
}
