#include <doctest.h>

#include <utility>

#include "corec/stream.hpp"
#include "support.hpp"

using namespace corec;
using namespace corec::literals;
using testing_support::iota_nats;
using testing_support::nats;
using testing_support::Rng;

namespace {

Nat sq(Nat n) { return times(n, n); }
Nat dbl(Nat n) { return plus(n, n); }
std::pair<Nat, Nat> pair_of(Nat a, Nat b) { return {a, b}; }

std::vector<std::pair<Nat, Nat>> pairs(std::initializer_list<std::pair<Nat::rep, Nat::rep>> xs) {
  std::vector<std::pair<Nat, Nat>> out;
  for (auto [a, b] : xs) out.emplace_back(Nat{a}, Nat{b});
  return out;
}

}  // namespace

TEST_CASE("scons examples and shared tail") {
  CHECK(scons(1_n, always(0_n)).head() == 1_n);
  CHECK(scons(1_n, always(0_n)).tail().head() == 0_n);
  CHECK(takes(scons(9_n, count_up(0_n)), 3) == nats({9, 0, 1}));
  auto s = count_up(4_n);
  CHECK(scons(0_n, s).tail().same_as(s));
}

TEST_CASE("always examples") {
  CHECK(takes(always(0_n), 4) == nats({0, 0, 0, 0}));
  CHECK(index(always(true), 100) == true);
  auto s = always(7_n);
  CHECK(s.tail().same_as(s));
  for (std::size_t k : {0, 1, 5, 49}) CHECK(agree_to_depth(drops(s, k), always(7_n)));
}

TEST_CASE("repeat examples") {
  CHECK(takes(repeat(succ, 0_n), 4) == nats({0, 1, 2, 3}));
  CHECK(takes(repeat([](bool b) { return !b; }, true), 4) == std::vector<bool>{true, false, true, false});
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Nat x{rng.below(50)};
    Nat::rep k = rng.below(5);
    auto f = [k](Nat n) { return Nat{(n.value() * 3 + k) % 1009}; };
    auto s = repeat(f, x);
    for (Nat::rep n = 0; n <= 32; ++n) REQUIRE(index(s, n) == iter(Nat{n}, x, f));
  }
}

TEST_CASE("count_up and count_down examples") {
  CHECK(takes(count_down(3_n), 6) == nats({3, 2, 1, 0, 0, 0}));
  CHECK(takes(count_up(5_n), 3) == nats({5, 6, 7}));
  CHECK(agree_to_depth(count_down(0_n), always(0_n)));
}

TEST_CASE("count_down hands over the shared zero stream") {
  CHECK(count_down(0_n).tail().same_as(zeroes()));
  CHECK(drops(count_down(3_n), 4).same_as(zeroes()));
}

TEST_CASE("takes drops index examples") {
  CHECK(takes(count_up(0_n), 0).empty());
  CHECK(index(repeat(succ, 0_n), 5) == 5_n);
  CHECK(takes(drops(count_up(0_n), 3), 2) == nats({3, 4}));
  for (std::size_t n = 0; n < 30; ++n) CHECK(index(count_up(2_n), n) == drops(count_up(2_n), n).head());
}

TEST_CASE("maps examples") {
  CHECK(takes(maps(sq, repeat(succ, 0_n)), 5) == nats({0, 1, 4, 9, 16}));
  CHECK(agree_to_depth(maps([](Nat x) { return x; }, count_up(3_n)), count_up(3_n)));
  CHECK(agree_to_depth(maps(sq, always(6_n)), always(36_n)));
}

TEST_CASE("zips_with examples") {
  CHECK(takes(zips_with(pair_of, count_up(0_n), count_up(1_n)), 3) == pairs({{0, 1}, {1, 2}, {2, 3}}));
  CHECK(takes(zips(count_up(0_n), count_up(1_n)), 3) == pairs({{0, 1}, {1, 2}, {2, 3}}));
  CHECK(agree_to_depth(zips_with(plus, always(0_n), count_down(9_n)), count_down(9_n)));
  CHECK(takes(zips_with(plus, count_up(0_n), count_up(0_n)), 4) == nats({0, 2, 4, 6}));
}

TEST_CASE("by_twos examples") {
  CHECK(takes(by_twos(count_up(0_n), pair_of), 3) == pairs({{0, 1}, {1, 2}, {2, 3}}));
  CHECK(takes(by_twos(count_up(0_n)), 4) == pairs({{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  CHECK(agree_to_depth(by_twos(always(4_n), plus), always(8_n)));
  CHECK(takes(by_twos(count_down(2_n), pair_of), 4) == pairs({{2, 1}, {1, 0}, {0, 0}, {0, 0}}));
}

TEST_CASE("append_list examples") {
  CHECK(takes(append_list(nats({3, 2, 1}), always(0_n)), 6) == nats({3, 2, 1, 0, 0, 0}));
  CHECK(agree_to_depth(append_list(nats({3, 2, 1}), always(0_n)), count_down(3_n)));
  CHECK(agree_to_depth(append_list<Nat>({}, count_up(2_n)), count_up(2_n)));
  CHECK(index(append_list(nats({7}), always(0_n)), 0) == 7_n);
}

TEST_CASE("append_list continues with the given stream itself") {
  auto s = count_up(10_n);
  CHECK(drops(append_list(nats({1, 2, 3}), s), 3).same_as(s));
  CHECK(append_list<Nat>({}, s).same_as(s));
}

TEST_CASE("persistence under random observation schedules") {
  Rng rng(1);
  for (int stream_no = 0; stream_no < 100; ++stream_no) {
    auto sample = testing_support::random_core_stream(rng);
    CAPTURE(sample.name);
    for (int schedule = 0; schedule < 100; ++schedule) {
      // handles[i] sits at position pos[i]; each step observes a random one
      std::vector<Stream<Nat>> handles{sample.stream};
      std::vector<std::size_t> pos{0};
      for (int step = 0; step < 120; ++step) {
        std::size_t pick = rng.below(handles.size());
        if (rng.coin() || pos[pick] + 1 >= 50) {
          REQUIRE(handles[pick].head().value() == sample.at(pos[pick]));
        } else {
          handles.push_back(handles[pick].tail());
          pos.push_back(pos[pick] + 1);
        }
      }
    }
  }
}

TEST_CASE("repeated observation returns the same answers") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    auto sample = testing_support::random_core_stream(rng);
    auto first = takes(sample.stream, 50);
    CHECK(takes(sample.stream, 50) == first);
    CHECK(takes(sample.stream.tail(), 49) == std::vector<Nat>(first.begin() + 1, first.end()));
  }
}

TEST_CASE("functor laws at depth 50") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto s = testing_support::random_core_stream(rng).stream;
    CHECK(agree_to_depth(maps([](Nat x) { return x; }, s), s));
    CHECK(agree_to_depth(maps([](Nat x) { return dbl(sq(x)); }, s), maps(dbl, maps(sq, s))));
  }
}

TEST_CASE("takes and drops cohere") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto s = testing_support::random_core_stream(rng).stream;
    std::size_t n = rng.below(30), m = rng.below(30);
    auto whole = takes(s, n + m);
    auto front = takes(s, n);
    auto back = takes(drops(s, n), m);
    front.insert(front.end(), back.begin(), back.end());
    REQUIRE(whole == front);
  }
}

TEST_CASE("by_twos is zips_with against the tail") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    auto s = testing_support::random_core_stream(rng).stream;
    CHECK(agree_to_depth(by_twos(s, plus), zips_with(plus, s, s.tail())));
    CHECK(agree_to_depth(by_twos(s), zips(s, s.tail())));
  }
}

TEST_CASE("sampled streams match their element formulas") {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    auto sample = testing_support::random_core_stream(rng);
    auto got = takes(sample.stream, 50);
    for (std::size_t k = 0; k < 50; ++k) REQUIRE(got[k].value() == sample.at(k));
  }
  CHECK(takes(count_up(3_n), 4) == iota_nats(3, 4));
}

TEST_CASE("deep observation does not exhaust the stack") {
  CHECK(index(count_up(0_n), 200000) == Nat{200000});
  CHECK(takes(count_up(0_n), 100000).back() == Nat{99999});
}
