#pragma once

// Helpers shared by the test binaries: literal lists, seeded randomness and
// sampled streams paired with closed-form element formulas.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "corec/nat.hpp"
#include "corec/stream.hpp"

namespace testing_support {

using corec::Nat;
using corec::Stream;

inline std::vector<Nat> nats(std::initializer_list<Nat::rep> xs) {
  std::vector<Nat> out;
  for (auto x : xs) out.push_back(Nat{x});
  return out;
}

inline std::vector<Nat> iota_nats(Nat::rep from, std::size_t n) {
  std::vector<Nat> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Nat{from + i});
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(gen_);
  }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 gen_;
};

// A stream together with an independent formula for its n-th element.
struct Sample {
  std::string name;
  Stream<Nat> stream;
  std::function<Nat::rep(std::size_t)> at;
};

inline Nat sq(Nat n) { return Nat{n.value() * n.value()}; }

inline Sample random_core_stream(Rng& rng) {
  using namespace corec;
  Nat::rep a = rng.below(20), b = rng.below(20);
  switch (rng.below(9)) {
    case 0:
      return {"count_up", count_up(Nat{a}), [a](std::size_t i) { return a + i; }};
    case 1:
      return {"count_down", count_down(Nat{a}), [a](std::size_t i) { return i >= a ? 0 : a - i; }};
    case 2:
      return {"always", always(Nat{a}), [a](std::size_t) { return a; }};
    case 3:
      return {"repeat", repeat(succ, Nat{a}), [a](std::size_t i) { return a + i; }};
    case 4:
      return {"maps", maps(sq, count_up(Nat{a})), [a](std::size_t i) { return (a + i) * (a + i); }};
    case 5: {
      std::vector<Nat> prefix;
      std::size_t len = rng.below(8);
      for (std::size_t i = 0; i < len; ++i) prefix.push_back(Nat{rng.below(100)});
      return {"append_list", append_list(prefix, always(Nat{b})), [prefix, b](std::size_t i) {
                return i < prefix.size() ? prefix[i].value() : b;
              }};
    }
    case 6:
      return {"zips_with", zips_with(plus, count_up(Nat{a}), count_up(Nat{b})),
              [a, b](std::size_t i) { return a + b + 2 * i; }};
    case 7:
      return {"by_twos", by_twos(count_up(Nat{a}), plus), [a](std::size_t i) { return 2 * a + 2 * i + 1; }};
    default:
      return {"scons", scons(Nat{b}, count_up(Nat{a})), [a, b](std::size_t i) { return i == 0 ? b : a + i - 1; }};
  }
}

}  // namespace testing_support
