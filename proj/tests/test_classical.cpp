#include <doctest.h>

#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "corec/classical.hpp"
#include "corec/race_oracle.hpp"
#include "support.hpp"

using namespace corec;
using namespace corec::literals;
using testing_support::iota_nats;
using testing_support::nats;
using testing_support::Rng;

namespace {

Stream<bool> golden_input() { return append_list<bool>({true, false, false, true, false}, always(true)); }

template <class A>
EventuallyConstant<A> random_eventually_constant(Rng& rng, std::vector<A> alphabet, std::size_t max_prefix = 12) {
  EventuallyConstant<A> s{{}, alphabet[rng.below(alphabet.size())]};
  std::size_t len = rng.below(max_prefix + 1);
  for (std::size_t i = 0; i < len; ++i) s.prefix.push_back(alphabet[rng.below(alphabet.size())]);
  return s;
}

std::vector<Nat> prefix_of(const std::vector<Nat>& xs, std::size_t n) {
  return std::vector<Nat>(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n));
}

// An alternating T/F stream behind a head that never recurs.
Stream<char> a_then_alternating() {
  return scons('a', repeat([](char c) { return c == 'T' ? 'F' : 'T'; }, 'T'));
}

}  // namespace

TEST_CASE("infinite_bits goldens") {
  CHECK(takes(infinite_bits(golden_input()), 3) == nats({1, 2, 4}));
  CHECK(takes(infinite_bits(golden_input()), 5) == nats({0, 3, 5, 6, 7}));
}

TEST_CASE("infinite_bits_star goldens") {
  CHECK(takes(infinite_bits_star(golden_input()), 3) == nats({1, 2, 4}));
  CHECK(takes(infinite_bits_star(golden_input()), 5) == nats({0, 3, 5, 6, 7}));
}

TEST_CASE("infinite_repetitions goldens") {
  CHECK(takes(infinite_repetitions(golden_input(), 1'000'000), 3) == nats({1, 2, 4}));
  CHECK(takes(infinite_repetitions(golden_input(), 1'000'000), 5) == nats({0, 3, 5, 6, 7}));
}

TEST_CASE("one handle answers consistently after a deeper observation") {
  auto ix = infinite_bits(golden_input());
  CHECK(takes(ix, 5) == nats({0, 3, 5, 6, 7}));
  CHECK(takes(ix, 3) == nats({0, 3, 5}));
  CHECK(ix.committed() == nats({0, 3, 5, 6, 7}));

  auto star = infinite_bits_star(golden_input());
  CHECK(takes(star, 5) == nats({0, 3, 5, 6, 7}));
  CHECK(takes(star, 3) == nats({0, 3, 5}));

  auto reps = infinite_repetitions(golden_input());
  CHECK(takes(reps, 5) == nats({0, 3, 5, 6, 7}));
  CHECK(takes(reps, 3) == nats({0, 3, 5}));
}

TEST_CASE("a shallow answer is replaced on re-observation once a deeper one is committed") {
  auto ix = infinite_bits(golden_input());
  CHECK(takes(ix, 3) == nats({1, 2, 4}));
  CHECK(takes(ix, 5) == nats({0, 3, 5, 6, 7}));
  CHECK(takes(ix, 3) == nats({0, 3, 5}));
}

TEST_CASE("separate searches on the same input are independent") {
  auto input = golden_input();
  auto a = infinite_bits(input);
  auto b = infinite_bits(input);
  CHECK(takes(a, 5) == nats({0, 3, 5, 6, 7}));
  CHECK(takes(b, 3) == nats({1, 2, 4}));
}

TEST_CASE("race oracle examples") {
  EventuallyConstant<bool> s{{true, false, false, true, false}, true};
  auto three = race_oracle(s, 3);
  CHECK(three.value == false);
  CHECK(three.indexes == nats({1, 2, 4}));
  auto five = race_oracle(s, 5);
  CHECK(five.value == true);
  CHECK(five.indexes == nats({0, 3, 5, 6, 7}));
  auto constant = race_oracle(EventuallyConstant<int>{{}, 7}, 6);
  CHECK(constant.value == 7);
  CHECK(constant.indexes == iota_nats(0, 6));
}

TEST_CASE("constant input never switches") {
  CHECK(takes(infinite_bits_star(always(true)), 10) == iota_nats(0, 10));
  CHECK(takes(infinite_bits(always(true)), 10) == iota_nats(0, 10));
  CHECK(takes(infinite_repetitions(always(true)), 10) == iota_nats(0, 10));
}

TEST_CASE("searches agree with the race oracle on random bit streams") {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    auto spec = random_eventually_constant<bool>(rng, {true, false});
    std::size_t n = 1 + rng.below(20);
    auto want = race_oracle(spec, n);
    auto s = spec.stream();
    auto got = takes(infinite_bits(s), n);
    REQUIRE(got == want.indexes);
    for (Nat i : got) REQUIRE(index(s, i.value()) == want.value);
    REQUIRE(takes(infinite_bits_star(s), n) == want.indexes);
    REQUIRE(takes(infinite_repetitions(s), n) == want.indexes);
  }
}

TEST_CASE("a head that never recurs is abandoned") {
  auto s = a_then_alternating();
  CHECK(takes(infinite_bits(s), 8) == iota_nats(1, 8));
  CHECK(takes(infinite_bits_star(s), 8) == iota_nats(1, 8));
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = random_eventually_constant<char>(rng, {'T', 'F'});
    auto tail = spec.stream();
    auto with_head = scons('a', tail);
    std::size_t n = 1 + rng.below(20);
    auto got = takes(infinite_bits(with_head), n);
    for (std::size_t k = 1; k < got.size(); ++k) REQUIRE(index(with_head, got[k].value()) != 'a');
    if (n >= 2) REQUIRE(got == iota_nats(1, n));
  }
}

TEST_CASE("infinite_repetitions tracks each value separately") {
  auto s = a_then_alternating();
  {
    EventuallyConstant<char> spec{{'a', 'T', 'F', 'T', 'F', 'T', 'F', 'T', 'F'}, 'T'};
    auto want = race_oracle(spec, 4);
    CHECK(want.indexes == nats({1, 3, 5, 7}));
    CHECK(takes(infinite_repetitions(s), 4) == want.indexes);
  }
  Rng rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    auto spec = random_eventually_constant<int>(rng, {0, 1, 2, 3}, 16);
    std::size_t n = 1 + rng.below(20);
    auto want = race_oracle(spec, n);
    auto got = takes(infinite_repetitions(spec.stream()), n);
    REQUIRE(got == want.indexes);
    for (Nat i : got) REQUIRE(spec.at(i.value()) == want.value);
  }
}

TEST_CASE("infinite_repetitions works for values without an ordering") {
  struct Colour {
    int c;
    bool operator==(const Colour&) const = default;
  };
  auto s = append_list<Colour>({{1}, {2}, {2}, {1}, {2}}, always(Colour{1}));
  CHECK(takes(infinite_repetitions(s), 3) == nats({1, 2, 4}));
  CHECK(takes(infinite_repetitions(s), 5) == nats({0, 3, 5, 6, 7}));
}

TEST_CASE("infinite_repetitions runs out of fuel on distinct elements") {
  auto ix = infinite_repetitions(count_up(0_n), 1000);
  CHECK(index(ix, 0) == 0_n);
  CHECK_THROWS_AS(takes(ix, 2), FuelExhausted);
  try {
    takes(ix, 2);
  } catch (const FuelExhausted& e) {
    CHECK(e.fuel() == 1000);
  }
  // the failed observation leaves the committed answer as it was
  CHECK(ix.committed() == nats({0}));
  CHECK(takes(ix, 1) == nats({0}));
  CHECK_THROWS_AS(takes(infinite_repetitions(count_up(0_n), 1000), 2), FuelExhausted);
}

TEST_CASE("optional fuel on infinite_bits") {
  CHECK_THROWS_AS(takes(infinite_bits(golden_input(), 3), 5), FuelExhausted);
  CHECK_THROWS_AS(takes(infinite_bits_star(golden_input(), 3), 5), FuelExhausted);
  CHECK(takes(infinite_bits(golden_input(), 100), 5) == nats({0, 3, 5, 6, 7}));
}

TEST_CASE("monotone consistency under random observation orders") {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = random_eventually_constant<bool>(rng, {true, false});
    auto s = spec.stream();
    auto ix = trial % 2 ? infinite_bits(s) : infinite_bits_star(s);
    std::size_t deepest = 0;
    for (int obs = 0; obs < 8; ++obs) {
      std::size_t d = rng.below(21);
      auto got = takes(ix, d);
      deepest = std::max(deepest, d);
      auto committed = race_oracle(spec, std::max<std::size_t>(deepest, 1)).indexes;
      REQUIRE(got == prefix_of(committed, d));
      REQUIRE(ix.committed_depth() >= deepest);
    }
  }
}

TEST_CASE("committed indexes are increasing and point at one value") {
  Rng rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = random_eventually_constant<bool>(rng, {true, false});
    auto ix = infinite_bits(spec.stream());
    takes(ix, 1 + rng.below(20));
    auto c = ix.committed();
    for (std::size_t k = 1; k < c.size(); ++k) {
      REQUIRE(c[k - 1] < c[k]);
      REQUIRE(spec.at(c[k].value()) == spec.at(c[0].value()));
    }
  }
}

TEST_CASE("classical corec that always continues is coiter") {
  auto make = [](Nat n) { return times(n, n); };
  for (Nat::rep seed = 0; seed < 10; ++seed) {
    auto s = classical_corec(make, [](const TailCap<Nat>&, Nat n) -> UpdateOutcome<Nat, Nat> { return Continue<Nat>{succ(n)}; },
                             Nat{seed});
    REQUIRE(agree_to_depth(s, coiter(make, succ, Nat{seed})));
  }
}

TEST_CASE("classical append agrees with append_list") {
  CHECK(takes(classical_append(nats({1, 2, 3}), always(9_n)), 6) == nats({1, 2, 3, 9, 9, 9}));
  CHECK(agree_to_depth(classical_append<Nat>({}, count_up(4_n)), count_up(4_n)));
  Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Nat> xs;
    std::size_t len = rng.below(10);
    for (std::size_t i = 0; i < len; ++i) xs.push_back(Nat{rng.below(100)});
    auto ys = testing_support::random_core_stream(rng).stream;
    REQUIRE(agree_to_depth(classical_append(xs, ys), append_list(xs, ys)));
  }
}

TEST_CASE("a stored cap can be invoked again and the latest invocation wins") {
  auto saved = std::make_shared<std::optional<TailCap<Nat>>>();
  auto s = classical_corec([](Nat n) { return n; },
                           [saved](const TailCap<Nat>& here, Nat n) -> UpdateOutcome<Nat, Nat> {
                             if (n == 1_n) *saved = here;
                             if (n == 5_n) return Divert{**saved, 100_n};
                             if (n == 103_n) return Divert{**saved, 200_n};
                             return Continue<Nat>{succ(n)};
                           },
                           0_n);
  CHECK(takes(s, 6) == nats({0, 1, 2, 3, 4, 5}));
  REQUIRE(saved->has_value());
  CHECK((*saved)->origin_depth() == 2);
  CHECK(takes(s, 10) == nats({0, 1, 200, 201, 202, 203, 204, 205, 206, 207}));
  CHECK(index(s, 2) == 200_n);
}

TEST_CASE("the first cap restarts the whole output") {
  auto s = classical_corec_from<Nat>(
      [](const std::pair<Nat, std::optional<TailCap<Nat>>>& st) { return st.first; },
      [](const TailCap<Nat>&, const std::pair<Nat, std::optional<TailCap<Nat>>>& st)
          -> UpdateOutcome<std::pair<Nat, std::optional<TailCap<Nat>>>, Nat> {
        if (st.first == 3_n) return Divert{*st.second, std::pair{10_n, std::optional<TailCap<Nat>>{}}};
        return Continue{std::pair{succ(st.first), st.second}};
      },
      [](const TailCap<Nat>& restart) { return std::pair{0_n, std::optional<TailCap<Nat>>{restart}}; });
  CHECK(takes(s, 3) == nats({0, 1, 2}));
  CHECK(takes(s, 5) == nats({10, 11, 12, 13, 14}));
}

TEST_CASE("caps from another engine are rejected") {
  auto stolen = std::make_shared<std::optional<TailCap<Nat>>>();
  auto donor = classical_corec([](Nat n) { return n; },
                               [stolen](const TailCap<Nat>& here, Nat n) -> UpdateOutcome<Nat, Nat> {
                                 *stolen = here;
                                 return Continue<Nat>{succ(n)};
                               },
                               0_n);
  takes(donor, 3);
  REQUIRE(stolen->has_value());

  auto via_divert = classical_corec([](Nat n) { return n; },
                                    [stolen](const TailCap<Nat>&, Nat) -> UpdateOutcome<Nat, Nat> {
                                      return Divert{**stolen, 0_n};
                                    },
                                    0_n);
  CHECK(via_divert.head() == 0_n);
  CHECK_THROWS_AS(via_divert.tail().head(), EngineMismatch);
  CHECK(via_divert.committed() == nats({0}));

  auto via_throw = classical<Nat>([stolen](Engine<Nat>& e, TailCap<Nat>) {
    return e.corec([](Nat n) { return n; },
                   [&e, stolen](const TailCap<Nat>&, Nat) -> UpdateOutcome<Nat, Nat> { e.throw_to(**stolen, always(1_n)); },
                   0_n);
  });
  CHECK_THROWS_AS(index(via_throw, 1), EngineMismatch);
  // the donor is untouched
  CHECK(takes(donor, 4) == nats({0, 1, 2, 3}));
}

TEST_CASE("capture is only available while a tail request is served") {
  auto s = infinite_bits(golden_input());
  CHECK_THROWS_AS(s.engine().capture(), std::logic_error);
  takes(s, 3);
  CHECK_THROWS_AS(s.engine().capture(), std::logic_error);
}

TEST_CASE("engines need positive fuel") {
  CHECK_THROWS_AS(infinite_repetitions(count_up(0_n), 0), std::invalid_argument);
}

TEST_CASE("concurrent observers each see a consistent answer") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    auto spec = random_eventually_constant<bool>(rng, {true, false});
    auto ix = infinite_bits(spec.stream());
    constexpr int kThreads = 6, kObs = 30;
    std::vector<std::vector<std::pair<std::size_t, std::vector<Nat>>>> seen(kThreads);
    std::vector<std::uint64_t> seeds;
    for (int t = 0; t < kThreads; ++t) seeds.push_back(rng.below(1u << 30));
    std::vector<std::thread> threads;
    for (int t = 0; t < kThreads; ++t) {
      threads.emplace_back([&, t] {
        Rng local(seeds[t]);
        for (int o = 0; o < kObs; ++o) {
          std::size_t d = local.below(21);
          seen[t].emplace_back(d, takes(ix, d));
        }
      });
    }
    for (auto& th : threads) th.join();
    std::set<std::size_t> depths;
    for (const auto& per : seen)
      for (const auto& [d, r] : per) depths.insert(d);
    for (const auto& per : seen) {
      for (const auto& [d, r] : per) {
        bool explained = false;
        for (std::size_t deeper : depths) {
          if (deeper < d || deeper == 0) continue;
          if (prefix_of(race_oracle(spec, deeper).indexes, d) == r) explained = true;
        }
        REQUIRE((explained || d == 0));
      }
    }
    REQUIRE(ix.committed() == race_oracle(spec, std::max<std::size_t>(*depths.rbegin(), 1)).indexes);
  }
}

TEST_CASE("the two-loop search is built without direct self-reference") {
  std::ifstream in(CLASSICAL_HEADER);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto begin = text.find("struct StarSearch");
  REQUIRE(begin != std::string::npos);
  auto end = text.find("\n};", begin);
  REQUIRE(end != std::string::npos);
  std::string body = text.substr(begin, end - begin);
  CHECK(body.find("coiter(") != std::string::npos);
  CHECK(body.find("engine->corec(") != std::string::npos);
  CHECK(body.find("cocase") == std::string::npos);
  CHECK(body.find("Stream<Nat>(") == std::string::npos);
}
