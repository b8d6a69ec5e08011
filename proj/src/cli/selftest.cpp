// Quick oracle checks runnable from an installed binary.

#include <functional>
#include <random>
#include <sstream>
#include <utility>

#include "corec/classical.hpp"
#include "corec/cli/app.hpp"
#include "corec/corec_schemes.hpp"
#include "corec/nat.hpp"
#include "corec/race_oracle.hpp"
#include "corec/typed.hpp"

namespace corec::cli {
namespace {

std::vector<Nat> nats(std::initializer_list<Nat::rep> xs) {
  std::vector<Nat> out;
  for (auto x : xs) out.push_back(Nat{x});
  return out;
}

bool bits_goldens() {
  auto input = [] { return append_list<bool>({true, false, false, true, false}, always(true)); };
  bool ok = takes(infinite_bits(input()), 3) == nats({1, 2, 4}) && takes(infinite_bits(input()), 5) == nats({0, 3, 5, 6, 7}) &&
            takes(infinite_bits_star(input()), 3) == nats({1, 2, 4}) &&
            takes(infinite_bits_star(input()), 5) == nats({0, 3, 5, 6, 7});
  auto ix = infinite_bits(input());
  ok = ok && takes(ix, 5) == nats({0, 3, 5, 6, 7}) && takes(ix, 3) == nats({0, 3, 5});
  return ok;
}

bool race_agreement() {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    EventuallyConstant<bool> s{{}, rng() % 2 == 0};
    std::size_t len = rng() % 13;
    for (std::size_t i = 0; i < len; ++i) s.prefix.push_back(rng() % 2 == 0);
    std::size_t n = 1 + rng() % 20;
    auto want = race_oracle(s, n).indexes;
    if (takes(infinite_bits(s.stream()), n) != want) return false;
    if (takes(infinite_bits_star(s.stream()), n) != want) return false;
    if (takes(infinite_repetitions(s.stream()), n) != want) return false;
  }
  return true;
}

bool nat_agreement() {
  for (Nat::rep m = 0; m <= 32; ++m) {
    for (Nat::rep n = 0; n <= 32; ++n) {
      Nat a{m}, b{n};
      if (plus(a, b).value() != m + n || plus_iter(a, b) != plus(a, b)) return false;
      if (times(a, b).value() != m * n || times_iter(a, b) != times(a, b)) return false;
      if (max(a, b).value() != std::max(m, n) || max_rec(a, b) != max(a, b)) return false;
    }
    if (pred_case(Nat{m}) != pred(Nat{m})) return false;
  }
  Nat::rep f = 1;
  for (Nat::rep n = 0; n <= 12; ++n) {
    if (n) f *= n;
    if (fact(Nat{n}).value() != f || fact_rec(Nat{n}).value() != f) return false;
  }
  return true;
}

bool scheme_equivalences() {
  for (Nat::rep n = 0; n < 30; ++n) {
    if (!agree_to_depth(count_down_via_corec(Nat{n}), count_down(Nat{n}))) return false;
    if (!agree_to_depth(count_down_via_coiter(Nat{n}), count_down(Nat{n}))) return false;
    std::vector<Nat> prefix;
    for (Nat::rep i = 0; i < n % 7; ++i) prefix.push_back(Nat{i * n});
    if (!agree_to_depth(append_via_corec(prefix, count_up(Nat{n})), append_list(prefix, count_up(Nat{n})))) return false;
    if (!agree_to_depth(classical_append(prefix, count_up(Nat{n})), append_list(prefix, count_up(Nat{n})))) return false;
  }
  return true;
}

bool probe_counts() {
  auto [via_corec, corec_probe] = with_probe(count_down_corec_spec(Nat{3}));
  index(via_corec, 20);
  auto [via_coiter, coiter_probe] = with_probe(count_down_coiter_spec(Nat{3}));
  index(via_coiter, 20);
  return corec_probe.update_calls() == 3 && corec_probe.finish_calls() == 1 && coiter_probe.update_calls() == 20;
}

bool typed_examples() {
  if (takes_ending(stream_list<int>({1, 2}), 5) != std::vector<int>{1, 2}) return false;
  try {
    fast_forward(always_skips<int>(), 1000).head();
    return false;
  } catch (const FuelExhausted&) {
  }
  return agree_to_depth(append_ending(stream_list(nats({3, 2, 1})), always(Nat::zero())), count_down(Nat{3}), 20);
}

bool pipeline_round_trip() {
  const char* texts[] = {
      "count-down 3 | take 6",
      "append [3, 2, 1] (always 0) | take 6",
      "append [#t, #f, #f, #t, #f] (always #t) | infinite-bits | take 3",
      "count-up 0 | filter even | fast-forward | map square | take 4",
      "stream-list [1, 2] | map succ | collect",
  };
  for (const char* t : texts) {
    auto e = parse_pipeline(t);
    if (!(parse_pipeline(to_string(e)) == e)) return false;
  }
  std::ostringstream out, err;
  Options o;
  o.format = Format::list;
  eval_command(texts[2], o, out, err);
  return out.str() == "[1, 2, 4]\n";
}

}  // namespace

int selftest(std::ostream& out) {
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"infinite-bits goldens", bits_goldens},
      {"searches agree with race oracle", race_agreement},
      {"natural-number encodings agree", nat_agreement},
      {"coiter/corec encodings agree", scheme_equivalences},
      {"count-down update probe", probe_counts},
      {"typed stream examples", typed_examples},
      {"pipeline round trip", pipeline_round_trip},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = check();
    if (!ok) ++failed;
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
  }
  out << (std::size(checks) - failed) << "/" << std::size(checks) << " checks passed\n";
  return failed == 0 ? exit_code::ok : exit_code::runtime;
}

}  // namespace corec::cli
