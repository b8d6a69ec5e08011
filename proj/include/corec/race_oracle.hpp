#pragma once

// Brute-force reference for the repetition searches on eventually constant
// inputs, where occurrence counts are decidable.

#include <cstddef>
#include <utility>
#include <vector>

#include "corec/nat.hpp"
#include "corec/stream.hpp"

namespace corec {

template <class A>
struct EventuallyConstant {
  FiniteList<A> prefix;
  A tail;

  A at(std::size_t i) const { return i < prefix.size() ? prefix[i] : tail; }
  Stream<A> stream() const { return append_list(prefix, always(tail)); }
};

template <class A>
struct RaceResult {
  A value;
  std::vector<Nat> indexes;
};

// Scans left to right keeping each value's occurrence list; the first list
// to reach length n wins.
template <class A>
RaceResult<A> race_oracle(const EventuallyConstant<A>& s, std::size_t n) {
  if (n == 0) return {s.at(0), {}};
  std::vector<std::pair<A, std::vector<Nat>>> seen;
  for (std::size_t i = 0;; ++i) {
    A x = s.at(i);
    auto it = seen.begin();
    while (it != seen.end() && !(it->first == x)) ++it;
    if (it == seen.end()) it = seen.insert(seen.end(), {x, {}});
    it->second.push_back(Nat{i});
    if (it->second.size() == n) return {it->first, it->second};
  }
}

}  // namespace corec
