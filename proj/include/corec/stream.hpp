#pragma once

// Infinite persistent streams: a stream is a handle that answers head and
// tail, and answers them the same way every time it is asked.  Nothing here
// memoizes; re-observing a stream re-runs its (pure) generator.

#include <cstddef>
#include <functional>
#include <memory>
#include <type_traits>
#include <utility>
#include <vector>

#include "corec/codata.hpp"
#include "corec/nat.hpp"

namespace corec {

template <class A>
class Stream : public detail::CodataHandle<Stream<A>, A, Stream<A>> {
  using Base = detail::CodataHandle<Stream<A>, A, Stream<A>>;

 public:
  using value_type = A;
  using Base::Base;
};

template <class A>
using InfiniteStream = Stream<A>;

template <class A>
using FiniteList = std::vector<A>;

inline constexpr std::size_t kDefaultObservationDepth = 50;

// A stream defined by its two observations, in the style of a copattern match.
template <class HeadFn, class TailFn>
auto cocase(HeadFn head, TailFn tail) {
  using A = std::decay_t<std::invoke_result_t<HeadFn&>>;
  return detail::make_cocase<Stream<A>>(std::move(head), std::move(tail));
}

template <class A>
Stream<A> scons(A x, Stream<A> s) {
  return cocase([x = std::move(x)] { return x; }, [s = std::move(s)] { return s; });
}

namespace detail {

template <class A>
class AlwaysNode final : public Stream<A>::Node, public std::enable_shared_from_this<AlwaysNode<A>> {
 public:
  explicit AlwaysNode(A x) : x_(std::move(x)) {}
  A head() const override { return x_; }
  Stream<A> tail() const override { return Stream<A>(this->shared_from_this()); }

 private:
  A x_;
};

}  // namespace detail

// The tail of always(x) is always(x) itself.
template <class A>
Stream<A> always(A x) {
  return Stream<A>(std::make_shared<const detail::AlwaysNode<A>>(std::move(x)));
}

template <class F, class A>
Stream<A> repeat(F f, A x) {
  return cocase([x] { return x; }, [f, x] { return repeat(f, A(std::invoke(f, x))); });
}

inline const Stream<Nat>& zeroes() {
  static const Stream<Nat> s = always(Nat::zero());
  return s;
}

inline Stream<Nat> count_up(Nat n) {
  return cocase([n] { return n; }, [n] { return count_up(n.succ()); });
}

// n, n-1, ..., 1, 0 and then the shared zeroes stream.
inline Stream<Nat> count_down(Nat n) {
  return cocase([n] { return n; },
                [n] {
                  auto p = n.unsucc();
                  return p ? count_down(*p) : zeroes();
                });
}

// ---------------------------------------------------------------------------
// Observers

template <class A>
Stream<A> drops(Stream<A> s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) s = s.tail();
  return s;
}

template <class A>
A index(const Stream<A>& s, std::size_t n) {
  return drops(s, n).head();
}

// The first n elements.  The deepest requested head is read before the
// others, so a stream whose answers depend on how deep it is observed (see
// classical.hpp) is read in the state that depth commits it to.
template <class A>
FiniteList<A> takes(const Stream<A>& s, std::size_t n) {
  FiniteList<A> out;
  if (n == 0) return out;
  std::vector<Stream<A>> positions;
  positions.reserve(n);
  positions.push_back(s);
  while (positions.size() < n) positions.push_back(positions.back().tail());

  A deepest = positions.back().head();
  out.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(positions[i].head());
  out.push_back(std::move(deepest));
  return out;
}

// Depth-bounded approximation of observational equivalence.
template <class A, class B>
bool agree_to_depth(const Stream<A>& a, const Stream<B>& b, std::size_t depth = kDefaultObservationDepth) {
  return takes(a, depth) == takes(b, depth);
}

// ---------------------------------------------------------------------------
// Transformers

template <class F, class A>
auto maps(F f, Stream<A> s) -> Stream<std::decay_t<std::invoke_result_t<F&, const A&>>> {
  return cocase([f, s] { return std::invoke(f, s.head()); }, [f, s] { return maps(f, s.tail()); });
}

template <class F, class A, class B>
auto zips_with(F f, Stream<A> sa, Stream<B> sb) -> Stream<std::decay_t<std::invoke_result_t<F&, const A&, const B&>>> {
  return cocase([f, sa, sb] { return std::invoke(f, sa.head(), sb.head()); },
                [f, sa, sb] { return zips_with(f, sa.tail(), sb.tail()); });
}

inline constexpr auto make_pair_fn = [](const auto& a, const auto& b) { return std::pair(a, b); };

template <class A, class B>
Stream<std::pair<A, B>> zips(Stream<A> sa, Stream<B> sb) {
  return zips_with(make_pair_fn, std::move(sa), std::move(sb));
}

// Pairs each element with its successor; the same stream is walked twice.
template <class A, class F>
auto by_twos(const Stream<A>& s, F f) {
  return zips_with(std::move(f), s, s.tail());
}

template <class A>
Stream<std::pair<A, A>> by_twos(const Stream<A>& s) {
  return by_twos(s, make_pair_fn);
}

namespace detail {

template <class A>
Stream<A> append_from(std::shared_ptr<const FiniteList<A>> prefix, std::size_t at, Stream<A> rest) {
  return cocase([prefix, at] { return (*prefix)[at]; },
                [prefix, at, rest] { return at + 1 < prefix->size() ? append_from(prefix, at + 1, rest) : rest; });
}

}  // namespace detail

// The prefix in order, then exactly `s`.
template <class A>
Stream<A> append_list(FiniteList<A> prefix, Stream<A> s) {
  if (prefix.empty()) return s;
  return detail::append_from(std::make_shared<const FiniteList<A>>(std::move(prefix)), 0, std::move(s));
}

}  // namespace corec
