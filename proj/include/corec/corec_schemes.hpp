#pragma once

// Seed-driven stream generators.  coiter (an anamorphism) steps a seed
// forever; corec (an apomorphism) may instead hand over a finished stream
// as the entire rest, after which the generator is never consulted again.

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <type_traits>
#include <utility>
#include <variant>

#include "corec/stream.hpp"

namespace corec {

template <class S>
struct Continue {
  S seed;
};
template <class S>
Continue(S) -> Continue<S>;

template <class A>
struct Finish {
  Stream<A> rest;
};
template <class A>
Finish(Stream<A>) -> Finish<A>;

// Result of a corecursive update: Continue keeps generating from a new seed
// (the right injection of the sum), Finish supplies the rest of the stream
// outright (the left injection).
template <class S, class A>
class Step {
 public:
  Step(Continue<S> c) : v_(std::move(c)) {}
  Step(Finish<A> f) : v_(std::move(f)) {}

  bool finished() const noexcept { return std::holds_alternative<Finish<A>>(v_); }
  const S& seed() const { return std::get<Continue<S>>(v_).seed; }
  const Stream<A>& rest() const { return std::get<Finish<A>>(v_).rest; }

 private:
  std::variant<Continue<S>, Finish<A>> v_;
};

namespace detail {

template <class A, class S, class Make, class Update>
class CoiterNode final : public Stream<A>::Node {
 public:
  using Fns = std::pair<Make, Update>;

  CoiterNode(std::shared_ptr<const Fns> fns, S seed) : fns_(std::move(fns)), seed_(std::move(seed)) {}

  A head() const override { return std::invoke(fns_->first, seed_); }
  Stream<A> tail() const override {
    return Stream<A>(std::make_shared<const CoiterNode>(fns_, S(std::invoke(fns_->second, seed_))));
  }

 private:
  std::shared_ptr<const Fns> fns_;
  S seed_;
};

template <class A, class S, class Make, class Update>
class CorecNode final : public Stream<A>::Node {
 public:
  using Fns = std::pair<Make, Update>;

  CorecNode(std::shared_ptr<const Fns> fns, S seed) : fns_(std::move(fns)), seed_(std::move(seed)) {}

  A head() const override { return std::invoke(fns_->first, seed_); }
  Stream<A> tail() const override {
    Step<S, A> step = std::invoke(fns_->second, seed_);
    if (step.finished()) return step.rest();
    return Stream<A>(std::make_shared<const CorecNode>(fns_, step.seed()));
  }

 private:
  std::shared_ptr<const Fns> fns_;
  S seed_;
};

}  // namespace detail

// head = make(seed); tail = coiter(make, update, update(seed)).
template <class Make, class Update, class S>
auto coiter(Make make, Update update, S seed) {
  using A = std::decay_t<std::invoke_result_t<Make&, const S&>>;
  using Node = detail::CoiterNode<A, S, Make, Update>;
  auto fns = std::make_shared<const typename Node::Fns>(std::move(make), std::move(update));
  return Stream<A>(std::make_shared<const Node>(std::move(fns), std::move(seed)));
}

// head = make(seed); tail follows update(seed): a new seed, or the finished rest.
template <class Make, class Update, class S>
auto corec(Make make, Update update, S seed) {
  using A = std::decay_t<std::invoke_result_t<Make&, const S&>>;
  using Node = detail::CorecNode<A, S, Make, Update>;
  auto fns = std::make_shared<const typename Node::Fns>(std::move(make), std::move(update));
  return Stream<A>(std::make_shared<const Node>(std::move(fns), std::move(seed)));
}

// ---------------------------------------------------------------------------
// Encodings of stream_core operations.

template <class F, class A>
auto maps_via_coiter(F f, Stream<A> s) {
  return coiter([f](const Stream<A>& t) { return std::invoke(f, t.head()); },
                [](const Stream<A>& t) { return t.tail(); }, std::move(s));
}

template <class F, class A, class B>
auto zips_via_coiter(F f, Stream<A> sa, Stream<B> sb) {
  using Seed = std::pair<Stream<A>, Stream<B>>;
  return coiter([f](const Seed& st) { return std::invoke(f, st.first.head(), st.second.head()); },
                [](const Seed& st) { return Seed(st.first.tail(), st.second.tail()); },
                Seed(std::move(sa), std::move(sb)));
}

namespace detail {

inline Nat count_down_make(Nat k) { return k; }
inline Nat count_down_coiter_update(Nat k) { return k.is_zero() ? k : *k.unsucc(); }
inline Step<Nat, Nat> count_down_corec_update(Nat k) {
  if (auto p = k.unsucc()) return Continue{*p};
  return Finish{zeroes()};
}

template <class A>
struct ListSuffix {
  std::shared_ptr<const FiniteList<A>> items;
  std::size_t at = 0;
  bool empty() const noexcept { return at == items->size(); }
};

}  // namespace detail

// Keeps inspecting the seed on every tail, even once it has settled at zero.
inline Stream<Nat> count_down_via_coiter(Nat n) {
  return coiter(detail::count_down_make, detail::count_down_coiter_update, n);
}

// Stops generating once zero is reached and hands over zeroes().
inline Stream<Nat> count_down_via_corec(Nat n) {
  return corec(detail::count_down_make, detail::count_down_corec_update, n);
}

template <class A>
Stream<A> append_via_corec(FiniteList<A> xs, Stream<A> ys) {
  using Seed = detail::ListSuffix<A>;
  return corec([ys](const Seed& st) { return st.empty() ? ys.head() : (*st.items)[st.at]; },
               [ys](const Seed& st) -> Step<Seed, A> {
                 if (st.empty()) return Finish{ys.tail()};
                 return Continue{Seed{st.items, st.at + 1}};
               },
               Seed{std::make_shared<const FiniteList<A>>(std::move(xs)), 0});
}

// ---------------------------------------------------------------------------
// Instrumentation.  A generator is described without being built; with_probe
// builds it with counting wrappers around make and update.

template <class Make, class Update, class S>
struct CoiterSpec {
  Make make;
  Update update;
  S seed;
};
template <class Make, class Update, class S>
CoiterSpec(Make, Update, S) -> CoiterSpec<Make, Update, S>;

template <class Make, class Update, class S>
struct CorecSpec {
  Make make;
  Update update;
  S seed;
};
template <class Make, class Update, class S>
CorecSpec(Make, Update, S) -> CorecSpec<Make, Update, S>;

// update_calls counts seed transitions (updates that produced a new seed);
// finish_calls counts the updates that ended corecursion with a finished rest.
class Probe {
 public:
  struct Counters {
    std::atomic<std::uint64_t> make{0};
    std::atomic<std::uint64_t> update{0};
    std::atomic<std::uint64_t> finish{0};
  };

  Probe() : counters_(std::make_shared<Counters>()) {}

  std::uint64_t make_calls() const noexcept { return counters_->make.load(); }
  std::uint64_t update_calls() const noexcept { return counters_->update.load(); }
  std::uint64_t finish_calls() const noexcept { return counters_->finish.load(); }
  std::uint64_t update_invocations() const noexcept { return update_calls() + finish_calls(); }

  const std::shared_ptr<Counters>& counters() const noexcept { return counters_; }

 private:
  std::shared_ptr<Counters> counters_;
};

template <class Make, class Update, class S>
auto build(CoiterSpec<Make, Update, S> spec) {
  return coiter(std::move(spec.make), std::move(spec.update), std::move(spec.seed));
}

template <class Make, class Update, class S>
auto build(CorecSpec<Make, Update, S> spec) {
  return corec(std::move(spec.make), std::move(spec.update), std::move(spec.seed));
}

template <class Make, class Update, class S>
auto with_probe(CoiterSpec<Make, Update, S> spec) {
  Probe probe;
  auto c = probe.counters();
  auto stream = coiter(
      [c, make = std::move(spec.make)](const S& s) {
        c->make.fetch_add(1, std::memory_order_relaxed);
        return std::invoke(make, s);
      },
      [c, update = std::move(spec.update)](const S& s) {
        c->update.fetch_add(1, std::memory_order_relaxed);
        return std::invoke(update, s);
      },
      std::move(spec.seed));
  return std::pair(std::move(stream), probe);
}

template <class Make, class Update, class S>
auto with_probe(CorecSpec<Make, Update, S> spec) {
  Probe probe;
  auto c = probe.counters();
  auto stream = corec(
      [c, make = std::move(spec.make)](const S& s) {
        c->make.fetch_add(1, std::memory_order_relaxed);
        return std::invoke(make, s);
      },
      [c, update = std::move(spec.update)](const S& s) {
        auto step = std::invoke(update, s);
        (step.finished() ? c->finish : c->update).fetch_add(1, std::memory_order_relaxed);
        return step;
      },
      std::move(spec.seed));
  return std::pair(std::move(stream), probe);
}

inline auto count_down_coiter_spec(Nat n) {
  return CoiterSpec{detail::count_down_make, detail::count_down_coiter_update, n};
}

inline auto count_down_corec_spec(Nat n) {
  return CorecSpec{detail::count_down_make, detail::count_down_corec_update, n};
}

}  // namespace corec
