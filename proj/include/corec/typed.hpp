#pragma once

// Four stream kinds distinguished by which observation may fail:
//
//   GeneralStream   head may be Skipped, tail may have Ended
//   EndingStream    head always answers, tail may have Ended
//   SkippingStream  head may be Skipped, tail always answers
//   Stream          neither (the infinite streams of stream.hpp)
//
// Failure is reported in-band through HeadOutcome/TailOutcome.  Each kind's
// tail has the same kind, so the guarantees are inherited by every tail.
// A more refined kind can be embedded into a less refined one; the reverse
// conversion exists only as fast_forward, which needs fuel.

#include <cstddef>
#include <iterator>
#include <memory>
#include <mutex>
#include <optional>
#include <ranges>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "corec/codata.hpp"
#include "corec/corec_schemes.hpp"
#include "corec/errors.hpp"
#include "corec/stream.hpp"

namespace corec {

template <class A>
struct Skipped {
  std::optional<A> value;  // the suppressed element, when there was one
};

template <class A>
class HeadOutcome {
 public:
  HeadOutcome(A x) : v_(std::in_place_index<0>, std::move(x)) {}
  HeadOutcome(Skipped<A> s) : v_(std::in_place_index<1>, std::move(s)) {}

  bool is_value() const noexcept { return v_.index() == 0; }
  bool is_skipped() const noexcept { return v_.index() == 1; }
  const A& value() const { return std::get<0>(v_); }
  const std::optional<A>& skipped_value() const { return std::get<1>(v_).value; }

  friend bool operator==(const HeadOutcome& a, const HeadOutcome& b) {
    if (a.is_value() != b.is_value()) return false;
    return a.is_value() ? a.value() == b.value() : true;
  }

 private:
  std::variant<A, Skipped<A>> v_;
};

struct Ended {};

template <class S>
class TailOutcome {
 public:
  TailOutcome(S next) : next_(std::move(next)) {}
  TailOutcome(Ended) {}

  bool is_ended() const noexcept { return !next_.has_value(); }
  const S& next() const {
    if (!next_) throw std::logic_error("TailOutcome::next: stream has ended");
    return *next_;
  }

 private:
  std::optional<S> next_;
};

template <class A>
class GeneralStream
    : public detail::CodataHandle<GeneralStream<A>, HeadOutcome<A>, TailOutcome<GeneralStream<A>>> {
  using Base = detail::CodataHandle<GeneralStream<A>, HeadOutcome<A>, TailOutcome<GeneralStream<A>>>;

 public:
  using value_type = A;
  using Base::Base;
};

template <class A>
class EndingStream : public detail::CodataHandle<EndingStream<A>, A, TailOutcome<EndingStream<A>>> {
  using Base = detail::CodataHandle<EndingStream<A>, A, TailOutcome<EndingStream<A>>>;

 public:
  using value_type = A;
  using Base::Base;
};

template <class A>
class SkippingStream : public detail::CodataHandle<SkippingStream<A>, HeadOutcome<A>, SkippingStream<A>> {
  using Base = detail::CodataHandle<SkippingStream<A>, HeadOutcome<A>, SkippingStream<A>>;

 public:
  using value_type = A;
  using Base::Base;
};

namespace detail {

template <class H>
struct kind_of;
template <class A>
struct kind_of<Stream<A>> {
  static constexpr bool skips = false, ends = false;
};
template <class A>
struct kind_of<EndingStream<A>> {
  static constexpr bool skips = false, ends = true;
};
template <class A>
struct kind_of<SkippingStream<A>> {
  static constexpr bool skips = true, ends = false;
};
template <class A>
struct kind_of<GeneralStream<A>> {
  static constexpr bool skips = true, ends = true;
};

template <class H>
typename H::head_type lift_head(typename H::value_type x) {
  if constexpr (kind_of<H>::skips) {
    return HeadOutcome<typename H::value_type>(std::move(x));
  } else {
    return x;
  }
}

template <class H>
typename H::tail_type wrap_tail(H h) {
  if constexpr (kind_of<H>::ends) {
    return TailOutcome<H>(std::move(h));
  } else {
    return h;
  }
}

template <class Handle, class HeadFn, class TailFn>
Handle typed_cocase(HeadFn head, TailFn tail) {
  return make_cocase<Handle>(std::move(head), std::move(tail));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Embeddings into wider kinds

template <class A>
EndingStream<A> to_ending(Stream<A> s) {
  return detail::typed_cocase<EndingStream<A>>([s] { return s.head(); },
                                               [s] { return TailOutcome<EndingStream<A>>(to_ending(s.tail())); });
}

template <class A>
EndingStream<A> to_ending(EndingStream<A> s) {
  return s;
}

template <class A>
SkippingStream<A> to_skipping(Stream<A> s) {
  return detail::typed_cocase<SkippingStream<A>>([s] { return HeadOutcome<A>(s.head()); },
                                                 [s] { return to_skipping(s.tail()); });
}

template <class A>
SkippingStream<A> to_skipping(SkippingStream<A> s) {
  return s;
}

template <class A>
GeneralStream<A> to_general(EndingStream<A> s) {
  return detail::typed_cocase<GeneralStream<A>>(
      [s] { return HeadOutcome<A>(s.head()); },
      [s]() -> TailOutcome<GeneralStream<A>> {
        auto t = s.tail();
        if (t.is_ended()) return Ended{};
        return to_general(t.next());
      });
}

template <class A>
GeneralStream<A> to_general(SkippingStream<A> s) {
  return detail::typed_cocase<GeneralStream<A>>([s] { return s.head(); },
                                                [s] { return TailOutcome<GeneralStream<A>>(to_general(s.tail())); });
}

template <class A>
GeneralStream<A> to_general(Stream<A> s) {
  return to_general(to_ending(std::move(s)));
}

template <class A>
GeneralStream<A> to_general(GeneralStream<A> s) {
  return s;
}

// ---------------------------------------------------------------------------
// Small streams

template <class A>
GeneralStream<A> empty() {
  return detail::typed_cocase<GeneralStream<A>>([] { return HeadOutcome<A>(Skipped<A>{}); },
                                                [] { return TailOutcome<GeneralStream<A>>(Ended{}); });
}

template <class A>
EndingStream<A> single(A x) {
  return detail::typed_cocase<EndingStream<A>>([x = std::move(x)] { return x; },
                                               [] { return TailOutcome<EndingStream<A>>(Ended{}); });
}

namespace detail {

template <class A>
class AlwaysSkipsNode final : public SkippingStream<A>::Node,
                              public std::enable_shared_from_this<AlwaysSkipsNode<A>> {
 public:
  HeadOutcome<A> head() const override { return Skipped<A>{}; }
  SkippingStream<A> tail() const override { return SkippingStream<A>(this->shared_from_this()); }
};

}  // namespace detail

template <class A>
SkippingStream<A> always_skips() {
  return SkippingStream<A>(std::make_shared<const detail::AlwaysSkipsNode<A>>());
}

// ---------------------------------------------------------------------------
// Coiteration at every kind.  make may skip where the kind allows it; update
// may end where the kind allows it.

namespace detail {

template <class Handle, class S, class Make, class Update>
class KindCoiterNode final : public Handle::Node {
 public:
  using Fns = std::pair<Make, Update>;

  KindCoiterNode(std::shared_ptr<const Fns> fns, S seed) : fns_(std::move(fns)), seed_(std::move(seed)) {}

  typename Handle::head_type head() const override { return std::invoke(fns_->first, seed_); }

  typename Handle::tail_type tail() const override {
    if constexpr (kind_of<Handle>::ends) {
      TailOutcome<S> next = std::invoke(fns_->second, seed_);
      if (next.is_ended()) return Ended{};
      return TailOutcome<Handle>(follow(next.next()));
    } else {
      return follow(S(std::invoke(fns_->second, seed_)));
    }
  }

 private:
  Handle follow(S seed) const { return Handle(std::make_shared<const KindCoiterNode>(fns_, std::move(seed))); }

  std::shared_ptr<const Fns> fns_;
  S seed_;
};

template <class Handle, class Make, class Update, class S>
Handle kind_coiter(Make make, Update update, S seed) {
  using Node = KindCoiterNode<Handle, S, Make, Update>;
  auto fns = std::make_shared<const typename Node::Fns>(std::move(make), std::move(update));
  return Handle(std::make_shared<const Node>(std::move(fns), std::move(seed)));
}

template <class T>
struct outcome_value;
template <class A>
struct outcome_value<HeadOutcome<A>> {
  using type = A;
};

}  // namespace detail

// make: S -> HeadOutcome<A>, update: S -> TailOutcome<S>.
template <class Make, class Update, class S>
auto stream_coiter(Make make, Update update, S seed) {
  using A = typename detail::outcome_value<std::decay_t<std::invoke_result_t<Make&, const S&>>>::type;
  return detail::kind_coiter<GeneralStream<A>>(std::move(make), std::move(update), std::move(seed));
}

// make: S -> A (total), update: S -> TailOutcome<S>.
template <class Make, class Update, class S>
auto ending_coiter(Make make, Update update, S seed) {
  using A = std::decay_t<std::invoke_result_t<Make&, const S&>>;
  return detail::kind_coiter<EndingStream<A>>(std::move(make), std::move(update), std::move(seed));
}

// make: S -> HeadOutcome<A>, update: S -> S (total).
template <class Make, class Update, class S>
auto skipping_coiter(Make make, Update update, S seed) {
  using A = typename detail::outcome_value<std::decay_t<std::invoke_result_t<Make&, const S&>>>::type;
  return detail::kind_coiter<SkippingStream<A>>(std::move(make), std::move(update), std::move(seed));
}

// An EndingStream over a non-empty list.
template <class A>
EndingStream<A> stream_list(FiniteList<A> items) {
  if (items.empty()) throw std::invalid_argument("stream_list: an ending stream needs at least one element; use empty()");
  auto shared = std::make_shared<const FiniteList<A>>(std::move(items));
  return ending_coiter([shared](std::size_t i) { return (*shared)[i]; },
                       [shared](std::size_t i) -> TailOutcome<std::size_t> {
                         if (i + 1 < shared->size()) return i + 1;
                         return Ended{};
                       },
                       std::size_t{0});
}

// ---------------------------------------------------------------------------
// Corecursion that halts with a remainder.  The remainder has the kind of
// the stream being generated.

template <class R>
struct Halt {
  R remainder;
};
template <class R>
Halt(R) -> Halt<R>;

template <class S, class R>
class HaltOutcome {
 public:
  HaltOutcome(Continue<S> c) : v_(std::move(c)) {}
  HaltOutcome(Halt<R> h) : v_(std::move(h)) {}

  bool halted() const noexcept { return std::holds_alternative<Halt<R>>(v_); }
  const S& seed() const { return std::get<Continue<S>>(v_).seed; }
  const R& remainder() const { return std::get<Halt<R>>(v_).remainder; }

 private:
  std::variant<Continue<S>, Halt<R>> v_;
};

namespace detail {

template <class Handle, class S, class Make, class Update>
class HaltingCorecNode final : public Handle::Node {
 public:
  using Fns = std::pair<Make, Update>;

  HaltingCorecNode(std::shared_ptr<const Fns> fns, S seed) : fns_(std::move(fns)), seed_(std::move(seed)) {}

  typename Handle::head_type head() const override { return std::invoke(fns_->first, seed_); }

  typename Handle::tail_type tail() const override {
    HaltOutcome<S, Handle> next = std::invoke(fns_->second, seed_);
    if (next.halted()) return wrap_tail(next.remainder());
    return wrap_tail(Handle(std::make_shared<const HaltingCorecNode>(fns_, next.seed())));
  }

 private:
  std::shared_ptr<const Fns> fns_;
  S seed_;
};

}  // namespace detail

// Halting corecursor generating a stream of kind Handle.
template <class Handle, class Make, class Update, class S>
Handle halting_corec(Make make, Update update, S seed) {
  using Node = detail::HaltingCorecNode<Handle, S, Make, Update>;
  auto fns = std::make_shared<const typename Node::Fns>(std::move(make), std::move(update));
  return Handle(std::make_shared<const Node>(std::move(fns), std::move(seed)));
}

// make: S -> HeadOutcome<A>, update: S -> HaltOutcome<S, GeneralStream<A>>.
template <class Make, class Update, class S>
auto corec_halting(Make make, Update update, S seed) {
  using A = typename detail::outcome_value<std::decay_t<std::invoke_result_t<Make&, const S&>>>::type;
  return halting_corec<GeneralStream<A>>(std::move(make), std::move(update), std::move(seed));
}

// All of prefix, then suffix.  The prefix generator is dropped the moment it ends.
template <class A, template <class> class Kind>
Kind<A> append_ending(EndingStream<A> prefix, Kind<A> suffix) {
  using Result = Kind<A>;
  using Seed = EndingStream<A>;
  return halting_corec<Result>([](const Seed& pre) { return detail::lift_head<Result>(pre.head()); },
                               [suffix](const Seed& pre) -> HaltOutcome<Seed, Result> {
                                 auto t = pre.tail();
                                 if (t.is_ended()) return Halt<Result>{suffix};
                                 return Continue<Seed>{t.next()};
                               },
                               std::move(prefix));
}

// ---------------------------------------------------------------------------
// Observers that always terminate.

// Up to n elements; comes up short when the stream ends first.
template <class A>
FiniteList<A> takes_ending(const EndingStream<A>& s, std::size_t n) {
  FiniteList<A> out;
  if (n == 0) return out;
  out.reserve(n);
  EndingStream<A> cur = s;
  while (true) {
    out.push_back(cur.head());
    if (out.size() == n) break;
    auto t = cur.tail();
    if (t.is_ended()) break;
    cur = t.next();
  }
  return out;
}

template <class A>
FiniteList<A> takes_ending(const Stream<A>& s, std::size_t n) {
  return takes_ending(to_ending(s), n);
}

// Ended when fewer than n+1 elements remain.
template <class A>
TailOutcome<EndingStream<A>> drops_ending(EndingStream<A> s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    auto t = s.tail();
    if (t.is_ended()) return Ended{};
    s = t.next();
  }
  return s;
}

// The first n positions, skipped ones included; shorter if the stream ends.
template <class A>
std::vector<HeadOutcome<A>> positions(const GeneralStream<A>& s, std::size_t n) {
  std::vector<HeadOutcome<A>> out;
  if (n == 0) return out;
  out.reserve(n);
  GeneralStream<A> cur = s;
  while (true) {
    out.push_back(cur.head());
    if (out.size() == n) break;
    auto t = cur.tail();
    if (t.is_ended()) break;
    cur = t.next();
  }
  return out;
}

template <class A>
std::vector<HeadOutcome<A>> positions(const SkippingStream<A>& s, std::size_t n) {
  std::vector<HeadOutcome<A>> out;
  out.reserve(n);
  SkippingStream<A> cur = s;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(cur.head());
    if (i + 1 < n) cur = cur.tail();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sequential iteration over the elements that are present.  Skipped
// positions are passed over and iteration stops at Ended.  Finding the next
// element can take unboundedly long on a skipping stream; callers bound how
// much they consume.

template <class A>
class ElementRange : public std::ranges::view_interface<ElementRange<A>> {
 public:
  class iterator {
   public:
    using value_type = A;
    using difference_type = std::ptrdiff_t;
    using iterator_concept = std::input_iterator_tag;

    iterator() = default;
    explicit iterator(std::optional<GeneralStream<A>> start) : pos_(std::move(start)) {}

    const A& operator*() const {
      settle();
      return *current_;
    }

    iterator& operator++() {
      settle();
      advance();
      settled_ = false;
      current_.reset();
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      it.settle();
      return !it.pos_.has_value();
    }

   private:
    void advance() const {
      auto t = pos_->tail();
      if (t.is_ended()) {
        pos_.reset();
      } else {
        pos_ = t.next();
      }
    }

    // Moves past skipped positions until an element or the end is found.
    void settle() const {
      if (settled_) return;
      while (pos_) {
        auto h = pos_->head();
        if (h.is_value()) {
          current_ = h.value();
          break;
        }
        advance();
      }
      settled_ = true;
    }

    mutable std::optional<GeneralStream<A>> pos_;
    mutable std::optional<A> current_;
    mutable bool settled_ = false;
  };

  ElementRange() = default;
  explicit ElementRange(GeneralStream<A> s) : start_(std::move(s)) {}

  iterator begin() const { return iterator(start_); }
  std::default_sentinel_t end() const noexcept { return {}; }

 private:
  std::optional<GeneralStream<A>> start_;
};

template <class A>
ElementRange<A> iterate(GeneralStream<A> s) {
  return ElementRange<A>(std::move(s));
}
template <class A>
ElementRange<A> iterate(EndingStream<A> s) {
  return ElementRange<A>(to_general(std::move(s)));
}
template <class A>
ElementRange<A> iterate(SkippingStream<A> s) {
  return ElementRange<A>(to_general(std::move(s)));
}
template <class A>
ElementRange<A> iterate(Stream<A> s) {
  return ElementRange<A>(to_general(std::move(s)));
}

// ---------------------------------------------------------------------------
// Transformers over the refined kinds.

template <class F, class A>
auto maps(F f, EndingStream<A> s) {
  return ending_coiter([f](const EndingStream<A>& t) { return std::invoke(f, t.head()); },
                       [](const EndingStream<A>& t) { return t.tail(); }, std::move(s));
}

template <class F, class A>
auto maps(F f, SkippingStream<A> s) {
  using B = std::decay_t<std::invoke_result_t<F&, const A&>>;
  return skipping_coiter(
      [f](const SkippingStream<A>& t) -> HeadOutcome<B> {
        auto h = t.head();
        if (h.is_skipped()) return Skipped<B>{};
        return std::invoke(f, h.value());
      },
      [](const SkippingStream<A>& t) { return t.tail(); }, std::move(s));
}

// f: A -> HeadOutcome<B>.  Positions skip when the input skips or f does.
template <class F, class A>
auto map_sometimes(GeneralStream<A> s, F f) {
  using Out = std::decay_t<std::invoke_result_t<F&, const A&>>;
  using B = typename detail::outcome_value<Out>::type;
  return stream_coiter(
      [f](const GeneralStream<A>& t) -> HeadOutcome<B> {
        auto h = t.head();
        if (h.is_skipped()) {
          if constexpr (std::is_same_v<A, B>) return Skipped<B>{h.skipped_value()};
          return Skipped<B>{};
        }
        return std::invoke(f, h.value());
      },
      [](const GeneralStream<A>& t) { return t.tail(); }, std::move(s));
}

template <class F, class A>
auto maps(F f, GeneralStream<A> s) {
  using B = std::decay_t<std::invoke_result_t<F&, const A&>>;
  return map_sometimes(std::move(s), [f](const A& x) { return HeadOutcome<B>(std::invoke(f, x)); });
}

// Position n holds Value(x) when the input holds x and check(x) holds, and is
// Skipped otherwise.  Positions are never compressed.
template <class A, class Check>
SkippingStream<A> filters(SkippingStream<A> s, Check check) {
  return skipping_coiter(
      [check](const SkippingStream<A>& t) -> HeadOutcome<A> {
        auto h = t.head();
        if (h.is_skipped()) return h;
        if (std::invoke(check, h.value())) return h;
        return Skipped<A>{h.value()};
      },
      [](const SkippingStream<A>& t) { return t.tail(); }, std::move(s));
}

template <class A, class Check>
SkippingStream<A> filters(Stream<A> s, Check check) {
  return filters(to_skipping(std::move(s)), std::move(check));
}

template <class A, class Check>
GeneralStream<A> filters(GeneralStream<A> s, Check check) {
  return map_sometimes(std::move(s), [check](const A& x) -> HeadOutcome<A> {
    if (std::invoke(check, x)) return x;
    return Skipped<A>{x};
  });
}

template <class A, class Check>
GeneralStream<A> filters(EndingStream<A> s, Check check) {
  return filters(to_general(std::move(s)), std::move(check));
}

// ---------------------------------------------------------------------------
// Fast forwarding: the one way from a skipping stream back to an infinite
// one.  The head scans past skipped positions; the landing point is
// remembered so later observations find it directly.

namespace detail {

template <class A>
class FastForwardNode final : public Stream<A>::Node {
 public:
  FastForwardNode(SkippingStream<A> start, std::size_t fuel) : start_(std::move(start)), fuel_(fuel) {}

  A head() const override { return land().value; }
  Stream<A> tail() const override {
    return Stream<A>(std::make_shared<const FastForwardNode>(land().at.tail(), fuel_));
  }

 private:
  struct Landing {
    SkippingStream<A> at;
    A value;
  };

  const Landing& land() const {
    {
      std::lock_guard lock(mutex_);
      if (landing_) return *landing_;
    }
    auto found = scan();
    std::lock_guard lock(mutex_);
    if (!landing_) landing_.emplace(std::move(found));
    return *landing_;
  }

  Landing scan() const {
    SkippingStream<A> pos = start_;
    for (std::size_t skipped = 0;; ++skipped) {
      auto h = pos.head();
      if (h.is_value()) return Landing{pos, h.value()};
      if (skipped == fuel_) throw FuelExhausted("fast_forward: no element found", fuel_);
      pos = pos.tail();
    }
  }

  SkippingStream<A> start_;
  std::size_t fuel_;
  mutable std::mutex mutex_;
  mutable std::optional<Landing> landing_;
};

}  // namespace detail

// Fails with FuelExhausted if more than `fuel` consecutive positions are skipped.
template <class A>
Stream<A> fast_forward(SkippingStream<A> s, std::size_t fuel) {
  if (fuel == 0) throw std::invalid_argument("fast_forward: fuel must be positive");
  return Stream<A>(std::make_shared<const detail::FastForwardNode<A>>(std::move(s), fuel));
}

template <class A>
Stream<A> fast_forward(Stream<A> s, std::size_t fuel) {
  return fast_forward(to_skipping(std::move(s)), fuel);
}

}  // namespace corec
