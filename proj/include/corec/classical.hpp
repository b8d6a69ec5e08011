#pragma once

// Classical corecursion without a host call/cc.
//
// An Engine owns one output stream under construction.  It keeps the answer
// committed so far as a persistent journal of output elements plus the
// generator state ("tip") that produced the last of them.  Each tail
// request made by the engine is given a TailCap naming that request: the
// engine id and the journal as the requester saw it.  Invoking a cap with a
// stream rewinds the journal to the cap's prefix and continues from that
// stream, which is what re-entering a captured continuation would do to the
// output.  Caps can be invoked any number of times; the latest invocation
// wins.
//
// Observers only ever see position handles.  Reading position k asks the
// engine to extend its committed answer to length k+1; positions already
// committed are answered without any work, so re-observation always agrees
// with the deepest observation made so far.

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "corec/corec_schemes.hpp"
#include "corec/errors.hpp"
#include "corec/nat.hpp"
#include "corec/stream.hpp"

namespace corec {

inline constexpr std::size_t kUnboundedFuel = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultRepetitionFuel = 1'000'000;

template <class A>
class Engine;

namespace detail {

template <class A>
struct JournalNode {
  A value;
  mutable std::shared_ptr<const JournalNode> prev;
  std::size_t length;

  JournalNode(A v, std::shared_ptr<const JournalNode> p, std::size_t len)
      : value(std::move(v)), prev(std::move(p)), length(len) {}

  // Unlinks long uniquely owned chains iteratively.
  ~JournalNode() {
    auto p = std::move(prev);
    while (p && p.use_count() == 1) {
      auto q = std::move(p->prev);
      p = std::move(q);
    }
  }
};

template <class A>
using Journal = std::shared_ptr<const JournalNode<A>>;

inline std::uint64_t next_engine_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

}  // namespace detail

// A pending tail request.  origin_depth is the number of output elements the
// requester had already received.
template <class A>
class TailCap {
 public:
  std::uint64_t engine_id() const noexcept { return engine_id_; }
  std::size_t origin_depth() const noexcept { return prefix_ ? prefix_->length : 0; }

 private:
  friend class Engine<A>;
  TailCap(std::uint64_t id, detail::Journal<A> prefix) : engine_id_(id), prefix_(std::move(prefix)) {}

  std::uint64_t engine_id_;
  detail::Journal<A> prefix_;
};

// Resume the same classical corecursion from a new seed, delivered at cap.
template <class S, class A>
struct Divert {
  TailCap<A> cap;
  S seed;
};
template <class S, class A>
Divert(TailCap<A>, S) -> Divert<S, A>;

// Deliver an arbitrary stream at cap.
template <class A>
struct DivertTo {
  TailCap<A> cap;
  Stream<A> rest;
};
template <class A>
DivertTo(TailCap<A>, Stream<A>) -> DivertTo<A>;

template <class S, class A>
class UpdateOutcome {
 public:
  UpdateOutcome(Continue<S> c) : v_(std::move(c)) {}
  UpdateOutcome(Divert<S, A> d) : v_(std::move(d)) {}
  UpdateOutcome(DivertTo<A> d) : v_(std::move(d)) {}

  const std::variant<Continue<S>, Divert<S, A>, DivertTo<A>>& get() const noexcept { return v_; }

 private:
  std::variant<Continue<S>, Divert<S, A>, DivertTo<A>> v_;
};

namespace detail {

// Carried by throw_to from the point of invocation back to the engine.
template <class A>
struct Diversion {
  TailCap<A> cap;
  Stream<A> rest;
};

template <class A>
struct Redirect {
  std::optional<TailCap<A>> to;
  Stream<A> next;
};

// Nodes whose tail needs the engine's current cap.
template <class A>
class ClassicalStepper {
 public:
  virtual ~ClassicalStepper() = default;
  virtual Redirect<A> step(const TailCap<A>& here) const = 0;
};

template <class A, class S, class Make, class Update>
class ClassicalCorecNode final : public Stream<A>::Node, public ClassicalStepper<A> {
 public:
  using Fns = std::pair<Make, Update>;

  ClassicalCorecNode(std::shared_ptr<const Fns> fns, S seed) : fns_(std::move(fns)), seed_(std::move(seed)) {}

  A head() const override { return std::invoke(fns_->first, seed_); }

  Stream<A> tail() const override {
    throw std::logic_error("classical corecursion: tail requested outside of its engine");
  }

  Redirect<A> step(const TailCap<A>& here) const override {
    UpdateOutcome<S, A> out = std::invoke(fns_->second, here, seed_);
    return std::visit(
        [this](const auto& o) -> Redirect<A> {
          using O = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<O, Continue<S>>) {
            return {std::nullopt, follow(o.seed)};
          } else if constexpr (std::is_same_v<O, Divert<S, A>>) {
            return {o.cap, follow(o.seed)};
          } else {
            return {o.cap, o.rest};
          }
        },
        out.get());
  }

 private:
  Stream<A> follow(S seed) const { return Stream<A>(std::make_shared<const ClassicalCorecNode>(fns_, std::move(seed))); }

  std::shared_ptr<const Fns> fns_;
  S seed_;
};

}  // namespace detail

template <class A>
class Engine {
 public:
  using Start = std::function<Stream<A>(Engine&, TailCap<A>)>;

  Engine(Start start, std::size_t fuel) : id_(detail::next_engine_id()), fuel_(fuel), start_(std::move(start)) {
    if (fuel_ == 0) throw std::invalid_argument("classical engine: fuel must be positive");
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  std::uint64_t id() const noexcept { return id_; }
  std::size_t fuel() const noexcept { return fuel_; }

  // The cap for the tail request being served right now.
  TailCap<A> capture() const {
    if (!current_) throw std::logic_error("capture: no tail request is being served by this engine");
    return *current_;
  }

  // Delivers rest at cap: the output rewinds to cap.origin_depth() and
  // continues with rest.
  [[noreturn]] void throw_to(const TailCap<A>& cap, Stream<A> rest) const {
    check(cap);
    throw detail::Diversion<A>{cap, std::move(rest)};
  }

  // A classical corecursion whose tails are served by an engine.
  // update: (const TailCap<A>&, const S&) -> UpdateOutcome<S, A>.
  template <class Make, class Update, class S>
  Stream<A> corec(Make make, Update update, S seed) const {
    using Node = detail::ClassicalCorecNode<A, S, Make, Update>;
    auto fns = std::make_shared<const typename Node::Fns>(std::move(make), std::move(update));
    return Stream<A>(std::make_shared<const Node>(std::move(fns), std::move(seed)));
  }

  A at(std::size_t k) {
    std::lock_guard lock(mutex_);
    ensure(k + 1);
    return nodes_[k]->value;
  }

  std::vector<A> committed() const {
    std::lock_guard lock(mutex_);
    std::vector<A> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n->value);
    return out;
  }

  std::size_t committed_depth() const {
    std::lock_guard lock(mutex_);
    return nodes_.size();
  }

 private:
  void check(const TailCap<A>& cap) const {
    if (cap.engine_id() != id_) throw EngineMismatch("classical engine: capability was issued by a different engine");
  }

  detail::Journal<A> journal() const { return nodes_.empty() ? nullptr : nodes_.back(); }

  // Makes the committed answer equal the journal `to`, reusing the shared
  // part of the current one.
  void rewind(detail::Journal<A> to) {
    std::vector<detail::Journal<A>> extra;
    while (to && (to->length > nodes_.size() || nodes_[to->length - 1] != to)) {
      extra.push_back(to);
      to = to->prev;
    }
    nodes_.resize(to ? to->length : 0);
    for (auto it = extra.rbegin(); it != extra.rend(); ++it) nodes_.push_back(std::move(*it));
  }

  void ensure(std::size_t depth) {
    if (nodes_.size() >= depth) return;
    if (stepping_) throw std::logic_error("classical engine: observed from inside its own generator");
    stepping_ = true;
    auto saved_journal = journal();
    auto saved_tip = tip_;
    try {
      std::size_t steps = 0;
      while (nodes_.size() < depth) {
        if (steps++ == fuel_) throw FuelExhausted("classical search: no answer found", fuel_);
        step();
      }
    } catch (...) {
      rewind(saved_journal);
      tip_ = std::move(saved_tip);
      current_.reset();
      stepping_ = false;
      throw;
    }
    stepping_ = false;
  }

  // Answers one tail request (or the initial call) and commits one element.
  void step() {
    TailCap<A> here(id_, journal());
    std::optional<TailCap<A>> to;
    std::optional<Stream<A>> next;
    current_ = here;
    try {
      if (!tip_) {
        next = start_(*this, here);
      } else if (auto* stepper = dynamic_cast<const detail::ClassicalStepper<A>*>(tip_->node().get())) {
        auto r = stepper->step(here);
        to = std::move(r.to);
        next = std::move(r.next);
      } else {
        next = tip_->tail();
      }
    } catch (detail::Diversion<A>& d) {
      if (d.cap.engine_id() != id_) throw;
      to = d.cap;
      next = d.rest;
    }
    current_.reset();
    if (to) {
      check(*to);
      rewind(to->prefix_);
    }
    A x = next->head();
    nodes_.push_back(std::make_shared<const detail::JournalNode<A>>(std::move(x), journal(), nodes_.size() + 1));
    tip_ = std::move(next);
  }

  const std::uint64_t id_;
  const std::size_t fuel_;
  Start start_;

  mutable std::recursive_mutex mutex_;
  // The commit cell: the committed answer (nodes_[k] is the journal of
  // length k+1) and the generator state that produced its last element.
  std::vector<detail::Journal<A>> nodes_;
  std::optional<Stream<A>> tip_;
  std::optional<TailCap<A>> current_;
  bool stepping_ = false;
};

namespace detail {

template <class A>
class PositionNode final : public Stream<A>::Node {
 public:
  PositionNode(std::shared_ptr<Engine<A>> engine, std::size_t k) : engine_(std::move(engine)), k_(k) {}

  A head() const override { return engine_->at(k_); }
  Stream<A> tail() const override { return Stream<A>(std::make_shared<const PositionNode>(engine_, k_ + 1)); }

 private:
  std::shared_ptr<Engine<A>> engine_;
  std::size_t k_;
};

}  // namespace detail

// The output of an engine.  All tails share the engine's commit cell.
template <class A>
class ClassicalStream : public Stream<A> {
 public:
  explicit ClassicalStream(std::shared_ptr<Engine<A>> engine)
      : Stream<A>(std::make_shared<const detail::PositionNode<A>>(engine, 0)), engine_(std::move(engine)) {}

  std::vector<A> committed() const { return engine_->committed(); }
  std::size_t committed_depth() const { return engine_->committed_depth(); }
  const Engine<A>& engine() const noexcept { return *engine_; }

 private:
  std::shared_ptr<Engine<A>> engine_;
};

// start(engine, restart) builds the initial output stream; restart is the
// cap of the very first call, and invoking it replaces the whole output.
template <class A, class Start>
ClassicalStream<A> classical(Start start, std::size_t fuel = kUnboundedFuel) {
  return ClassicalStream<A>(std::make_shared<Engine<A>>(typename Engine<A>::Start(std::move(start)), fuel));
}

// seed_fn(restart) -> S gives the initial seed.
template <class A, class Make, class Update, class SeedFn>
ClassicalStream<A> classical_corec_from(Make make, Update update, SeedFn seed_fn, std::size_t fuel = kUnboundedFuel) {
  return classical<A>(
      [make = std::move(make), update = std::move(update), seed_fn = std::move(seed_fn)](Engine<A>& e,
                                                                                        TailCap<A> restart) {
        return e.corec(make, update, std::invoke(seed_fn, restart));
      },
      fuel);
}

// update: (const TailCap<A>&, const S&) -> UpdateOutcome<S, A>.
template <class Make, class Update, class S>
auto classical_corec(Make make, Update update, S seed, std::size_t fuel = kUnboundedFuel) {
  using A = std::decay_t<std::invoke_result_t<Make&, const S&>>;
  return classical_corec_from<A>(std::move(make), std::move(update), [seed = std::move(seed)](const TailCap<A>&) { return seed; },
                                 fuel);
}

// append written as classical corecursion: once the list is used up the
// tail caller is handed the rest of ys directly.
template <class A>
ClassicalStream<A> classical_append(FiniteList<A> xs, Stream<A> ys) {
  using Seed = detail::ListSuffix<A>;
  return classical_corec([ys](const Seed& st) { return st.empty() ? ys.head() : (*st.items)[st.at]; },
                         [ys](const TailCap<A>& finish, const Seed& st) -> UpdateOutcome<Seed, A> {
                           if (st.empty()) return DivertTo<A>{finish, ys.tail()};
                           return Continue<Seed>{Seed{st.items, st.at + 1}};
                         },
                         Seed{std::make_shared<const FiniteList<A>>(std::move(xs)), 0});
}

// ---------------------------------------------------------------------------
// Searches for a value that repeats: each output element is an index into
// the input, and all indexes committed together point at the same value.

enum class Mode { bit0, bit1 };

// A paused search: what it looks for, where it is in the input, how many
// input elements precede that point, and the cap that switches to the
// other search.
template <class A>
struct Checkpoint {
  Mode mode;
  Stream<A> rest;
  Nat depth;
  TailCap<Nat> switch_to;
};

namespace detail {

inline Mode flip(Mode m) { return m == Mode::bit0 ? Mode::bit1 : Mode::bit0; }

template <class A>
struct BitSearch {
  const Engine<Nat>* engine;
  A bit0;

  bool wanted(Mode m, const A& x) const { return (x == bit0) == (m == Mode::bit0); }

  Stream<Nat> search(Checkpoint<A> cp) const {
    Nat depth = cp.depth;
    return cocase([depth] { return depth; },
                  [self = *this, cp = std::move(cp)]() -> Stream<Nat> {
                    Checkpoint<A> next{cp.mode, cp.rest.tail(), cp.depth.succ(), cp.switch_to};
                    if (self.wanted(cp.mode, cp.rest.head())) return self.search(std::move(next));
                    next.mode = flip(cp.mode);
                    next.switch_to = self.engine->capture();
                    self.engine->throw_to(cp.switch_to, self.search(std::move(next)));
                  });
  }
};

// Outer loop: a plain coiter over checkpoints looking for bit0.  Inner
// loop: a classical corec looking for anything else.  Each hands control to
// the other through the checkpoint's cap.
template <class A>
struct StarSearch {
  const Engine<Nat>* engine;
  A bit0;

  Stream<Nat> outer(Checkpoint<A> cp) const {
    return coiter([](const Checkpoint<A>& c) { return c.depth; },
                  [self = *this](const Checkpoint<A>& c) -> Checkpoint<A> {
                    Checkpoint<A> next{Mode::bit0, c.rest.tail(), c.depth.succ(), c.switch_to};
                    if (c.rest.head() == self.bit0) return next;
                    next.mode = Mode::bit1;
                    next.switch_to = self.engine->capture();
                    self.engine->throw_to(c.switch_to, self.inner(std::move(next)));
                  },
                  std::move(cp));
  }

  Stream<Nat> inner(Checkpoint<A> cp) const {
    return engine->corec([](const Checkpoint<A>& c) { return c.depth; },
                         [self = *this](const TailCap<Nat>& ret, const Checkpoint<A>& c)
                             -> UpdateOutcome<Checkpoint<A>, Nat> {
                           Checkpoint<A> next{Mode::bit1, c.rest.tail(), c.depth.succ(), c.switch_to};
                           if (!(c.rest.head() == self.bit0)) return Continue<Checkpoint<A>>{next};
                           next.mode = Mode::bit0;
                           next.switch_to = ret;
                           return DivertTo<Nat>{c.switch_to, self.outer(std::move(next))};
                         },
                         std::move(cp));
  }
};

// Persistent maps from element values to caps, shared between seeds.
template <class K, class V>
class PersistentMap {
 public:
  static PersistentMap empty() { return PersistentMap(); }

  std::optional<V> find(const K& k) const {
    for (const Node* n = root_.get(); n;) {
      if (k < n->key) {
        n = n->left.get();
      } else if (n->key < k) {
        n = n->right.get();
      } else {
        return n->value;
      }
    }
    return std::nullopt;
  }

  PersistentMap insert(const K& k, const V& v) const { return PersistentMap(insert(root_, k, v)); }

 private:
  struct Node;
  using Ptr = std::shared_ptr<const Node>;
  struct Node {
    K key;
    V value;
    Ptr left, right;
    int height;
  };

  PersistentMap() = default;
  explicit PersistentMap(Ptr root) : root_(std::move(root)) {}

  static int height(const Ptr& n) { return n ? n->height : 0; }

  static Ptr make(const K& k, const V& v, Ptr l, Ptr r) {
    int h = 1 + std::max(height(l), height(r));
    return std::make_shared<const Node>(Node{k, v, std::move(l), std::move(r), h});
  }

  static Ptr rotate_right(const Ptr& n) {
    const Ptr& l = n->left;
    return make(l->key, l->value, l->left, make(n->key, n->value, l->right, n->right));
  }

  static Ptr rotate_left(const Ptr& n) {
    const Ptr& r = n->right;
    return make(r->key, r->value, make(n->key, n->value, n->left, r->left), r->right);
  }

  static Ptr balance(const K& k, const V& v, Ptr l, Ptr r) {
    int bf = height(l) - height(r);
    if (bf > 1) {
      if (height(l->left) < height(l->right)) l = rotate_left(l);
      return rotate_right(make(k, v, std::move(l), std::move(r)));
    }
    if (bf < -1) {
      if (height(r->right) < height(r->left)) r = rotate_right(r);
      return rotate_left(make(k, v, std::move(l), std::move(r)));
    }
    return make(k, v, std::move(l), std::move(r));
  }

  static Ptr insert(const Ptr& n, const K& k, const V& v) {
    if (!n) return make(k, v, nullptr, nullptr);
    if (k < n->key) return balance(n->key, n->value, insert(n->left, k, v), n->right);
    if (n->key < k) return balance(n->key, n->value, n->left, insert(n->right, k, v));
    return make(k, v, n->left, n->right);
  }

  Ptr root_;
};

// For element types with equality only: a shadowing association list.
template <class K, class V>
class PersistentAssoc {
 public:
  static PersistentAssoc empty() { return PersistentAssoc(); }

  std::optional<V> find(const K& k) const {
    for (const Cell* c = head_.get(); c; c = c->next.get())
      if (c->key == k) return c->value;
    return std::nullopt;
  }

  PersistentAssoc insert(const K& k, const V& v) const {
    PersistentAssoc out;
    out.head_ = std::make_shared<const Cell>(k, v, head_);
    return out;
  }

 private:
  struct Cell {
    K key;
    V value;
    mutable std::shared_ptr<const Cell> next;
    Cell(K k, V v, std::shared_ptr<const Cell> n) : key(std::move(k)), value(std::move(v)), next(std::move(n)) {}
    ~Cell() {
      auto p = std::move(next);
      while (p && p.use_count() == 1) {
        auto q = std::move(p->next);
        p = std::move(q);
      }
    }
  };
  std::shared_ptr<const Cell> head_;
};

template <class A>
using CapTable = std::conditional_t<std::totally_ordered<A>, PersistentMap<A, TailCap<Nat>>,
                                    PersistentAssoc<A, TailCap<Nat>>>;

template <class A>
struct RepetitionSeed {
  A x;
  Stream<A> rest;
  Nat depth;
  CapTable<A> paused;  // value -> cap of the search for that value
  TailCap<Nat> restart;
};

}  // namespace detail

// Indexes of whichever of two values (the head, and anything else) is found
// the requested number of times first.  The optional fuel bounds the number
// of steps taken to answer one observation.
template <class A>
ClassicalStream<Nat> infinite_bits(Stream<A> s, std::optional<std::size_t> fuel = std::nullopt) {
  return classical<Nat>(
      [s = std::move(s)](Engine<Nat>& e, TailCap<Nat> restart) {
        detail::BitSearch<A> search{&e, s.head()};
        return search.search(Checkpoint<A>{Mode::bit0, s.tail(), Nat::zero(), std::move(restart)});
      },
      fuel.value_or(kUnboundedFuel));
}

// Same contract, built from one coiter and one classical corec.
template <class A>
ClassicalStream<Nat> infinite_bits_star(Stream<A> s, std::optional<std::size_t> fuel = std::nullopt) {
  return classical<Nat>(
      [s = std::move(s)](Engine<Nat>& e, TailCap<Nat> restart) {
        detail::StarSearch<A> search{&e, s.head()};
        return search.outer(Checkpoint<A>{Mode::bit0, s.tail(), Nat::zero(), std::move(restart)});
      },
      fuel.value_or(kUnboundedFuel));
}

// Any alphabet: one paused search per distinct value seen.  Fails with
// FuelExhausted when an observation needs more than `fuel` input elements.
template <class A>
ClassicalStream<Nat> infinite_repetitions(Stream<A> s, std::size_t fuel = kDefaultRepetitionFuel) {
  using Seed = detail::RepetitionSeed<A>;
  return classical_corec_from<Nat>(
      [](const Seed& st) { return st.depth; },
      [](const TailCap<Nat>& here, const Seed& st) -> UpdateOutcome<Seed, Nat> {
        A next = st.rest.head();
        if (next == st.x) return Continue<Seed>{Seed{st.x, st.rest.tail(), st.depth.succ(), st.paused, st.restart}};
        auto target = st.paused.find(next);
        return Divert<Seed, Nat>{target ? *target : st.restart,
                                 Seed{next, st.rest.tail(), st.depth.succ(), st.paused.insert(st.x, here), st.restart}};
      },
      [s = std::move(s)](const TailCap<Nat>& restart) {
        return Seed{s.head(), s.tail(), Nat::zero(), detail::CapTable<A>::empty(), restart};
      },
      fuel);
}

}  // namespace corec
