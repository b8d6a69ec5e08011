#pragma once

// Natural numbers seen through their zero/succ views, and the three
// structural recursion combinators over them (iteration, case analysis and
// primitive recursion).  Arithmetic is given twice: once by clause-wise
// pattern matching and once encoded through the combinators.

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "corec/errors.hpp"

namespace corec {

class Nat {
 public:
  using rep = std::uint64_t;

  constexpr Nat() noexcept = default;
  constexpr explicit Nat(rep value) noexcept : value_(value) {}

  static constexpr Nat zero() noexcept { return Nat{}; }

  constexpr Nat succ() const {
    if (value_ == std::numeric_limits<rep>::max()) throw RangeError("succ: natural number out of range");
    return Nat{value_ + 1};
  }

  constexpr bool is_zero() const noexcept { return value_ == 0; }

  // The succ view: for succ(n) this is n, for zero there is nothing.
  constexpr std::optional<Nat> unsucc() const noexcept {
    if (value_ == 0) return std::nullopt;
    return Nat{value_ - 1};
  }

  constexpr rep value() const noexcept { return value_; }

  friend constexpr bool operator==(Nat, Nat) noexcept = default;
  friend constexpr auto operator<=>(Nat, Nat) noexcept = default;

  friend std::ostream& operator<<(std::ostream& out, Nat n) { return out << n.value_; }

 private:
  rep value_ = 0;
};

inline constexpr Nat succ(Nat n) { return n.succ(); }

namespace literals {
constexpr Nat operator""_n(unsigned long long v) { return Nat{static_cast<Nat::rep>(v)}; }
}  // namespace literals

// ---------------------------------------------------------------------------
// Combinators.  They only ever look at a number through is_zero/unsucc/succ.

// step applied n times to base.
template <class A, class Step>
A iter(Nat n, A base, Step step) {
  A acc = std::move(base);
  for (auto rest = n.unsucc(); rest; rest = rest->unsucc()) acc = std::invoke(step, std::move(acc));
  return acc;
}

// Shallow case analysis: no recursion happens.
template <class A, class Step>
A case_nat(Nat n, A on_zero, Step on_succ) {
  if (auto pred = n.unsucc()) return std::invoke(on_succ, *pred);
  return on_zero;
}

// Primitive recursion: rec(succ k) = step(k, rec(k)).
template <class A, class Step>
A rec(Nat n, A base, Step step) {
  A acc = std::move(base);
  Nat k = Nat::zero();
  for (auto rest = n.unsucc(); rest; rest = rest->unsucc()) {
    acc = std::invoke(step, k, std::move(acc));
    k = k.succ();
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Arithmetic by direct pattern matching.  Each clause recurses on the
// predecessor, so recursion depth is linear in the recursion argument; plus
// is the representation primitive and uses checked machine addition.

inline Nat plus(Nat m, Nat n) {
  if (n.value() > std::numeric_limits<Nat::rep>::max() - m.value()) throw RangeError("plus: natural number out of range");
  return Nat{m.value() + n.value()};
}

inline Nat times(Nat m, Nat n) {
  if (auto pm = m.unsucc()) return plus(n, times(*pm, n));
  return Nat::zero();
}

inline Nat pred(Nat n) {
  if (auto pn = n.unsucc()) return *pn;
  return Nat::zero();
}

inline Nat fact(Nat n) {
  if (auto pn = n.unsucc()) return times(n, fact(*pn));
  return Nat::zero().succ();
}

inline Nat max(Nat m, Nat n) {
  auto pm = m.unsucc();
  if (!pm) return n;
  auto pn = n.unsucc();
  if (!pn) return m;
  return max(*pm, *pn).succ();
}

// ---------------------------------------------------------------------------
// The same operations encoded through iter/case_nat/rec.

inline Nat plus_iter(Nat m, Nat n) {
  return iter(m, n, [](Nat x) { return x.succ(); });
}

inline Nat times_iter(Nat m, Nat n) {
  return iter(m, Nat::zero(), [n](Nat x) { return plus(n, x); });
}

inline Nat pred_case(Nat n) {
  return case_nat(n, Nat::zero(), [](Nat k) { return k; });
}

inline Nat fact_rec(Nat n) {
  return rec(n, Nat::zero().succ(), [](Nat k, Nat x) { return times(k.succ(), x); });
}

// Higher-order recursion: recursing on m builds the function `max m`, which
// then inspects its own argument by case analysis.
inline std::function<Nat(Nat)> max_rec(Nat m) {
  using Fn = std::function<Nat(Nat)>;
  return rec(m, Fn{[](Nat n) { return n; }}, [](Nat m_pred, Fn f) -> Fn {
    return [m_pred, f = std::move(f)](Nat n) {
      return case_nat(n, m_pred.succ(), [&f](Nat n_pred) { return f(n_pred).succ(); });
    };
  });
}

inline Nat max_rec(Nat m, Nat n) { return max_rec(m)(n); }

}  // namespace corec
