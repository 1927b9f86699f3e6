#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>

#include "costsem/comp.hpp"
#include "costsem/cost.hpp"
#include "costsem/util.hpp"

namespace costsem {

// A possibly divergent computation: a chain of delay nodes ending in a value,
// with the cost charged so far kept in a running prefix so that adding cost
// never adds delay nodes. Chains are immutable and suspensions must be pure;
// re-forcing yields identical results, so sharing across threads is safe.
template <typename V>
class Lift {
 public:
  using Thunk = std::function<Lift<V>()>;

  static Lift now(Cost c, V v) {
    return Lift(c, std::make_shared<const Node>(Node{std::move(v)}));
  }
  static Lift later(Thunk t) {
    return Lift(Cost{}, std::make_shared<const Node>(Node{std::move(t)}));
  }

  bool is_now() const { return node_->index() == 0; }
  // cost charged before (and including, for Now nodes) the current node
  Cost pending() const { return pending_; }
  const V& value() const { return std::get<0>(*node_); }

  // one forcing step; the result carries its own pending cost
  Lift force() const { return std::get<1>(*node_)(); }

  friend Lift<V> lift_step(Cost c, Lift<V> e) {
    e.pending_ = c + e.pending_;
    return e;
  }

 private:
  using Node = std::variant<V, Thunk>;
  Lift(Cost pending, std::shared_ptr<const Node> node)
      : pending_(pending), node_(std::move(node)) {}

  Cost pending_;
  std::shared_ptr<const Node> node_;
};

template <typename V>
Lift<std::decay_t<V>> lift_ret(V&& v) {
  return Lift<std::decay_t<V>>::now(Cost{}, std::forward<V>(v));
}

template <typename V>
Lift<V> lift_of_comp(Comp<V> e) {
  return Lift<V>::now(e.cost, std::move(e.value));
}

// Delay nodes of e and of f(e's value) are concatenated; costs add.
template <typename A, typename F>
auto lift_bind(Lift<A> e, F f) -> decltype(f(e.value())) {
  using Result = decltype(f(e.value()));
  if (e.is_now()) {
    return lift_step(e.pending(), f(e.value()));
  }
  Cost carried = e.pending();
  return lift_step(carried,
                   Result::later([e = std::move(e), f = std::move(f)] {
                     return lift_bind(e.force(), f);
                   }));
}

template <typename V>
struct Converged {
  Cost cost;
  V value;

  friend bool operator==(const Converged&, const Converged&) = default;
};

// FuelExhausted is the disengaged state.
template <typename V>
using RunOutcome = std::optional<Converged<V>>;

// Forces at most `fuel` delay nodes. Fuel monotone: a Converged outcome at
// fuel n is identical at every m >= n.
template <typename V>
RunOutcome<V> run(Lift<V> e, Fuel fuel) {
  Cost total{};
  for (;;) {
    total += e.pending();
    if (e.is_now()) return Converged<V>{total, e.value()};
    if (fuel == 0) return std::nullopt;
    --fuel;
    e = e.force();
  }
}

// Like run, but also reports how many delay nodes were forced.
template <typename V>
std::optional<std::pair<Fuel, Converged<V>>> probe(Lift<V> e, Fuel fuel) {
  Cost total{};
  Fuel used = 0;
  for (;;) {
    total += e.pending();
    if (e.is_now())
      return std::pair{used, Converged<V>{total, e.value()}};
    if (fuel == 0) return std::nullopt;
    --fuel;
    ++used;
    e = e.force();
  }
}

// Equality of RunOutcome at every fuel up to `bound` (the decidable stand-in
// for equality of the underlying chains).
template <typename V>
bool observationally_equal(const Lift<V>& a, const Lift<V>& b, Fuel bound) {
  auto pa = probe(a, bound);
  auto pb = probe(b, bound);
  return pa == pb;
}

template <typename B>
struct Done {
  B value;
  friend bool operator==(const Done&, const Done&) = default;
};
template <typename A>
struct Continue {
  A state;
  friend bool operator==(const Continue&, const Continue&) = default;
};
template <typename B, typename A>
using LoopStep = std::variant<Done<B>, Continue<A>>;

// Unbounded iteration of a step function, available only on lifted
// computations. Each unfolding contributes exactly one delay node before
// binding the step, so a loop's fuel requirement equals its unfolding count
// and iter(f)(a) observed at fuel n+1 equals
// lift_bind(f(a), [lift_ret; iter(f)]) observed at fuel n.
template <typename B, typename A, typename F>
Lift<B> iter(F f, A a) {
  return Lift<B>::later([f, a] {
    return lift_bind(f(a), [f](const LoopStep<B, A>& s) -> Lift<B> {
      if (const auto* done = std::get_if<Done<B>>(&s))
        return lift_ret(done->value);
      return iter<B, A>(f, std::get<Continue<A>>(s).state);
    });
  });
}

// The k-step finite prefix of iteration: seq(f, 0)(a) returns Continue(a) at
// cost zero; seq(f, k+1) binds f and recurses on Continue.
template <typename B, typename A, typename F>
Lift<LoopStep<B, A>> seq(F f, Fuel k, A a) {
  if (k == 0) return lift_ret(LoopStep<B, A>{Continue<A>{std::move(a)}});
  return lift_bind(
      f(a), [f, k](const LoopStep<B, A>& s) -> Lift<LoopStep<B, A>> {
        if (std::holds_alternative<Done<B>>(s)) return lift_ret(s);
        return seq<B, A>(f, k - 1, std::get<Continue<A>>(s).state);
      });
}

// Least k <= fuel whose finite prefix realizes the converged (cost, value) of
// the full iteration; absent when the iteration does not converge in budget.
template <typename B, typename A, typename F>
std::optional<Fuel> compactness_witness(F f, A a, Fuel fuel) {
  RunOutcome<B> full = run(iter<B, A>(f, a), fuel);
  if (!full) return std::nullopt;
  for (Fuel k = 0; k <= fuel; ++k) {
    RunOutcome<LoopStep<B, A>> prefix = run(seq<B, A>(f, k, a), fuel);
    if (prefix && prefix->cost == full->cost &&
        prefix->value == LoopStep<B, A>{Done<B>{full->value}})
      return k;
  }
  return std::nullopt;
}

}  // namespace costsem
