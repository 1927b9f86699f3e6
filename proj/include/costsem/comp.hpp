#pragma once

#include <type_traits>
#include <utility>

#include "costsem/cost.hpp"

namespace costsem {

// A total computation in writer normal form: the accumulated cost paired with
// the produced value. step^{c1}(step^{c2}(ret v)) has the single
// representation (c1+c2, v), so the step_0 / step_+ / bind_step equations hold
// definitionally and are regression-tested rather than proved.
template <typename V, CostMonoid C = Cost>
struct Comp {
  C cost{};
  V value;

  friend bool operator==(const Comp&, const Comp&) = default;
};

template <typename V>
Comp<std::decay_t<V>> ret(V&& v) {
  return {Cost{}, std::forward<V>(v)};
}

template <typename V, CostMonoid C>
Comp<V, C> step(C c, Comp<V, C> e) {
  return {c + e.cost, std::move(e.value)};
}

template <typename V, CostMonoid C, typename F>
auto bind(const Comp<V, C>& e, F&& f) -> decltype(f(e.value)) {
  auto rest = f(e.value);
  rest.cost = e.cost + rest.cost;
  return rest;
}

}  // namespace costsem
