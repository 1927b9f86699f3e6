#pragma once

// Shared randomized-test machinery for the kernel/lift law suites. Everything
// is deterministic in the supplied engine.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "costsem/lift.hpp"

namespace costsem::testing {

using State = std::uint64_t;
using Result = std::uint64_t;
using Step = LoopStep<Result, State>;
using StepFn = std::function<Lift<Step>(State)>;

// A random finite-state step function: every state either finishes with a
// value or moves on, charging a small cost and possibly some delay nodes.
// States are drawn from a small table so iteration either terminates quickly
// or provably cycles forever.
struct FiniteStateFn {
  struct Row {
    Cost cost;
    unsigned delays = 0;
    bool done = false;
    Result value = 0;   // when done
    State next = 0;     // when not done
  };
  std::shared_ptr<std::vector<Row>> rows;

  Lift<Step> operator()(State s) const {
    const Row& row = (*rows)[s % rows->size()];
    Lift<Step> out = row.done
                         ? lift_ret(Step{Done<Result>{row.value}})
                         : lift_ret(Step{Continue<State>{row.next}});
    out = lift_step(row.cost, out);
    for (unsigned i = 0; i < row.delays; ++i) {
      auto inner = out;
      out = Lift<Step>::later([inner] { return inner; });
    }
    return out;
  }
};

inline FiniteStateFn random_step_fn(std::mt19937_64& rng) {
  auto rows = std::make_shared<std::vector<FiniteStateFn::Row>>();
  std::size_t n = 1 + rng() % 8;
  for (std::size_t i = 0; i < n; ++i) {
    FiniteStateFn::Row row;
    row.cost = Cost(rng() % 5);
    row.delays = rng() % 3;
    row.done = rng() % 3 == 0;
    if (row.done)
      row.value = rng() % 100;
    else
      row.next = rng() % n;
    rows->push_back(row);
  }
  return FiniteStateFn{rows};
}

// A random lifted computation assembled from the public combinators.
inline Lift<std::uint64_t> random_lift(std::mt19937_64& rng, unsigned depth = 3) {
  switch (depth == 0 ? rng() % 3 : rng() % 6) {
    case 0:
      return lift_ret(rng() % 100);
    case 1:
      return lift_of_comp(Comp<std::uint64_t>{Cost(rng() % 10), rng() % 100});
    case 2: {
      auto inner = lift_of_comp(Comp<std::uint64_t>{Cost(rng() % 10), rng() % 100});
      return Lift<std::uint64_t>::later([inner] { return inner; });
    }
    case 3:
      return lift_step(Cost(rng() % 10), random_lift(rng, depth - 1));
    case 4: {
      auto lhs = random_lift(rng, depth - 1);
      Cost c = Cost(rng() % 5);
      std::uint64_t k = rng() % 10;
      return lift_bind(lhs, [c, k](std::uint64_t a) {
        return lift_step(c, lift_ret(a + k));
      });
    }
    default: {
      auto f = random_step_fn(rng);
      State s = rng() % 16;
      return lift_bind(iter<Result, State>(f, s), [](Result r) {
        return lift_ret(r);
      });
    }
  }
}

}  // namespace costsem::testing
