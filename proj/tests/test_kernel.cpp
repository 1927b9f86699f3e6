#include <cstdint>
#include <random>

#include "costsem/comp.hpp"
#include "costsem/cost.hpp"
#include "doctest.h"

using namespace costsem;

namespace {

Cost rnd_cost(std::mt19937_64& rng) { return Cost(rng() % 1000); }

}  // namespace

TEST_CASE("ret produces zero-cost computations") {
  CHECK(ret(true) == Comp<bool>{Cost(0), true});
  CHECK(ret(std::uint64_t{7}) == Comp<std::uint64_t>{Cost(0), 7});
  CHECK(step(Cost(3), ret(false)) != ret(false));
}

TEST_CASE("step examples") {
  Comp<int> e{Cost(5), 42};
  CHECK(step(Cost(0), e) == e);
  CHECK(step(Cost(2), step(Cost(3), Comp<int>{Cost(0), 1})) ==
        Comp<int>{Cost(5), 1});
  CHECK(step(Cost(1), ret(true)) == Comp<bool>{Cost(1), true});
}

TEST_CASE("bind examples") {
  Comp<int> e{Cost(2), 10};
  auto f = [](int a) { return Comp<int>{Cost(3), a * 2}; };
  CHECK(bind(e, f) == Comp<int>{Cost(5), 20});
  CHECK(bind(ret(10), f) == f(10));
}

TEST_CASE("seal") {
  CHECK(seal(Phase::intensional, Cost(4)) == SealedCost::counted(Cost(4)));
  CHECK(seal(Phase::extensional, Cost(4)) == SealedCost::erased());
  CHECK(seal(Phase::extensional, Cost(0)) == seal(Phase::extensional, Cost(99)));
  CHECK(SealedCost::counted(Cost(1)) != SealedCost::erased());
}

TEST_CASE("sealed cost addition is associative and erased absorbs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto pick = [&rng]() {
      return rng() % 4 == 0 ? SealedCost::erased()
                            : SealedCost::counted(Cost(rng() % 100));
    };
    SealedCost a = pick(), b = pick(), c = pick();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + SealedCost::erased() == SealedCost::erased());
    CHECK(SealedCost::erased() + a == SealedCost::erased());
  }
}

TEST_CASE("monad and step laws hold structurally on random computations") {
  std::mt19937_64 rng(7);
  auto mk_fn = [&rng]() {
    Cost c = rnd_cost(rng);
    std::uint64_t k = rng() % 17;
    return [c, k](std::uint64_t a) { return Comp<std::uint64_t>{c, a + k}; };
  };
  for (int i = 0; i < 1000; ++i) {
    Comp<std::uint64_t> e{rnd_cost(rng), rng() % 100};
    auto f = mk_fn();
    auto g = mk_fn();
    Cost c1 = rnd_cost(rng), c2 = rnd_cost(rng);

    // left unit, right unit, associativity
    CHECK(bind(ret(e.value), f) == f(e.value));
    CHECK(bind(e, [](std::uint64_t a) { return ret(a); }) == e);
    CHECK(bind(bind(e, f), g) ==
          bind(e, [&](std::uint64_t a) { return bind(f(a), g); }));

    // step_0, step_+, bind_step
    CHECK(step(Cost(0), e) == e);
    CHECK(step(c1, step(c2, e)) == step(c1 + c2, e));
    CHECK(bind(step(c1, e), f) == step(c1, bind(e, f)));
  }
}

TEST_CASE("step/inj at the representation level") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Comp<std::uint64_t> a{rnd_cost(rng), rng() % 50};
    Comp<std::uint64_t> b{rnd_cost(rng), rng() % 50};
    if (a == b) {
      CHECK(a.cost == b.cost);
      CHECK(a.value == b.value);
    }
    // sealed observation: intensional equality needs equal counts,
    // extensional observation is trivially equal
    if (a.value == b.value && a.cost != b.cost) {
      CHECK(seal(Phase::intensional, a.cost) != seal(Phase::intensional, b.cost));
      CHECK(seal(Phase::extensional, a.cost) == seal(Phase::extensional, b.cost));
    }
  }
}
