#include "costsem/differential.hpp"
#include "costsem/gen.hpp"
#include "doctest.h"

using namespace costsem;
using namespace costsem::harness;

namespace {

stlc::TmPtr id_tt() {
  return stlc::ap(stlc::lam(stlc::ty_bool(), stlc::var(0)), stlc::tt());
}

ma::CmdPtr flip_loop() {
  using namespace costsem::ma;
  return dcl(tt(), while_(0, bnd(cmd_val(set(0, ff())), ret(triv()))));
}

ma::CmdPtr spin_loop() {
  using namespace costsem::ma;
  return dcl(tt(), bnd(cmd_val(while_(0, ret(triv()))), get(0)));
}

}  // namespace

TEST_CASE("differential matches on the identity application") {
  auto r = differential_stlc(id_tt(), Phase::intensional, 1000);
  CHECK(r.verdict == Verdict::match);
  CHECK(r.operational.cost == SealedCost::counted(Cost(1)));
  CHECK(r.denotational.cost == SealedCost::counted(Cost(1)));
  CHECK(r.operational.value == "tt");
}

TEST_CASE("extensional reports erase costs") {
  auto r = differential_stlc(stlc::tt(), Phase::extensional, 1000);
  CHECK(r.verdict == Verdict::match);
  CHECK(r.operational.cost.is_erased());
  CHECK(r.denotational.cost.is_erased());
}

TEST_CASE("dropping the application step is caught as a cost mismatch") {
  Mutation drop{StepSite::stlc_ap};
  auto r = differential_stlc(id_tt(), Phase::intensional, 1000, drop);
  CHECK(r.verdict == Verdict::cost_mismatch);
  // the value component still agrees, the extensional run is untouched
  auto ext = differential_stlc(id_tt(), Phase::extensional, 1000, drop);
  CHECK(ext.verdict == Verdict::match);
}

TEST_CASE("differential on ma commands") {
  auto r0 = differential_ma(ma::ret(ma::tt()), Phase::intensional, 1000);
  CHECK(r0.verdict == Verdict::match);
  CHECK(r0.operational.cost == SealedCost::counted(Cost(0)));
  CHECK(r0.operational.store.has_value());
  CHECK(r0.operational.store->empty());

  // unit-typed but positive: accepted and matching at cost 2
  auto r1 = differential_ma(ma::dcl(ma::ff(), ma::while_(0, ma::ret(ma::triv()))),
                            Phase::intensional, 1000);
  CHECK(r1.verdict == Verdict::match);
  CHECK(r1.operational.cost == SealedCost::counted(Cost(2)));

  auto r2 = differential_ma(flip_loop(), Phase::intensional, 1000);
  CHECK(r2.verdict == Verdict::match);
  CHECK(r2.operational.cost == SealedCost::counted(Cost(6)));
}

TEST_CASE("differential on ma expressions") {
  using namespace costsem::ma;
  auto r = differential_ma_exp(ap(lam(ty_bool(), var(0)), tt()),
                               Phase::intensional, 1000);
  CHECK(r.verdict == Verdict::match);
  CHECK(r.operational.cost == SealedCost::counted(Cost(1)));
  CHECK(!r.operational.store.has_value());

  auto i = differential_ma_exp(ifz(numeral(2), numeral(0), var(0)),
                               Phase::intensional, 1000);
  CHECK(i.verdict == Verdict::match);
  CHECK(i.operational.value == "1");

  Mutation drop{StepSite::ma_ifz};
  auto bad = differential_ma_exp(ifz(zero(), tt(), ff()), Phase::intensional,
                                 1000, drop);
  CHECK(bad.verdict == Verdict::cost_mismatch);
}

TEST_CASE("while-true exhausts both sides at every budget") {
  for (Fuel fuel : {5u, 50u, 500u}) {
    auto r = differential_ma(spin_loop(), Phase::intensional, fuel);
    CHECK(r.verdict == Verdict::both_fuel);
    CHECK(r.operational.status == SideOutcome::Status::fuel);
    CHECK(r.denotational.status == SideOutcome::Status::fuel);
  }
}

TEST_CASE("phase monotonicity on generated programs") {
  GenConfig cfg;
  cfg.seed = 41;
  cfg.max_size = 30;
  cfg.fuel = 100'000;
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = case_engine(cfg.seed, i);
    auto m = gen_ma_cmd(rng, {}, {}, ma::ty_bool(), cfg.max_size, cfg.max_sig);
    auto intensional = differential_ma(m, Phase::intensional, cfg.fuel);
    if (intensional.verdict == Verdict::match) {
      auto extensional = differential_ma(m, Phase::extensional, cfg.fuel);
      CHECK(extensional.verdict == Verdict::match);
      CHECK(extensional.operational.cost.is_erased());
    }
  }
}

TEST_CASE("empty campaign, healthy campaign") {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.max_size = 25;
  cfg.fuel = 100'000;
  auto empty = fuzz_campaign(cfg, Language::stlc, Phase::intensional, 0);
  CHECK(empty.total == 0);
  CHECK(empty.failures.empty());

  auto stlc_run = fuzz_campaign(cfg, Language::stlc, Phase::intensional, 300);
  CHECK(stlc_run.failures.empty());
  CHECK(stlc_run.matches == 300);

  auto ma_run = fuzz_campaign(cfg, Language::ma, Phase::intensional, 300);
  CHECK(ma_run.failures.empty());
  CHECK(ma_run.matches + ma_run.both_fuel == 300);
  CHECK(ma_run.matches > 200);  // most generated programs converge
}

TEST_CASE("mutations produce small shrunk counterexamples") {
  GenConfig cfg;
  cfg.seed = 43;
  cfg.max_size = 40;
  cfg.fuel = 100'000;
  Mutation drop_get{StepSite::ma_get};
  auto summary = fuzz_campaign(cfg, Language::ma, Phase::intensional, 200, drop_get);
  REQUIRE(!summary.failures.empty());
  std::size_t smallest = summary.failures.front().shrunk_size;
  for (const auto& f : summary.failures)
    smallest = std::min(smallest, f.shrunk_size);
  CHECK(smallest <= 10);

  Mutation drop_ap{StepSite::stlc_ap};
  auto stlc_summary =
      fuzz_campaign(cfg, Language::stlc, Phase::intensional, 200, drop_ap);
  REQUIRE(!stlc_summary.failures.empty());
  std::size_t stlc_smallest = stlc_summary.failures.front().shrunk_size;
  for (const auto& f : stlc_summary.failures)
    stlc_smallest = std::min(stlc_smallest, f.shrunk_size);
  CHECK(stlc_smallest <= 10);
}
