// Acceptance suite: one check per shipped guarantee, one printed line each.
// Run via `ctest` or directly; exits nonzero if any criterion fails.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <vector>

#include "costsem/cli.hpp"
#include "costsem/differential.hpp"
#include "costsem/gen.hpp"
#include "costsem/lift.hpp"
#include "costsem/print.hpp"
#include "helpers.hpp"

using namespace costsem;
using namespace costsem::harness;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion
            << ": " << detail << "\n";
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// --------------------------------------------------------- criterion 1

void criterion1() {
  auto start = std::chrono::steady_clock::now();
  GenConfig cfg;
  cfg.seed = 1;
  cfg.max_size = 50;
  cfg.fuel = 1'000'000;
  auto summary = fuzz_campaign(cfg, Language::stlc, Phase::intensional, 10'000);
  double secs = seconds_since(start);
  bool ok = summary.failures.empty() && secs < 60.0;
  report(1, ok,
         "stlc adequacy fuzz, 10000 programs: " +
             std::to_string(summary.failures.size()) + " mismatches, " +
             std::to_string(summary.both_fuel) + " fuel-bound, " +
             std::to_string(secs) + "s");
}

// --------------------------------------------------------- criterion 2

void criterion2() {
  GenConfig cfg;
  cfg.seed = 2;
  cfg.max_size = 40;
  cfg.max_sig = 4;
  cfg.fuel = 100'000;
  std::uint64_t mismatches = 0, diverging = 0, one_sided = 0, matches = 0;
  for (std::uint64_t i = 0; i < 2'000; ++i) {
    auto rng = case_engine(cfg.seed, i);
    ma::CmdPtr m = gen_ma_cmd(rng, {}, {}, ma::ty_bool(), cfg.max_size, cfg.max_sig);
    auto r = differential_ma(m, Phase::intensional, cfg.fuel);
    switch (r.verdict) {
      case Verdict::match:
        ++matches;
        break;
      case Verdict::both_fuel:
        ++diverging;
        // diverging cases must exhaust on both sides
        if (r.operational.status != SideOutcome::Status::fuel ||
            r.denotational.status != SideOutcome::Status::fuel)
          ++one_sided;
        break;
      default:
        ++mismatches;
        break;
    }
  }
  bool ok = mismatches == 0 && one_sided == 0;
  report(2, ok,
         "ma adequacy fuzz, 2000 commands: " + std::to_string(mismatches) +
             " mismatches among " + std::to_string(matches) +
             " converging, " + std::to_string(diverging) +
             " diverging (all two-sided: " + (one_sided == 0 ? "yes" : "NO") +
             ")");
}

// --------------------------------------------------------- criterion 3

void criterion3() {
  bool ok = true;
  std::uint64_t value_mismatches = 0;
  bool numeric_cost_seen = false;

  GenConfig stlc_cfg;
  stlc_cfg.seed = 1;
  stlc_cfg.max_size = 50;
  stlc_cfg.fuel = 1'000'000;
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    auto rng = case_engine(stlc_cfg.seed, i);
    auto e = gen_stlc_term(rng, {}, stlc::ty_bool(), stlc_cfg.max_size);
    auto r = differential_stlc(e, Phase::extensional, stlc_cfg.fuel);
    if (r.verdict == Verdict::value_mismatch) ++value_mismatches;
    if (!r.operational.cost.is_erased() || !r.denotational.cost.is_erased())
      numeric_cost_seen = true;
    if (r.verdict != Verdict::match && r.verdict != Verdict::both_fuel) ok = false;
    if (i == 0 &&
        cli::report_json(r).find("\"cost\":null") == std::string::npos)
      numeric_cost_seen = true;
  }

  GenConfig ma_cfg;
  ma_cfg.seed = 2;
  ma_cfg.max_size = 40;
  ma_cfg.max_sig = 4;
  ma_cfg.fuel = 100'000;
  for (std::uint64_t i = 0; i < 2'000; ++i) {
    auto rng = case_engine(ma_cfg.seed, i);
    auto m = gen_ma_cmd(rng, {}, {}, ma::ty_bool(), ma_cfg.max_size, ma_cfg.max_sig);
    auto r = differential_ma(m, Phase::extensional, ma_cfg.fuel);
    if (r.verdict == Verdict::value_mismatch) ++value_mismatches;
    if (!r.operational.cost.is_erased() || !r.denotational.cost.is_erased())
      numeric_cost_seen = true;
    if (r.verdict != Verdict::match && r.verdict != Verdict::both_fuel) ok = false;
  }

  ok = ok && value_mismatches == 0 && !numeric_cost_seen;
  report(3, ok,
         "extensional rerun of both corpora: " +
             std::to_string(value_mismatches) + " value mismatches, numeric costs " +
             (numeric_cost_seen ? "PRESENT" : "absent"));
}

// --------------------------------------------------------- criterion 4

void criterion4() {
  using namespace costsem::ma;
  struct Row {
    const char* label;
    CmdPtr program;
    Cost expected;  // frozen from the stepper oracle
  };
  const Row rows[] = {
      {"ap", ret(ap(lam(ty_bool(), var(0)), tt())), Cost(1)},
      {"ifz", ret(ifz(zero(), tt(), ff())), Cost(1)},
      {"bnd", bnd(cmd_val(ret(tt())), ret(var(0))), Cost(1)},
      {"get", dcl(tt(), get(0)), Cost(2)},
      {"set", dcl(tt(), set(0, ff())), Cost(2)},
      {"dcl", dcl(tt(), ret(ff())), Cost(1)},
      {"while-false", dcl(ff(), while_(0, ret(triv()))), Cost(2)},
      {"while-iteration",
       dcl(tt(), while_(0, bnd(cmd_val(set(0, ff())), ret(triv())))), Cost(6)},
  };
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    auto op = eval_cmd_op(State{{}, row.program}, 10'000);
    auto den = run(denote_cmd(row.program, {}, ge_refl(), {}, {}), 10'000);
    bool row_ok = op.status == CmdEvalResult::Status::value &&
                  op.cost == row.expected && den.has_value() &&
                  den->cost == op.cost;
    if (!row_ok) ok = false;
    detail += std::string(row.label) + "=" +
              (den ? std::to_string(den->cost.steps()) : std::string("?")) +
              (row_ok ? " " : "(MISMATCH) ");
  }
  report(4, ok, "per-construct cost table: " + detail);
}

// --------------------------------------------------------- criterion 5

void criterion5() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5);
  bool ok = true;
  using U64 = std::uint64_t;

  for (int i = 0; i < 1000 && ok; ++i) {
    Comp<U64> e{Cost(rng() % 50), rng() % 100};
    Cost c1 = Cost(rng() % 20), c2 = Cost(rng() % 20);
    Cost fc = Cost(rng() % 9);
    U64 fk = rng() % 7;
    auto f = [fc, fk](U64 a) { return Comp<U64>{fc, a + fk}; };
    auto g = [c2](U64 a) { return Comp<U64>{c2, a * 2}; };

    ok = ok && step(Cost(0), e) == e;
    ok = ok && step(c1, step(c2, e)) == step(c1 + c2, e);
    ok = ok && bind(step(c1, e), f) == step(c1, bind(e, f));
    ok = ok && bind(ret(e.value), f) == f(e.value);
    ok = ok && bind(e, [](U64 a) { return ret(a); }) == e;
    ok = ok && bind(bind(e, f), g) ==
                   bind(e, [&](U64 a) { return bind(f(a), g); });

    ok = ok && observationally_equal(lift_of_comp(step(c1, e)),
                                     lift_step(c1, lift_of_comp(e)), 8);
    ok = ok && observationally_equal(
                   lift_of_comp(bind(e, f)),
                   lift_bind(lift_of_comp(e),
                             [f](U64 a) { return lift_of_comp(f(a)); }),
                   8);

    // decomposition of converged binds and steps
    auto x = costsem::testing::random_lift(rng);
    auto k = [fc, fk](U64 a) { return lift_step(fc, lift_ret(a + fk)); };
    if (auto whole = run(lift_bind(x, k), 256)) {
      auto left = run(x, 256);
      ok = ok && left.has_value();
      if (left) {
        auto right = run(k(left->value), 256);
        ok = ok && right.has_value() &&
             whole->cost == left->cost + right->cost &&
             whole->value == right->value;
      }
    }
    if (auto stepped = run(lift_step(c1, x), 256)) {
      auto inner = run(x, 256);
      ok = ok && inner && stepped->cost == c1 + inner->cost &&
           stepped->value == inner->value;
    }

    // a stepped return collapses to a return only at cost zero
    Cost c = Cost(rng() % 4);
    U64 a = rng() % 6, a2 = rng() % 6;
    bool collapse =
        observationally_equal(lift_step(c, lift_ret(a)), lift_ret(a2), 8);
    ok = ok && collapse == (c == Cost(0) && a == a2);
  }

  double secs = seconds_since(start);
  ok = ok && secs < 5.0;
  report(5, ok,
         "kernel/lift law suite, 1000 instances each: " +
             std::string(ok ? "all equalities hold" : "FAILED") + ", " +
             std::to_string(secs) + "s");
}

// --------------------------------------------------------- criterion 6

void criterion6() {
  using namespace costsem::testing;
  std::mt19937_64 rng(6);
  bool ok = true;
  const Fuel fuel = 10'000;
  std::uint64_t converged = 0;
  for (int i = 0; i < 1000 && ok; ++i) {
    auto f = random_step_fn(rng);
    State a = rng() % 16;

    // unfolding law at a random budget
    Fuel probe_fuel = rng() % 64;
    auto unfolded = lift_bind(f(a), [f](const Step& s) -> Lift<Result> {
      if (const auto* d = std::get_if<Done<Result>>(&s))
        return lift_ret(d->value);
      return iter<Result, State>(f, std::get<Continue<State>>(s).state);
    });
    ok = ok && run(iter<Result, State>(f, a), probe_fuel + 1) ==
                   run(unfolded, probe_fuel);

    auto full = run(iter<Result, State>(f, a), fuel);
    if (!full) continue;
    ++converged;
    auto witness = compactness_witness<Result, State>(f, a, fuel);
    if (!witness || *witness > fuel) {
      ok = false;
      break;
    }
    auto prefix = run(seq<Result, State>(f, *witness, a), fuel);
    ok = ok && prefix.has_value() && prefix->cost == full->cost &&
         prefix->value == Step{Done<Result>{full->value}};
  }
  report(6, ok,
         "iter unfolding and compactness on 1000 step functions (" +
             std::to_string(converged) + " converged): " +
             (ok ? "witnesses found with exact costs" : "FAILED"));
}

// --------------------------------------------------------- criterion 7

void criterion7() {
  bool ok = true;

  // substitution identity for stlc
  {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 1000 && ok; ++i) {
      stlc::Ctx gamma;
      std::size_t n = rng() % 3;
      for (std::size_t k = 0; k < n; ++k)
        gamma.push_back(gen_stlc_type(rng, 2));
      stlc::TyPtr a = gen_stlc_type(rng, 2);
      stlc::Ctx extended{a};
      extended.insert(extended.end(), gamma.begin(), gamma.end());
      stlc::TmPtr e =
          gen_stlc_term(rng, extended, gen_stlc_type(rng, 2), 12);
      stlc::Sub sigma;
      for (const auto& ty : gamma)
        sigma.push_back(gen_stlc_term(rng, {}, ty, 6));
      stlc::TmPtr arg = gen_stlc_term(rng, {}, a, 6);
      ok = stlc::equal(
          stlc::subst_head(stlc::subst_apply(e, stlc::sub_shift(sigma)), arg),
          stlc::subst_apply(e, stlc::sub_cons(arg, sigma)));
    }
  }

  // substitution identity, weakening composition and commutation for ma
  {
    using namespace costsem::ma;
    std::mt19937_64 rng(72);
    for (int i = 0; i < 1000 && ok; ++i) {
      Sig sig;
      std::size_t cells = rng() % 3;
      for (std::size_t k = 0; k < cells; ++k)
        sig.push_back(static_cast<PosTy>(rng() % 3));
      Ctx gamma;
      std::size_t n = rng() % 3;
      for (std::size_t k = 0; k < n; ++k)
        gamma.push_back(gen_ma_type(rng, 1));
      MaTyPtr a = gen_ma_type(rng, 1);
      Ctx extended{a};
      extended.insert(extended.end(), gamma.begin(), gamma.end());
      Sub sigma;
      for (const auto& ty : gamma)
        sigma.push_back(gen_ma_exp(rng, sig, {}, ty, 6, sig.size()));
      ExpPtr arg = gen_ma_exp(rng, sig, {}, a, 6, sig.size());

      CmdPtr m = gen_ma_cmd(rng, sig, extended, ty_bool(), 12, sig.size() + 1);
      ok = equal(subst_head(subst_cmd(m, sub_shift(sigma)), arg),
                 subst_cmd(m, sub_cons(arg, sigma)));
      if (!ok) break;
      ExpPtr e = gen_ma_exp(rng, sig, extended, gen_ma_type(rng, 1), 12,
                            sig.size());
      ok = equal(subst_head(subst_exp(e, sub_shift(sigma)), arg),
                 subst_exp(e, sub_cons(arg, sigma)));
      if (!ok) break;

      auto q = gen_ge(rng, sig);
      auto p = gen_ge(rng, q.sig);
      CmdPtr open_cmd = gen_ma_cmd(rng, sig, gamma, ty_bool(), 12, sig.size() + 1);
      ok = equal(weaken_cmd(p.proof, weaken_cmd(q.proof, open_cmd)),
                 weaken_cmd(tr(p.proof, q.proof), open_cmd));
      if (!ok) break;
      ok = equal(weaken_cmd(q.proof, subst_cmd(open_cmd, sigma)),
                 subst_cmd(weaken_cmd(q.proof, open_cmd),
                           weaken_sub(q.proof, sigma)));
    }
  }

  report(7, ok,
         std::string("syntax lemma suite (substitution identities, weakening "
                     "composition/commutation), 1000 instances each: ") +
             (ok ? "structural equality holds" : "FAILED"));
}

// --------------------------------------------------------- criterion 8

void criterion8() {
  struct Site {
    StepSite site;
    Language lang;
  };
  const Site sites[] = {
      {StepSite::stlc_ap, Language::stlc},
      {StepSite::ma_ap, Language::ma},
      {StepSite::ma_ifz, Language::ma},
      {StepSite::ma_bnd, Language::ma},
      {StepSite::ma_while_false, Language::ma},
      {StepSite::ma_while_iter, Language::ma},
      {StepSite::ma_dcl, Language::ma},
      {StepSite::ma_get, Language::ma},
      {StepSite::ma_set, Language::ma},
  };
  bool ok = true;
  std::string detail;
  for (const auto& s : sites) {
    GenConfig cfg;
    cfg.seed = s.lang == Language::stlc ? 1 : 2;
    cfg.max_size = s.lang == Language::stlc ? 50 : 40;
    cfg.max_sig = 4;
    cfg.fuel = s.lang == Language::stlc ? 1'000'000 : 100'000;
    Mutation mutation{s.site};
    auto summary = fuzz_campaign(cfg, s.lang, Phase::intensional, 500, mutation);
    std::size_t smallest = SIZE_MAX;
    for (const auto& f : summary.failures)
      smallest = std::min(smallest, f.shrunk_size);
    bool site_ok = !summary.failures.empty() && smallest <= 10;
    if (!site_ok) ok = false;
    detail += std::string(to_string(s.site)) + "=" +
              (summary.failures.empty() ? std::string("none")
                                        : std::to_string(smallest)) +
              (site_ok ? " " : "(FAIL) ");
  }
  report(8, ok, "mutation sensitivity, shrunk sizes: " + detail);
}

// --------------------------------------------------------- criterion 9

void criterion9() {
  std::mt19937_64 rng(9);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    auto e = costsem::testing::random_lift(rng);
    Fuel n = rng() % 64;
    Fuel m = n + rng() % 64;
    auto at_n = run(e, n);
    if (at_n) ok = run(e, m) == at_n;
  }
  report(9, ok,
         std::string("fuel monotonicity on 1000 random lifted computations: ") +
             (ok ? "converged outcomes stable" : "FAILED"));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
