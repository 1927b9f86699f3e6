#include "costsem/differential.hpp"

#include <stdexcept>

#include "costsem/budget.hpp"
#include "costsem/print.hpp"

namespace costsem::harness {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::cost_mismatch: return "cost-mismatch";
    case Verdict::value_mismatch: return "value-mismatch";
    case Verdict::store_mismatch: return "store-mismatch";
    case Verdict::both_fuel: return "both-fuel";
  }
  return "?";
}

namespace {

// Mixed convergence: when the converged side predicts a cost beyond the fuel
// budget the run is vacuous, otherwise the cost observations genuinely
// disagree.
Verdict mixed_verdict(Cost converged_cost, Fuel fuel) {
  return converged_cost.steps() > fuel ? Verdict::both_fuel
                                       : Verdict::cost_mismatch;
}

bool stlc_value_matches(const stlc::TmPtr& op_value, const stlc::SemVal& den_value) {
  if (!den_value.is_bool()) return false;
  if (std::holds_alternative<stlc::Tm::TT>(op_value->node))
    return den_value.as_bool();
  if (std::holds_alternative<stlc::Tm::FF>(op_value->node))
    return !den_value.as_bool();
  return false;
}

bool ma_value_matches(const ma::ExpPtr& op_value, const ma::SemVal& den_value) {
  if (den_value.is_unit())
    return std::holds_alternative<ma::Exp::Triv>(op_value->node);
  if (den_value.is_bool()) {
    if (std::holds_alternative<ma::Exp::TT>(op_value->node))
      return den_value.as_bool();
    if (std::holds_alternative<ma::Exp::FF>(op_value->node))
      return !den_value.as_bool();
    return false;
  }
  if (den_value.is_nat()) {
    auto n = ma::numeral_value(op_value);
    return n && *n == den_value.as_nat();
  }
  return false;
}

bool ma_store_matches(const ma::Store& op_store, const ma::SemStore& den_store) {
  if (op_store.size() != den_store.size()) return false;
  for (std::size_t i = 0; i < op_store.size(); ++i)
    if (!ma_value_matches(op_store[i], den_store[i])) return false;
  return true;
}

std::vector<std::string> printed_store(const ma::Store& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const auto& cell : s) out.push_back(print::exp(cell));
  return out;
}

std::vector<std::string> printed_store(const ma::SemStore& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const auto& cell : s) out.push_back(print::sem_value(cell));
  return out;
}

}  // namespace

AdequacyReport differential_stlc(const stlc::TmPtr& e, Phase phase, Fuel fuel,
                                 const Mutation& mutation) {
  AdequacyReport r;
  r.program = print::term(e);
  r.phase = phase;

  stlc::EvalResult op = stlc::eval_op(e, fuel);
  if (op.status == stlc::EvalResult::Status::stuck)
    throw std::logic_error("differential_stlc: stuck term (ill-typed input?)");
  bool op_ok = op.status == stlc::EvalResult::Status::value;

  std::optional<Comp<stlc::SemVal>> den;
  Budget budget{fuel};
  try {
    den = stlc::denote(e, {}, mutation, &budget);
  } catch (const BudgetExhausted&) {
  }

  if (op_ok) {
    r.operational.status = SideOutcome::Status::value;
    r.operational.cost = seal(phase, op.cost);
    r.operational.value = print::term(op.value);
  }
  if (den) {
    r.denotational.status = SideOutcome::Status::value;
    r.denotational.cost = seal(phase, den->cost);
    r.denotational.value = print::sem_value(den->value);
  }

  if (op_ok && den) {
    if (!stlc_value_matches(op.value, den->value))
      r.verdict = Verdict::value_mismatch;
    else if (seal(phase, op.cost) != seal(phase, den->cost))
      r.verdict = Verdict::cost_mismatch;
    else
      r.verdict = Verdict::match;
  } else if (!op_ok && !den) {
    r.verdict = Verdict::both_fuel;
  } else if (!op_ok) {
    r.verdict = mixed_verdict(den->cost, fuel);
  } else {
    r.verdict = Verdict::cost_mismatch;
  }
  return r;
}

AdequacyReport differential_ma(const ma::CmdPtr& m, Phase phase, Fuel fuel,
                               const Mutation& mutation) {
  AdequacyReport r;
  r.program = print::cmd(m);
  r.phase = phase;

  ma::CmdEvalResult op = eval_cmd_op(ma::State{{}, m}, fuel);
  if (op.status == ma::CmdEvalResult::Status::stuck)
    throw std::logic_error("differential_ma: stuck command (ill-typed input?)");
  bool op_ok = op.status == ma::CmdEvalResult::Status::value;

  RunOutcome<std::pair<ma::SemVal, ma::SemStore>> den;
  Budget budget{fuel};
  try {
    den = run(ma::denote_cmd(m, {}, ma::ge_refl(), {}, {}, mutation, &budget),
              fuel);
  } catch (const BudgetExhausted&) {
  }

  if (op_ok) {
    r.operational.status = SideOutcome::Status::value;
    r.operational.cost = seal(phase, op.cost);
    r.operational.value = print::exp(op.value);
    r.operational.store = printed_store(op.store);
  }
  if (den) {
    r.denotational.status = SideOutcome::Status::value;
    r.denotational.cost = seal(phase, den->cost);
    r.denotational.value = print::sem_value(den->value.first);
    r.denotational.store = printed_store(den->value.second);
  }

  if (op_ok && den) {
    if (!ma_value_matches(op.value, den->value.first))
      r.verdict = Verdict::value_mismatch;
    else if (!ma_store_matches(op.store, den->value.second))
      r.verdict = Verdict::store_mismatch;
    else if (seal(phase, op.cost) != seal(phase, den->cost))
      r.verdict = Verdict::cost_mismatch;
    else
      r.verdict = Verdict::match;
  } else if (!op_ok && !den) {
    r.verdict = Verdict::both_fuel;
  } else if (!op_ok) {
    r.verdict = mixed_verdict(den->cost, fuel);
  } else {
    r.verdict = Verdict::cost_mismatch;
  }
  return r;
}

AdequacyReport differential_ma_exp(const ma::ExpPtr& e, Phase phase, Fuel fuel,
                                   const Mutation& mutation) {
  AdequacyReport r;
  r.program = print::exp(e);
  r.phase = phase;

  ma::ExpEvalResult op = ma::eval_exp_op(e, fuel);
  if (op.status == ma::ExpEvalResult::Status::stuck)
    throw std::logic_error("differential_ma_exp: stuck expression");
  bool op_ok = op.status == ma::ExpEvalResult::Status::value;

  std::optional<Comp<ma::SemVal>> den;
  Budget budget{fuel};
  try {
    den = ma::denote_exp(e, {}, ma::ge_refl(), {}, mutation, &budget);
  } catch (const BudgetExhausted&) {
  }

  if (op_ok) {
    r.operational.status = SideOutcome::Status::value;
    r.operational.cost = seal(phase, op.cost);
    r.operational.value = print::exp(op.value);
  }
  if (den) {
    r.denotational.status = SideOutcome::Status::value;
    r.denotational.cost = seal(phase, den->cost);
    r.denotational.value = print::sem_value(den->value);
  }

  if (op_ok && den) {
    if (!ma_value_matches(op.value, den->value))
      r.verdict = Verdict::value_mismatch;
    else if (seal(phase, op.cost) != seal(phase, den->cost))
      r.verdict = Verdict::cost_mismatch;
    else
      r.verdict = Verdict::match;
  } else if (!op_ok && !den) {
    r.verdict = Verdict::both_fuel;
  } else if (!op_ok) {
    r.verdict = mixed_verdict(den->cost, fuel);
  } else {
    r.verdict = Verdict::cost_mismatch;
  }
  return r;
}

// ---------------------------------------------------------------- shrinking

namespace {

using Rebuild = std::function<stlc::TmPtr(const stlc::TmPtr&)>;

void stlc_shrink_candidates(const stlc::TmPtr& e, const stlc::Ctx& ctx,
                            const Rebuild& rebuild, std::vector<stlc::TmPtr>& out) {
  using namespace costsem::stlc;
  if (auto ty = check(ctx, e)) {
    TmPtr small = minimal_stlc(*ty);
    if (size(small) < size(e)) out.push_back(rebuild(small));
  }
  std::visit(
      overloaded{
          [&](const Tm::Lam& l) {
            if (!l.ann) return;
            Ctx extended{*l.ann};
            extended.insert(extended.end(), ctx.begin(), ctx.end());
            stlc_shrink_candidates(
                l.body, extended,
                [&, ann = *l.ann](const TmPtr& b) { return rebuild(lam(ann, b)); },
                out);
          },
          [&](const Tm::Ap& a) {
            stlc_shrink_candidates(
                a.fn, ctx,
                [&](const TmPtr& f) { return rebuild(ap(f, a.arg)); }, out);
            stlc_shrink_candidates(
                a.arg, ctx,
                [&](const TmPtr& x) { return rebuild(ap(a.fn, x)); }, out);
          },
          [](const auto&) {},
      },
      e->node);
}

struct MaScope {
  ma::Sig sig;
  ma::Ctx ctx;
};

using RebuildExp = std::function<ma::CmdPtr(const ma::ExpPtr&)>;
using RebuildCmd = std::function<ma::CmdPtr(const ma::CmdPtr&)>;

void ma_exp_candidates(const ma::ExpPtr& e, const MaScope& sc,
                       const RebuildExp& rebuild, std::vector<ma::CmdPtr>& out);

void ma_cmd_candidates(const ma::CmdPtr& m, const MaScope& sc,
                       const RebuildCmd& rebuild, std::vector<ma::CmdPtr>& out) {
  using namespace costsem::ma;
  if (auto ty = check_cmd(sc.sig, sc.ctx, m)) {
    CmdPtr small = minimal_ma_cmd(*ty);
    if (size(small) < size(m)) out.push_back(rebuild(small));
  }
  std::visit(
      overloaded{
          [&](const Cmd::Ret& r) {
            ma_exp_candidates(
                r.value, sc, [&](const ExpPtr& v) { return rebuild(ret(v)); },
                out);
          },
          [&](const Cmd::Bnd& b) {
            ma_exp_candidates(
                b.subject, sc,
                [&](const ExpPtr& s) { return rebuild(bnd(s, b.body)); }, out);
            auto subject_ty = check_exp(sc.sig, sc.ctx, b.subject);
            if (!subject_ty) return;
            const auto* c = std::get_if<MaTy::CmdT>(&(*subject_ty)->node);
            if (!c) return;
            MaScope inner = sc;
            inner.ctx.insert(inner.ctx.begin(), c->result);
            ma_cmd_candidates(
                b.body, inner,
                [&](const CmdPtr& k) { return rebuild(bnd(b.subject, k)); }, out);
          },
          [&](const Cmd::While& w) {
            ma_cmd_candidates(
                w.body, sc,
                [&](const CmdPtr& k) { return rebuild(while_(w.cell, k)); }, out);
          },
          [&](const Cmd::Get&) {},
          [&](const Cmd::Set& s) {
            ma_exp_candidates(
                s.value, sc,
                [&](const ExpPtr& v) { return rebuild(set(s.cell, v)); }, out);
          },
          [&](const Cmd::Dcl& d) {
            ma_exp_candidates(
                d.init, sc,
                [&](const ExpPtr& v) { return rebuild(dcl(v, d.body)); }, out);
            auto init_ty = check_exp(sc.sig, sc.ctx, d.init);
            if (!init_ty) return;
            auto pos = as_positive(*init_ty);
            if (!pos) return;
            MaScope inner = sc;
            inner.sig.insert(inner.sig.begin(), *pos);
            ma_cmd_candidates(
                d.body, inner,
                [&](const CmdPtr& k) { return rebuild(dcl(d.init, k)); }, out);
          },
      },
      m->node);
}

void ma_exp_candidates(const ma::ExpPtr& e, const MaScope& sc,
                       const RebuildExp& rebuild, std::vector<ma::CmdPtr>& out) {
  using namespace costsem::ma;
  if (auto ty = check_exp(sc.sig, sc.ctx, e)) {
    ExpPtr small = minimal_ma_exp(*ty);
    if (size(small) < size(e)) out.push_back(rebuild(small));
  }
  std::visit(
      overloaded{
          [&](const Exp::Suc& s) {
            ma_exp_candidates(
                s.arg, sc, [&](const ExpPtr& v) { return rebuild(suc(v)); }, out);
          },
          [&](const Exp::Ifz& i) {
            ma_exp_candidates(
                i.scrutinee, sc,
                [&](const ExpPtr& v) { return rebuild(ifz(v, i.zero_case, i.suc_case)); },
                out);
            ma_exp_candidates(
                i.zero_case, sc,
                [&](const ExpPtr& v) { return rebuild(ifz(i.scrutinee, v, i.suc_case)); },
                out);
            MaScope inner = sc;
            inner.ctx.insert(inner.ctx.begin(), ty_nat());
            ma_exp_candidates(
                i.suc_case, inner,
                [&](const ExpPtr& v) { return rebuild(ifz(i.scrutinee, i.zero_case, v)); },
                out);
          },
          [&](const Exp::Lam& l) {
            if (!l.ann) return;
            MaScope inner = sc;
            inner.ctx.insert(inner.ctx.begin(), *l.ann);
            ma_exp_candidates(
                l.body, inner,
                [&, ann = *l.ann](const ExpPtr& b) { return rebuild(lam(ann, b)); },
                out);
          },
          [&](const Exp::Ap& a) {
            ma_exp_candidates(
                a.fn, sc, [&](const ExpPtr& f) { return rebuild(ap(f, a.arg)); },
                out);
            ma_exp_candidates(
                a.arg, sc, [&](const ExpPtr& x) { return rebuild(ap(a.fn, x)); },
                out);
          },
          [&](const Exp::CmdVal& c) {
            ma_cmd_candidates(
                c.cmd, sc, [&](const ma::CmdPtr& k) { return rebuild(cmd_val(k)); },
                out);
          },
          [](const auto&) {},
      },
      e->node);
}

}  // namespace

stlc::TmPtr shrink_stlc(const stlc::TmPtr& program,
                        const std::function<bool(const stlc::TmPtr&)>& fails) {
  stlc::TmPtr cur = program;
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<stlc::TmPtr> candidates;
    stlc_shrink_candidates(cur, {}, [](const stlc::TmPtr& t) { return t; },
                           candidates);
    for (const auto& candidate : candidates) {
      if (stlc::size(candidate) < stlc::size(cur) && fails(candidate)) {
        cur = candidate;
        improved = true;
        break;
      }
    }
  }
  return cur;
}

ma::CmdPtr shrink_ma(const ma::CmdPtr& program,
                     const std::function<bool(const ma::CmdPtr&)>& fails) {
  ma::CmdPtr cur = program;
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<ma::CmdPtr> candidates;
    ma_cmd_candidates(cur, MaScope{}, [](const ma::CmdPtr& m) { return m; },
                      candidates);
    for (const auto& candidate : candidates) {
      if (ma::size(candidate) < ma::size(cur) && fails(candidate)) {
        cur = candidate;
        improved = true;
        break;
      }
    }
  }
  return cur;
}

// ---------------------------------------------------------------- campaign

CampaignSummary fuzz_campaign(const GenConfig& cfg, Language lang, Phase phase,
                              std::uint64_t count, const Mutation& mutation) {
  CampaignSummary summary;
  summary.total = count;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto rng = case_engine(cfg.seed, i);
    if (lang == Language::stlc) {
      stlc::TmPtr program =
          gen_stlc_term(rng, {}, stlc::ty_bool(), cfg.max_size);
      AdequacyReport report = differential_stlc(program, phase, cfg.fuel, mutation);
      if (report.verdict == Verdict::match) {
        ++summary.matches;
      } else if (report.verdict == Verdict::both_fuel) {
        ++summary.both_fuel;
      } else {
        auto fails = [&](const stlc::TmPtr& t) {
          Verdict v = differential_stlc(t, phase, cfg.fuel, mutation).verdict;
          return v != Verdict::match && v != Verdict::both_fuel;
        };
        stlc::TmPtr small = shrink_stlc(program, fails);
        summary.failures.push_back(
            {i, report, print::term(small), stlc::size(small)});
      }
    } else {
      ma::CmdPtr program =
          gen_ma_cmd(rng, {}, {}, ma::ty_bool(), cfg.max_size, cfg.max_sig);
      AdequacyReport report = differential_ma(program, phase, cfg.fuel, mutation);
      if (report.verdict == Verdict::match) {
        ++summary.matches;
      } else if (report.verdict == Verdict::both_fuel) {
        ++summary.both_fuel;
      } else {
        auto fails = [&](const ma::CmdPtr& m) {
          Verdict v = differential_ma(m, phase, cfg.fuel, mutation).verdict;
          return v != Verdict::match && v != Verdict::both_fuel;
        };
        ma::CmdPtr small = shrink_ma(program, fails);
        summary.failures.push_back(
            {i, report, print::cmd(small), ma::size(small)});
      }
    }
  }
  return summary;
}

}  // namespace costsem::harness
