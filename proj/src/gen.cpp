#include "costsem/gen.hpp"

#include <functional>
#include <vector>

namespace costsem::harness {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

bool chance(std::mt19937_64& rng, unsigned percent) {
  return rng() % 100 < percent;
}

// weighted choice over generator closures
template <typename T>
T choose(std::mt19937_64& rng,
         const std::vector<std::pair<unsigned, std::function<T()>>>& options) {
  unsigned total = 0;
  for (const auto& [w, _] : options) total += w;
  unsigned roll = rng() % total;
  for (const auto& [w, make] : options) {
    if (roll < w) return make();
    roll -= w;
  }
  return options.back().second();
}

}  // namespace

std::mt19937_64 case_engine(std::uint64_t seed, std::uint64_t index) {
  // splitmix-style mixing so nearby (seed, index) pairs decorrelate
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return std::mt19937_64(z ^ (z >> 31));
}

// ------------------------------------------------------------------ stlc

namespace {

std::size_t min_size(const stlc::TyPtr& ty) {
  if (const auto* a = std::get_if<stlc::Ty::Arrow>(&ty->node))
    return 1 + min_size(a->cod);
  return 1;
}

}  // namespace

stlc::TmPtr minimal_stlc(const stlc::TyPtr& ty) {
  if (const auto* a = std::get_if<stlc::Ty::Arrow>(&ty->node))
    return stlc::lam(a->dom, minimal_stlc(a->cod));
  return stlc::tt();
}

stlc::TyPtr gen_stlc_type(std::mt19937_64& rng, unsigned depth) {
  if (depth == 0 || chance(rng, 60)) return stlc::ty_bool();
  return stlc::ty_arrow(gen_stlc_type(rng, depth - 1),
                        gen_stlc_type(rng, depth - 1));
}

stlc::TmPtr gen_stlc_term(std::mt19937_64& rng, const stlc::Ctx& ctx,
                          const stlc::TyPtr& goal, std::size_t budget) {
  using namespace costsem::stlc;
  if (budget < min_size(goal)) return minimal_stlc(goal);

  std::vector<std::pair<unsigned, std::function<TmPtr()>>> options;

  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (equal(ctx[i], goal)) hits.push_back(i);
  if (!hits.empty())
    options.push_back({4, [&] { return var(hits[pick(rng, hits.size())]); }});

  if (std::holds_alternative<Ty::Bool>(goal->node))
    options.push_back({4, [&] { return chance(rng, 50) ? tt() : ff(); }});

  if (const auto* arrow = std::get_if<Ty::Arrow>(&goal->node)) {
    options.push_back({5, [&, arrow] {
      Ctx extended{arrow->dom};
      extended.insert(extended.end(), ctx.begin(), ctx.end());
      return lam(arrow->dom, gen_stlc_term(rng, extended, arrow->cod, budget - 1));
    }});
  }

  // an application: pick the argument type, then build both sides
  TyPtr arg_ty = gen_stlc_type(rng, 2);
  std::size_t need = 1 + (1 + min_size(goal)) + min_size(arg_ty);
  if (budget >= need) {
    options.push_back({6, [&, arg_ty] {
      std::size_t spare = budget - need;
      std::size_t extra_fn = pick(rng, spare + 1);
      std::size_t fn_budget = 1 + min_size(goal) + extra_fn;
      std::size_t arg_budget = min_size(arg_ty) + (spare - extra_fn);
      TmPtr fn = gen_stlc_term(rng, ctx, ty_arrow(arg_ty, goal), fn_budget);
      TmPtr arg = gen_stlc_term(rng, ctx, arg_ty, arg_budget);
      return ap(fn, arg);
    }});
  }

  if (options.empty()) return minimal_stlc(goal);
  return choose(rng, options);
}

stlc::TmPtr gen_stlc(const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return gen_stlc_term(rng, {}, stlc::ty_bool(), cfg.max_size);
}

// -------------------------------------------------------------------- ma

namespace {

using namespace costsem::ma;

std::size_t min_exp_size(const MaTyPtr& ty);

std::size_t min_cmd_size(const MaTyPtr& ty) { return 1 + min_exp_size(ty); }

std::size_t min_exp_size(const MaTyPtr& ty) {
  if (const auto* a = std::get_if<MaTy::Arrow>(&ty->node))
    return 1 + min_exp_size(a->cod);
  if (const auto* c = std::get_if<MaTy::CmdT>(&ty->node))
    return 1 + min_cmd_size(c->result);
  return 1;
}

PosTy random_pos(std::mt19937_64& rng) {
  switch (pick(rng, 4)) {
    case 0: return PosTy::unit;
    case 1: return PosTy::nat;
    default: return PosTy::boolean;
  }
}

std::vector<std::size_t> cells_of(const Sig& sig, PosTy want) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig[i] == want) out.push_back(i);
  return out;
}

Ctx ctx_extend(const MaTyPtr& t, const Ctx& ctx) {
  Ctx out{t};
  out.insert(out.end(), ctx.begin(), ctx.end());
  return out;
}

Sig sig_extend(PosTy p, const Sig& sig) {
  Sig out{p};
  out.insert(out.end(), sig.begin(), sig.end());
  return out;
}

// a while body that flips the guard cell, so generated loops frequently
// terminate after a few iterations; pre: budget >= 6, result size <= budget
CmdPtr guard_flipping_body(std::mt19937_64& rng, const Sig& sig, const Ctx& ctx,
                           std::size_t cell, std::size_t budget,
                           std::size_t max_sig) {
  std::size_t guard_budget = std::min<std::size_t>(3, budget - 5);
  ExpPtr guard = chance(rng, 70) ? ff()
                                 : gen_ma_exp(rng, sig, ctx, ty_bool(),
                                              guard_budget, max_sig);
  std::size_t rest_budget = budget - 3 - size(guard);
  CmdPtr rest = rest_budget > 2
                    ? gen_ma_cmd(rng, sig, ctx_extend(ty_bool(), ctx),
                                 ty_unit(), rest_budget, max_sig)
                    : ret(triv());
  return bnd(cmd_val(set(cell, guard)), rest);
}

}  // namespace

ma::ExpPtr minimal_ma_exp(const ma::MaTyPtr& ty) {
  return std::visit(
      overloaded{
          [&](const MaTy::Unit&) { return triv(); },
          [&](const MaTy::Bool&) { return tt(); },
          [&](const MaTy::Nat&) { return zero(); },
          [&](const MaTy::Arrow& a) { return lam(a.dom, minimal_ma_exp(a.cod)); },
          [&](const MaTy::CmdT& c) { return cmd_val(minimal_ma_cmd(c.result)); },
      },
      ty->node);
}

ma::CmdPtr minimal_ma_cmd(const ma::MaTyPtr& ty) {
  return ret(minimal_ma_exp(ty));
}

ma::MaTyPtr gen_ma_type(std::mt19937_64& rng, unsigned depth) {
  unsigned roll = rng() % 100;
  if (depth == 0 || roll < 40) return ty_bool();
  if (roll < 55) return ty_nat();
  if (roll < 65) return ty_unit();
  if (roll < 85)
    return ty_arrow(gen_ma_type(rng, depth - 1), gen_ma_type(rng, depth - 1));
  return ty_cmd(gen_ma_type(rng, depth - 1));
}

ma::ExpPtr gen_ma_exp(std::mt19937_64& rng, const ma::Sig& sig,
                      const ma::Ctx& ctx, const ma::MaTyPtr& goal,
                      std::size_t budget, std::size_t max_sig) {
  if (budget < min_exp_size(goal)) return minimal_ma_exp(goal);

  std::vector<std::pair<unsigned, std::function<ExpPtr()>>> options;

  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (equal(ctx[i], goal)) hits.push_back(i);
  if (!hits.empty())
    options.push_back({5, [&] { return var(hits[pick(rng, hits.size())]); }});

  std::visit(
      overloaded{
          [&](const MaTy::Unit&) {
            options.push_back({4, [&] { return triv(); }});
          },
          [&](const MaTy::Bool&) {
            options.push_back({4, [&] { return chance(rng, 50) ? tt() : ff(); }});
          },
          [&](const MaTy::Nat&) {
            options.push_back({4, [&] {
              std::size_t cap = budget - 1;
              std::uint64_t n = pick(rng, cap < 3 ? cap + 1 : 4);
              return numeral(n);
            }});
            if (budget >= 2)
              options.push_back({2, [&] {
                return suc(gen_ma_exp(rng, sig, ctx, ty_nat(), budget - 1, max_sig));
              }});
          },
          [&](const MaTy::Arrow& a) {
            options.push_back({5, [&, a] {
              return lam(a.dom, gen_ma_exp(rng, sig, ctx_extend(a.dom, ctx),
                                           a.cod, budget - 1, max_sig));
            }});
          },
          [&](const MaTy::CmdT& c) {
            options.push_back({6, [&, c] {
              return cmd_val(
                  gen_ma_cmd(rng, sig, ctx, c.result, budget - 1, max_sig));
            }});
          },
      },
      goal->node);

  if (budget >= 3 + min_exp_size(goal) * 2) {
    options.push_back({3, [&] {
      std::size_t third = (budget - 1) / 3;
      ExpPtr scrut = gen_ma_exp(rng, sig, ctx, ty_nat(), third, max_sig);
      ExpPtr zcase = gen_ma_exp(rng, sig, ctx, goal, third, max_sig);
      ExpPtr scase = gen_ma_exp(rng, sig, ctx_extend(ty_nat(), ctx), goal,
                                third, max_sig);
      return ifz(scrut, zcase, scase);
    }});
  }

  MaTyPtr arg_ty = gen_ma_type(rng, 1);
  std::size_t need = 1 + (1 + min_exp_size(goal)) + min_exp_size(arg_ty);
  if (budget >= need) {
    options.push_back({5, [&, arg_ty] {
      std::size_t spare = budget - need;
      std::size_t extra_fn = pick(rng, spare + 1);
      ExpPtr fn = gen_ma_exp(rng, sig, ctx, ty_arrow(arg_ty, goal),
                             1 + min_exp_size(goal) + extra_fn, max_sig);
      ExpPtr arg = gen_ma_exp(rng, sig, ctx, arg_ty,
                              min_exp_size(arg_ty) + (spare - extra_fn), max_sig);
      return ap(fn, arg);
    }});
  }

  if (options.empty()) return minimal_ma_exp(goal);
  return choose(rng, options);
}

ma::CmdPtr gen_ma_cmd(std::mt19937_64& rng, const ma::Sig& sig,
                      const ma::Ctx& ctx, const ma::MaTyPtr& goal,
                      std::size_t budget, std::size_t max_sig) {
  if (budget < min_cmd_size(goal)) return minimal_ma_cmd(goal);

  const bool goal_positive = as_positive(goal).has_value();
  const auto bool_cells = cells_of(sig, PosTy::boolean);

  std::vector<std::pair<unsigned, std::function<CmdPtr()>>> options;

  options.push_back({3, [&] {
    return ret(gen_ma_exp(rng, sig, ctx, goal, budget - 1, max_sig));
  }});

  if (budget >= 2 + min_cmd_size(goal)) {
    options.push_back({5, [&] {
      MaTyPtr bound = gen_ma_type(rng, 1);
      std::size_t subject_need = 2 + min_cmd_size(bound);
      std::size_t body_need = min_cmd_size(goal);
      if (budget < 1 + subject_need + body_need)
        return ret(gen_ma_exp(rng, sig, ctx, goal, budget - 1, max_sig));
      std::size_t spare = budget - 1 - subject_need - body_need;
      std::size_t extra_subject = pick(rng, spare + 1);
      ExpPtr subject = gen_ma_exp(rng, sig, ctx, ty_cmd(bound),
                                  subject_need + extra_subject, max_sig);
      CmdPtr body = gen_ma_cmd(rng, sig, ctx_extend(bound, ctx), goal,
                               body_need + (spare - extra_subject), max_sig);
      return bnd(subject, body);
    }});
  }

  if (auto p = as_positive(goal)) {
    auto matching = cells_of(sig, *p);
    if (!matching.empty()) {
      options.push_back({3, [&, matching] {
        return get(matching[pick(rng, matching.size())]);
      }});
      if (budget >= 2)
        options.push_back({3, [&, matching] {
          std::size_t cell = matching[pick(rng, matching.size())];
          return set(cell, gen_ma_exp(rng, sig, ctx, goal, budget - 2, max_sig));
        }});
    }
  }

  if (goal_positive && sig.size() < max_sig && budget >= 2 + min_cmd_size(goal)) {
    options.push_back({5, [&] {
      PosTy p = random_pos(rng);
      MaTyPtr init_ty = to_ty(p);
      std::size_t init_cap = budget - 1 - min_cmd_size(goal);
      std::size_t init_budget = 1 + pick(rng, std::min<std::size_t>(init_cap, 3));
      ExpPtr init = gen_ma_exp(rng, sig, ctx, init_ty, init_budget, max_sig);
      CmdPtr body = gen_ma_cmd(rng, sig_extend(p, sig), ctx, goal,
                               budget - 1 - size(init), max_sig);
      return dcl(init, body);
    }});
  }

  if (!bool_cells.empty() &&
      std::holds_alternative<MaTy::Unit>(goal->node) && budget >= 7) {
    options.push_back({4, [&] {
      std::size_t cell = bool_cells[pick(rng, bool_cells.size())];
      CmdPtr body = chance(rng, 70)
                        ? guard_flipping_body(rng, sig, ctx, cell, budget - 1,
                                              max_sig)
                        : gen_ma_cmd(rng, sig, ctx, ty_unit(), budget - 1, max_sig);
      return while_(cell, body);
    }});
  }

  // loop then read a cell: the common shape that reaches while from a
  // positive goal
  if (!bool_cells.empty() && goal_positive &&
      budget >= 9 + min_cmd_size(goal)) {
    options.push_back({4, [&] {
      std::size_t cell = bool_cells[pick(rng, bool_cells.size())];
      std::size_t body_cap = budget - 3 - min_cmd_size(goal);
      std::size_t body_budget = 6 + pick(rng, body_cap - 5);
      CmdPtr body = chance(rng, 80)
                        ? guard_flipping_body(rng, sig, ctx, cell, body_budget,
                                              max_sig)
                        : gen_ma_cmd(rng, sig, ctx, ty_unit(), body_budget, max_sig);
      CmdPtr rest = gen_ma_cmd(rng, sig, ctx_extend(ty_unit(), ctx), goal,
                               budget - 3 - size(body), max_sig);
      return bnd(cmd_val(while_(cell, body)), rest);
    }});
  }

  return choose(rng, options);
}

ma::CmdPtr gen_ma(const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return gen_ma_cmd(rng, {}, {}, ty_bool(), cfg.max_size, cfg.max_sig);
}

GrownSig gen_ge(std::mt19937_64& rng, const ma::Sig& smaller) {
  // walk the smaller signature back to front, inserting fresh cells
  GePtr proof = ge_refl();
  Sig sig;
  auto grow = [&] {
    while (chance(rng, 30)) {
      proof = ge_extend(proof);
      sig.insert(sig.begin(), random_pos(rng));
    }
  };
  for (std::size_t i = smaller.size(); i > 0; --i) {
    grow();
    proof = ge_mono(proof);
    sig.insert(sig.begin(), smaller[i - 1]);
  }
  grow();
  return {proof, sig};
}

}  // namespace costsem::harness
