#include "costsem/stlc.hpp"

#include <stdexcept>

namespace costsem::stlc {

// ---------------------------------------------------------------- types

TyPtr ty_bool() {
  static const TyPtr t = std::make_shared<const Ty>(Ty{Ty::Bool{}});
  return t;
}

TyPtr ty_arrow(TyPtr dom, TyPtr cod) {
  return std::make_shared<const Ty>(Ty{Ty::Arrow{std::move(dom), std::move(cod)}});
}

bool equal(const TyPtr& a, const TyPtr& b) {
  if (a == b) return true;
  return std::visit(
      overloaded{
          [&](const Ty::Bool&) { return std::holds_alternative<Ty::Bool>(b->node); },
          [&](const Ty::Arrow& ar) {
            const auto* br = std::get_if<Ty::Arrow>(&b->node);
            return br && equal(ar.dom, br->dom) && equal(ar.cod, br->cod);
          },
      },
      a->node);
}

// ---------------------------------------------------------------- terms

namespace {

TmPtr lam_node(std::optional<TyPtr> ann, TmPtr body) {
  return std::make_shared<const Tm>(Tm{Tm::Lam{std::move(ann), std::move(body)}});
}

}  // namespace

TmPtr var(std::size_t index) {
  return std::make_shared<const Tm>(Tm{Tm::Var{index}});
}
TmPtr lam(TyPtr ann, TmPtr body) {
  return std::make_shared<const Tm>(Tm{Tm::Lam{std::move(ann), std::move(body)}});
}
TmPtr lam(TmPtr body) {
  return std::make_shared<const Tm>(Tm{Tm::Lam{std::nullopt, std::move(body)}});
}
TmPtr ap(TmPtr fn, TmPtr arg) {
  return std::make_shared<const Tm>(Tm{Tm::Ap{std::move(fn), std::move(arg)}});
}
TmPtr tt() {
  static const TmPtr t = std::make_shared<const Tm>(Tm{Tm::TT{}});
  return t;
}
TmPtr ff() {
  static const TmPtr t = std::make_shared<const Tm>(Tm{Tm::FF{}});
  return t;
}

bool equal(const TmPtr& a, const TmPtr& b) {
  if (a == b) return true;
  return std::visit(
      overloaded{
          [&](const Tm::Var& v) {
            const auto* w = std::get_if<Tm::Var>(&b->node);
            return w && v.index == w->index;
          },
          [&](const Tm::Lam& l) {
            const auto* m = std::get_if<Tm::Lam>(&b->node);
            if (!m || l.ann.has_value() != m->ann.has_value()) return false;
            if (l.ann && !equal(*l.ann, *m->ann)) return false;
            return equal(l.body, m->body);
          },
          [&](const Tm::Ap& f) {
            const auto* g = std::get_if<Tm::Ap>(&b->node);
            return g && equal(f.fn, g->fn) && equal(f.arg, g->arg);
          },
          [&](const Tm::TT&) { return std::holds_alternative<Tm::TT>(b->node); },
          [&](const Tm::FF&) { return std::holds_alternative<Tm::FF>(b->node); },
      },
      a->node);
}

std::size_t size(const TmPtr& e) {
  return std::visit(
      overloaded{
          [](const Tm::Var&) -> std::size_t { return 1; },
          [](const Tm::Lam& l) { return 1 + size(l.body); },
          [](const Tm::Ap& a) { return 1 + size(a.fn) + size(a.arg); },
          [](const Tm::TT&) -> std::size_t { return 1; },
          [](const Tm::FF&) -> std::size_t { return 1; },
      },
      e->node);
}

bool is_value(const Tm& e) {
  return std::holds_alternative<Tm::Lam>(e.node) ||
         std::holds_alternative<Tm::TT>(e.node) ||
         std::holds_alternative<Tm::FF>(e.node);
}

// ---------------------------------------------------------------- statics

std::optional<TyPtr> check(const Ctx& ctx, const TmPtr& e) {
  return std::visit(
      overloaded{
          [&](const Tm::Var& v) -> std::optional<TyPtr> {
            if (v.index >= ctx.size()) return std::nullopt;
            return ctx[v.index];
          },
          [&](const Tm::Lam& l) -> std::optional<TyPtr> {
            if (!l.ann) return std::nullopt;
            Ctx extended;
            extended.reserve(ctx.size() + 1);
            extended.push_back(*l.ann);
            extended.insert(extended.end(), ctx.begin(), ctx.end());
            auto cod = check(extended, l.body);
            if (!cod) return std::nullopt;
            return ty_arrow(*l.ann, *cod);
          },
          [&](const Tm::Ap& a) -> std::optional<TyPtr> {
            auto fn_ty = check(ctx, a.fn);
            auto arg_ty = check(ctx, a.arg);
            if (!fn_ty || !arg_ty) return std::nullopt;
            const auto* arrow = std::get_if<Ty::Arrow>(&(*fn_ty)->node);
            if (!arrow || !equal(arrow->dom, *arg_ty)) return std::nullopt;
            return arrow->cod;
          },
          [&](const Tm::TT&) -> std::optional<TyPtr> { return ty_bool(); },
          [&](const Tm::FF&) -> std::optional<TyPtr> { return ty_bool(); },
      },
      e->node);
}

// ---------------------------------------------------------------- substitution

TmPtr shift(const TmPtr& e, std::size_t delta, std::size_t cutoff) {
  if (delta == 0) return e;
  return std::visit(
      overloaded{
          [&](const Tm::Var& v) {
            return v.index >= cutoff ? var(v.index + delta) : e;
          },
          [&](const Tm::Lam& l) {
            return lam_node(l.ann, shift(l.body, delta, cutoff + 1));
          },
          [&](const Tm::Ap& a) {
            return ap(shift(a.fn, delta, cutoff), shift(a.arg, delta, cutoff));
          },
          [&](const Tm::TT&) { return e; },
          [&](const Tm::FF&) { return e; },
      },
      e->node);
}

Sub sub_id(std::size_t n) {
  Sub sub;
  sub.reserve(n);
  for (std::size_t i = 0; i < n; ++i) sub.push_back(var(i));
  return sub;
}

Sub sub_cons(TmPtr e, Sub sub) {
  sub.insert(sub.begin(), std::move(e));
  return sub;
}

Sub sub_shift(const Sub& sub) {
  Sub shifted;
  shifted.reserve(sub.size() + 1);
  shifted.push_back(var(0));
  for (const auto& image : sub) shifted.push_back(shift(image, 1));
  return shifted;
}

TmPtr subst_apply(const TmPtr& e, const Sub& sub) {
  return std::visit(
      overloaded{
          [&](const Tm::Var& v) -> TmPtr {
            if (v.index >= sub.size())
              throw std::out_of_range("substitution not total on context");
            return sub[v.index];
          },
          [&](const Tm::Lam& l) -> TmPtr {
            return lam_node(l.ann, subst_apply(l.body, sub_shift(sub)));
          },
          [&](const Tm::Ap& a) -> TmPtr {
            return ap(subst_apply(a.fn, sub), subst_apply(a.arg, sub));
          },
          [&](const Tm::TT&) -> TmPtr { return e; },
          [&](const Tm::FF&) -> TmPtr { return e; },
      },
      e->node);
}

TmPtr subst_head(const TmPtr& e, const TmPtr& arg) {
  // e lives under one binder over a closed context
  return subst_apply(e, Sub{arg});
}

// ---------------------------------------------------------------- dynamics

std::optional<TmPtr> step_once(const TmPtr& e) {
  const auto* a = std::get_if<Tm::Ap>(&e->node);
  if (!a) return std::nullopt;  // values (and stuck vars) do not step
  if (!is_value(*a->fn)) {
    auto fn_next = step_once(a->fn);
    if (!fn_next) return std::nullopt;
    return ap(*fn_next, a->arg);
  }
  if (!is_value(*a->arg)) {
    auto arg_next = step_once(a->arg);
    if (!arg_next) return std::nullopt;
    return ap(a->fn, *arg_next);
  }
  const auto* l = std::get_if<Tm::Lam>(&a->fn->node);
  if (!l) return std::nullopt;  // ill-typed application of a boolean
  return subst_head(l->body, a->arg);
}

EvalResult eval_op(const TmPtr& e, Fuel fuel, const TraceFn& trace) {
  TmPtr cur = e;
  Cost cost{};
  if (trace) trace(cur);
  for (;;) {
    if (is_value(*cur)) return {EvalResult::Status::value, cost, cur};
    auto next = step_once(cur);
    if (!next) return {EvalResult::Status::stuck, cost, nullptr};
    if (fuel == 0) return {EvalResult::Status::fuel, cost, nullptr};
    --fuel;
    cost += Cost(1);
    cur = *next;
    if (trace) trace(cur);
  }
}

// ---------------------------------------------------------------- denotation

struct SemVal::Node {
  std::variant<bool, SemFn> v;
};

SemVal SemVal::boolean(bool b) {
  return SemVal(std::make_shared<const Node>(Node{b}));
}
SemVal SemVal::fn(SemFn f) {
  return SemVal(std::make_shared<const Node>(Node{std::move(f)}));
}
bool SemVal::is_bool() const { return node_->v.index() == 0; }
bool SemVal::as_bool() const { return std::get<bool>(node_->v); }
const SemFn& SemVal::as_fn() const { return std::get<SemFn>(node_->v); }

namespace {

Env extend(const SemVal& v, const Env& env) {
  Env out;
  out.reserve(env.size() + 1);
  out.push_back(v);
  out.insert(out.end(), env.begin(), env.end());
  return out;
}

}  // namespace

Comp<SemVal> denote(const TmPtr& e, const Env& env, const Mutation& mutation,
                    Budget* budget) {
  return std::visit(
      overloaded{
          [&](const Tm::Var& v) -> Comp<SemVal> { return ret(env.at(v.index)); },
          [&](const Tm::TT&) -> Comp<SemVal> { return ret(SemVal::boolean(true)); },
          [&](const Tm::FF&) -> Comp<SemVal> { return ret(SemVal::boolean(false)); },
          [&](const Tm::Lam& l) -> Comp<SemVal> {
            return ret(SemVal::fn([body = l.body, env, mutation,
                                   budget](const SemVal& a) {
              return denote(body, extend(a, env), mutation, budget);
            }));
          },
          [&](const Tm::Ap& apn) -> Comp<SemVal> {
            return bind(denote(apn.fn, env, mutation, budget),
                        [&](const SemVal& f) {
                          return bind(denote(apn.arg, env, mutation, budget),
                                      [&](const SemVal& a) {
                                        if (budget) budget->tick();
                                        return step(mutation.charge(
                                                        StepSite::stlc_ap, Cost(1)),
                                                    f.as_fn()(a));
                                      });
                        });
          },
      },
      e->node);
}

}  // namespace costsem::stlc
