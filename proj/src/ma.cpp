#include "costsem/ma.hpp"

#include <stdexcept>

namespace costsem::ma {

// ---------------------------------------------------------------- types

MaTyPtr ty_unit() {
  static const MaTyPtr t = std::make_shared<const MaTy>(MaTy{MaTy::Unit{}});
  return t;
}
MaTyPtr ty_bool() {
  static const MaTyPtr t = std::make_shared<const MaTy>(MaTy{MaTy::Bool{}});
  return t;
}
MaTyPtr ty_nat() {
  static const MaTyPtr t = std::make_shared<const MaTy>(MaTy{MaTy::Nat{}});
  return t;
}
MaTyPtr ty_arrow(MaTyPtr dom, MaTyPtr cod) {
  return std::make_shared<const MaTy>(MaTy{MaTy::Arrow{std::move(dom), std::move(cod)}});
}
MaTyPtr ty_cmd(MaTyPtr result) {
  return std::make_shared<const MaTy>(MaTy{MaTy::CmdT{std::move(result)}});
}

bool equal(const MaTyPtr& a, const MaTyPtr& b) {
  if (a == b) return true;
  return std::visit(
      overloaded{
          [&](const MaTy::Unit&) { return std::holds_alternative<MaTy::Unit>(b->node); },
          [&](const MaTy::Bool&) { return std::holds_alternative<MaTy::Bool>(b->node); },
          [&](const MaTy::Nat&) { return std::holds_alternative<MaTy::Nat>(b->node); },
          [&](const MaTy::Arrow& ar) {
            const auto* br = std::get_if<MaTy::Arrow>(&b->node);
            return br && equal(ar.dom, br->dom) && equal(ar.cod, br->cod);
          },
          [&](const MaTy::CmdT& ac) {
            const auto* bc = std::get_if<MaTy::CmdT>(&b->node);
            return bc && equal(ac.result, bc->result);
          },
      },
      a->node);
}

MaTyPtr to_ty(PosTy p) {
  switch (p) {
    case PosTy::unit: return ty_unit();
    case PosTy::boolean: return ty_bool();
    case PosTy::nat: return ty_nat();
  }
  throw std::logic_error("bad PosTy");
}

std::optional<PosTy> as_positive(const MaTyPtr& t) {
  if (std::holds_alternative<MaTy::Unit>(t->node)) return PosTy::unit;
  if (std::holds_alternative<MaTy::Bool>(t->node)) return PosTy::boolean;
  if (std::holds_alternative<MaTy::Nat>(t->node)) return PosTy::nat;
  return std::nullopt;
}

// ---------------------------------------------------------------- signature preorder

GePtr ge_refl() {
  static const GePtr p = std::make_shared<const GeProof>(GeProof{GeProof::Refl{}});
  return p;
}
GePtr ge_mono(GePtr sub) {
  return std::make_shared<const GeProof>(GeProof{GeProof::Mono{std::move(sub)}});
}
GePtr ge_extend(GePtr sub) {
  return std::make_shared<const GeProof>(GeProof{GeProof::Extend{std::move(sub)}});
}

std::size_t sh(const GePtr& p, std::size_t n) {
  return std::visit(
      overloaded{
          [&](const GeProof::Refl&) { return n; },
          [&](const GeProof::Mono& m) {
            return n == 0 ? std::size_t{0} : sh(m.sub, n - 1) + 1;
          },
          [&](const GeProof::Extend& e) { return sh(e.sub, n) + 1; },
      },
      p->node);
}

GePtr tr(const GePtr& p, const GePtr& q) {
  if (std::holds_alternative<GeProof::Refl>(p->node)) return q;
  if (const auto* e = std::get_if<GeProof::Extend>(&p->node))
    return ge_extend(tr(e->sub, q));
  const auto& m = std::get<GeProof::Mono>(p->node);
  return std::visit(
      overloaded{
          [&](const GeProof::Refl&) { return p; },
          [&](const GeProof::Mono& qm) { return ge_mono(tr(m.sub, qm.sub)); },
          [&](const GeProof::Extend& qe) { return ge_extend(tr(m.sub, qe.sub)); },
      },
      q->node);
}

// ---------------------------------------------------------------- syntax

namespace {

ExpPtr mk(Exp e) { return std::make_shared<const Exp>(std::move(e)); }
CmdPtr mk(Cmd m) { return std::make_shared<const Cmd>(std::move(m)); }

ExpPtr lam_node(std::optional<MaTyPtr> ann, ExpPtr body) {
  return mk(Exp{Exp::Lam{std::move(ann), std::move(body)}});
}

}  // namespace

ExpPtr var(std::size_t index) { return mk(Exp{Exp::Var{index}}); }
ExpPtr triv() {
  static const ExpPtr e = mk(Exp{Exp::Triv{}});
  return e;
}
ExpPtr zero() {
  static const ExpPtr e = mk(Exp{Exp::Zero{}});
  return e;
}
ExpPtr suc(ExpPtr arg) { return mk(Exp{Exp::Suc{std::move(arg)}}); }
ExpPtr numeral(std::uint64_t n) {
  ExpPtr e = zero();
  for (std::uint64_t i = 0; i < n; ++i) e = suc(e);
  return e;
}
ExpPtr ifz(ExpPtr scrutinee, ExpPtr zero_case, ExpPtr suc_case) {
  return mk(Exp{Exp::Ifz{std::move(scrutinee), std::move(zero_case), std::move(suc_case)}});
}
ExpPtr tt() {
  static const ExpPtr e = mk(Exp{Exp::TT{}});
  return e;
}
ExpPtr ff() {
  static const ExpPtr e = mk(Exp{Exp::FF{}});
  return e;
}
ExpPtr lam(MaTyPtr ann, ExpPtr body) { return lam_node(std::move(ann), std::move(body)); }
ExpPtr lam(ExpPtr body) { return lam_node(std::nullopt, std::move(body)); }
ExpPtr ap(ExpPtr fn, ExpPtr arg) { return mk(Exp{Exp::Ap{std::move(fn), std::move(arg)}}); }
ExpPtr cmd_val(CmdPtr cmd) { return mk(Exp{Exp::CmdVal{std::move(cmd)}}); }

CmdPtr ret(ExpPtr value) { return mk(Cmd{Cmd::Ret{std::move(value)}}); }
CmdPtr bnd(ExpPtr subject, CmdPtr body) {
  return mk(Cmd{Cmd::Bnd{std::move(subject), std::move(body)}});
}
CmdPtr while_(std::size_t cell, CmdPtr body) {
  return mk(Cmd{Cmd::While{cell, std::move(body)}});
}
CmdPtr get(std::size_t cell) { return mk(Cmd{Cmd::Get{cell}}); }
CmdPtr set(std::size_t cell, ExpPtr value) {
  return mk(Cmd{Cmd::Set{cell, std::move(value)}});
}
CmdPtr dcl(ExpPtr init, CmdPtr body) {
  return mk(Cmd{Cmd::Dcl{std::move(init), std::move(body)}});
}

bool equal(const ExpPtr& a, const ExpPtr& b) {
  if (a == b) return true;
  return std::visit(
      overloaded{
          [&](const Exp::Var& v) {
            const auto* w = std::get_if<Exp::Var>(&b->node);
            return w && v.index == w->index;
          },
          [&](const Exp::Triv&) { return std::holds_alternative<Exp::Triv>(b->node); },
          [&](const Exp::Zero&) { return std::holds_alternative<Exp::Zero>(b->node); },
          [&](const Exp::Suc& s) {
            const auto* t = std::get_if<Exp::Suc>(&b->node);
            return t && equal(s.arg, t->arg);
          },
          [&](const Exp::Ifz& i) {
            const auto* j = std::get_if<Exp::Ifz>(&b->node);
            return j && equal(i.scrutinee, j->scrutinee) &&
                   equal(i.zero_case, j->zero_case) && equal(i.suc_case, j->suc_case);
          },
          [&](const Exp::TT&) { return std::holds_alternative<Exp::TT>(b->node); },
          [&](const Exp::FF&) { return std::holds_alternative<Exp::FF>(b->node); },
          [&](const Exp::Lam& l) {
            const auto* m = std::get_if<Exp::Lam>(&b->node);
            if (!m || l.ann.has_value() != m->ann.has_value()) return false;
            if (l.ann && !equal(*l.ann, *m->ann)) return false;
            return equal(l.body, m->body);
          },
          [&](const Exp::Ap& f) {
            const auto* g = std::get_if<Exp::Ap>(&b->node);
            return g && equal(f.fn, g->fn) && equal(f.arg, g->arg);
          },
          [&](const Exp::CmdVal& c) {
            const auto* d = std::get_if<Exp::CmdVal>(&b->node);
            return d && equal(c.cmd, d->cmd);
          },
      },
      a->node);
}

bool equal(const CmdPtr& a, const CmdPtr& b) {
  if (a == b) return true;
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) {
            const auto* s = std::get_if<Cmd::Ret>(&b->node);
            return s && equal(r.value, s->value);
          },
          [&](const Cmd::Bnd& x) {
            const auto* y = std::get_if<Cmd::Bnd>(&b->node);
            return y && equal(x.subject, y->subject) && equal(x.body, y->body);
          },
          [&](const Cmd::While& w) {
            const auto* u = std::get_if<Cmd::While>(&b->node);
            return u && w.cell == u->cell && equal(w.body, u->body);
          },
          [&](const Cmd::Get& g) {
            const auto* h = std::get_if<Cmd::Get>(&b->node);
            return h && g.cell == h->cell;
          },
          [&](const Cmd::Set& s) {
            const auto* t = std::get_if<Cmd::Set>(&b->node);
            return t && s.cell == t->cell && equal(s.value, t->value);
          },
          [&](const Cmd::Dcl& d) {
            const auto* e = std::get_if<Cmd::Dcl>(&b->node);
            return e && equal(d.init, e->init) && equal(d.body, e->body);
          },
      },
      a->node);
}

std::size_t size(const ExpPtr& e) {
  return std::visit(
      overloaded{
          [](const Exp::Var&) -> std::size_t { return 1; },
          [](const Exp::Triv&) -> std::size_t { return 1; },
          [](const Exp::Zero&) -> std::size_t { return 1; },
          [](const Exp::Suc& s) { return 1 + size(s.arg); },
          [](const Exp::Ifz& i) {
            return 1 + size(i.scrutinee) + size(i.zero_case) + size(i.suc_case);
          },
          [](const Exp::TT&) -> std::size_t { return 1; },
          [](const Exp::FF&) -> std::size_t { return 1; },
          [](const Exp::Lam& l) { return 1 + size(l.body); },
          [](const Exp::Ap& a) { return 1 + size(a.fn) + size(a.arg); },
          [](const Exp::CmdVal& c) { return 1 + size(c.cmd); },
      },
      e->node);
}

std::size_t size(const CmdPtr& m) {
  return std::visit(
      overloaded{
          [](const Cmd::Ret& r) { return 1 + size(r.value); },
          [](const Cmd::Bnd& b) { return 1 + size(b.subject) + size(b.body); },
          [](const Cmd::While& w) { return 1 + size(w.body); },
          [](const Cmd::Get&) -> std::size_t { return 1; },
          [](const Cmd::Set& s) { return 1 + size(s.value); },
          [](const Cmd::Dcl& d) { return 1 + size(d.init) + size(d.body); },
      },
      m->node);
}

bool is_value(const Exp& e) {
  return std::visit(
      overloaded{
          [](const Exp::Var&) { return false; },
          [](const Exp::Triv&) { return true; },
          [](const Exp::Zero&) { return true; },
          [](const Exp::Suc& s) { return is_value(*s.arg); },
          [](const Exp::Ifz&) { return false; },
          [](const Exp::TT&) { return true; },
          [](const Exp::FF&) { return true; },
          [](const Exp::Lam&) { return true; },
          [](const Exp::Ap&) { return false; },
          [](const Exp::CmdVal&) { return true; },
      },
      e.node);
}

std::optional<std::uint64_t> numeral_value(const ExpPtr& e) {
  std::uint64_t n = 0;
  const Exp* cur = e.get();
  for (;;) {
    if (std::holds_alternative<Exp::Zero>(cur->node)) return n;
    const auto* s = std::get_if<Exp::Suc>(&cur->node);
    if (!s) return std::nullopt;
    ++n;
    cur = s->arg.get();
  }
}

// ---------------------------------------------------------------- statics

std::optional<MaTyPtr> check_exp(const Sig& sig, const Ctx& ctx, const ExpPtr& e) {
  return std::visit(
      overloaded{
          [&](const Exp::Var& v) -> std::optional<MaTyPtr> {
            if (v.index >= ctx.size()) return std::nullopt;
            return ctx[v.index];
          },
          [&](const Exp::Triv&) -> std::optional<MaTyPtr> { return ty_unit(); },
          [&](const Exp::Zero&) -> std::optional<MaTyPtr> { return ty_nat(); },
          [&](const Exp::Suc& s) -> std::optional<MaTyPtr> {
            auto t = check_exp(sig, ctx, s.arg);
            if (!t || !std::holds_alternative<MaTy::Nat>((*t)->node)) return std::nullopt;
            return ty_nat();
          },
          [&](const Exp::Ifz& i) -> std::optional<MaTyPtr> {
            auto t = check_exp(sig, ctx, i.scrutinee);
            if (!t || !std::holds_alternative<MaTy::Nat>((*t)->node)) return std::nullopt;
            auto t1 = check_exp(sig, ctx, i.zero_case);
            if (!t1) return std::nullopt;
            Ctx extended;
            extended.reserve(ctx.size() + 1);
            extended.push_back(ty_nat());
            extended.insert(extended.end(), ctx.begin(), ctx.end());
            auto t2 = check_exp(sig, extended, i.suc_case);
            if (!t2 || !equal(*t1, *t2)) return std::nullopt;
            return t1;
          },
          [&](const Exp::TT&) -> std::optional<MaTyPtr> { return ty_bool(); },
          [&](const Exp::FF&) -> std::optional<MaTyPtr> { return ty_bool(); },
          [&](const Exp::Lam& l) -> std::optional<MaTyPtr> {
            if (!l.ann) return std::nullopt;
            Ctx extended;
            extended.reserve(ctx.size() + 1);
            extended.push_back(*l.ann);
            extended.insert(extended.end(), ctx.begin(), ctx.end());
            auto cod = check_exp(sig, extended, l.body);
            if (!cod) return std::nullopt;
            return ty_arrow(*l.ann, *cod);
          },
          [&](const Exp::Ap& a) -> std::optional<MaTyPtr> {
            auto fn_ty = check_exp(sig, ctx, a.fn);
            auto arg_ty = check_exp(sig, ctx, a.arg);
            if (!fn_ty || !arg_ty) return std::nullopt;
            const auto* arrow = std::get_if<MaTy::Arrow>(&(*fn_ty)->node);
            if (!arrow || !equal(arrow->dom, *arg_ty)) return std::nullopt;
            return arrow->cod;
          },
          [&](const Exp::CmdVal& c) -> std::optional<MaTyPtr> {
            auto t = check_cmd(sig, ctx, c.cmd);
            if (!t) return std::nullopt;
            return ty_cmd(*t);
          },
      },
      e->node);
}

std::optional<MaTyPtr> check_cmd(const Sig& sig, const Ctx& ctx, const CmdPtr& m) {
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) -> std::optional<MaTyPtr> {
            return check_exp(sig, ctx, r.value);
          },
          [&](const Cmd::Bnd& b) -> std::optional<MaTyPtr> {
            auto t = check_exp(sig, ctx, b.subject);
            if (!t) return std::nullopt;
            const auto* c = std::get_if<MaTy::CmdT>(&(*t)->node);
            if (!c) return std::nullopt;
            Ctx extended;
            extended.reserve(ctx.size() + 1);
            extended.push_back(c->result);
            extended.insert(extended.end(), ctx.begin(), ctx.end());
            return check_cmd(sig, extended, b.body);
          },
          [&](const Cmd::While& w) -> std::optional<MaTyPtr> {
            if (w.cell >= sig.size() || sig[w.cell] != PosTy::boolean)
              return std::nullopt;
            auto t = check_cmd(sig, ctx, w.body);
            if (!t || !std::holds_alternative<MaTy::Unit>((*t)->node))
              return std::nullopt;
            return ty_unit();
          },
          [&](const Cmd::Get& g) -> std::optional<MaTyPtr> {
            if (g.cell >= sig.size()) return std::nullopt;
            return to_ty(sig[g.cell]);
          },
          [&](const Cmd::Set& s) -> std::optional<MaTyPtr> {
            if (s.cell >= sig.size()) return std::nullopt;
            auto cell_ty = to_ty(sig[s.cell]);
            auto t = check_exp(sig, ctx, s.value);
            if (!t || !equal(*t, cell_ty)) return std::nullopt;
            // the command returns the previous cell value
            return cell_ty;
          },
          [&](const Cmd::Dcl& d) -> std::optional<MaTyPtr> {
            auto init_ty = check_exp(sig, ctx, d.init);
            if (!init_ty) return std::nullopt;
            auto pos = as_positive(*init_ty);
            if (!pos) return std::nullopt;
            Sig extended;
            extended.reserve(sig.size() + 1);
            extended.push_back(*pos);
            extended.insert(extended.end(), sig.begin(), sig.end());
            auto body_ty = check_cmd(extended, ctx, d.body);
            // the result escapes the declaration scope, so it must be positive
            if (!body_ty || !as_positive(*body_ty)) return std::nullopt;
            return body_ty;
          },
      },
      m->node);
}

// ---------------------------------------------------------------- weakening

ExpPtr weaken_exp(const GePtr& p, const ExpPtr& e) {
  return std::visit(
      overloaded{
          [&](const Exp::Var&) { return e; },
          [&](const Exp::Triv&) { return e; },
          [&](const Exp::Zero&) { return e; },
          [&](const Exp::Suc& s) { return suc(weaken_exp(p, s.arg)); },
          [&](const Exp::Ifz& i) {
            return ifz(weaken_exp(p, i.scrutinee), weaken_exp(p, i.zero_case),
                       weaken_exp(p, i.suc_case));
          },
          [&](const Exp::TT&) { return e; },
          [&](const Exp::FF&) { return e; },
          [&](const Exp::Lam& l) { return lam_node(l.ann, weaken_exp(p, l.body)); },
          [&](const Exp::Ap& a) {
            return ap(weaken_exp(p, a.fn), weaken_exp(p, a.arg));
          },
          [&](const Exp::CmdVal& c) { return cmd_val(weaken_cmd(p, c.cmd)); },
      },
      e->node);
}

CmdPtr weaken_cmd(const GePtr& p, const CmdPtr& m) {
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) { return ret(weaken_exp(p, r.value)); },
          [&](const Cmd::Bnd& b) {
            return bnd(weaken_exp(p, b.subject), weaken_cmd(p, b.body));
          },
          [&](const Cmd::While& w) {
            return while_(sh(p, w.cell), weaken_cmd(p, w.body));
          },
          [&](const Cmd::Get& g) { return get(sh(p, g.cell)); },
          [&](const Cmd::Set& s) {
            return set(sh(p, s.cell), weaken_exp(p, s.value));
          },
          [&](const Cmd::Dcl& d) {
            // the body lives under the declared cell, so the witness grows
            return dcl(weaken_exp(p, d.init), weaken_cmd(ge_mono(p), d.body));
          },
      },
      m->node);
}

// ---------------------------------------------------------------- substitution

ExpPtr shift_exp(const ExpPtr& e, std::size_t delta, std::size_t cutoff) {
  if (delta == 0) return e;
  return std::visit(
      overloaded{
          [&](const Exp::Var& v) {
            return v.index >= cutoff ? var(v.index + delta) : e;
          },
          [&](const Exp::Triv&) { return e; },
          [&](const Exp::Zero&) { return e; },
          [&](const Exp::Suc& s) { return suc(shift_exp(s.arg, delta, cutoff)); },
          [&](const Exp::Ifz& i) {
            return ifz(shift_exp(i.scrutinee, delta, cutoff),
                       shift_exp(i.zero_case, delta, cutoff),
                       shift_exp(i.suc_case, delta, cutoff + 1));
          },
          [&](const Exp::TT&) { return e; },
          [&](const Exp::FF&) { return e; },
          [&](const Exp::Lam& l) {
            return lam_node(l.ann, shift_exp(l.body, delta, cutoff + 1));
          },
          [&](const Exp::Ap& a) {
            return ap(shift_exp(a.fn, delta, cutoff), shift_exp(a.arg, delta, cutoff));
          },
          [&](const Exp::CmdVal& c) { return cmd_val(shift_cmd(c.cmd, delta, cutoff)); },
      },
      e->node);
}

CmdPtr shift_cmd(const CmdPtr& m, std::size_t delta, std::size_t cutoff) {
  if (delta == 0) return m;
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) { return ret(shift_exp(r.value, delta, cutoff)); },
          [&](const Cmd::Bnd& b) {
            return bnd(shift_exp(b.subject, delta, cutoff),
                       shift_cmd(b.body, delta, cutoff + 1));
          },
          [&](const Cmd::While& w) {
            return while_(w.cell, shift_cmd(w.body, delta, cutoff));
          },
          [&](const Cmd::Get&) { return m; },
          [&](const Cmd::Set& s) {
            return set(s.cell, shift_exp(s.value, delta, cutoff));
          },
          [&](const Cmd::Dcl& d) {
            return dcl(shift_exp(d.init, delta, cutoff),
                       shift_cmd(d.body, delta, cutoff));
          },
      },
      m->node);
}

Sub sub_id(std::size_t n) {
  Sub sub;
  sub.reserve(n);
  for (std::size_t i = 0; i < n; ++i) sub.push_back(var(i));
  return sub;
}

Sub sub_cons(ExpPtr e, Sub sub) {
  sub.insert(sub.begin(), std::move(e));
  return sub;
}

Sub sub_shift(const Sub& sub) {
  Sub shifted;
  shifted.reserve(sub.size() + 1);
  shifted.push_back(var(0));
  for (const auto& image : sub) shifted.push_back(shift_exp(image, 1));
  return shifted;
}

Sub weaken_sub(const GePtr& p, const Sub& sub) {
  Sub weakened;
  weakened.reserve(sub.size());
  for (const auto& image : sub) weakened.push_back(weaken_exp(p, image));
  return weakened;
}

ExpPtr subst_exp(const ExpPtr& e, const Sub& sub) {
  return std::visit(
      overloaded{
          [&](const Exp::Var& v) -> ExpPtr {
            if (v.index >= sub.size())
              throw std::out_of_range("substitution not total on context");
            return sub[v.index];
          },
          [&](const Exp::Triv&) -> ExpPtr { return e; },
          [&](const Exp::Zero&) -> ExpPtr { return e; },
          [&](const Exp::Suc& s) -> ExpPtr { return suc(subst_exp(s.arg, sub)); },
          [&](const Exp::Ifz& i) -> ExpPtr {
            return ifz(subst_exp(i.scrutinee, sub), subst_exp(i.zero_case, sub),
                       subst_exp(i.suc_case, sub_shift(sub)));
          },
          [&](const Exp::TT&) -> ExpPtr { return e; },
          [&](const Exp::FF&) -> ExpPtr { return e; },
          [&](const Exp::Lam& l) -> ExpPtr {
            return lam_node(l.ann, subst_exp(l.body, sub_shift(sub)));
          },
          [&](const Exp::Ap& a) -> ExpPtr {
            return ap(subst_exp(a.fn, sub), subst_exp(a.arg, sub));
          },
          [&](const Exp::CmdVal& c) -> ExpPtr { return cmd_val(subst_cmd(c.cmd, sub)); },
      },
      e->node);
}

CmdPtr subst_cmd(const CmdPtr& m, const Sub& sub) {
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) -> CmdPtr { return ret(subst_exp(r.value, sub)); },
          [&](const Cmd::Bnd& b) -> CmdPtr {
            return bnd(subst_exp(b.subject, sub), subst_cmd(b.body, sub_shift(sub)));
          },
          [&](const Cmd::While& w) -> CmdPtr {
            return while_(w.cell, subst_cmd(w.body, sub));
          },
          [&](const Cmd::Get&) -> CmdPtr { return m; },
          [&](const Cmd::Set& s) -> CmdPtr {
            return set(s.cell, subst_exp(s.value, sub));
          },
          [&](const Cmd::Dcl& d) -> CmdPtr {
            // the body sits at the extended signature; move the images there
            return dcl(subst_exp(d.init, sub),
                       subst_cmd(d.body, weaken_sub(ge_extend(ge_refl()), sub)));
          },
      },
      m->node);
}

ExpPtr subst_head(const ExpPtr& e, const ExpPtr& arg) {
  return subst_exp(e, Sub{arg});
}
CmdPtr subst_head(const CmdPtr& m, const ExpPtr& arg) {
  return subst_cmd(m, Sub{arg});
}

ExpPtr coer(const ExpPtr& value) {
  return std::visit(
      overloaded{
          [&](const Exp::Triv&) { return value; },
          [&](const Exp::TT&) { return value; },
          [&](const Exp::FF&) { return value; },
          [&](const Exp::Zero&) { return value; },
          [&](const Exp::Suc& s) { return suc(coer(s.arg)); },
          [&](const auto&) -> ExpPtr {
            throw std::logic_error("coer: not a closed positive value");
          },
      },
      value->node);
}

// ---------------------------------------------------------------- dynamics

std::optional<ExpPtr> exp_step_once(const ExpPtr& e) {
  return std::visit(
      overloaded{
          [&](const Exp::Suc& s) -> std::optional<ExpPtr> {
            auto next = exp_step_once(s.arg);
            if (!next) return std::nullopt;
            return suc(*next);
          },
          [&](const Exp::Ifz& i) -> std::optional<ExpPtr> {
            if (!is_value(*i.scrutinee)) {
              auto next = exp_step_once(i.scrutinee);
              if (!next) return std::nullopt;
              return ifz(*next, i.zero_case, i.suc_case);
            }
            if (std::holds_alternative<Exp::Zero>(i.scrutinee->node))
              return i.zero_case;
            if (const auto* s = std::get_if<Exp::Suc>(&i.scrutinee->node))
              return subst_head(i.suc_case, s->arg);
            return std::nullopt;
          },
          [&](const Exp::Ap& a) -> std::optional<ExpPtr> {
            if (!is_value(*a.fn)) {
              auto next = exp_step_once(a.fn);
              if (!next) return std::nullopt;
              return ap(*next, a.arg);
            }
            if (!is_value(*a.arg)) {
              auto next = exp_step_once(a.arg);
              if (!next) return std::nullopt;
              return ap(a.fn, *next);
            }
            const auto* l = std::get_if<Exp::Lam>(&a.fn->node);
            if (!l) return std::nullopt;
            return subst_head(l->body, a.arg);
          },
          [&](const auto&) -> std::optional<ExpPtr> { return std::nullopt; },
      },
      e->node);
}

bool is_final(const State& state) {
  const auto* r = std::get_if<Cmd::Ret>(&state.cmd->node);
  return r && is_value(*r->value);
}

std::optional<State> cmd_step_once(const State& state) {
  const Store& store = state.store;
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) -> std::optional<State> {
            auto next = exp_step_once(r.value);
            if (!next) return std::nullopt;  // final or stuck
            return State{store, ret(*next)};
          },
          [&](const Cmd::Bnd& b) -> std::optional<State> {
            if (!is_value(*b.subject)) {
              auto next = exp_step_once(b.subject);
              if (!next) return std::nullopt;
              return State{store, bnd(*next, b.body)};
            }
            const auto* c = std::get_if<Exp::CmdVal>(&b.subject->node);
            if (!c) return std::nullopt;
            State inner{store, c->cmd};
            if (is_final(inner)) {
              const auto& r = std::get<Cmd::Ret>(c->cmd->node);
              return State{store, subst_head(b.body, r.value)};
            }
            auto stepped = cmd_step_once(inner);
            if (!stepped) return std::nullopt;
            return State{stepped->store, bnd(cmd_val(stepped->cmd), b.body)};
          },
          [&](const Cmd::While& w) -> std::optional<State> {
            if (w.cell >= store.size()) return std::nullopt;
            const ExpPtr& guard = store[w.cell];
            if (std::holds_alternative<Exp::FF>(guard->node))
              return State{store, ret(triv())};
            if (std::holds_alternative<Exp::TT>(guard->node))
              return State{store, bnd(cmd_val(w.body),
                                      shift_cmd(while_(w.cell, w.body), 1))};
            return std::nullopt;
          },
          [&](const Cmd::Get& g) -> std::optional<State> {
            if (g.cell >= store.size()) return std::nullopt;
            return State{store, ret(store[g.cell])};
          },
          [&](const Cmd::Set& s) -> std::optional<State> {
            if (!is_value(*s.value)) {
              auto next = exp_step_once(s.value);
              if (!next) return std::nullopt;
              return State{store, set(s.cell, *next)};
            }
            if (s.cell >= store.size()) return std::nullopt;
            Store updated = store;
            ExpPtr old = updated[s.cell];
            updated[s.cell] = s.value;
            return State{std::move(updated), ret(std::move(old))};
          },
          [&](const Cmd::Dcl& d) -> std::optional<State> {
            if (!is_value(*d.init)) {
              auto next = exp_step_once(d.init);
              if (!next) return std::nullopt;
              return State{store, dcl(*next, d.body)};
            }
            State inner;
            inner.store.reserve(store.size() + 1);
            inner.store.push_back(d.init);
            inner.store.insert(inner.store.end(), store.begin(), store.end());
            inner.cmd = d.body;
            if (is_final(inner)) {
              const auto& r = std::get<Cmd::Ret>(d.body->node);
              return State{store, ret(coer(r.value))};
            }
            auto stepped = cmd_step_once(inner);
            if (!stepped) return std::nullopt;
            ExpPtr cell = stepped->store.front();
            Store rest(stepped->store.begin() + 1, stepped->store.end());
            return State{std::move(rest), dcl(std::move(cell), stepped->cmd)};
          },
      },
      state.cmd->node);
}

ExpEvalResult eval_exp_op(const ExpPtr& e, Fuel fuel) {
  ExpPtr cur = e;
  Cost cost{};
  for (;;) {
    if (is_value(*cur)) return {ExpEvalResult::Status::value, cost, cur};
    auto next = exp_step_once(cur);
    if (!next) return {ExpEvalResult::Status::stuck, cost, nullptr};
    if (fuel == 0) return {ExpEvalResult::Status::fuel, cost, nullptr};
    --fuel;
    cost += Cost(1);
    cur = *next;
  }
}

CmdEvalResult eval_cmd_op(const State& state, Fuel fuel, const CmdTraceFn& trace) {
  State cur = state;
  Cost cost{};
  if (trace) trace(cur);
  for (;;) {
    if (is_final(cur)) {
      const auto& r = std::get<Cmd::Ret>(cur.cmd->node);
      return {CmdEvalResult::Status::value, cost, cur.store, r.value};
    }
    auto next = cmd_step_once(cur);
    if (!next) return {CmdEvalResult::Status::stuck, cost, {}, nullptr};
    if (fuel == 0) return {CmdEvalResult::Status::fuel, cost, {}, nullptr};
    --fuel;
    cost += Cost(1);
    cur = std::move(*next);
    if (trace) trace(cur);
  }
}

// ---------------------------------------------------------------- denotation

struct SemVal::Node {
  std::variant<SemUnit, bool, std::uint64_t, SemFn, SemCmd> v;
};

SemVal SemVal::unit() {
  static const SemVal u{std::make_shared<const Node>(Node{SemUnit{}})};
  return u;
}
SemVal SemVal::boolean(bool b) {
  return SemVal(std::make_shared<const Node>(Node{b}));
}
SemVal SemVal::nat(std::uint64_t n) {
  return SemVal(std::make_shared<const Node>(Node{n}));
}
SemVal SemVal::fn(SemFn f) {
  return SemVal(std::make_shared<const Node>(Node{std::move(f)}));
}
SemVal SemVal::command(SemCmd c) {
  return SemVal(std::make_shared<const Node>(Node{std::move(c)}));
}

bool SemVal::is_unit() const { return node_->v.index() == 0; }
bool SemVal::is_bool() const { return node_->v.index() == 1; }
bool SemVal::is_nat() const { return node_->v.index() == 2; }
bool SemVal::is_fn() const { return node_->v.index() == 3; }
bool SemVal::is_command() const { return node_->v.index() == 4; }
bool SemVal::as_bool() const { return std::get<bool>(node_->v); }
std::uint64_t SemVal::as_nat() const { return std::get<std::uint64_t>(node_->v); }
const SemFn& SemVal::as_fn() const { return std::get<SemFn>(node_->v); }
const SemCmd& SemVal::as_command() const { return std::get<SemCmd>(node_->v); }

bool positive_equal(const SemVal& a, const SemVal& b) {
  if (a.is_unit() && b.is_unit()) return true;
  if (a.is_bool() && b.is_bool()) return a.as_bool() == b.as_bool();
  if (a.is_nat() && b.is_nat()) return a.as_nat() == b.as_nat();
  return false;
}

bool positive_equal(const SemStore& a, const SemStore& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!positive_equal(a[i], b[i])) return false;
  return true;
}

SemVal up(const GePtr& p, const SemVal& v) {
  if (v.is_fn()) {
    return SemVal::fn([f = v.as_fn(), p](const Sig& sig, const GePtr& q,
                                         const SemVal& a) {
      return f(sig, tr(q, p), a);
    });
  }
  if (v.is_command()) {
    return SemVal::command([c = v.as_command(), p](const Sig& sig, const GePtr& q,
                                                   const SemStore& store) {
      return c(sig, tr(q, p), store);
    });
  }
  return v;
}

Env up_env(const GePtr& p, const Env& env) {
  if (std::holds_alternative<GeProof::Refl>(p->node)) return env;
  Env out;
  out.reserve(env.size());
  for (const auto& v : env) out.push_back(up(p, v));
  return out;
}

namespace {

Env extend(const SemVal& v, const Env& env) {
  Env out;
  out.reserve(env.size() + 1);
  out.push_back(v);
  out.insert(out.end(), env.begin(), env.end());
  return out;
}

PosTy runtime_positive(const SemVal& v) {
  if (v.is_unit()) return PosTy::unit;
  if (v.is_bool()) return PosTy::boolean;
  if (v.is_nat()) return PosTy::nat;
  throw std::logic_error("declared cell holds a non-positive value");
}

using CmdResult = std::pair<SemVal, SemStore>;

}  // namespace

Comp<SemVal> denote_exp(const ExpPtr& e, const Sig& sig, const GePtr& p,
                        const Env& env, const Mutation& mutation, Budget* budget) {
  return std::visit(
      overloaded{
          [&](const Exp::Var& v) -> Comp<SemVal> { return costsem::ret(env.at(v.index)); },
          [&](const Exp::Triv&) -> Comp<SemVal> { return costsem::ret(SemVal::unit()); },
          [&](const Exp::Zero&) -> Comp<SemVal> { return costsem::ret(SemVal::nat(0)); },
          [&](const Exp::Suc& s) -> Comp<SemVal> {
            return bind(denote_exp(s.arg, sig, p, env, mutation, budget),
                        [](const SemVal& n) { return costsem::ret(SemVal::nat(n.as_nat() + 1)); });
          },
          [&](const Exp::Ifz& i) -> Comp<SemVal> {
            return bind(
                denote_exp(i.scrutinee, sig, p, env, mutation, budget),
                [&](const SemVal& n) {
                  if (budget) budget->tick();
                  Cost one = mutation.charge(StepSite::ma_ifz, Cost(1));
                  if (n.as_nat() == 0)
                    return step(one, denote_exp(i.zero_case, sig, p, env,
                                                mutation, budget));
                  return step(one,
                              denote_exp(i.suc_case, sig, p,
                                         extend(SemVal::nat(n.as_nat() - 1), env),
                                         mutation, budget));
                });
          },
          [&](const Exp::TT&) -> Comp<SemVal> { return costsem::ret(SemVal::boolean(true)); },
          [&](const Exp::FF&) -> Comp<SemVal> { return costsem::ret(SemVal::boolean(false)); },
          [&](const Exp::Lam& l) -> Comp<SemVal> {
            return costsem::ret(SemVal::fn([body = l.body, p, env, mutation, budget](
                                      const Sig& sig2, const GePtr& p2,
                                      const SemVal& a) {
              return denote_exp(body, sig2, tr(p2, p),
                                extend(a, up_env(p2, env)), mutation, budget);
            }));
          },
          [&](const Exp::Ap& a) -> Comp<SemVal> {
            return bind(
                denote_exp(a.fn, sig, p, env, mutation, budget),
                [&](const SemVal& f) {
                  return bind(denote_exp(a.arg, sig, p, env, mutation, budget),
                              [&](const SemVal& x) {
                                if (budget) budget->tick();
                                return step(mutation.charge(StepSite::ma_ap, Cost(1)),
                                            f.as_fn()(sig, ge_refl(), x));
                              });
                });
          },
          [&](const Exp::CmdVal& c) -> Comp<SemVal> {
            return costsem::ret(SemVal::command([m = c.cmd, p, env, mutation, budget](
                                           const Sig& sig2, const GePtr& p2,
                                           const SemStore& store) {
              return denote_cmd(m, sig2, tr(p2, p), up_env(p2, env), store,
                                mutation, budget);
            }));
          },
      },
      e->node);
}

Lift<CmdResult> denote_cmd(const CmdPtr& m, const Sig& sig, const GePtr& p,
                           const Env& env, const SemStore& store,
                           const Mutation& mutation, Budget* budget) {
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) -> Lift<CmdResult> {
            Comp<SemVal> a = denote_exp(r.value, sig, p, env, mutation, budget);
            return Lift<CmdResult>::now(a.cost, CmdResult{a.value, store});
          },
          [&](const Cmd::Bnd& b) -> Lift<CmdResult> {
            Comp<SemVal> subject =
                denote_exp(b.subject, sig, p, env, mutation, budget);
            return lift_bind(
                lift_of_comp(std::move(subject)),
                [body = b.body, sig, p, env, store, mutation,
                 budget](const SemVal& reified) {
                  return lift_bind(
                      reified.as_command()(sig, ge_refl(), store),
                      [body, sig, p, env, mutation, budget](const CmdResult& r) {
                        return lift_step(
                            mutation.charge(StepSite::ma_bnd, Cost(1)),
                            denote_cmd(body, sig, p, extend(r.first, env),
                                       r.second, mutation, budget));
                      });
                });
          },
          [&](const Cmd::While& w) -> Lift<CmdResult> {
            const std::size_t idx = sh(p, w.cell);
            auto g = [body = w.body, idx, sig, p, env, mutation, budget](
                         const SemStore& s) -> Lift<LoopStep<CmdResult, SemStore>> {
              if (!s.at(idx).as_bool()) {
                return lift_step(
                    mutation.charge(StepSite::ma_while_false, Cost(1)),
                    lift_ret(LoopStep<CmdResult, SemStore>{
                        Done<CmdResult>{{SemVal::unit(), s}}}));
              }
              return lift_bind(
                  denote_cmd(body, sig, p, env, s, mutation, budget),
                  [mutation](const CmdResult& r) {
                    return lift_step(
                        mutation.charge(StepSite::ma_while_iter, Cost(2)),
                        lift_ret(LoopStep<CmdResult, SemStore>{
                            Continue<SemStore>{r.second}}));
                  });
            };
            return iter<CmdResult, SemStore>(g, store);
          },
          [&](const Cmd::Dcl& d) -> Lift<CmdResult> {
            Comp<SemVal> init = denote_exp(d.init, sig, p, env, mutation, budget);
            return lift_bind(
                lift_of_comp(std::move(init)),
                [body = d.body, sig, p, env, store, mutation,
                 budget](const SemVal& a) {
                  Sig extended;
                  extended.reserve(sig.size() + 1);
                  extended.push_back(runtime_positive(a));
                  extended.insert(extended.end(), sig.begin(), sig.end());
                  SemStore inner;
                  inner.reserve(store.size() + 1);
                  inner.push_back(a);
                  inner.insert(inner.end(), store.begin(), store.end());
                  return lift_bind(
                      denote_cmd(body, extended, ge_mono(p),
                                 up_env(ge_extend(ge_refl()), env), inner,
                                 mutation, budget),
                      [mutation](const CmdResult& r) {
                        SemStore popped(r.second.begin() + 1, r.second.end());
                        return lift_step(
                            mutation.charge(StepSite::ma_dcl, Cost(1)),
                            lift_ret(CmdResult{r.first, std::move(popped)}));
                      });
                });
          },
          [&](const Cmd::Get& g) -> Lift<CmdResult> {
            return lift_step(
                mutation.charge(StepSite::ma_get, Cost(1)),
                lift_ret(CmdResult{store.at(sh(p, g.cell)), store}));
          },
          [&](const Cmd::Set& s) -> Lift<CmdResult> {
            Comp<SemVal> value = denote_exp(s.value, sig, p, env, mutation, budget);
            const std::size_t idx = sh(p, s.cell);
            return lift_bind(
                lift_of_comp(std::move(value)), [idx, store, mutation](const SemVal& a) {
                  SemStore updated = store;
                  SemVal old = updated.at(idx);
                  updated[idx] = a;
                  return lift_step(
                      mutation.charge(StepSite::ma_set, Cost(1)),
                      lift_ret(CmdResult{std::move(old), std::move(updated)}));
                });
          },
      },
      m->node);
}

}  // namespace costsem::ma
