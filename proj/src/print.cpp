#include "costsem/print.hpp"

#include <cstddef>

#include "costsem/util.hpp"

namespace costsem::print {

namespace {

std::string var_name(std::size_t depth, std::size_t index) {
  if (index < depth) return "x" + std::to_string(depth - 1 - index);
  return "?" + std::to_string(index - depth);  // free; not re-parseable
}

// Assignable references: named when bound by an enclosing dcl, otherwise a
// literal index as seen from outside the printed fragment.
std::string cell_name(std::size_t dcl_depth, std::size_t index) {
  if (index < dcl_depth) return "a" + std::to_string(dcl_depth - 1 - index);
  return std::to_string(index - dcl_depth);
}

// ---------------------------------------------------------------- stlc

std::string stlc_term(const stlc::TmPtr& e, std::size_t depth, bool atom);

std::string stlc_ap_chain(const stlc::Tm::Ap& a, std::size_t depth) {
  std::string fn;
  if (std::holds_alternative<stlc::Tm::Ap>(a.fn->node))
    fn = stlc_ap_chain(std::get<stlc::Tm::Ap>(a.fn->node), depth);
  else
    fn = stlc_term(a.fn, depth, true);
  return fn + " " + stlc_term(a.arg, depth, true);
}

std::string stlc_term(const stlc::TmPtr& e, std::size_t depth, bool atom) {
  using namespace costsem::stlc;
  return std::visit(
      overloaded{
          [&](const Tm::Var& v) { return var_name(depth, v.index); },
          [&](const Tm::TT&) { return std::string("tt"); },
          [&](const Tm::FF&) { return std::string("ff"); },
          [&](const Tm::Lam& l) {
            std::string binder = "x" + std::to_string(depth);
            std::string ann = l.ann ? ": " + type(*l.ann) : "";
            std::string body = stlc_term(l.body, depth + 1, false);
            std::string out = "fn (" + binder + ann + ") => " + body;
            return atom ? "(" + out + ")" : out;
          },
          [&](const Tm::Ap& a) {
            std::string out = stlc_ap_chain(a, depth);
            return atom ? "(" + out + ")" : out;
          },
      },
      e->node);
}

// ---------------------------------------------------------------- ma

struct MaDepth {
  std::size_t vars = 0;
  std::size_t cells = 0;
};

std::string ma_exp(const ma::ExpPtr& e, MaDepth d, bool atom);
std::string ma_cmd(const ma::CmdPtr& m, MaDepth d);

std::string ma_ap_chain(const ma::Exp::Ap& a, MaDepth d) {
  std::string fn;
  if (std::holds_alternative<ma::Exp::Ap>(a.fn->node))
    fn = ma_ap_chain(std::get<ma::Exp::Ap>(a.fn->node), d);
  else
    fn = ma_exp(a.fn, d, true);
  return fn + " " + ma_exp(a.arg, d, true);
}

std::string ma_exp(const ma::ExpPtr& e, MaDepth d, bool atom) {
  using namespace costsem::ma;
  return std::visit(
      overloaded{
          [&](const Exp::Var& v) { return var_name(d.vars, v.index); },
          [&](const Exp::Triv&) { return std::string("()"); },
          [&](const Exp::Zero&) { return std::string("0"); },
          [&](const Exp::Suc& s) {
            if (auto n = numeral_value(e)) return std::to_string(*n);
            return "suc(" + ma_exp(s.arg, d, false) + ")";
          },
          [&](const Exp::Ifz& i) {
            MaDepth inner = d;
            inner.vars++;
            return "ifz(" + ma_exp(i.scrutinee, d, false) + ", " +
                   ma_exp(i.zero_case, d, false) + ", x" +
                   std::to_string(d.vars) + ". " +
                   ma_exp(i.suc_case, inner, false) + ")";
          },
          [&](const Exp::TT&) { return std::string("tt"); },
          [&](const Exp::FF&) { return std::string("ff"); },
          [&](const Exp::Lam& l) {
            std::string binder = "x" + std::to_string(d.vars);
            std::string ann = l.ann ? ": " + type(*l.ann) : "";
            MaDepth inner = d;
            inner.vars++;
            std::string out =
                "fn (" + binder + ann + ") => " + ma_exp(l.body, inner, false);
            return atom ? "(" + out + ")" : out;
          },
          [&](const Exp::Ap& a) {
            std::string out = ma_ap_chain(a, d);
            return atom ? "(" + out + ")" : out;
          },
          [&](const Exp::CmdVal& c) {
            return "cmd { " + ma_cmd(c.cmd, d) + " }";
          },
      },
      e->node);
}

std::string ma_cmd(const ma::CmdPtr& m, MaDepth d) {
  using namespace costsem::ma;
  return std::visit(
      overloaded{
          [&](const Cmd::Ret& r) { return "ret " + ma_exp(r.value, d, true); },
          [&](const Cmd::Bnd& b) {
            MaDepth inner = d;
            inner.vars++;
            return "bnd x" + std::to_string(d.vars) + " <- " +
                   ma_exp(b.subject, d, false) + " in " + ma_cmd(b.body, inner);
          },
          [&](const Cmd::While& w) {
            return "while[" + cell_name(d.cells, w.cell) + "] { " +
                   ma_cmd(w.body, d) + " }";
          },
          [&](const Cmd::Get& g) {
            return "get[" + cell_name(d.cells, g.cell) + "]";
          },
          [&](const Cmd::Set& s) {
            return "set[" + cell_name(d.cells, s.cell) +
                   "] := " + ma_exp(s.value, d, false);
          },
          [&](const Cmd::Dcl& dc) {
            MaDepth inner = d;
            inner.cells++;
            return "dcl a" + std::to_string(d.cells) + " := " +
                   ma_exp(dc.init, d, false) + " in " + ma_cmd(dc.body, inner);
          },
      },
      m->node);
}

}  // namespace

std::string type(const stlc::TyPtr& t) {
  using namespace costsem::stlc;
  return std::visit(
      overloaded{
          [&](const Ty::Bool&) { return std::string("bool"); },
          [&](const Ty::Arrow& a) {
            std::string dom = type(a.dom);
            if (std::holds_alternative<Ty::Arrow>(a.dom->node))
              dom = "(" + dom + ")";
            return dom + " -> " + type(a.cod);
          },
      },
      t->node);
}

std::string term(const stlc::TmPtr& e) { return stlc_term(e, 0, false); }

std::string type(const ma::MaTyPtr& t) {
  using namespace costsem::ma;
  return std::visit(
      overloaded{
          [&](const MaTy::Unit&) { return std::string("unit"); },
          [&](const MaTy::Bool&) { return std::string("bool"); },
          [&](const MaTy::Nat&) { return std::string("nat"); },
          [&](const MaTy::Arrow& a) {
            std::string dom = type(a.dom);
            if (std::holds_alternative<MaTy::Arrow>(a.dom->node))
              dom = "(" + dom + ")";
            return dom + " -> " + type(a.cod);
          },
          [&](const MaTy::CmdT& c) { return "cmd(" + type(c.result) + ")"; },
      },
      t->node);
}

std::string exp(const ma::ExpPtr& e) { return ma_exp(e, MaDepth{}, false); }
std::string cmd(const ma::CmdPtr& m) { return ma_cmd(m, MaDepth{}); }

std::string sem_value(const stlc::SemVal& v) {
  if (v.is_bool()) return v.as_bool() ? "tt" : "ff";
  return "<fn>";
}

std::string sem_value(const ma::SemVal& v) {
  if (v.is_unit()) return "()";
  if (v.is_bool()) return v.as_bool() ? "tt" : "ff";
  if (v.is_nat()) return std::to_string(v.as_nat());
  return v.is_fn() ? "<fn>" : "<cmd>";
}

std::string store(const ma::Store& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += exp(s[i]);
  }
  return out + "]";
}

}  // namespace costsem::print
