#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "costsem/budget.hpp"
#include "costsem/comp.hpp"
#include "costsem/cost.hpp"
#include "costsem/lift.hpp"
#include "costsem/mutation.hpp"
#include "costsem/util.hpp"

// Modernized Algol: a total expression language (STLC plus nat and reified
// commands) and a command language with first-order store and while loops.
// Commands are indexed by a signature of declared assignables; weakening
// along the signature preorder and the possible-worlds denotation live here
// alongside the store-machine dynamics.
namespace costsem::ma {

// ---------------------------------------------------------------- types

struct MaTy;
using MaTyPtr = std::shared_ptr<const MaTy>;

struct MaTy {
  struct Unit {};
  struct Bool {};
  struct Nat {};
  struct Arrow {
    MaTyPtr dom;
    MaTyPtr cod;
  };
  struct CmdT {
    MaTyPtr result;
  };
  std::variant<Unit, Bool, Nat, Arrow, CmdT> node;
};

MaTyPtr ty_unit();
MaTyPtr ty_bool();
MaTyPtr ty_nat();
MaTyPtr ty_arrow(MaTyPtr dom, MaTyPtr cod);
MaTyPtr ty_cmd(MaTyPtr result);
bool equal(const MaTyPtr& a, const MaTyPtr& b);

// The storable (strictly positive) types.
enum class PosTy { unit, boolean, nat };

MaTyPtr to_ty(PosTy p);
std::optional<PosTy> as_positive(const MaTyPtr& t);

// Declared assignables, index 0 = innermost declaration.
using Sig = std::vector<PosTy>;

// ---------------------------------------------------------------- signature preorder

// Witness that the smaller signature occurs as a subsequence of the larger:
// Refl keeps everything, Mono keeps the head cell, Extend inserts a fresh one.
struct GeProof;
using GePtr = std::shared_ptr<const GeProof>;

struct GeProof {
  struct Refl {};
  struct Mono {
    GePtr sub;
  };
  struct Extend {
    GePtr sub;
  };
  std::variant<Refl, Mono, Extend> node;
};

GePtr ge_refl();
GePtr ge_mono(GePtr sub);
GePtr ge_extend(GePtr sub);

// Shift an assignable index along the witness.
std::size_t sh(const GePtr& p, std::size_t n);
// Composition: tr(p : S'' >= S', q : S' >= S) : S'' >= S.
GePtr tr(const GePtr& p, const GePtr& q);

// ---------------------------------------------------------------- syntax

struct Exp;
struct Cmd;
using ExpPtr = std::shared_ptr<const Exp>;
using CmdPtr = std::shared_ptr<const Cmd>;

struct Exp {
  struct Var {
    std::size_t index;
  };
  struct Triv {};
  struct Zero {};
  struct Suc {
    ExpPtr arg;
  };
  // branches: zero case, then successor case binding the predecessor at nat
  struct Ifz {
    ExpPtr scrutinee;
    ExpPtr zero_case;
    ExpPtr suc_case;
  };
  struct TT {};
  struct FF {};
  struct Lam {
    std::optional<MaTyPtr> ann;
    ExpPtr body;
  };
  struct Ap {
    ExpPtr fn;
    ExpPtr arg;
  };
  struct CmdVal {
    CmdPtr cmd;
  };
  std::variant<Var, Triv, Zero, Suc, Ifz, TT, FF, Lam, Ap, CmdVal> node;
};

struct Cmd {
  struct Ret {
    ExpPtr value;
  };
  // run e's command, bind its result, continue with body
  struct Bnd {
    ExpPtr subject;
    CmdPtr body;
  };
  struct While {
    std::size_t cell;
    CmdPtr body;
  };
  struct Get {
    std::size_t cell;
  };
  struct Set {
    std::size_t cell;
    ExpPtr value;
  };
  // declare a fresh assignable initialized by the expression; popped on exit
  struct Dcl {
    ExpPtr init;
    CmdPtr body;
  };
  std::variant<Ret, Bnd, While, Get, Set, Dcl> node;
};

ExpPtr var(std::size_t index);
ExpPtr triv();
ExpPtr zero();
ExpPtr suc(ExpPtr arg);
ExpPtr numeral(std::uint64_t n);
ExpPtr ifz(ExpPtr scrutinee, ExpPtr zero_case, ExpPtr suc_case);
ExpPtr tt();
ExpPtr ff();
ExpPtr lam(MaTyPtr ann, ExpPtr body);
ExpPtr lam(ExpPtr body);
ExpPtr ap(ExpPtr fn, ExpPtr arg);
ExpPtr cmd_val(CmdPtr cmd);

CmdPtr ret(ExpPtr value);
CmdPtr bnd(ExpPtr subject, CmdPtr body);
CmdPtr while_(std::size_t cell, CmdPtr body);
CmdPtr get(std::size_t cell);
CmdPtr set(std::size_t cell, ExpPtr value);
CmdPtr dcl(ExpPtr init, CmdPtr body);

bool equal(const ExpPtr& a, const ExpPtr& b);
bool equal(const CmdPtr& a, const CmdPtr& b);
std::size_t size(const ExpPtr& e);
std::size_t size(const CmdPtr& m);
bool is_value(const Exp& e);
// numeral readback for closed nat values
std::optional<std::uint64_t> numeral_value(const ExpPtr& e);

// ---------------------------------------------------------------- statics

using Ctx = std::vector<MaTyPtr>;  // index 0 = innermost binder

std::optional<MaTyPtr> check_exp(const Sig& sig, const Ctx& ctx, const ExpPtr& e);
std::optional<MaTyPtr> check_cmd(const Sig& sig, const Ctx& ctx, const CmdPtr& m);

// ---------------------------------------------------------------- weakening (signatures)

ExpPtr weaken_exp(const GePtr& p, const ExpPtr& e);
CmdPtr weaken_cmd(const GePtr& p, const CmdPtr& m);

// ---------------------------------------------------------------- substitution (contexts)

using Sub = std::vector<ExpPtr>;

Sub sub_id(std::size_t n);
Sub sub_cons(ExpPtr e, Sub sub);
Sub sub_shift(const Sub& sub);
Sub weaken_sub(const GePtr& p, const Sub& sub);
ExpPtr subst_exp(const ExpPtr& e, const Sub& sub);
CmdPtr subst_cmd(const CmdPtr& m, const Sub& sub);
ExpPtr subst_head(const ExpPtr& e, const ExpPtr& arg);
CmdPtr subst_head(const CmdPtr& m, const ExpPtr& arg);
// shift free context variables >= cutoff by delta
ExpPtr shift_exp(const ExpPtr& e, std::size_t delta, std::size_t cutoff = 0);
CmdPtr shift_cmd(const CmdPtr& m, std::size_t delta, std::size_t cutoff = 0);

// Re-index a closed value of strictly positive type into any signature;
// structural identity on unit, booleans and numerals.
ExpPtr coer(const ExpPtr& value);

// ---------------------------------------------------------------- dynamics

// closed values per signature cell
using Store = std::vector<ExpPtr>;

struct State {
  Store store;
  CmdPtr cmd;
};

std::optional<ExpPtr> exp_step_once(const ExpPtr& e);
// deterministic one-step transition; absent iff the state is final
// (ret of a value) or stuck
std::optional<State> cmd_step_once(const State& state);
bool is_final(const State& state);

struct ExpEvalResult {
  enum class Status { value, stuck, fuel };
  Status status = Status::stuck;
  Cost cost{};
  ExpPtr value;
};

ExpEvalResult eval_exp_op(const ExpPtr& e, Fuel fuel);

struct CmdEvalResult {
  enum class Status { value, stuck, fuel };
  Status status = Status::stuck;
  Cost cost{};   // transitions taken
  Store store;   // final store (status == value)
  ExpPtr value;  // final returned value (status == value)
};

using CmdTraceFn = std::function<void(const State&)>;

CmdEvalResult eval_cmd_op(const State& state, Fuel fuel,
                          const CmdTraceFn& trace = nullptr);

// ---------------------------------------------------------------- denotation

class SemVal;
using SemStore = std::vector<SemVal>;  // positive values per cell, index 0 innermost

struct SemUnit {
  friend bool operator==(const SemUnit&, const SemUnit&) { return true; }
};

// World-indexed function and command values: applied at any future signature
// with a witness from that future world back to where the value was built.
using SemFn = std::function<Comp<SemVal>(const Sig&, const GePtr&, const SemVal&)>;
using SemCmd = std::function<Lift<std::pair<SemVal, SemStore>>(
    const Sig&, const GePtr&, const SemStore&)>;

class SemVal {
 public:
  static SemVal unit();
  static SemVal boolean(bool b);
  static SemVal nat(std::uint64_t n);
  static SemVal fn(SemFn f);
  static SemVal command(SemCmd c);

  bool is_unit() const;
  bool is_bool() const;
  bool is_nat() const;
  bool is_fn() const;
  bool is_command() const;
  bool as_bool() const;
  std::uint64_t as_nat() const;
  const SemFn& as_fn() const;
  const SemCmd& as_command() const;

  // equality at strictly positive types only
  friend bool positive_equal(const SemVal& a, const SemVal& b);

 private:
  struct Node;
  explicit SemVal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool positive_equal(const SemStore& a, const SemStore& b);

using Env = std::vector<SemVal>;  // index 0 = innermost binder

// Possible-worlds action: identity on positive values; function and command
// values pre-compose their world index with tr(-, p).
SemVal up(const GePtr& p, const SemVal& v);
Env up_env(const GePtr& p, const Env& env);

Comp<SemVal> denote_exp(const ExpPtr& e, const Sig& sig, const GePtr& p,
                        const Env& env, const Mutation& mutation = {},
                        Budget* budget = nullptr);

Lift<std::pair<SemVal, SemStore>> denote_cmd(const CmdPtr& m, const Sig& sig,
                                             const GePtr& p, const Env& env,
                                             const SemStore& store,
                                             const Mutation& mutation = {},
                                             Budget* budget = nullptr);

}  // namespace costsem::ma
