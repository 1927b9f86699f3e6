#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "costsem/budget.hpp"
#include "costsem/comp.hpp"
#include "costsem/cost.hpp"
#include "costsem/mutation.hpp"
#include "costsem/util.hpp"

// Simply-typed lambda calculus over bool: nameless well-scoped terms, the
// substitution calculus, a step-counting call-by-value stepper, and the
// cost-counting denotational evaluator (one step charged per application).
namespace costsem::stlc {

// ---------------------------------------------------------------- types

struct Ty;
using TyPtr = std::shared_ptr<const Ty>;

struct Ty {
  struct Bool {};
  struct Arrow {
    TyPtr dom;
    TyPtr cod;
  };
  std::variant<Bool, Arrow> node;
};

TyPtr ty_bool();
TyPtr ty_arrow(TyPtr dom, TyPtr cod);
bool equal(const TyPtr& a, const TyPtr& b);

// ---------------------------------------------------------------- terms

struct Tm;
using TmPtr = std::shared_ptr<const Tm>;

struct Tm {
  struct Var {
    std::size_t index;
  };
  // Binder annotations come from the surface syntax; check needs them to
  // synthesize. A missing annotation makes the term untypeable, not illegal.
  struct Lam {
    std::optional<TyPtr> ann;
    TmPtr body;
  };
  struct Ap {
    TmPtr fn;
    TmPtr arg;
  };
  struct TT {};
  struct FF {};
  std::variant<Var, Lam, Ap, TT, FF> node;
};

TmPtr var(std::size_t index);
TmPtr lam(TyPtr ann, TmPtr body);
TmPtr lam(TmPtr body);  // unannotated
TmPtr ap(TmPtr fn, TmPtr arg);
TmPtr tt();
TmPtr ff();

bool equal(const TmPtr& a, const TmPtr& b);
std::size_t size(const TmPtr& e);
bool is_value(const Tm& e);

// ---------------------------------------------------------------- statics

using Ctx = std::vector<TyPtr>;  // index 0 = innermost binder

// Type synthesis; absent signals ill-typed or ill-scoped input.
std::optional<TyPtr> check(const Ctx& ctx, const TmPtr& e);

// ---------------------------------------------------------------- substitution

// A simultaneous substitution: one image term per variable of the domain
// context (sub[i] replaces Var i).
using Sub = std::vector<TmPtr>;

Sub sub_id(std::size_t n);
Sub sub_cons(TmPtr e, Sub sub);
// shift: Sub(G, G') -> Sub(A::G, A::G'); Var 0 maps to itself, every image
// is weakened under the new binder.
Sub sub_shift(const Sub& sub);
TmPtr subst_apply(const TmPtr& e, const Sub& sub);
// substitute the first free variable, leaving the rest
TmPtr subst_head(const TmPtr& e, const TmPtr& arg);
// shift free variables >= cutoff by delta
TmPtr shift(const TmPtr& e, std::size_t delta, std::size_t cutoff = 0);

// ---------------------------------------------------------------- dynamics

// The unique call-by-value reduct (fn position first, then argument, then
// beta), or absent when e is a value. Stuck non-values return absent too;
// they cannot arise from well-typed closed input.
std::optional<TmPtr> step_once(const TmPtr& e);

struct EvalResult {
  enum class Status { value, stuck, fuel };
  Status status = Status::stuck;
  Cost cost{};    // transitions taken
  TmPtr value;    // set when status == value
};

using TraceFn = std::function<void(const TmPtr&)>;

// Iterates step_once, charging one per transition. The trace callback, when
// given, sees the initial term and every successor.
EvalResult eval_op(const TmPtr& e, Fuel fuel, const TraceFn& trace = nullptr);

// ---------------------------------------------------------------- denotation

class SemVal;
using SemFn = std::function<Comp<SemVal>(const SemVal&)>;

// bool at base type; environment-capturing function values at arrows.
// Function values are only ever compared by application at observable types.
class SemVal {
 public:
  static SemVal boolean(bool b);
  static SemVal fn(SemFn f);

  bool is_bool() const;
  bool as_bool() const;
  const SemFn& as_fn() const;

 private:
  struct Node;
  explicit SemVal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Env = std::vector<SemVal>;  // index 0 = innermost binder

// The denotational clauses: variables and constants at cost zero, lam wraps
// its body in a function value at cost zero, ap runs fn then arg then
// charges one step and applies.
Comp<SemVal> denote(const TmPtr& e, const Env& env,
                    const Mutation& mutation = {}, Budget* budget = nullptr);

}  // namespace costsem::stlc
