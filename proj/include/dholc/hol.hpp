#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dholc {

// ---- simple types ----

struct HolType;
using HolTypePtr = std::shared_ptr<const HolType>;

struct HolType {
  enum class Kind { Bool, Base, Arrow };
  Kind kind;
  std::string name;  // Base
  HolTypePtr dom, cod;  // Arrow
};

HolTypePtr holBool();
HolTypePtr holBase(std::string name);
HolTypePtr holArrow(HolTypePtr dom, HolTypePtr cod);
HolTypePtr holArrows(const std::vector<HolTypePtr>& doms, HolTypePtr cod);
bool holTypeEq(const HolTypePtr& a, const HolTypePtr& b);
std::string printHolType(const HolTypePtr& a);

// ---- terms ----

struct HolTerm;
using HolTermPtr = std::shared_ptr<const HolTerm>;

enum class HolOp { Const, Var, Lam, App, Eq, Implies, True, False, Not, And, Or, Iff, Forall, Exists };

struct HolTerm {
  HolOp op;
  std::string name;  // Const, Var, and the binder of Lam/Forall/Exists
  HolTypePtr type;   // binder type, or the type of an Eq
  HolTermPtr lhs, rhs;  // App: fun/arg; binders: body in lhs; unary: lhs

  bool isBinder() const { return op == HolOp::Lam || op == HolOp::Forall || op == HolOp::Exists; }
};

HolTermPtr holConst(std::string name);
HolTermPtr holVar(std::string name);
HolTermPtr holLam(std::string x, HolTypePtr a, HolTermPtr body);
HolTermPtr holApp(HolTermPtr f, HolTermPtr a);
HolTermPtr holApps(HolTermPtr f, const std::vector<HolTermPtr>& args);
HolTermPtr holEq(HolTermPtr s, HolTermPtr t, HolTypePtr at);
HolTermPtr holImplies(HolTermPtr a, HolTermPtr b);
HolTermPtr holTrue();
HolTermPtr holFalse();
HolTermPtr holNot(HolTermPtr a);
HolTermPtr holAnd(HolTermPtr a, HolTermPtr b);
HolTermPtr holAnd(const std::vector<HolTermPtr>& conjuncts);  // true when empty
HolTermPtr holOr(HolTermPtr a, HolTermPtr b);
HolTermPtr holIff(HolTermPtr a, HolTermPtr b);
HolTermPtr holForall(std::string x, HolTypePtr a, HolTermPtr body);
HolTermPtr holExists(std::string x, HolTypePtr a, HolTermPtr body);

std::set<std::string> holFreeVars(const HolTermPtr& t);
void holConstants(const HolTermPtr& t, std::set<std::string>& out);
HolTermPtr holSubst(const HolTermPtr& t, const std::string& x, const HolTermPtr& s);
bool holAlphaEq(const HolTermPtr& a, const HolTermPtr& b);
// Alpha-equivalence up to a consistent one-to-one renaming of constants (and base type names).
bool holAlphaEqUpToRenaming(const HolTermPtr& a, const HolTermPtr& b);
HolTermPtr holBetaNormalize(const HolTermPtr& t);
std::string printHolTerm(const HolTermPtr& t);

// ---- theories ----

struct HolTheory {
  std::vector<std::string> typeSyms;
  std::vector<std::pair<std::string, HolTypePtr>> consts;
  std::vector<std::pair<std::string, HolTermPtr>> axioms;
  std::vector<std::string> warnings;

  HolTypePtr constType(const std::string& name) const;
  bool hasType(const std::string& name) const;
};

struct HolConjecture {
  std::string name;
  HolTermPtr formula;
  std::string sourceObligation;
};

class HolTypeError : public std::runtime_error {
 public:
  HolTypeError(const std::string& message, HolTermPtr subterm)
      : std::runtime_error(message), subterm_(std::move(subterm)) {}
  const HolTermPtr& subterm() const { return subterm_; }

 private:
  HolTermPtr subterm_;
};

using HolContext = std::vector<std::pair<std::string, HolTypePtr>>;

HolTypePtr holInferType(const HolTheory& thy, const HolContext& ctx, const HolTermPtr& t);
// Throws HolTypeError unless every declaration and axiom is well-formed.
void holCheckTheory(const HolTheory& thy);

}  // namespace dholc
