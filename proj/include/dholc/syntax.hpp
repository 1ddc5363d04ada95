#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace dholc {

struct SourceSpan {
  std::string file;
  int startLine = 0;
  int startCol = 0;
  int endLine = 0;
  int endCol = 0;

  bool known() const { return startLine > 0; }
  bool contains(const SourceSpan& inner) const;
  std::string str() const;
};

SourceSpan join(const SourceSpan& a, const SourceSpan& b);

struct Term;
struct Type;
using TermPtr = std::shared_ptr<const Term>;
using TypePtr = std::shared_ptr<const Type>;

// Binder name used for non-dependent arrows.
inline constexpr const char* kAnon = "_";

namespace ty {
struct Bool {};
struct Base {
  std::string name;
  std::vector<TermPtr> args;
};
struct Pi {
  std::string binder;
  TypePtr domain;
  TypePtr codomain;
};
struct Refine {
  TypePtr base;
  TermPtr pred;
};
struct Quotient {
  TypePtr base;
  TermPtr rel;
};
}  // namespace ty

struct Type {
  using Node = std::variant<ty::Bool, ty::Base, ty::Pi, ty::Refine, ty::Quotient>;
  Node node;
  SourceSpan span;

  template <class T> const T* as() const { return std::get_if<T>(&node); }
  template <class T> bool is() const { return std::holds_alternative<T>(node); }
};

namespace tm {
struct Const {
  std::string name;
};
struct Var {
  std::string name;
};
struct Lam {
  std::string binder;
  TypePtr annot;
  TermPtr body;
};
struct App {
  TermPtr fun;
  TermPtr arg;
};
// `at` is null until elaboration fills it in.
struct Eq {
  TermPtr lhs;
  TermPtr rhs;
  TypePtr at;
};
struct Implies {
  TermPtr hyp;
  TermPtr concl;
};
// `use scrutinee as binder : carrier return motive in body`; carrier is the quotient type.
struct QuotElim {
  TermPtr scrutinee;
  std::string binder;
  TypePtr carrier;
  TermPtr body;
  TypePtr motive;
};

// Surface-only connectives, removed by expandSugar.
struct True {};
struct False {};
struct Not {
  TermPtr arg;
};
struct And {
  TermPtr lhs;
  TermPtr rhs;
};
struct Or {
  TermPtr lhs;
  TermPtr rhs;
};
struct Iff {
  TermPtr lhs;
  TermPtr rhs;
};
struct Forall {
  std::string binder;
  TypePtr annot;
  TermPtr body;
};
struct Exists {
  std::string binder;
  TypePtr annot;
  TermPtr body;
};
}  // namespace tm

struct Term {
  using Node = std::variant<tm::Const, tm::Var, tm::Lam, tm::App, tm::Eq, tm::Implies, tm::QuotElim,
                            tm::True, tm::False, tm::Not, tm::And, tm::Or, tm::Iff, tm::Forall,
                            tm::Exists>;
  Node node;
  SourceSpan span;

  template <class T> const T* as() const { return std::get_if<T>(&node); }
  template <class T> bool is() const { return std::holds_alternative<T>(node); }
  bool isSugar() const { return node.index() >= 7; }
};

// ---- construction ----

TypePtr mkBool(SourceSpan span = {});
TypePtr mkBase(std::string name, std::vector<TermPtr> args = {}, SourceSpan span = {});
TypePtr mkPi(std::string binder, TypePtr dom, TypePtr cod, SourceSpan span = {});
TypePtr mkArrow(TypePtr dom, TypePtr cod, SourceSpan span = {});
TypePtr mkRefine(TypePtr base, TermPtr pred, SourceSpan span = {});
TypePtr mkQuotient(TypePtr base, TermPtr rel, SourceSpan span = {});

TermPtr mkConst(std::string name, SourceSpan span = {});
TermPtr mkVar(std::string name, SourceSpan span = {});
TermPtr mkLam(std::string binder, TypePtr annot, TermPtr body, SourceSpan span = {});
TermPtr mkApp(TermPtr fun, TermPtr arg, SourceSpan span = {});
TermPtr mkApps(TermPtr fun, const std::vector<TermPtr>& args);
TermPtr mkEq(TermPtr lhs, TermPtr rhs, TypePtr at, SourceSpan span = {});
TermPtr mkImplies(TermPtr hyp, TermPtr concl, SourceSpan span = {});
TermPtr mkQuotElim(TermPtr scrutinee, std::string binder, TypePtr carrier, TermPtr body,
                   TypePtr motive, SourceSpan span = {});
TermPtr mkTrue(SourceSpan span = {});
TermPtr mkFalse(SourceSpan span = {});
TermPtr mkNot(TermPtr arg, SourceSpan span = {});
TermPtr mkAnd(TermPtr lhs, TermPtr rhs, SourceSpan span = {});
TermPtr mkOr(TermPtr lhs, TermPtr rhs, SourceSpan span = {});
TermPtr mkIff(TermPtr lhs, TermPtr rhs, SourceSpan span = {});
TermPtr mkForall(std::string binder, TypePtr annot, TermPtr body, SourceSpan span = {});
TermPtr mkExists(std::string binder, TypePtr annot, TermPtr body, SourceSpan span = {});

// Splits `f a1 ... an` into head and arguments.
std::pair<TermPtr, std::vector<TermPtr>> spine(const TermPtr& t);

// ---- theories and contexts ----

using Telescope = std::vector<std::pair<std::string, TypePtr>>;

namespace decl {
struct TypeSym {
  std::string name;
  Telescope telescope;
};
struct ConstDecl {
  std::string name;
  TypePtr type;
};
struct Axiom {
  std::string name;
  TermPtr formula;
};
struct TypeDef {
  std::string name;
  Telescope telescope;
  TypePtr rhs;
};
struct TermDef {
  std::string name;
  TypePtr type;
  TermPtr rhs;
};
}  // namespace decl

struct TheoryDecl {
  using Node = std::variant<decl::TypeSym, decl::ConstDecl, decl::Axiom, decl::TypeDef, decl::TermDef>;
  Node node;
  SourceSpan span;

  const std::string& name() const;
  template <class T> const T* as() const { return std::get_if<T>(&node); }
};

struct Conjecture {
  std::string name;
  TermPtr formula;
  SourceSpan span;
};

struct ContextEntry {
  enum class Kind { Var, Assumption };
  Kind kind;
  std::string name;
  TypePtr type;      // Var
  TermPtr formula;   // Assumption

  static ContextEntry var(std::string name, TypePtr type) {
    return {Kind::Var, std::move(name), std::move(type), nullptr};
  }
  static ContextEntry assume(std::string name, TermPtr formula) {
    return {Kind::Assumption, std::move(name), nullptr, std::move(formula)};
  }
  bool isVar() const { return kind == Kind::Var; }
};

class Context {
 public:
  Context() = default;

  Context withVar(std::string name, TypePtr type) const;
  Context withAssumption(TermPtr formula) const;
  Context withAssumption(std::string name, TermPtr formula) const;

  const std::vector<ContextEntry>& entries() const { return entries_; }
  TypePtr lookupVar(const std::string& name) const;
  bool hasVar(const std::string& name) const { return lookupVar(name) != nullptr; }
  std::set<std::string> varNames() const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<ContextEntry> entries_;
  int assumptionCount_ = 0;
};

// ---- binding ----

std::set<std::string> freeVars(const TermPtr& t);
std::set<std::string> freeVars(const TypePtr& a);
bool occursFree(const std::string& x, const TermPtr& t);
bool occursFree(const std::string& x, const TypePtr& a);
// Constants (and type symbols) mentioned anywhere.
void collectConstants(const TermPtr& t, std::set<std::string>& out);
void collectConstants(const TypePtr& a, std::set<std::string>& out);

// A name derived from `base` by a numeric suffix, avoiding `taken`.
std::string freshName(const std::string& base, const std::set<std::string>& taken);

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& s);
TypePtr subst(const TypePtr& a, const std::string& x, const TermPtr& s);
// Renames binder-free occurrences, i.e. subst with a Var.
TermPtr rename(const TermPtr& t, const std::string& from, const std::string& to);
TypePtr rename(const TypePtr& a, const std::string& from, const std::string& to);

bool alphaEq(const TermPtr& a, const TermPtr& b);
bool alphaEq(const TypePtr& a, const TypePtr& b);

// Full beta normalization; terms reaching the kernel are well typed so this terminates.
TermPtr betaNormalize(const TermPtr& t);
TypePtr betaNormalize(const TypePtr& a);
TermPtr etaReduce(const TermPtr& t);
// Beta-reduces the head application `(\x. b) a` once, if present.
TermPtr applyBeta(const TermPtr& fun, const TermPtr& arg);

// ---- sugar ----

TermPtr expandSugar(const TermPtr& t);
TypePtr expandSugar(const TypePtr& a);
TermPtr resugar(const TermPtr& t);
TypePtr resugar(const TypePtr& a);
bool containsSugar(const TermPtr& t);
bool containsSugar(const TypePtr& a);

}  // namespace dholc
