#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dholc/subtype.hpp"
#include "dholc/syntax.hpp"

namespace dholc {

struct Obligation {
  Context context;
  TermPtr goal;
  std::string rule;
  SourceSpan span;
  std::string id;
};

struct Rejection {
  std::string reason;
  SourceSpan span;
};

class StructuralError : public std::runtime_error {
 public:
  StructuralError(std::string reason, SourceSpan span)
      : std::runtime_error(span.str() + ": " + reason), reason_(std::move(reason)), span_(std::move(span)) {}
  const std::string& reason() const { return reason_; }
  const SourceSpan& span() const { return span_; }

 private:
  std::string reason_;
  SourceSpan span_;
};

// Declarations checked so far. Types and formulas are stored elaborated.
class Signature {
 public:
  void addTypeSym(const std::string& name, Telescope tele);
  void addConst(const std::string& name, TypePtr type);
  void addAxiom(const std::string& name, TermPtr formula);

  const Telescope* telescope(const std::string& name) const;
  TypePtr constType(const std::string& name) const;
  bool declared(const std::string& name) const { return kinds_.count(name) > 0; }

  const std::vector<std::string>& typeSymbols() const { return typeOrder_; }
  const std::vector<std::string>& constants() const { return constOrder_; }
  const std::vector<std::pair<std::string, TermPtr>>& axioms() const { return axioms_; }
  // Declaration order over all three kinds: ('t'|'c'|'a', name).
  const std::vector<std::pair<char, std::string>>& order() const { return order_; }

 private:
  std::map<std::string, char> kinds_;
  std::map<std::string, Telescope> typeSyms_;
  std::map<std::string, TypePtr> consts_;
  std::vector<std::string> typeOrder_, constOrder_;
  std::vector<std::pair<std::string, TermPtr>> axioms_;
  std::vector<std::pair<char, std::string>> order_;
};

struct CheckOptions {
  bool quotCodAxiom = true;
  bool recordJudgments = false;
};

struct Judgment {
  Context context;
  TermPtr term;
  TypePtr type;
};

struct CheckResult {
  std::vector<Obligation> obligations;
  std::optional<Rejection> rejected;
  std::vector<TheoryDecl> elaborated;       // kernel-elaborated declarations, definitions included
  std::vector<Conjecture> conjectures;      // elaborated
  std::vector<std::string> warnings;

  bool accepted() const { return !rejected.has_value(); }
};

// Inlines TypeDef/TermDef uses. Definition declarations stay in the list so the kernel can check them.
std::pair<std::vector<TheoryDecl>, std::vector<Conjecture>> expandDefinitions(
    const std::vector<TheoryDecl>& decls, const std::vector<Conjecture>& conjectures);
std::vector<TheoryDecl> expandSugar(const std::vector<TheoryDecl>& decls);
std::vector<Conjecture> expandSugar(const std::vector<Conjecture>& conjectures);

// The three equivalence-relation goals for r over A, unreduced.
std::vector<TermPtr> isEqRelObligations(const Context& ctx, const TermPtr& r, const TypePtr& a);

struct Checked {
  TermPtr term;
  TypePtr type;
  std::vector<Obligation> obligations;
};

class Checker {
 public:
  explicit Checker(CheckOptions opts = {});

  CheckResult checkTheory(const std::vector<TheoryDecl>& decls, const std::vector<Conjecture>& conjectures = {});

  // Single-judgment entry points against the current signature. They throw StructuralError.
  std::pair<TypePtr, std::vector<Obligation>> checkType(const Context& ctx, const TypePtr& a);
  Checked inferType(const Context& ctx, const TermPtr& t);
  Checked checkTermAgainst(const Context& ctx, const TermPtr& t, const TypePtr& b);
  std::vector<Obligation> typeEqual(const Context& ctx, const TypePtr& a, const TypePtr& b);
  std::vector<Obligation> subtypeCheck(const Context& ctx, const TypePtr& a, const TypePtr& b);
  std::pair<NormalType, std::vector<Obligation>> normalizeType(const Context& ctx, const TypePtr& a);

  Signature& signature() { return sig_; }
  const Signature& signature() const { return sig_; }
  const std::vector<Judgment>& judgments() const { return judgments_; }
  const CheckOptions& options() const { return opts_; }

 private:
  friend class Normalizer;

  TypePtr elabType(const Context& ctx, const TypePtr& a);
  std::pair<TermPtr, TypePtr> infer(const Context& ctx, const TermPtr& t);
  TermPtr check(const Context& ctx, const TermPtr& t, const TypePtr& b);
  void coerce(const Context& ctx, const TermPtr& t, const TypePtr& a, const TypePtr& b, const SourceSpan& sp);
  // Sets `quotient` to the normalized function type when application must respect its relation.
  const ty::Pi* exposePi(const Context& ctx, const TypePtr& f, TypePtr& holder, TypePtr& quotient,
                         const SourceSpan& sp);

  void equalTypes(const Context& ctx, const TypePtr& a, const TypePtr& b, const SourceSpan& sp);
  // With a witness, the predicate goal is stated for that term only (rule psubI) instead of for all x.
  void subtype(const Context& ctx, const TypePtr& a, const TypePtr& b, const SourceSpan& sp, bool flipped,
               const TermPtr& witness = nullptr);
  void matchCores(const Context& ctx, const TypePtr& a, const TypePtr& b, const SourceSpan& sp, bool flipped);
  void baseArgEqs(const Context& ctx, const ty::Base& l, const ty::Base& r, const SourceSpan& sp);
  NormalType normalize(const Context& ctx, const TypePtr& a);

  void emit(const Context& ctx, const TermPtr& goal, const std::string& rule, const SourceSpan& sp);
  std::string freshVar(const Context& ctx, const std::string& base, const std::set<std::string>& avoid = {}) const;

  std::vector<Obligation> takeSince(std::size_t mark);

  // Obligations alpha-equal to one emitted since `dedupFrom_` are dropped.
  struct DedupScope {
    DedupScope(std::size_t& slot, std::size_t mark) : slot_(slot), saved_(slot) { slot_ = mark; }
    ~DedupScope() { slot_ = saved_; }
    std::size_t& slot_;
    std::size_t saved_;
  };

  CheckOptions opts_;
  Signature sig_;
  std::vector<Obligation> sink_;
  std::vector<Judgment> judgments_;
  int nextId_ = 1;
  std::size_t dedupFrom_ = 0;
};

enum class SimplifyStatus { Discharged, Remaining };

struct SimplifyResult {
  SimplifyStatus status;
  std::string reason;  // refl / assumption / axiom
};

SimplifyResult simplifyObligation(const Obligation& ob, const Signature& sig);

// The obligation as a closed formula: context folded into foralls and implications.
TermPtr closeObligation(const Obligation& ob);

std::string printObligation(const Obligation& ob);

}  // namespace dholc
