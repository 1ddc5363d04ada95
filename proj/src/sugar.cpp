#include "dholc/syntax.hpp"

// Definitional connectives:
//   true      := (\x:bool. x) =[bool -> bool] (\x:bool. x)
//   forall    := (\x:A. F) =[(x:A) -> bool] (\x:A. true)
//   false     := forall x:bool. x
//   ~F        := F => false
//   F /\ G    := ~(F => ~G)
//   F \/ G    := ~F => G
//   F <=> G   := (F => G) /\ (G => F)
//   exists    := ~(forall x:A. ~F)

namespace dholc {

namespace {

TermPtr coreTrue(const SourceSpan& sp) {
  auto id = [&] { return mkLam("x", mkBool(), mkVar("x"), sp); };
  return mkEq(id(), id(), mkArrow(mkBool(), mkBool()), sp);
}

TermPtr coreForall(const std::string& x, const TypePtr& annot, const TermPtr& body, const SourceSpan& sp) {
  return mkEq(mkLam(x, annot, body, sp), mkLam(x, annot, coreTrue(sp), sp), mkPi(x, annot, mkBool()), sp);
}

TermPtr coreFalse(const SourceSpan& sp) { return coreForall("x", mkBool(), mkVar("x"), sp); }

TermPtr coreNot(const TermPtr& f, const SourceSpan& sp) { return mkImplies(f, coreFalse(sp), sp); }

TermPtr coreAnd(const TermPtr& f, const TermPtr& g, const SourceSpan& sp) {
  return coreNot(mkImplies(f, coreNot(g, sp), sp), sp);
}

TermPtr expandTerm(const TermPtr& t);

TypePtr expandType(const TypePtr& a) {
  if (!a) return a;
  if (const auto* b = a->as<ty::Base>()) {
    std::vector<TermPtr> args;
    for (const auto& arg : b->args) args.push_back(expandTerm(arg));
    return mkBase(b->name, std::move(args), a->span);
  }
  if (const auto* p = a->as<ty::Pi>()) return mkPi(p->binder, expandType(p->domain), expandType(p->codomain), a->span);
  if (const auto* r = a->as<ty::Refine>()) return mkRefine(expandType(r->base), expandTerm(r->pred), a->span);
  if (const auto* q = a->as<ty::Quotient>()) return mkQuotient(expandType(q->base), expandTerm(q->rel), a->span);
  return a;
}

TermPtr expandTerm(const TermPtr& t) {
  const SourceSpan& sp = t->span;
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Const> || std::is_same_v<N, tm::Var>) {
          return t;
        } else if constexpr (std::is_same_v<N, tm::Lam>) {
          return mkLam(n.binder, expandType(n.annot), expandTerm(n.body), sp);
        } else if constexpr (std::is_same_v<N, tm::App>) {
          return mkApp(expandTerm(n.fun), expandTerm(n.arg), sp);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          return mkEq(expandTerm(n.lhs), expandTerm(n.rhs), expandType(n.at), sp);
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          return mkImplies(expandTerm(n.hyp), expandTerm(n.concl), sp);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          return mkQuotElim(expandTerm(n.scrutinee), n.binder, expandType(n.carrier), expandTerm(n.body),
                            expandType(n.motive), sp);
        } else if constexpr (std::is_same_v<N, tm::True>) {
          return coreTrue(sp);
        } else if constexpr (std::is_same_v<N, tm::False>) {
          return coreFalse(sp);
        } else if constexpr (std::is_same_v<N, tm::Not>) {
          return coreNot(expandTerm(n.arg), sp);
        } else if constexpr (std::is_same_v<N, tm::And>) {
          return coreAnd(expandTerm(n.lhs), expandTerm(n.rhs), sp);
        } else if constexpr (std::is_same_v<N, tm::Or>) {
          return mkImplies(coreNot(expandTerm(n.lhs), sp), expandTerm(n.rhs), sp);
        } else if constexpr (std::is_same_v<N, tm::Iff>) {
          TermPtr f = expandTerm(n.lhs), g = expandTerm(n.rhs);
          return coreAnd(mkImplies(f, g, sp), mkImplies(g, f, sp), sp);
        } else if constexpr (std::is_same_v<N, tm::Forall>) {
          return coreForall(n.binder, expandType(n.annot), expandTerm(n.body), sp);
        } else {
          static_assert(std::is_same_v<N, tm::Exists>);
          return coreNot(coreForall(n.binder, expandType(n.annot), coreNot(expandTerm(n.body), sp), sp), sp);
        }
      },
      t->node);
}

// ---- recognizers over core terms ----

bool isIdentityOnBool(const TermPtr& t) {
  const auto* lam = t->as<tm::Lam>();
  if (!lam || !lam->annot->is<ty::Bool>()) return false;
  const auto* v = lam->body->as<tm::Var>();
  return v && v->name == lam->binder;
}

bool isCoreTrue(const TermPtr& t) {
  const auto* eq = t->as<tm::Eq>();
  if (!eq || !eq->at) return false;
  const auto* pi = eq->at->as<ty::Pi>();
  if (!pi || !pi->domain->is<ty::Bool>() || !pi->codomain->is<ty::Bool>()) return false;
  return isIdentityOnBool(eq->lhs) && isIdentityOnBool(eq->rhs);
}

struct Binder {
  std::string name;
  TypePtr annot;
  TermPtr body;
};

std::optional<Binder> matchForall(const TermPtr& t) {
  const auto* eq = t->as<tm::Eq>();
  if (!eq || !eq->at) return std::nullopt;
  const auto* pi = eq->at->as<ty::Pi>();
  const auto* l = eq->lhs->as<tm::Lam>();
  const auto* r = eq->rhs->as<tm::Lam>();
  if (!pi || !l || !r || !pi->codomain->is<ty::Bool>()) return std::nullopt;
  if (!alphaEq(l->annot, r->annot) || !alphaEq(l->annot, pi->domain)) return std::nullopt;
  if (!isCoreTrue(r->body)) return std::nullopt;
  return Binder{l->binder, l->annot, l->body};
}

bool isCoreFalse(const TermPtr& t) {
  auto b = matchForall(t);
  if (!b || !b->annot->is<ty::Bool>()) return false;
  const auto* v = b->body->as<tm::Var>();
  return v && v->name == b->name;
}

// Returns F when t is F => false.
TermPtr matchNot(const TermPtr& t) {
  const auto* imp = t->as<tm::Implies>();
  if (imp && isCoreFalse(imp->concl)) return imp->hyp;
  return nullptr;
}

TermPtr resugarTerm(const TermPtr& t);

TypePtr resugarType(const TypePtr& a) {
  if (!a) return a;
  if (const auto* b = a->as<ty::Base>()) {
    std::vector<TermPtr> args;
    for (const auto& arg : b->args) args.push_back(resugarTerm(arg));
    return mkBase(b->name, std::move(args), a->span);
  }
  if (const auto* p = a->as<ty::Pi>()) return mkPi(p->binder, resugarType(p->domain), resugarType(p->codomain), a->span);
  if (const auto* r = a->as<ty::Refine>()) return mkRefine(resugarType(r->base), resugarTerm(r->pred), a->span);
  if (const auto* q = a->as<ty::Quotient>()) return mkQuotient(resugarType(q->base), resugarTerm(q->rel), a->span);
  return a;
}

TermPtr resugarNegation(const TermPtr& inner, const SourceSpan& sp) {
  if (auto b = matchForall(inner)) {
    if (TermPtr body = matchNot(b->body))
      return mkExists(b->name, resugarType(b->annot), resugarTerm(body), sp);
  }
  if (const auto* imp = inner->as<tm::Implies>()) {
    if (TermPtr g = matchNot(imp->concl)) {
      // F /\ G, and possibly F <=> G
      const auto* l = imp->hyp->as<tm::Implies>();
      const auto* r = g->as<tm::Implies>();
      if (l && r && alphaEq(l->hyp, r->concl) && alphaEq(l->concl, r->hyp))
        return mkIff(resugarTerm(l->hyp), resugarTerm(l->concl), sp);
      return mkAnd(resugarTerm(imp->hyp), resugarTerm(g), sp);
    }
  }
  return mkNot(resugarTerm(inner), sp);
}

TermPtr resugarTerm(const TermPtr& t) {
  const SourceSpan& sp = t->span;
  if (isCoreTrue(t)) return mkTrue(sp);
  if (isCoreFalse(t)) return mkFalse(sp);
  if (auto b = matchForall(t)) return mkForall(b->name, resugarType(b->annot), resugarTerm(b->body), sp);
  if (TermPtr inner = matchNot(t)) return resugarNegation(inner, sp);
  if (const auto* imp = t->as<tm::Implies>()) {
    if (TermPtr f = matchNot(imp->hyp)) return mkOr(resugarTerm(f), resugarTerm(imp->concl), sp);
    return mkImplies(resugarTerm(imp->hyp), resugarTerm(imp->concl), sp);
  }
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Lam>) {
          return mkLam(n.binder, resugarType(n.annot), resugarTerm(n.body), sp);
        } else if constexpr (std::is_same_v<N, tm::App>) {
          return mkApp(resugarTerm(n.fun), resugarTerm(n.arg), sp);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          return mkEq(resugarTerm(n.lhs), resugarTerm(n.rhs), resugarType(n.at), sp);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          return mkQuotElim(resugarTerm(n.scrutinee), n.binder, resugarType(n.carrier), resugarTerm(n.body),
                            resugarType(n.motive), sp);
        } else {
          return t;
        }
      },
      t->node);
}

bool sugarIn(const TermPtr& t);

bool sugarIn(const TypePtr& a) {
  if (!a) return false;
  if (const auto* b = a->as<ty::Base>()) {
    for (const auto& arg : b->args)
      if (sugarIn(arg)) return true;
    return false;
  }
  if (const auto* p = a->as<ty::Pi>()) return sugarIn(p->domain) || sugarIn(p->codomain);
  if (const auto* r = a->as<ty::Refine>()) return sugarIn(r->base) || sugarIn(r->pred);
  if (const auto* q = a->as<ty::Quotient>()) return sugarIn(q->base) || sugarIn(q->rel);
  return false;
}

bool sugarIn(const TermPtr& t) {
  if (!t) return false;
  if (t->isSugar()) return true;
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Lam>) {
          return sugarIn(n.annot) || sugarIn(n.body);
        } else if constexpr (std::is_same_v<N, tm::App>) {
          return sugarIn(n.fun) || sugarIn(n.arg);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          return sugarIn(n.lhs) || sugarIn(n.rhs) || sugarIn(n.at);
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          return sugarIn(n.hyp) || sugarIn(n.concl);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          return sugarIn(n.scrutinee) || sugarIn(n.carrier) || sugarIn(n.body) || sugarIn(n.motive);
        } else {
          return false;
        }
      },
      t->node);
}

}  // namespace

TermPtr expandSugar(const TermPtr& t) { return t ? expandTerm(t) : t; }
TypePtr expandSugar(const TypePtr& a) { return expandType(a); }
TermPtr resugar(const TermPtr& t) { return t ? resugarTerm(expandTerm(t)) : t; }
TypePtr resugar(const TypePtr& a) { return resugarType(expandType(a)); }
bool containsSugar(const TermPtr& t) { return sugarIn(t); }
bool containsSugar(const TypePtr& a) { return sugarIn(a); }

}  // namespace dholc
