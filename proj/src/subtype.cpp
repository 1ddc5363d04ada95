#include "dholc/subtype.hpp"

#include "dholc/kernel.hpp"
#include "dholc/parser.hpp"

namespace dholc {

TermPtr NormalType::predOrDefault() const {
  if (pred) return pred;
  return expandSugar(mkLam("x", core, mkTrue()));
}

TermPtr NormalType::relOrDefault() const {
  if (rel) return rel;
  return mkLam("x", core, mkLam("y", core, mkEq(mkVar("x"), mkVar("y"), core)));
}

TypePtr NormalType::toType() const {
  TypePtr out = core;
  if (pred) out = mkRefine(out, pred);
  if (rel) out = mkQuotient(out, rel);
  return out;
}

std::string printNormalType(const NormalType& n) { return printType(n.toType()); }

// Rewrites a type into a NormalType, innermost first.
class Normalizer {
 public:
  Normalizer(const Checker& checker, const Context& ctx) : quotCod_(checker.opts_.quotCodAxiom) {
    taken_ = ctx.varNames();
  }

  NormalType run(const TypePtr& a) {
    NormalType n = norm(a);
    if (n.pred) n.pred = betaNormalize(n.pred);
    if (n.rel) n.rel = betaNormalize(n.rel);
    return n;
  }

 private:
  std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
    std::set<std::string> all = taken_;
    all.insert(avoid.begin(), avoid.end());
    std::string x = freshName(base, all);
    return x;
  }

  static std::set<std::string> fvs(std::initializer_list<std::set<std::string>> sets) {
    std::set<std::string> out;
    for (const auto& s : sets) out.insert(s.begin(), s.end());
    return out;
  }

  NormalType norm(const TypePtr& a) {
    if (a->is<ty::Bool>() || a->is<ty::Base>()) return {a, nullptr, nullptr};
    if (const auto* r = a->as<ty::Refine>()) return refine(norm(r->base), r->pred);
    if (const auto* q = a->as<ty::Quotient>()) return quotient(norm(q->base), q->rel);
    const auto* p = a->as<ty::Pi>();
    NormalType dom = norm(p->domain);
    std::string x = p->binder;
    bool bound = x != kAnon;
    if (bound) taken_.insert(x);
    NormalType cod = norm(p->codomain);
    if (bound) taken_.erase(x);
    return piLaws(x, dom, cod);
  }

  // RR and RQ.
  NormalType refine(NormalType n, const TermPtr& p) {
    if (n.rel) {
      TermPtr rel = n.rel;
      n.rel = nullptr;
      NormalType inner = refine(std::move(n), p);
      inner.rel = rel;
      return inner;
    }
    if (!n.pred) return {n.core, p, nullptr};
    std::string x = fresh("x", fvs({freeVars(n.pred), freeVars(p)}));
    TermPtr both = expandSugar(mkAnd(applyBeta(n.pred, mkVar(x)), applyBeta(p, mkVar(x))));
    return {n.core, mkLam(x, n.core, both), nullptr};
  }

  // QQ: a relation on a quotient already contains the inner one.
  NormalType quotient(NormalType n, const TermPtr& r) {
    n.rel = r;
    return n;
  }

  // Domain laws first, so compatibility conditions are stated against the full codomain.
  NormalType piLaws(const std::string& x, NormalType dom, NormalType cod) {
    TypePtr domType = dom.toType();
    bool dependent = x != kAnon && occursFree(x, cod.toType());
    std::set<std::string> avoid = fvs({freeVars(domType), freeVars(cod.toType())});
    if (x != kAnon) avoid.insert(x);
    std::string v = x == kAnon ? fresh("x", avoid) : x;
    avoid.insert(v);
    std::string f = fresh("f", avoid);
    avoid.insert(f);
    std::string g = fresh("g", avoid);
    avoid.insert(g);

    if (dom.rel && !dependent) {
      TermPtr r = dom.rel;
      NormalType plain{dom.core, dom.pred, nullptr};
      TypePtr d1 = plain.toType();
      TypePtr c = cod.toType();
      TypePtr fn = mkPi(x, d1, c);
      std::string w = fresh("y", avoid);
      TermPtr body = mkForall(
          v, d1,
          mkForall(w, d1,
                   mkImplies(mkApps(r, {mkVar(v), mkVar(w)}),
                             mkEq(mkApp(mkVar(f), mkVar(v)), mkApp(mkVar(f), mkVar(w)), c))));
      NormalType inner = piLaws(x, std::move(plain), std::move(cod));
      return refine(std::move(inner), mkLam(f, fn, expandSugar(body)));
    }
    if (dom.pred && !dom.rel && !dependent) {
      TermPtr p = dom.pred;
      NormalType plain{dom.core, nullptr, nullptr};
      TypePtr c = cod.toType();
      TypePtr fn = mkPi(x, dom.core, cod.core);
      TermPtr body = mkForall(
          v, dom.core,
          mkImplies(mkApp(p, mkVar(v)), mkEq(mkApp(mkVar(f), mkVar(v)), mkApp(mkVar(g), mkVar(v)), c)));
      // The codomain's refinement only has to hold where p does; its relation is subsumed by the quotient.
      NormalType inner = piLaws(x, std::move(plain), NormalType{cod.core, nullptr, nullptr});
      if (cod.pred) {
        TermPtr guarded =
            mkForall(v, dom.core, mkImplies(mkApp(p, mkVar(v)), mkApp(cod.pred, mkApp(mkVar(f), mkVar(v)))));
        inner = refine(std::move(inner), mkLam(f, fn, expandSugar(guarded)));
      }
      return quotient(std::move(inner), mkLam(f, fn, mkLam(g, fn, expandSugar(body))));
    }
    if (quotCod_ && cod.rel) {
      TermPtr r = cod.rel;
      NormalType plain{cod.core, cod.pred, nullptr};
      TypePtr fn = mkPi(x, domType, plain.toType());
      TermPtr body = mkForall(v, domType,
                              mkApps(r, {mkApp(mkVar(f), mkVar(v)), mkApp(mkVar(g), mkVar(v))}));
      NormalType inner = piLaws(x, std::move(dom), std::move(plain));
      return quotient(std::move(inner), mkLam(f, fn, mkLam(g, fn, expandSugar(body))));
    }
    if (cod.pred && !cod.rel) {
      TermPtr p = cod.pred;
      NormalType plain{cod.core, nullptr, nullptr};
      TypePtr fn = mkPi(x, domType, plain.toType());
      TermPtr body = mkForall(v, domType, mkApp(p, mkApp(mkVar(f), mkVar(v))));
      NormalType inner = piLaws(x, std::move(dom), std::move(plain));
      return refine(std::move(inner), mkLam(f, fn, expandSugar(body)));
    }
    return {mkPi(x, domType, cod.toType()), nullptr, nullptr};
  }

  bool quotCod_;
  std::set<std::string> taken_;
};

NormalType Checker::normalize(const Context& ctx, const TypePtr& a) { return Normalizer(*this, ctx).run(a); }

namespace {

bool plain(const TypePtr& a) { return !a->is<ty::Refine>() && !a->is<ty::Quotient>(); }

std::string mismatch(const TypePtr& a, const TypePtr& b) {
  return "type mismatch: " + printType(a) + " is not a subtype of " + printType(b);
}

}  // namespace

void Checker::baseArgEqs(const Context& ctx, const ty::Base& l, const ty::Base& r, const SourceSpan& sp) {
  const Telescope* tele = sig_.telescope(l.name);
  if (!tele || tele->size() != l.args.size() || l.args.size() != r.args.size())
    throw StructuralError("malformed application of type symbol '" + l.name + "'", sp);
  std::vector<std::pair<std::string, TermPtr>> done;
  for (std::size_t i = 0; i < l.args.size(); ++i) {
    TypePtr at = (*tele)[i].second;
    for (const auto& [x, t] : done) at = subst(at, x, t);
    done.emplace_back((*tele)[i].first, l.args[i]);
    if (alphaEq(betaNormalize(l.args[i]), betaNormalize(r.args[i]))) continue;
    emit(ctx, mkEq(l.args[i], r.args[i], at), "congBase'", sp);
  }
}

void Checker::matchCores(const Context& ctx, const TypePtr& a, const TypePtr& b, const SourceSpan& sp, bool flipped) {
  if (a->is<ty::Bool>() && b->is<ty::Bool>()) return;
  const auto* ba = a->as<ty::Base>();
  const auto* bb = b->as<ty::Base>();
  if (ba && bb) {
    if (ba->name != bb->name) throw StructuralError(mismatch(a, b), sp);
    if (flipped) baseArgEqs(ctx, *bb, *ba, sp);
    else baseArgEqs(ctx, *ba, *bb, sp);
    return;
  }
  const auto* pa = a->as<ty::Pi>();
  const auto* pb = b->as<ty::Pi>();
  if (!pa || !pb) throw StructuralError(mismatch(a, b), sp);
  subtype(ctx, pb->domain, pa->domain, sp, !flipped);
  std::set<std::string> avoid = freeVars(pa->codomain);
  avoid.erase(pa->binder);
  std::set<std::string> fb = freeVars(pb->codomain);
  fb.erase(pb->binder);
  avoid.merge(fb);
  std::string x = freshVar(ctx, pa->binder == kAnon ? pb->binder : pa->binder, avoid);
  TypePtr dom = plain(pa->domain) && plain(pb->domain) ? pa->domain : pb->domain;
  TypePtr ca = pa->binder == kAnon ? pa->codomain : rename(pa->codomain, pa->binder, x);
  TypePtr cb = pb->binder == kAnon ? pb->codomain : rename(pb->codomain, pb->binder, x);
  subtype(ctx.withVar(x, dom), ca, cb, sp, flipped);
}

void Checker::subtype(const Context& ctx, const TypePtr& a, const TypePtr& b, const SourceSpan& sp, bool flipped,
                      const TermPtr& witness) {
  if (alphaEq(a, b)) return;
  NormalType na = normalize(ctx, a);
  NormalType nb = normalize(ctx, b);
  matchCores(ctx, na.core, nb.core, sp, flipped);
  std::set<std::string> avoid;
  for (const auto& t : {na.pred, na.rel, nb.pred, nb.rel})
    if (t) avoid.merge(freeVars(t));
  std::string x = freshVar(ctx, "x", avoid);
  avoid.insert(x);
  std::string y = freshVar(ctx, "y", avoid);
  if (nb.pred && !(na.pred && alphaEq(na.pred, nb.pred))) {
    TermPtr elem = witness ? witness : mkVar(x);
    Context inner = witness ? ctx : ctx.withVar(x, na.core);
    if (na.pred) inner = inner.withAssumption(mkApp(na.pred, elem));
    emit(inner, mkApp(nb.pred, elem), witness ? "psubI" : "subtPred", sp);
  }
  if (na.rel && !(nb.rel && alphaEq(na.rel, nb.rel))) {
    Context inner = ctx.withVar(x, na.core).withVar(y, na.core);
    if (na.pred)
      inner = inner.withAssumption(mkApp(na.pred, mkVar(x))).withAssumption(mkApp(na.pred, mkVar(y)));
    inner = inner.withAssumption(mkApps(na.rel, {mkVar(x), mkVar(y)}));
    TermPtr goal = nb.rel ? mkApps(nb.rel, {mkVar(x), mkVar(y)}) : mkEq(mkVar(x), mkVar(y), nb.core);
    emit(inner, goal, "subtRel", sp);
  }
}

void Checker::equalTypes(const Context& ctx, const TypePtr& a, const TypePtr& b, const SourceSpan& sp) {
  if (alphaEq(a, b)) return;
  if (a->is<ty::Bool>() && b->is<ty::Bool>()) return;
  const auto* ba = a->as<ty::Base>();
  const auto* bb = b->as<ty::Base>();
  if (ba && bb) {
    if (ba->name != bb->name) throw StructuralError("type mismatch: " + printType(a) + " vs " + printType(b), sp);
    baseArgEqs(ctx, *ba, *bb, sp);
    return;
  }
  const auto* pa = a->as<ty::Pi>();
  const auto* pb = b->as<ty::Pi>();
  if (pa && pb) {
    equalTypes(ctx, pa->domain, pb->domain, sp);
    std::set<std::string> avoid = freeVars(pa->codomain);
    avoid.erase(pa->binder);
    std::set<std::string> fb = freeVars(pb->codomain);
    fb.erase(pb->binder);
    avoid.merge(fb);
    std::string x = freshVar(ctx, pa->binder == kAnon ? pb->binder : pa->binder, avoid);
    TypePtr ca = pa->binder == kAnon ? pa->codomain : rename(pa->codomain, pa->binder, x);
    TypePtr cb = pb->binder == kAnon ? pb->codomain : rename(pb->codomain, pb->binder, x);
    equalTypes(ctx.withVar(x, pa->domain), ca, cb, sp);
    return;
  }
  if (plain(a) && plain(b)) throw StructuralError("type mismatch: " + printType(a) + " vs " + printType(b), sp);
  subtype(ctx, a, b, sp, false);
  subtype(ctx, b, a, sp, true);
}

}  // namespace dholc
