#include "dholc/kernel.hpp"

#include <algorithm>
#include <cstdio>

#include "dholc/parser.hpp"

namespace dholc {

// ---- signature ----

void Signature::addTypeSym(const std::string& name, Telescope tele) {
  kinds_[name] = 't';
  typeSyms_[name] = std::move(tele);
  typeOrder_.push_back(name);
  order_.emplace_back('t', name);
}

void Signature::addConst(const std::string& name, TypePtr type) {
  kinds_[name] = 'c';
  consts_[name] = std::move(type);
  constOrder_.push_back(name);
  order_.emplace_back('c', name);
}

void Signature::addAxiom(const std::string& name, TermPtr formula) {
  kinds_[name] = 'a';
  axioms_.emplace_back(name, std::move(formula));
  order_.emplace_back('a', name);
}

const Telescope* Signature::telescope(const std::string& name) const {
  auto it = typeSyms_.find(name);
  return it == typeSyms_.end() ? nullptr : &it->second;
}

TypePtr Signature::constType(const std::string& name) const {
  auto it = consts_.find(name);
  return it == consts_.end() ? nullptr : it->second;
}

// ---- definitions ----

namespace {

struct DefTable {
  std::map<std::string, std::pair<Telescope, TypePtr>> types;
  std::map<std::string, TermPtr> terms;

  TermPtr term(const TermPtr& t) const {
    if (!t) return t;
    return std::visit(
        [&](const auto& n) -> TermPtr {
          using N = std::decay_t<decltype(n)>;
          const SourceSpan& sp = t->span;
          if constexpr (std::is_same_v<N, tm::Const>) {
            auto it = terms.find(n.name);
            return it == terms.end() ? t : it->second;
          } else if constexpr (std::is_same_v<N, tm::Var> || std::is_same_v<N, tm::True> ||
                               std::is_same_v<N, tm::False>) {
            return t;
          } else if constexpr (std::is_same_v<N, tm::Lam>) {
            return mkLam(n.binder, type(n.annot), term(n.body), sp);
          } else if constexpr (std::is_same_v<N, tm::Forall>) {
            return mkForall(n.binder, type(n.annot), term(n.body), sp);
          } else if constexpr (std::is_same_v<N, tm::Exists>) {
            return mkExists(n.binder, type(n.annot), term(n.body), sp);
          } else if constexpr (std::is_same_v<N, tm::App>) {
            return mkApp(term(n.fun), term(n.arg), sp);
          } else if constexpr (std::is_same_v<N, tm::Eq>) {
            return mkEq(term(n.lhs), term(n.rhs), type(n.at), sp);
          } else if constexpr (std::is_same_v<N, tm::Implies>) {
            return mkImplies(term(n.hyp), term(n.concl), sp);
          } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
            return mkQuotElim(term(n.scrutinee), n.binder, type(n.carrier), term(n.body), type(n.motive), sp);
          } else if constexpr (std::is_same_v<N, tm::Not>) {
            return mkNot(term(n.arg), sp);
          } else if constexpr (std::is_same_v<N, tm::And>) {
            return mkAnd(term(n.lhs), term(n.rhs), sp);
          } else if constexpr (std::is_same_v<N, tm::Or>) {
            return mkOr(term(n.lhs), term(n.rhs), sp);
          } else {
            return mkIff(term(n.lhs), term(n.rhs), sp);
          }
        },
        t->node);
  }

  TypePtr type(const TypePtr& a) const {
    if (!a) return a;
    if (const auto* b = a->as<ty::Base>()) {
      std::vector<TermPtr> args;
      for (const auto& arg : b->args) args.push_back(term(arg));
      auto it = types.find(b->name);
      if (it == types.end()) return mkBase(b->name, std::move(args), a->span);
      const auto& [tele, rhs] = it->second;
      if (tele.size() != args.size())
        throw StructuralError("definition '" + b->name + "' expects " + std::to_string(tele.size()) +
                                  " argument(s), got " + std::to_string(args.size()),
                              a->span);
      // Rename parameters apart from the arguments, then substitute one by one.
      std::set<std::string> avoid;
      for (const auto& arg : args) avoid.merge(freeVars(arg));
      for (const auto& [x, _] : tele) avoid.insert(x);
      avoid.merge(freeVars(rhs));
      TypePtr body = rhs;
      std::vector<std::string> fresh;
      for (const auto& [x, _] : tele) {
        std::string y = freshName(x + "_", avoid);
        avoid.insert(y);
        body = rename(body, x, y);
        fresh.push_back(y);
      }
      for (std::size_t i = 0; i < args.size(); ++i) body = subst(body, fresh[i], args[i]);
      return body;
    }
    if (const auto* p = a->as<ty::Pi>()) return mkPi(p->binder, type(p->domain), type(p->codomain), a->span);
    if (const auto* r = a->as<ty::Refine>()) return mkRefine(type(r->base), term(r->pred), a->span);
    if (const auto* q = a->as<ty::Quotient>()) return mkQuotient(type(q->base), term(q->rel), a->span);
    return a;
  }
};

Telescope mapTelescope(const Telescope& tele, auto&& f) {
  Telescope out;
  for (const auto& [x, a] : tele) out.emplace_back(x, f(a));
  return out;
}

}  // namespace

std::pair<std::vector<TheoryDecl>, std::vector<Conjecture>> expandDefinitions(
    const std::vector<TheoryDecl>& decls, const std::vector<Conjecture>& conjectures) {
  DefTable defs;
  std::vector<TheoryDecl> out;
  auto ty = [&](const TypePtr& a) { return defs.type(a); };
  for (const auto& d : decls) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, decl::TypeSym>) {
            out.push_back({decl::TypeSym{n.name, mapTelescope(n.telescope, ty)}, d.span});
          } else if constexpr (std::is_same_v<N, decl::ConstDecl>) {
            out.push_back({decl::ConstDecl{n.name, defs.type(n.type)}, d.span});
          } else if constexpr (std::is_same_v<N, decl::Axiom>) {
            out.push_back({decl::Axiom{n.name, defs.term(n.formula)}, d.span});
          } else if constexpr (std::is_same_v<N, decl::TypeDef>) {
            Telescope tele = mapTelescope(n.telescope, ty);
            TypePtr rhs = defs.type(n.rhs);
            out.push_back({decl::TypeDef{n.name, tele, rhs}, d.span});
            defs.types[n.name] = {tele, rhs};
          } else {
            TypePtr a = defs.type(n.type);
            TermPtr rhs = defs.term(n.rhs);
            out.push_back({decl::TermDef{n.name, a, rhs}, d.span});
            defs.terms[n.name] = rhs;
          }
        },
        d.node);
  }
  std::vector<Conjecture> conj;
  for (const auto& c : conjectures) conj.push_back({c.name, defs.term(c.formula), c.span});
  return {out, conj};
}

std::vector<TheoryDecl> expandSugar(const std::vector<TheoryDecl>& decls) {
  std::vector<TheoryDecl> out;
  auto ty = [](const TypePtr& a) { return expandSugar(a); };
  for (const auto& d : decls) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, decl::TypeSym>) {
            out.push_back({decl::TypeSym{n.name, mapTelescope(n.telescope, ty)}, d.span});
          } else if constexpr (std::is_same_v<N, decl::ConstDecl>) {
            out.push_back({decl::ConstDecl{n.name, expandSugar(n.type)}, d.span});
          } else if constexpr (std::is_same_v<N, decl::Axiom>) {
            out.push_back({decl::Axiom{n.name, expandSugar(n.formula)}, d.span});
          } else if constexpr (std::is_same_v<N, decl::TypeDef>) {
            out.push_back({decl::TypeDef{n.name, mapTelescope(n.telescope, ty), expandSugar(n.rhs)}, d.span});
          } else {
            out.push_back({decl::TermDef{n.name, expandSugar(n.type), expandSugar(n.rhs)}, d.span});
          }
        },
        d.node);
  }
  return out;
}

std::vector<Conjecture> expandSugar(const std::vector<Conjecture>& conjectures) {
  std::vector<Conjecture> out;
  for (const auto& c : conjectures) out.push_back({c.name, expandSugar(c.formula), c.span});
  return out;
}

// ---- equivalence relations ----

std::vector<TermPtr> isEqRelObligations(const Context& ctx, const TermPtr& r, const TypePtr& a) {
  std::set<std::string> avoid = ctx.varNames();
  avoid.merge(freeVars(r));
  avoid.merge(freeVars(a));
  std::string x = freshName("x", avoid);
  avoid.insert(x);
  std::string y = freshName("y", avoid);
  avoid.insert(y);
  std::string z = freshName("z", avoid);
  auto rel = [&](const std::string& u, const std::string& v) { return mkApps(r, {mkVar(u), mkVar(v)}); };
  auto all = [&](const std::string& v, TermPtr body) { return expandSugar(mkForall(v, a, body)); };
  return {
      all(x, rel(x, x)),
      all(x, all(y, mkImplies(rel(x, y), rel(y, x)))),
      all(x, all(y, all(z, mkImplies(rel(x, y), mkImplies(rel(y, z), rel(x, z)))))),
  };
}

// ---- checker ----

Checker::Checker(CheckOptions opts) : opts_(opts) {}

std::string Checker::freshVar(const Context& ctx, const std::string& base, const std::set<std::string>& avoid) const {
  std::set<std::string> taken = ctx.varNames();
  taken.insert(avoid.begin(), avoid.end());
  return freshName(base, taken);
}

namespace {

Context pruneContext(const Context& ctx, const TermPtr& goal) {
  std::set<std::string> keep = freeVars(goal);
  const auto& entries = ctx.entries();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : entries) {
      std::set<std::string> fv;
      if (e.isVar()) {
        if (!keep.count(e.name)) continue;
        fv = freeVars(e.type);
      } else {
        fv = freeVars(e.formula);
        bool relevant = std::any_of(fv.begin(), fv.end(), [&](const auto& v) { return keep.count(v) > 0; });
        if (!relevant) continue;
      }
      for (const auto& v : fv) changed |= keep.insert(v).second;
    }
  }
  Context out;
  for (const auto& e : entries) {
    if (e.isVar()) {
      if (keep.count(e.name)) out = out.withVar(e.name, e.type);
      continue;
    }
    std::set<std::string> fv = freeVars(e.formula);
    bool inside = std::all_of(fv.begin(), fv.end(), [&](const auto& v) { return keep.count(v) > 0; });
    if (inside) out = out.withAssumption(e.name, e.formula);
  }
  return out;
}

Context betaContext(const Context& ctx) {
  Context out;
  for (const auto& e : ctx.entries())
    out = e.isVar() ? out.withVar(e.name, betaNormalize(e.type)) : out.withAssumption(e.name, betaNormalize(e.formula));
  return out;
}

}  // namespace

TermPtr closeObligation(const Obligation& ob) {
  TermPtr f = ob.goal;
  const auto& entries = ob.context.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    f = it->isVar() ? mkForall(it->name, it->type, f) : mkImplies(it->formula, f);
  return f;
}

void Checker::emit(const Context& ctx, const TermPtr& goal, const std::string& rule, const SourceSpan& sp) {
  TermPtr g = betaNormalize(goal);
  Obligation ob{pruneContext(betaContext(ctx), g), g, rule, sp, ""};
  TermPtr closed = closeObligation(ob);
  for (auto it = sink_.begin() + static_cast<std::ptrdiff_t>(dedupFrom_); it != sink_.end(); ++it)
    if (alphaEq(closeObligation(*it), closed)) return;
  char buf[16];
  std::snprintf(buf, sizeof buf, "ob%03d", nextId_++);
  ob.id = buf;
  sink_.push_back(std::move(ob));
}

std::vector<Obligation> Checker::takeSince(std::size_t mark) {
  std::vector<Obligation> out(sink_.begin() + static_cast<std::ptrdiff_t>(mark), sink_.end());
  return out;
}

TypePtr Checker::elabType(const Context& ctx, const TypePtr& a) {
  return std::visit(
      [&](const auto& n) -> TypePtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ty::Bool>) {
          return a;
        } else if constexpr (std::is_same_v<N, ty::Base>) {
          const Telescope* tele = sig_.telescope(n.name);
          if (!tele) throw StructuralError("unbound type symbol '" + n.name + "'", a->span);
          if (tele->size() != n.args.size())
            throw StructuralError("type symbol '" + n.name + "' expects " + std::to_string(tele->size()) +
                                      " argument(s), got " + std::to_string(n.args.size()),
                                  a->span);
          std::vector<TermPtr> args;
          std::vector<std::pair<std::string, TermPtr>> done;
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            TypePtr expected = (*tele)[i].second;
            for (const auto& [x, t] : done) expected = subst(expected, x, t);
            TermPtr arg = check(ctx, n.args[i], expected);
            args.push_back(arg);
            done.emplace_back((*tele)[i].first, arg);
          }
          return mkBase(n.name, std::move(args), a->span);
        } else if constexpr (std::is_same_v<N, ty::Pi>) {
          TypePtr dom = elabType(ctx, n.domain);
          std::string x = n.binder;
          TypePtr cod = n.codomain;
          if (x != kAnon && ctx.hasVar(x)) {
            std::string y = freshVar(ctx, x, freeVars(cod));
            cod = rename(cod, x, y);
            x = y;
          }
          return mkPi(x, dom, elabType(ctx.withVar(x, dom), cod), a->span);
        } else if constexpr (std::is_same_v<N, ty::Refine>) {
          TypePtr base = elabType(ctx, n.base);
          TermPtr pred = check(ctx, n.pred, mkArrow(base, mkBool()));
          return mkRefine(base, pred, a->span);
        } else {
          TypePtr base = elabType(ctx, n.base);
          TermPtr rel = check(ctx, n.rel, mkArrow(base, mkArrow(base, mkBool())));
          static const char* kRules[] = {"Qtype-refl", "Qtype-sym", "Qtype-trans"};
          auto goals = isEqRelObligations(ctx, rel, base);
          for (std::size_t i = 0; i < goals.size(); ++i) emit(ctx, goals[i], kRules[i], a->span);
          return mkQuotient(base, rel, a->span);
        }
      },
      a->node);
}

const ty::Pi* Checker::exposePi(const Context& ctx, const TypePtr& f, TypePtr& holder, TypePtr& quotient,
                                const SourceSpan& sp) {
  holder = f;
  quotient = nullptr;
  while (const auto* r = holder->as<ty::Refine>()) holder = r->base;
  if (const auto* pi = holder->as<ty::Pi>()) return pi;
  NormalType n = normalize(ctx, f);
  if (n.core->is<ty::Pi>()) {
    if (n.rel) quotient = n.toType();
    holder = n.core;
    return holder->as<ty::Pi>();
  }
  throw StructuralError("applied term does not have a function type", sp);
}

std::pair<TermPtr, TypePtr> Checker::infer(const Context& ctx, const TermPtr& t) {
  const SourceSpan& sp = t->span;
  auto result = std::visit(
      [&](const auto& n) -> std::pair<TermPtr, TypePtr> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Const>) {
          TypePtr a = sig_.constType(n.name);
          if (!a) throw StructuralError("unbound constant '" + n.name + "'", sp);
          return {t, a};
        } else if constexpr (std::is_same_v<N, tm::Var>) {
          TypePtr a = ctx.lookupVar(n.name);
          if (!a) throw StructuralError("unbound variable '" + n.name + "'", sp);
          return {t, a};
        } else if constexpr (std::is_same_v<N, tm::Lam>) {
          TypePtr annot = elabType(ctx, n.annot);
          std::string x = n.binder;
          TermPtr body = n.body;
          if (ctx.hasVar(x)) {
            std::string y = freshVar(ctx, x, freeVars(body));
            body = rename(body, x, y);
            x = y;
          }
          auto [body2, cod] = infer(ctx.withVar(x, annot), body);
          return {mkLam(x, annot, body2, sp), mkPi(x, annot, cod)};
        } else if constexpr (std::is_same_v<N, tm::App>) {
          auto [fun, ftype] = infer(ctx, n.fun);
          TypePtr holder, quotient;
          const ty::Pi* pi = exposePi(ctx, ftype, holder, quotient, sp);
          TermPtr arg = check(ctx, n.arg, pi->domain);
          TypePtr cod = pi->binder == kAnon ? pi->codomain : subst(pi->codomain, pi->binder, arg);
          if (quotient) {
            // Applying a member of a quotient of functions: the result must not depend on the representative.
            std::set<std::string> avoid = freeVars(fun);
            avoid.merge(freeVars(arg));
            std::string f1 = freshVar(ctx, "f", avoid);
            avoid.insert(f1);
            std::string f2 = freshVar(ctx, "f", avoid);
            TypePtr rep = quotient->as<ty::Quotient>()->base;
            Context inv = ctx.withVar(f1, rep)
                              .withVar(f2, rep)
                              .withAssumption(mkEq(mkVar(f1), fun, quotient))
                              .withAssumption(mkEq(mkVar(f2), fun, quotient));
            emit(inv, mkEq(mkApp(mkVar(f1), arg), mkApp(mkVar(f2), arg), cod), "quotE", sp);
          }
          return {mkApp(fun, arg, sp), cod};
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          if (n.at) {
            TypePtr at = elabType(ctx, n.at);
            TermPtr lhs = check(ctx, n.lhs, at);
            TermPtr rhs = check(ctx, n.rhs, at);
            return {mkEq(lhs, rhs, at, sp), mkBool()};
          }
          auto [lhs, at] = infer(ctx, n.lhs);
          TermPtr rhs = check(ctx, n.rhs, at);
          return {mkEq(lhs, rhs, at, sp), mkBool()};
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          TermPtr hyp = check(ctx, n.hyp, mkBool());
          TermPtr concl = check(ctx.withAssumption(hyp), n.concl, mkBool());
          return {mkImplies(hyp, concl, sp), mkBool()};
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          TypePtr carrier = elabType(ctx, n.carrier);
          const auto* q = carrier->as<ty::Quotient>();
          if (!q) throw StructuralError("quotient elimination needs a quotient carrier", n.carrier->span);
          TermPtr scrut = check(ctx, n.scrutinee, carrier);
          std::set<std::string> avoid = freeVars(n.body);
          avoid.merge(freeVars(n.motive));
          avoid.merge(freeVars(scrut));
          std::string x = ctx.hasVar(n.binder) ? freshVar(ctx, n.binder, avoid) : n.binder;
          Context inner = ctx.withVar(x, q->base).withAssumption(mkEq(mkVar(x), scrut, carrier));
          TypePtr motive = elabType(inner, rename(n.motive, n.binder, x));
          TermPtr body = check(inner, rename(n.body, n.binder, x), motive);
          avoid.insert(x);
          std::string x2 = freshVar(ctx, x, avoid);
          Context inv = ctx.withVar(x, q->base)
                            .withVar(x2, q->base)
                            .withAssumption(mkEq(mkVar(x), scrut, carrier))
                            .withAssumption(mkEq(mkVar(x2), scrut, carrier));
          emit(inv, mkEq(body, rename(body, x, x2), motive), "quotE", sp);
          return {mkQuotElim(scrut, x, carrier, body, motive, sp), subst(motive, x, scrut)};
        } else {
          throw StructuralError("connective sugar must be expanded before checking", sp);
        }
      },
      t->node);
  if (opts_.recordJudgments) judgments_.push_back({ctx, result.first, result.second});
  return result;
}

TermPtr Checker::check(const Context& ctx, const TermPtr& t, const TypePtr& b) {
  // A lambda against a Pi with the same domain is checked under the binder, keeping the codomain's dependency.
  const auto* lam = t->as<tm::Lam>();
  const auto* pi = b->as<ty::Pi>();
  if (lam && pi) {
    TypePtr annot = elabType(ctx, lam->annot);
    if (alphaEq(annot, pi->domain)) {
      std::set<std::string> avoid = freeVars(lam->body);
      avoid.erase(lam->binder);
      std::set<std::string> fc = freeVars(pi->codomain);
      if (pi->binder != kAnon) fc.erase(pi->binder);
      avoid.merge(fc);
      std::string x = ctx.hasVar(lam->binder) || avoid.count(lam->binder) ? freshVar(ctx, lam->binder, avoid)
                                                                           : lam->binder;
      TypePtr cod = pi->binder == kAnon ? pi->codomain : rename(pi->codomain, pi->binder, x);
      TermPtr body = check(ctx.withVar(x, annot), rename(lam->body, lam->binder, x), cod);
      TermPtr out = mkLam(x, annot, body, t->span);
      if (opts_.recordJudgments) judgments_.push_back({ctx, out, b});
      return out;
    }
  }
  auto [elab, a] = infer(ctx, t);
  coerce(ctx, elab, a, b, t->span);
  return elab;
}

void Checker::coerce(const Context& ctx, const TermPtr& t, const TypePtr& a, const TypePtr& b, const SourceSpan& sp) {
  if (alphaEq(a, b) || alphaEq(betaNormalize(a), betaNormalize(b))) return;
  if (const auto* r = b->as<ty::Refine>()) {
    coerce(ctx, t, a, r->base, sp);
    emit(ctx, mkApp(r->pred, t), "psubI", sp);
    return;
  }
  if (const auto* q = b->as<ty::Quotient>()) {
    if (!normalize(ctx, a).rel) {
      coerce(ctx, t, a, q->base, sp);
      return;
    }
  }
  subtype(ctx, a, b, sp, false, t);
}

// ---- public entry points ----

std::pair<TypePtr, std::vector<Obligation>> Checker::checkType(const Context& ctx, const TypePtr& a) {
  std::size_t mark = sink_.size();
  DedupScope scope(dedupFrom_, mark);
  TypePtr out = elabType(ctx, a);
  return {out, takeSince(mark)};
}

Checked Checker::inferType(const Context& ctx, const TermPtr& t) {
  std::size_t mark = sink_.size();
  DedupScope scope(dedupFrom_, mark);
  auto [term, type] = infer(ctx, t);
  return {term, type, takeSince(mark)};
}

Checked Checker::checkTermAgainst(const Context& ctx, const TermPtr& t, const TypePtr& b) {
  std::size_t mark = sink_.size();
  DedupScope scope(dedupFrom_, mark);
  TermPtr term = check(ctx, t, b);
  return {term, b, takeSince(mark)};
}

std::vector<Obligation> Checker::typeEqual(const Context& ctx, const TypePtr& a, const TypePtr& b) {
  std::size_t mark = sink_.size();
  DedupScope scope(dedupFrom_, mark);
  equalTypes(ctx, a, b, a->span);
  return takeSince(mark);
}

std::vector<Obligation> Checker::subtypeCheck(const Context& ctx, const TypePtr& a, const TypePtr& b) {
  std::size_t mark = sink_.size();
  DedupScope scope(dedupFrom_, mark);
  subtype(ctx, a, b, a->span, false);
  return takeSince(mark);
}

std::pair<NormalType, std::vector<Obligation>> Checker::normalizeType(const Context& ctx, const TypePtr& a) {
  std::size_t mark = sink_.size();
  DedupScope scope(dedupFrom_, mark);
  NormalType n = normalize(ctx, a);
  return {n, takeSince(mark)};
}

// ---- theories ----

namespace {

// The type a constant of type `a` ultimately produces, looking through binders and refinements.
std::string resultSymbol(TypePtr a) {
  while (true) {
    if (const auto* p = a->as<ty::Pi>()) a = p->codomain;
    else if (const auto* r = a->as<ty::Refine>()) a = r->base;
    else if (const auto* q = a->as<ty::Quotient>()) a = q->base;
    else break;
  }
  const auto* b = a->as<ty::Base>();
  return b ? b->name : "";
}

}  // namespace

CheckResult Checker::checkTheory(const std::vector<TheoryDecl>& decls, const std::vector<Conjecture>& conjectures) {
  CheckResult result;
  std::size_t mark = sink_.size();
  DedupScope scope(dedupFrom_, mark);
  std::set<std::string> names;
  try {
    for (const auto& d : decls) {
      if (!names.insert(d.name()).second || sig_.declared(d.name()))
        throw StructuralError("duplicate name '" + d.name() + "'", d.span);
      auto teleCtx = [&](const Telescope& tele, Telescope& out) {
        Context ctx;
        for (const auto& [x, a] : tele) {
          TypePtr ea = elabType(ctx, a);
          out.emplace_back(x, ea);
          ctx = ctx.withVar(x, ea);
        }
        return ctx;
      };
      std::visit(
          [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, decl::TypeSym>) {
              Telescope tele;
              teleCtx(n.telescope, tele);
              sig_.addTypeSym(n.name, tele);
              result.elaborated.push_back({decl::TypeSym{n.name, tele}, d.span});
            } else if constexpr (std::is_same_v<N, decl::ConstDecl>) {
              TypePtr a = elabType({}, n.type);
              sig_.addConst(n.name, a);
              result.elaborated.push_back({decl::ConstDecl{n.name, a}, d.span});
            } else if constexpr (std::is_same_v<N, decl::Axiom>) {
              TermPtr f = check({}, n.formula, mkBool());
              sig_.addAxiom(n.name, f);
              result.elaborated.push_back({decl::Axiom{n.name, f}, d.span});
            } else if constexpr (std::is_same_v<N, decl::TypeDef>) {
              Telescope tele;
              Context ctx = teleCtx(n.telescope, tele);
              TypePtr rhs = elabType(ctx, n.rhs);
              result.elaborated.push_back({decl::TypeDef{n.name, tele, rhs}, d.span});
            } else {
              TypePtr a = elabType({}, n.type);
              TermPtr rhs = check({}, n.rhs, a);
              result.elaborated.push_back({decl::TermDef{n.name, a, rhs}, d.span});
            }
          },
          d.node);
    }
    for (const auto& c : conjectures) {
      TermPtr f = check({}, c.formula, mkBool());
      result.conjectures.push_back({c.name, f, c.span});
      emit({}, f, "conjecture", c.span);
    }
  } catch (const StructuralError& e) {
    result.rejected = Rejection{e.reason(), e.span()};
  }
  std::set<std::string> produced;
  for (const auto& c : sig_.constants()) produced.insert(resultSymbol(sig_.constType(c)));
  for (const auto& a : sig_.typeSymbols())
    if (!produced.count(a))
      result.warnings.push_back("type symbol '" + a + "' has no constant producing an instance; inhabitation is assumed");
  result.obligations = takeSince(mark);
  return result;
}

// ---- simplifier ----

namespace {

struct Sequent {
  std::vector<TermPtr> hyps;
  TermPtr goal;
};

// Peels core foralls and implications off the goal.
void introduce(Sequent& s, std::set<std::string>& taken) {
  while (true) {
    TermPtr sugared = resugar(s.goal);
    if (sugared->is<tm::Forall>()) {
      const auto* eq = s.goal->as<tm::Eq>();
      const auto* lam = eq->lhs->as<tm::Lam>();
      std::string x = freshName(lam->binder, taken);
      taken.insert(x);
      s.goal = rename(lam->body, lam->binder, x);
      continue;
    }
    if (const auto* imp = s.goal->as<tm::Implies>()) {
      s.hyps.push_back(imp->hyp);
      s.goal = imp->concl;
      continue;
    }
    break;
  }
}

bool sameUpToBetaEta(const TermPtr& a, const TermPtr& b) {
  return alphaEq(etaReduce(betaNormalize(a)), etaReduce(betaNormalize(b)));
}

}  // namespace

SimplifyResult simplifyObligation(const Obligation& ob, const Signature& sig) {
  Sequent s;
  std::set<std::string> taken = ob.context.varNames();
  for (const auto& e : ob.context.entries())
    if (!e.isVar()) s.hyps.push_back(betaNormalize(e.formula));
  s.goal = betaNormalize(ob.goal);
  introduce(s, taken);
  if (const auto* eq = s.goal->as<tm::Eq>()) {
    if (sameUpToBetaEta(eq->lhs, eq->rhs)) return {SimplifyStatus::Discharged, "refl"};
  }
  for (const auto& h : s.hyps)
    if (sameUpToBetaEta(h, s.goal)) return {SimplifyStatus::Discharged, "assumption"};
  for (const auto& [name, ax] : sig.axioms())
    if (sameUpToBetaEta(ax, s.goal)) return {SimplifyStatus::Discharged, "axiom " + name};
  return {SimplifyStatus::Remaining, ""};
}

std::string printObligation(const Obligation& ob) {
  std::string ctx = printContext(ob.context);
  return (ctx.empty() ? "" : ctx + " ") + "|- " + printTerm(ob.goal);
}

}  // namespace dholc
