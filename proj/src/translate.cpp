#include "dholc/translate.hpp"

#include <algorithm>

namespace dholc {

namespace {

std::set<std::string> namesIn(const TypePtr& a, const std::vector<HolTermPtr>& terms) {
  std::set<std::string> out = freeVars(a);
  for (const auto& t : terms) out.merge(holFreeVars(t));
  return out;
}

std::string pick(const std::string& base, std::set<std::string>& taken) {
  std::string x = freshName(base == kAnon ? "x" : base, taken);
  taken.insert(x);
  return x;
}

bool trivial(const HolTermPtr& t) {
  if (t->op == HolOp::True) return true;
  return t->op == HolOp::Eq && holAlphaEq(t->lhs, t->rhs);
}

void conjuncts(const HolTermPtr& t, std::vector<HolTermPtr>& out) {
  if (t->op == HolOp::And) {
    conjuncts(t->lhs, out);
    conjuncts(t->rhs, out);
    return;
  }
  if (trivial(t)) return;
  for (const auto& c : out)
    if (holAlphaEq(c, t)) return;
  out.push_back(t);
}

HolTermPtr tidy(const HolTermPtr& t) {
  if (!t) return t;
  switch (t->op) {
    case HolOp::Var:
    case HolOp::Const:
    case HolOp::True:
    case HolOp::False: return t;
    case HolOp::And: {
      std::vector<HolTermPtr> parts;
      conjuncts(holAnd(tidy(t->lhs), tidy(t->rhs)), parts);
      return holAnd(parts);
    }
    case HolOp::Implies: {
      HolTermPtr hyp = tidy(t->lhs);
      HolTermPtr concl = tidy(t->rhs);
      if (trivial(hyp)) return concl;
      if (concl->op == HolOp::True) return concl;
      return holImplies(hyp, concl);
    }
    case HolOp::Forall: {
      HolTermPtr body = tidy(t->lhs);
      if (body->op == HolOp::True) return body;
      return holForall(t->name, t->type, body);
    }
    default: break;
  }
  HolTermPtr l = tidy(t->lhs);
  HolTermPtr r = tidy(t->rhs);
  if (l == t->lhs && r == t->rhs) return t;
  return std::make_shared<HolTerm>(HolTerm{t->op, t->name, t->type, l, r});
}

}  // namespace

HolTermPtr simplifyHol(const HolTermPtr& t) { return tidy(holBetaNormalize(t)); }

std::string Translator::relName(const std::string& typeSym) const {
  auto it = relNames_.find(typeSym);
  return it == relNames_.end() ? "rel_" + typeSym : it->second;
}

HolTypePtr Translator::type(const TypePtr& a) const {
  return std::visit(
      [&](const auto& n) -> HolTypePtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ty::Bool>) return holBool();
        else if constexpr (std::is_same_v<N, ty::Base>) return holBase(n.name);
        else if constexpr (std::is_same_v<N, ty::Pi>) return holArrow(type(n.domain), type(n.codomain));
        else return type(n.base);
      },
      a->node);
}

HolTermPtr Translator::per(const TypePtr& a, const HolTermPtr& s, const HolTermPtr& t) const {
  return std::visit(
      [&](const auto& n) -> HolTermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ty::Bool>) {
          return holEq(s, t, holBool());
        } else if constexpr (std::is_same_v<N, ty::Base>) {
          std::vector<HolTermPtr> args;
          for (const auto& arg : n.args) args.push_back(coreTerm(arg));
          args.push_back(s);
          args.push_back(t);
          return holApps(holConst(relName(n.name)), args);
        } else if constexpr (std::is_same_v<N, ty::Pi>) {
          std::set<std::string> taken = namesIn(a, {s, t});
          std::string x = pick(n.binder, taken);
          std::string y = pick(n.binder == kAnon ? "y" : n.binder, taken);
          TypePtr cod = n.binder == kAnon ? n.codomain : rename(n.codomain, n.binder, x);
          HolTypePtr dom = type(n.domain);
          return holForall(x, dom,
                           holForall(y, dom,
                                     holImplies(per(n.domain, holVar(x), holVar(y)),
                                                per(cod, holApp(s, holVar(x)), holApp(t, holVar(y))))));
        } else if constexpr (std::is_same_v<N, ty::Refine>) {
          HolTermPtr p = coreTerm(n.pred);
          return holAnd(per(n.base, s, t), holAnd(holApp(p, s), holApp(p, t)));
        } else {
          HolTermPtr r = coreTerm(n.rel);
          return holAnd(holApps(r, {s, t}), holAnd(per(n.base, s, s), per(n.base, t, t)));
        }
      },
      a->node);
}

HolTermPtr Translator::coreTerm(const TermPtr& t) const {
  return std::visit(
      [&](const auto& n) -> HolTermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Const>) {
          return holConst(n.name);
        } else if constexpr (std::is_same_v<N, tm::Var>) {
          return holVar(n.name);
        } else if constexpr (std::is_same_v<N, tm::Lam>) {
          return holLam(n.binder, type(n.annot), coreTerm(n.body));
        } else if constexpr (std::is_same_v<N, tm::App>) {
          return holApp(coreTerm(n.fun), coreTerm(n.arg));
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          if (!n.at) throw std::logic_error("translating an unelaborated equality");
          return per(n.at, coreTerm(n.lhs), coreTerm(n.rhs));
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          return holImplies(coreTerm(n.hyp), coreTerm(n.concl));
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          return holSubst(coreTerm(n.body), n.binder, coreTerm(n.scrutinee));
        } else if constexpr (std::is_same_v<N, tm::True>) {
          return holTrue();
        } else if constexpr (std::is_same_v<N, tm::False>) {
          return holFalse();
        } else if constexpr (std::is_same_v<N, tm::Not>) {
          return holNot(coreTerm(n.arg));
        } else if constexpr (std::is_same_v<N, tm::And>) {
          return holAnd(coreTerm(n.lhs), coreTerm(n.rhs));
        } else if constexpr (std::is_same_v<N, tm::Or>) {
          return holOr(coreTerm(n.lhs), coreTerm(n.rhs));
        } else if constexpr (std::is_same_v<N, tm::Iff>) {
          return holIff(coreTerm(n.lhs), coreTerm(n.rhs));
        } else if constexpr (std::is_same_v<N, tm::Forall>) {
          return holForall(n.binder, type(n.annot), holImplies(typing(n.annot, holVar(n.binder)), coreTerm(n.body)));
        } else {
          return holExists(n.binder, type(n.annot), holAnd(typing(n.annot, holVar(n.binder)), coreTerm(n.body)));
        }
      },
      t->node);
}

HolTermPtr Translator::finish(const HolTermPtr& t) const { return opts_.simplify ? simplifyHol(t) : t; }

HolTermPtr Translator::term(const TermPtr& t) const {
  return finish(coreTerm(opts_.rawCore ? expandSugar(t) : resugar(t)));
}

HolTheory Translator::theory(const std::vector<TheoryDecl>& elaborated) {
  std::set<std::string> used;
  for (const auto& d : elaborated) used.insert(d.name());
  relNames_.clear();
  for (const auto& d : elaborated) {
    if (!d.as<decl::TypeSym>()) continue;
    std::string r = "rel_" + d.name();
    while (used.count(r)) r += "_";
    used.insert(r);
    relNames_[d.name()] = r;
  }
  std::set<std::string> axiomNames;
  for (const auto& d : elaborated)
    if (d.as<decl::Axiom>()) axiomNames.insert(d.name());
  auto axiomName = [&](std::string base) {
    while (axiomNames.count(base) || used.count(base)) base += "_";
    axiomNames.insert(base);
    return base;
  };

  HolTheory thy;
  for (const auto& d : elaborated) {
    if (const auto* ts = d.as<decl::TypeSym>()) {
      thy.typeSyms.push_back(ts->name);
      std::vector<HolTypePtr> doms;
      std::set<std::string> taken;
      std::vector<HolTermPtr> params;
      std::vector<std::pair<std::string, HolTypePtr>> binders;
      for (const auto& [x, a] : ts->telescope) {
        doms.push_back(type(a));
        taken.insert(x);
        params.push_back(holVar(x));
        binders.emplace_back(x, type(a));
      }
      HolTypePtr self = holBase(ts->name);
      std::string rel = relName(ts->name);
      thy.consts.emplace_back(rel, holArrows(doms, holArrow(self, holArrow(self, holBool()))));
      std::string u = pick("u", taken), v = pick("v", taken), w = pick("w", taken);
      auto r = [&](const std::string& a, const std::string& b) {
        std::vector<HolTermPtr> args = params;
        args.push_back(holVar(a));
        args.push_back(holVar(b));
        return holApps(holConst(rel), args);
      };
      auto close = [&](HolTermPtr body, std::vector<std::string> vars) {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = holForall(*it, self, body);
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = holForall(it->first, it->second, body);
        return body;
      };
      thy.axioms.emplace_back(axiomName(ts->name + "_trans"),
                              close(holImplies(r(u, v), holImplies(r(v, w), r(u, w))), {u, v, w}));
      thy.axioms.emplace_back(axiomName(ts->name + "_sym"), close(holImplies(r(u, v), r(v, u)), {u, v}));
      thy.axioms.emplace_back(
          axiomName(ts->name + "_per"),
          close(holImplies(r(v, v), holEq(r(u, v), holEq(holVar(u), holVar(v), self), holBool())), {u, v}));
    } else if (const auto* c = d.as<decl::ConstDecl>()) {
      thy.consts.emplace_back(c->name, type(c->type));
      thy.axioms.emplace_back(axiomName("typing_" + c->name), finish(typing(c->type, holConst(c->name))));
    } else if (const auto* ax = d.as<decl::Axiom>()) {
      thy.axioms.emplace_back(ax->name, term(ax->formula));
    }
  }
  return thy;
}

std::pair<HolContext, std::vector<HolTermPtr>> Translator::context(const Context& ctx) const {
  HolContext vars;
  std::vector<HolTermPtr> hyps;
  for (const auto& e : ctx.entries()) {
    if (e.isVar()) {
      vars.emplace_back(e.name, type(e.type));
      hyps.push_back(finish(typing(e.type, holVar(e.name))));
    } else {
      hyps.push_back(term(e.formula));
    }
  }
  return {vars, hyps};
}

HolConjecture Translator::obligation(const Obligation& ob) const {
  return {ob.id, term(closeObligation(ob)), ob.id};
}

HolTypePtr translateType(const TypePtr& a) { return Translator().type(a); }
HolTermPtr translateTerm(const TermPtr& t, const TranslateOptions& opts) { return Translator(opts).term(t); }
HolTermPtr perRelation(const TypePtr& a, const HolTermPtr& s, const HolTermPtr& t) {
  return Translator().per(a, s, t);
}
HolTermPtr typingPredicate(const TypePtr& a, const HolTermPtr& t) { return Translator().typing(a, t); }

}  // namespace dholc
