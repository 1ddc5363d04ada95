#include "dholc/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace dholc {

bool SourceSpan::contains(const SourceSpan& inner) const {
  if (!known() || !inner.known()) return true;
  auto before = [](int l1, int c1, int l2, int c2) { return l1 < l2 || (l1 == l2 && c1 <= c2); };
  return before(startLine, startCol, inner.startLine, inner.startCol) &&
         before(inner.endLine, inner.endCol, endLine, endCol);
}

std::string SourceSpan::str() const {
  std::string out = file.empty() ? "<input>" : file;
  if (!known()) return out;
  return out + ":" + std::to_string(startLine) + ":" + std::to_string(startCol) + "-" +
         std::to_string(endLine) + ":" + std::to_string(endCol);
}

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  if (!a.known()) return b;
  if (!b.known()) return a;
  SourceSpan out = a;
  if (b.startLine < a.startLine || (b.startLine == a.startLine && b.startCol < a.startCol)) {
    out.startLine = b.startLine;
    out.startCol = b.startCol;
  }
  if (b.endLine > a.endLine || (b.endLine == a.endLine && b.endCol > a.endCol)) {
    out.endLine = b.endLine;
    out.endCol = b.endCol;
  }
  return out;
}

// ---- construction ----

namespace {
template <class N> TypePtr ty_(N n, SourceSpan s) {
  return std::make_shared<const Type>(Type{std::move(n), std::move(s)});
}
template <class N> TermPtr tm_(N n, SourceSpan s) {
  return std::make_shared<const Term>(Term{std::move(n), std::move(s)});
}
}  // namespace

TypePtr mkBool(SourceSpan span) { return ty_(ty::Bool{}, std::move(span)); }
TypePtr mkBase(std::string name, std::vector<TermPtr> args, SourceSpan span) {
  return ty_(ty::Base{std::move(name), std::move(args)}, std::move(span));
}
TypePtr mkPi(std::string binder, TypePtr dom, TypePtr cod, SourceSpan span) {
  return ty_(ty::Pi{std::move(binder), std::move(dom), std::move(cod)}, std::move(span));
}
TypePtr mkArrow(TypePtr dom, TypePtr cod, SourceSpan span) {
  return mkPi(kAnon, std::move(dom), std::move(cod), std::move(span));
}
TypePtr mkRefine(TypePtr base, TermPtr pred, SourceSpan span) {
  return ty_(ty::Refine{std::move(base), std::move(pred)}, std::move(span));
}
TypePtr mkQuotient(TypePtr base, TermPtr rel, SourceSpan span) {
  return ty_(ty::Quotient{std::move(base), std::move(rel)}, std::move(span));
}

TermPtr mkConst(std::string name, SourceSpan span) { return tm_(tm::Const{std::move(name)}, std::move(span)); }
TermPtr mkVar(std::string name, SourceSpan span) { return tm_(tm::Var{std::move(name)}, std::move(span)); }
TermPtr mkLam(std::string binder, TypePtr annot, TermPtr body, SourceSpan span) {
  return tm_(tm::Lam{std::move(binder), std::move(annot), std::move(body)}, std::move(span));
}
TermPtr mkApp(TermPtr fun, TermPtr arg, SourceSpan span) {
  if (!span.known()) span = join(fun->span, arg->span);
  return tm_(tm::App{std::move(fun), std::move(arg)}, std::move(span));
}
TermPtr mkApps(TermPtr fun, const std::vector<TermPtr>& args) {
  for (const auto& a : args) fun = mkApp(fun, a);
  return fun;
}
TermPtr mkEq(TermPtr lhs, TermPtr rhs, TypePtr at, SourceSpan span) {
  return tm_(tm::Eq{std::move(lhs), std::move(rhs), std::move(at)}, std::move(span));
}
TermPtr mkImplies(TermPtr hyp, TermPtr concl, SourceSpan span) {
  return tm_(tm::Implies{std::move(hyp), std::move(concl)}, std::move(span));
}
TermPtr mkQuotElim(TermPtr scrutinee, std::string binder, TypePtr carrier, TermPtr body,
                   TypePtr motive, SourceSpan span) {
  return tm_(tm::QuotElim{std::move(scrutinee), std::move(binder), std::move(carrier), std::move(body),
                          std::move(motive)},
             std::move(span));
}
TermPtr mkTrue(SourceSpan span) { return tm_(tm::True{}, std::move(span)); }
TermPtr mkFalse(SourceSpan span) { return tm_(tm::False{}, std::move(span)); }
TermPtr mkNot(TermPtr arg, SourceSpan span) { return tm_(tm::Not{std::move(arg)}, std::move(span)); }
TermPtr mkAnd(TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return tm_(tm::And{std::move(lhs), std::move(rhs)}, std::move(span));
}
TermPtr mkOr(TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return tm_(tm::Or{std::move(lhs), std::move(rhs)}, std::move(span));
}
TermPtr mkIff(TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return tm_(tm::Iff{std::move(lhs), std::move(rhs)}, std::move(span));
}
TermPtr mkForall(std::string binder, TypePtr annot, TermPtr body, SourceSpan span) {
  return tm_(tm::Forall{std::move(binder), std::move(annot), std::move(body)}, std::move(span));
}
TermPtr mkExists(std::string binder, TypePtr annot, TermPtr body, SourceSpan span) {
  return tm_(tm::Exists{std::move(binder), std::move(annot), std::move(body)}, std::move(span));
}

std::pair<TermPtr, std::vector<TermPtr>> spine(const TermPtr& t) {
  std::vector<TermPtr> args;
  TermPtr head = t;
  while (const auto* app = head->as<tm::App>()) {
    args.push_back(app->arg);
    head = app->fun;
  }
  std::reverse(args.begin(), args.end());
  return {head, args};
}

const std::string& TheoryDecl::name() const {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, node);
}

// ---- contexts ----

Context Context::withVar(std::string name, TypePtr type) const {
  Context out = *this;
  out.entries_.push_back(ContextEntry::var(std::move(name), std::move(type)));
  return out;
}

Context Context::withAssumption(TermPtr formula) const {
  return withAssumption("h" + std::to_string(assumptionCount_ + 1), std::move(formula));
}

Context Context::withAssumption(std::string name, TermPtr formula) const {
  Context out = *this;
  out.entries_.push_back(ContextEntry::assume(std::move(name), std::move(formula)));
  ++out.assumptionCount_;
  return out;
}

TypePtr Context::lookupVar(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->isVar() && it->name == name) return it->type;
  return nullptr;
}

std::set<std::string> Context::varNames() const {
  std::set<std::string> out;
  for (const auto& e : entries_)
    if (e.isVar()) out.insert(e.name);
  return out;
}

// ---- free variables ----

namespace {

void fv(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out);

void fv(const TypePtr& a, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!a) return;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ty::Base>) {
          for (const auto& arg : n.args) fv(arg, bound, out);
        } else if constexpr (std::is_same_v<N, ty::Pi>) {
          fv(n.domain, bound, out);
          bool added = bound.insert(n.binder).second;
          fv(n.codomain, bound, out);
          if (added) bound.erase(n.binder);
        } else if constexpr (std::is_same_v<N, ty::Refine>) {
          fv(n.base, bound, out);
          fv(n.pred, bound, out);
        } else if constexpr (std::is_same_v<N, ty::Quotient>) {
          fv(n.base, bound, out);
          fv(n.rel, bound, out);
        }
      },
      a->node);
}

template <class F> void underBinder(const std::string& x, std::set<std::string>& bound, F&& f) {
  bool added = bound.insert(x).second;
  f();
  if (added) bound.erase(x);
}

void fv(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Var>) {
          if (!bound.count(n.name)) out.insert(n.name);
        } else if constexpr (std::is_same_v<N, tm::Lam> || std::is_same_v<N, tm::Forall> ||
                             std::is_same_v<N, tm::Exists>) {
          fv(n.annot, bound, out);
          underBinder(n.binder, bound, [&] { fv(n.body, bound, out); });
        } else if constexpr (std::is_same_v<N, tm::App>) {
          fv(n.fun, bound, out);
          fv(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          fv(n.lhs, bound, out);
          fv(n.rhs, bound, out);
          fv(n.at, bound, out);
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          fv(n.hyp, bound, out);
          fv(n.concl, bound, out);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          fv(n.scrutinee, bound, out);
          fv(n.carrier, bound, out);
          underBinder(n.binder, bound, [&] {
            fv(n.body, bound, out);
            fv(n.motive, bound, out);
          });
        } else if constexpr (std::is_same_v<N, tm::Not>) {
          fv(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, tm::And> || std::is_same_v<N, tm::Or> ||
                             std::is_same_v<N, tm::Iff>) {
          fv(n.lhs, bound, out);
          fv(n.rhs, bound, out);
        }
      },
      t->node);
}

}  // namespace

std::set<std::string> freeVars(const TermPtr& t) {
  std::set<std::string> bound, out;
  fv(t, bound, out);
  return out;
}

std::set<std::string> freeVars(const TypePtr& a) {
  std::set<std::string> bound, out;
  fv(a, bound, out);
  return out;
}

bool occursFree(const std::string& x, const TermPtr& t) { return freeVars(t).count(x) > 0; }
bool occursFree(const std::string& x, const TypePtr& a) { return freeVars(a).count(x) > 0; }

void collectConstants(const TypePtr& a, std::set<std::string>& out) {
  if (!a) return;
  if (const auto* b = a->as<ty::Base>()) {
    out.insert(b->name);
    for (const auto& arg : b->args) collectConstants(arg, out);
  } else if (const auto* p = a->as<ty::Pi>()) {
    collectConstants(p->domain, out);
    collectConstants(p->codomain, out);
  } else if (const auto* r = a->as<ty::Refine>()) {
    collectConstants(r->base, out);
    collectConstants(r->pred, out);
  } else if (const auto* q = a->as<ty::Quotient>()) {
    collectConstants(q->base, out);
    collectConstants(q->rel, out);
  }
}

void collectConstants(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Const>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<N, tm::Lam> || std::is_same_v<N, tm::Forall> ||
                             std::is_same_v<N, tm::Exists>) {
          collectConstants(n.annot, out);
          collectConstants(n.body, out);
        } else if constexpr (std::is_same_v<N, tm::App>) {
          collectConstants(n.fun, out);
          collectConstants(n.arg, out);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          collectConstants(n.lhs, out);
          collectConstants(n.rhs, out);
          collectConstants(n.at, out);
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          collectConstants(n.hyp, out);
          collectConstants(n.concl, out);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          collectConstants(n.scrutinee, out);
          collectConstants(n.carrier, out);
          collectConstants(n.body, out);
          collectConstants(n.motive, out);
        } else if constexpr (std::is_same_v<N, tm::Not>) {
          collectConstants(n.arg, out);
        } else if constexpr (std::is_same_v<N, tm::And> || std::is_same_v<N, tm::Or> ||
                             std::is_same_v<N, tm::Iff>) {
          collectConstants(n.lhs, out);
          collectConstants(n.rhs, out);
        }
      },
      t->node);
}

std::string freshName(const std::string& base, const std::set<std::string>& taken) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty() || stem == kAnon) stem = "x";
  if (!taken.count(base) && base != kAnon) return base;
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

// ---- substitution ----

namespace {

struct Substituter {
  std::string x;
  TermPtr s;
  std::set<std::string> fvS;

  // Chooses the binder name to use when pushing the substitution under `binder`.
  // Returns nullopt when `binder` shadows x.
  template <class... Bodies>
  std::optional<std::string> pickBinder(const std::string& binder, const Bodies&... bodies) const {
    if (binder == x) return std::nullopt;
    if (!fvS.count(binder)) return binder;
    std::set<std::string> taken = fvS;
    taken.insert(x);
    (taken.merge(freeVars(bodies)), ...);
    return freshName(binder, taken);
  }

  TypePtr go(const TypePtr& a) const {
    if (!a) return a;
    return std::visit(
        [&](const auto& n) -> TypePtr {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ty::Bool>) {
            return a;
          } else if constexpr (std::is_same_v<N, ty::Base>) {
            std::vector<TermPtr> args;
            args.reserve(n.args.size());
            for (const auto& arg : n.args) args.push_back(go(arg));
            return mkBase(n.name, std::move(args), a->span);
          } else if constexpr (std::is_same_v<N, ty::Pi>) {
            TypePtr dom = go(n.domain);
            auto binder = pickBinder(n.binder, n.codomain);
            if (!binder) return mkPi(n.binder, dom, n.codomain, a->span);
            TypePtr cod = *binder == n.binder ? n.codomain : rename(n.codomain, n.binder, *binder);
            return mkPi(*binder, dom, go(cod), a->span);
          } else if constexpr (std::is_same_v<N, ty::Refine>) {
            return mkRefine(go(n.base), go(n.pred), a->span);
          } else {
            return mkQuotient(go(n.base), go(n.rel), a->span);
          }
        },
        a->node);
  }

  template <class Make>
  TermPtr binderNode(const std::string& binder, const TypePtr& annot, const TermPtr& body,
                     Make make) const {
    TypePtr annot2 = go(annot);
    auto b = pickBinder(binder, body);
    if (!b) return make(binder, annot2, body);
    TermPtr body2 = *b == binder ? body : rename(body, binder, *b);
    return make(*b, annot2, go(body2));
  }

  TermPtr go(const TermPtr& t) const {
    if (!t) return t;
    return std::visit(
        [&](const auto& n) -> TermPtr {
          using N = std::decay_t<decltype(n)>;
          const SourceSpan& sp = t->span;
          if constexpr (std::is_same_v<N, tm::Var>) {
            return n.name == x ? s : t;
          } else if constexpr (std::is_same_v<N, tm::Const> || std::is_same_v<N, tm::True> ||
                               std::is_same_v<N, tm::False>) {
            return t;
          } else if constexpr (std::is_same_v<N, tm::Lam>) {
            return binderNode(n.binder, n.annot, n.body,
                              [&](auto b, auto a, auto body) { return mkLam(b, a, body, sp); });
          } else if constexpr (std::is_same_v<N, tm::Forall>) {
            return binderNode(n.binder, n.annot, n.body,
                              [&](auto b, auto a, auto body) { return mkForall(b, a, body, sp); });
          } else if constexpr (std::is_same_v<N, tm::Exists>) {
            return binderNode(n.binder, n.annot, n.body,
                              [&](auto b, auto a, auto body) { return mkExists(b, a, body, sp); });
          } else if constexpr (std::is_same_v<N, tm::App>) {
            return mkApp(go(n.fun), go(n.arg), sp);
          } else if constexpr (std::is_same_v<N, tm::Eq>) {
            return mkEq(go(n.lhs), go(n.rhs), go(n.at), sp);
          } else if constexpr (std::is_same_v<N, tm::Implies>) {
            return mkImplies(go(n.hyp), go(n.concl), sp);
          } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
            TermPtr scrut = go(n.scrutinee);
            TypePtr carrier = go(n.carrier);
            auto b = pickBinder(n.binder, n.body, n.motive);
            if (!b) return mkQuotElim(scrut, n.binder, carrier, n.body, n.motive, sp);
            TermPtr body = n.body;
            TypePtr motive = n.motive;
            if (*b != n.binder) {
              body = rename(body, n.binder, *b);
              motive = rename(motive, n.binder, *b);
            }
            return mkQuotElim(scrut, *b, carrier, go(body), go(motive), sp);
          } else if constexpr (std::is_same_v<N, tm::Not>) {
            return mkNot(go(n.arg), sp);
          } else if constexpr (std::is_same_v<N, tm::And>) {
            return mkAnd(go(n.lhs), go(n.rhs), sp);
          } else if constexpr (std::is_same_v<N, tm::Or>) {
            return mkOr(go(n.lhs), go(n.rhs), sp);
          } else {
            return mkIff(go(n.lhs), go(n.rhs), sp);
          }
        },
        t->node);
  }
};

}  // namespace

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& s) {
  if (!occursFree(x, t)) return t;
  return Substituter{x, s, freeVars(s)}.go(t);
}

TypePtr subst(const TypePtr& a, const std::string& x, const TermPtr& s) {
  if (!a || !occursFree(x, a)) return a;
  return Substituter{x, s, freeVars(s)}.go(a);
}

TermPtr rename(const TermPtr& t, const std::string& from, const std::string& to) {
  return subst(t, from, mkVar(to));
}

TypePtr rename(const TypePtr& a, const std::string& from, const std::string& to) {
  return subst(a, from, mkVar(to));
}

// ---- alpha equivalence ----

namespace {

class AlphaCmp {
 public:
  bool eq(const TypePtr& a, const TypePtr& b) {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    if (a->is<ty::Bool>()) return true;
    if (const auto* x = a->as<ty::Base>()) {
      const auto* y = b->as<ty::Base>();
      if (x->name != y->name || x->args.size() != y->args.size()) return false;
      for (std::size_t i = 0; i < x->args.size(); ++i)
        if (!eq(x->args[i], y->args[i])) return false;
      return true;
    }
    if (const auto* x = a->as<ty::Pi>()) {
      const auto* y = b->as<ty::Pi>();
      if (!eq(x->domain, y->domain)) return false;
      return under(x->binder, y->binder, [&] { return eq(x->codomain, y->codomain); });
    }
    if (const auto* x = a->as<ty::Refine>()) {
      const auto* y = b->as<ty::Refine>();
      return eq(x->base, y->base) && eq(x->pred, y->pred);
    }
    const auto* x = a->as<ty::Quotient>();
    const auto* y = b->as<ty::Quotient>();
    return eq(x->base, y->base) && eq(x->rel, y->rel);
  }

  bool eq(const TermPtr& a, const TermPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(b->node);
          if constexpr (std::is_same_v<N, tm::Const>) {
            return x.name == y.name;
          } else if constexpr (std::is_same_v<N, tm::Var>) {
            int i = index(left_, x.name), j = index(right_, y.name);
            if (i != j) return false;
            return i >= 0 || x.name == y.name;
          } else if constexpr (std::is_same_v<N, tm::Lam> || std::is_same_v<N, tm::Forall> ||
                               std::is_same_v<N, tm::Exists>) {
            if (!eq(x.annot, y.annot)) return false;
            return under(x.binder, y.binder, [&] { return eq(x.body, y.body); });
          } else if constexpr (std::is_same_v<N, tm::App>) {
            return eq(x.fun, y.fun) && eq(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, tm::Eq>) {
            return eq(x.lhs, y.lhs) && eq(x.rhs, y.rhs) && eq(x.at, y.at);
          } else if constexpr (std::is_same_v<N, tm::Implies>) {
            return eq(x.hyp, y.hyp) && eq(x.concl, y.concl);
          } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
            if (!eq(x.scrutinee, y.scrutinee) || !eq(x.carrier, y.carrier)) return false;
            return under(x.binder, y.binder, [&] { return eq(x.body, y.body) && eq(x.motive, y.motive); });
          } else if constexpr (std::is_same_v<N, tm::True> || std::is_same_v<N, tm::False>) {
            return true;
          } else if constexpr (std::is_same_v<N, tm::Not>) {
            return eq(x.arg, y.arg);
          } else {
            return eq(x.lhs, y.lhs) && eq(x.rhs, y.rhs);
          }
        },
        a->node);
  }

 private:
  static int index(const std::vector<std::string>& names, const std::string& n) {
    for (int i = static_cast<int>(names.size()) - 1; i >= 0; --i)
      if (names[i] == n) return i;
    return -1;
  }

  template <class F> bool under(const std::string& l, const std::string& r, F&& f) {
    left_.push_back(l);
    right_.push_back(r);
    bool ok = f();
    left_.pop_back();
    right_.pop_back();
    return ok;
  }

  std::vector<std::string> left_, right_;
};

}  // namespace

bool alphaEq(const TermPtr& a, const TermPtr& b) { return AlphaCmp{}.eq(a, b); }
bool alphaEq(const TypePtr& a, const TypePtr& b) { return AlphaCmp{}.eq(a, b); }

// ---- beta / eta ----

TermPtr applyBeta(const TermPtr& fun, const TermPtr& arg) {
  if (const auto* lam = fun->as<tm::Lam>()) return subst(lam->body, lam->binder, arg);
  return mkApp(fun, arg);
}

namespace {

TermPtr betaTerm(const TermPtr& t);

TypePtr betaType(const TypePtr& a) {
  if (!a) return a;
  if (const auto* b = a->as<ty::Base>()) {
    std::vector<TermPtr> args;
    for (const auto& arg : b->args) args.push_back(betaTerm(arg));
    return mkBase(b->name, std::move(args), a->span);
  }
  if (const auto* p = a->as<ty::Pi>()) return mkPi(p->binder, betaType(p->domain), betaType(p->codomain), a->span);
  if (const auto* r = a->as<ty::Refine>()) return mkRefine(betaType(r->base), betaTerm(r->pred), a->span);
  if (const auto* q = a->as<ty::Quotient>()) return mkQuotient(betaType(q->base), betaTerm(q->rel), a->span);
  return a;
}

TermPtr betaTerm(const TermPtr& t) {
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        const SourceSpan& sp = t->span;
        if constexpr (std::is_same_v<N, tm::App>) {
          TermPtr f = betaTerm(n.fun);
          if (const auto* lam = f->as<tm::Lam>()) return betaTerm(subst(lam->body, lam->binder, n.arg));
          return mkApp(f, betaTerm(n.arg), sp);
        } else if constexpr (std::is_same_v<N, tm::Lam>) {
          return mkLam(n.binder, betaType(n.annot), betaTerm(n.body), sp);
        } else if constexpr (std::is_same_v<N, tm::Forall>) {
          return mkForall(n.binder, betaType(n.annot), betaTerm(n.body), sp);
        } else if constexpr (std::is_same_v<N, tm::Exists>) {
          return mkExists(n.binder, betaType(n.annot), betaTerm(n.body), sp);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          return mkEq(betaTerm(n.lhs), betaTerm(n.rhs), betaType(n.at), sp);
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          return mkImplies(betaTerm(n.hyp), betaTerm(n.concl), sp);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          return mkQuotElim(betaTerm(n.scrutinee), n.binder, betaType(n.carrier), betaTerm(n.body),
                            betaType(n.motive), sp);
        } else if constexpr (std::is_same_v<N, tm::Not>) {
          return mkNot(betaTerm(n.arg), sp);
        } else if constexpr (std::is_same_v<N, tm::And>) {
          return mkAnd(betaTerm(n.lhs), betaTerm(n.rhs), sp);
        } else if constexpr (std::is_same_v<N, tm::Or>) {
          return mkOr(betaTerm(n.lhs), betaTerm(n.rhs), sp);
        } else if constexpr (std::is_same_v<N, tm::Iff>) {
          return mkIff(betaTerm(n.lhs), betaTerm(n.rhs), sp);
        } else {
          return t;
        }
      },
      t->node);
}

TermPtr etaTerm(const TermPtr& t);

TypePtr etaType(const TypePtr& a) {
  if (!a) return a;
  if (const auto* b = a->as<ty::Base>()) {
    std::vector<TermPtr> args;
    for (const auto& arg : b->args) args.push_back(etaTerm(arg));
    return mkBase(b->name, std::move(args), a->span);
  }
  if (const auto* p = a->as<ty::Pi>()) return mkPi(p->binder, etaType(p->domain), etaType(p->codomain), a->span);
  if (const auto* r = a->as<ty::Refine>()) return mkRefine(etaType(r->base), etaTerm(r->pred), a->span);
  if (const auto* q = a->as<ty::Quotient>()) return mkQuotient(etaType(q->base), etaTerm(q->rel), a->span);
  return a;
}

TermPtr etaTerm(const TermPtr& t) {
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        const SourceSpan& sp = t->span;
        if constexpr (std::is_same_v<N, tm::Lam>) {
          TermPtr body = etaTerm(n.body);
          if (const auto* app = body->as<tm::App>()) {
            const auto* v = app->arg->as<tm::Var>();
            if (v && v->name == n.binder && !occursFree(n.binder, app->fun)) return app->fun;
          }
          return mkLam(n.binder, etaType(n.annot), body, sp);
        } else if constexpr (std::is_same_v<N, tm::App>) {
          return mkApp(etaTerm(n.fun), etaTerm(n.arg), sp);
        } else if constexpr (std::is_same_v<N, tm::Forall>) {
          return mkForall(n.binder, etaType(n.annot), etaTerm(n.body), sp);
        } else if constexpr (std::is_same_v<N, tm::Exists>) {
          return mkExists(n.binder, etaType(n.annot), etaTerm(n.body), sp);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          return mkEq(etaTerm(n.lhs), etaTerm(n.rhs), etaType(n.at), sp);
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          return mkImplies(etaTerm(n.hyp), etaTerm(n.concl), sp);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          return mkQuotElim(etaTerm(n.scrutinee), n.binder, etaType(n.carrier), etaTerm(n.body),
                            etaType(n.motive), sp);
        } else if constexpr (std::is_same_v<N, tm::Not>) {
          return mkNot(etaTerm(n.arg), sp);
        } else if constexpr (std::is_same_v<N, tm::And>) {
          return mkAnd(etaTerm(n.lhs), etaTerm(n.rhs), sp);
        } else if constexpr (std::is_same_v<N, tm::Or>) {
          return mkOr(etaTerm(n.lhs), etaTerm(n.rhs), sp);
        } else if constexpr (std::is_same_v<N, tm::Iff>) {
          return mkIff(etaTerm(n.lhs), etaTerm(n.rhs), sp);
        } else {
          return t;
        }
      },
      t->node);
}

}  // namespace

TermPtr betaNormalize(const TermPtr& t) { return t ? betaTerm(t) : t; }
TypePtr betaNormalize(const TypePtr& a) { return betaType(a); }
TermPtr etaReduce(const TermPtr& t) { return t ? etaTerm(t) : t; }

}  // namespace dholc
