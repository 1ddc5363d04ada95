#include "dholc/hol.hpp"

#include <algorithm>
#include <cctype>

namespace dholc {

// ---- types ----

HolTypePtr holBool() {
  static const HolTypePtr b = std::make_shared<HolType>(HolType{HolType::Kind::Bool, "", nullptr, nullptr});
  return b;
}

HolTypePtr holBase(std::string name) {
  return std::make_shared<HolType>(HolType{HolType::Kind::Base, std::move(name), nullptr, nullptr});
}

HolTypePtr holArrow(HolTypePtr dom, HolTypePtr cod) {
  return std::make_shared<HolType>(HolType{HolType::Kind::Arrow, "", std::move(dom), std::move(cod)});
}

HolTypePtr holArrows(const std::vector<HolTypePtr>& doms, HolTypePtr cod) {
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) cod = holArrow(*it, cod);
  return cod;
}

bool holTypeEq(const HolTypePtr& a, const HolTypePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case HolType::Kind::Bool: return true;
    case HolType::Kind::Base: return a->name == b->name;
    case HolType::Kind::Arrow: return holTypeEq(a->dom, b->dom) && holTypeEq(a->cod, b->cod);
  }
  return false;
}

std::string printHolType(const HolTypePtr& a) {
  switch (a->kind) {
    case HolType::Kind::Bool: return "bool";
    case HolType::Kind::Base: return a->name;
    case HolType::Kind::Arrow: {
      std::string d = printHolType(a->dom);
      if (a->dom->kind == HolType::Kind::Arrow) d = "(" + d + ")";
      return d + " -> " + printHolType(a->cod);
    }
  }
  return "?";
}

// ---- terms ----

namespace {

HolTermPtr make(HolOp op, std::string name = {}, HolTypePtr type = nullptr, HolTermPtr lhs = nullptr,
                HolTermPtr rhs = nullptr) {
  return std::make_shared<HolTerm>(HolTerm{op, std::move(name), std::move(type), std::move(lhs), std::move(rhs)});
}

std::string fresh(const std::string& base, const std::set<std::string>& taken) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "x";
  if (!taken.count(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (!taken.count(c)) return c;
  }
}

HolTermPtr rebuild(const HolTerm& t, HolTermPtr lhs, HolTermPtr rhs) {
  return make(t.op, t.name, t.type, std::move(lhs), std::move(rhs));
}

}  // namespace

HolTermPtr holConst(std::string name) { return make(HolOp::Const, std::move(name)); }
HolTermPtr holVar(std::string name) { return make(HolOp::Var, std::move(name)); }
HolTermPtr holLam(std::string x, HolTypePtr a, HolTermPtr body) {
  return make(HolOp::Lam, std::move(x), std::move(a), std::move(body));
}
HolTermPtr holApp(HolTermPtr f, HolTermPtr a) { return make(HolOp::App, {}, nullptr, std::move(f), std::move(a)); }
HolTermPtr holApps(HolTermPtr f, const std::vector<HolTermPtr>& args) {
  for (const auto& a : args) f = holApp(f, a);
  return f;
}
HolTermPtr holEq(HolTermPtr s, HolTermPtr t, HolTypePtr at) {
  return make(HolOp::Eq, {}, std::move(at), std::move(s), std::move(t));
}
HolTermPtr holImplies(HolTermPtr a, HolTermPtr b) { return make(HolOp::Implies, {}, nullptr, std::move(a), std::move(b)); }
HolTermPtr holTrue() { return make(HolOp::True); }
HolTermPtr holFalse() { return make(HolOp::False); }
HolTermPtr holNot(HolTermPtr a) { return make(HolOp::Not, {}, nullptr, std::move(a)); }
HolTermPtr holAnd(HolTermPtr a, HolTermPtr b) { return make(HolOp::And, {}, nullptr, std::move(a), std::move(b)); }
HolTermPtr holAnd(const std::vector<HolTermPtr>& conjuncts) {
  if (conjuncts.empty()) return holTrue();
  HolTermPtr out = conjuncts.back();
  for (auto it = conjuncts.rbegin() + 1; it != conjuncts.rend(); ++it) out = holAnd(*it, out);
  return out;
}
HolTermPtr holOr(HolTermPtr a, HolTermPtr b) { return make(HolOp::Or, {}, nullptr, std::move(a), std::move(b)); }
HolTermPtr holIff(HolTermPtr a, HolTermPtr b) { return make(HolOp::Iff, {}, nullptr, std::move(a), std::move(b)); }
HolTermPtr holForall(std::string x, HolTypePtr a, HolTermPtr body) {
  return make(HolOp::Forall, std::move(x), std::move(a), std::move(body));
}
HolTermPtr holExists(std::string x, HolTypePtr a, HolTermPtr body) {
  return make(HolOp::Exists, std::move(x), std::move(a), std::move(body));
}

std::set<std::string> holFreeVars(const HolTermPtr& t) {
  std::set<std::string> out;
  if (!t) return out;
  if (t->op == HolOp::Var) {
    out.insert(t->name);
  } else if (t->isBinder()) {
    out = holFreeVars(t->lhs);
    out.erase(t->name);
  } else {
    out = holFreeVars(t->lhs);
    out.merge(holFreeVars(t->rhs));
  }
  return out;
}

void holConstants(const HolTermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->op == HolOp::Const) out.insert(t->name);
  holConstants(t->lhs, out);
  holConstants(t->rhs, out);
}

HolTermPtr holSubst(const HolTermPtr& t, const std::string& x, const HolTermPtr& s) {
  if (!t) return t;
  switch (t->op) {
    case HolOp::Var: return t->name == x ? s : t;
    case HolOp::Const:
    case HolOp::True:
    case HolOp::False: return t;
    default: break;
  }
  if (t->isBinder()) {
    if (t->name == x) return t;
    std::set<std::string> fvBody = holFreeVars(t->lhs);
    if (!fvBody.count(x)) return t;
    std::set<std::string> fvS = holFreeVars(s);
    std::string y = t->name;
    HolTermPtr body = t->lhs;
    if (fvS.count(y)) {
      std::set<std::string> taken = fvS;
      taken.merge(fvBody);
      taken.insert(x);
      y = fresh(y, taken);
      body = holSubst(body, t->name, holVar(y));
    }
    return make(t->op, y, t->type, holSubst(body, x, s));
  }
  return rebuild(*t, holSubst(t->lhs, x, s), holSubst(t->rhs, x, s));
}

namespace {

struct AlphaCmp {
  bool renameConsts = false;
  std::vector<std::string> left, right;
  std::map<std::string, std::string> l2r, r2l;

  bool bindName(const std::string& a, const std::string& b) {
    auto la = l2r.find(a);
    auto rb = r2l.find(b);
    if (la != l2r.end() || rb != r2l.end()) return la != l2r.end() && rb != r2l.end() && la->second == b;
    l2r[a] = b;
    r2l[b] = a;
    return true;
  }

  bool types(const HolTypePtr& a, const HolTypePtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case HolType::Kind::Bool: return true;
      case HolType::Kind::Base: return renameConsts ? bindName("type:" + a->name, "type:" + b->name) : a->name == b->name;
      case HolType::Kind::Arrow: return types(a->dom, b->dom) && types(a->cod, b->cod);
    }
    return false;
  }

  int index(const std::vector<std::string>& stack, const std::string& x) {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
      if (stack[static_cast<std::size_t>(i)] == x) return static_cast<int>(stack.size()) - 1 - i;
    return -1;
  }

  bool terms(const HolTermPtr& a, const HolTermPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->op != b->op) return false;
    switch (a->op) {
      case HolOp::Var: {
        int i = index(left, a->name), j = index(right, b->name);
        return i == j && (i >= 0 || a->name == b->name);
      }
      case HolOp::Const: return renameConsts ? bindName(a->name, b->name) : a->name == b->name;
      case HolOp::True:
      case HolOp::False: return true;
      default: break;
    }
    if (a->isBinder()) {
      if (!types(a->type, b->type)) return false;
      left.push_back(a->name);
      right.push_back(b->name);
      bool ok = terms(a->lhs, b->lhs);
      left.pop_back();
      right.pop_back();
      return ok;
    }
    if (a->op == HolOp::Eq && !types(a->type, b->type)) return false;
    return terms(a->lhs, b->lhs) && terms(a->rhs, b->rhs);
  }
};

}  // namespace

bool holAlphaEq(const HolTermPtr& a, const HolTermPtr& b) { return AlphaCmp{}.terms(a, b); }

bool holAlphaEqUpToRenaming(const HolTermPtr& a, const HolTermPtr& b) {
  AlphaCmp cmp;
  cmp.renameConsts = true;
  return cmp.terms(a, b);
}

HolTermPtr holBetaNormalize(const HolTermPtr& t) {
  if (!t) return t;
  switch (t->op) {
    case HolOp::Var:
    case HolOp::Const:
    case HolOp::True:
    case HolOp::False: return t;
    case HolOp::App: {
      HolTermPtr f = holBetaNormalize(t->lhs);
      if (f->op == HolOp::Lam) return holBetaNormalize(holSubst(f->lhs, f->name, t->rhs));
      return holApp(f, holBetaNormalize(t->rhs));
    }
    default: break;
  }
  if (t->isBinder()) return make(t->op, t->name, t->type, holBetaNormalize(t->lhs));
  return rebuild(*t, holBetaNormalize(t->lhs), holBetaNormalize(t->rhs));
}

namespace {

void printInto(const HolTermPtr& t, std::string& out, bool atom) {
  auto open = [&] { if (atom) out += "("; };
  auto close = [&] { if (atom) out += ")"; };
  switch (t->op) {
    case HolOp::Const:
    case HolOp::Var: out += t->name; return;
    case HolOp::True: out += "true"; return;
    case HolOp::False: out += "false"; return;
    case HolOp::Not:
      out += "~";
      printInto(t->lhs, out, true);
      return;
    case HolOp::App:
      open();
      printInto(t->lhs, out, t->lhs->op != HolOp::App);
      out += " ";
      printInto(t->rhs, out, true);
      close();
      return;
    case HolOp::Lam:
    case HolOp::Forall:
    case HolOp::Exists:
      open();
      out += t->op == HolOp::Lam ? "\\" : t->op == HolOp::Forall ? "forall " : "exists ";
      out += t->name + ":" + printHolType(t->type) + ". ";
      printInto(t->lhs, out, false);
      close();
      return;
    default: break;
  }
  const char* sym = t->op == HolOp::Eq        ? " = "
                    : t->op == HolOp::Implies ? " => "
                    : t->op == HolOp::And     ? " /\\ "
                    : t->op == HolOp::Or      ? " \\/ "
                                              : " <=> ";
  open();
  printInto(t->lhs, out, true);
  out += sym;
  printInto(t->rhs, out, true);
  close();
}

}  // namespace

std::string printHolTerm(const HolTermPtr& t) {
  std::string out;
  printInto(t, out, false);
  return out;
}

// ---- theories ----

HolTypePtr HolTheory::constType(const std::string& name) const {
  for (const auto& [c, a] : consts)
    if (c == name) return a;
  return nullptr;
}

bool HolTheory::hasType(const std::string& name) const {
  return std::find(typeSyms.begin(), typeSyms.end(), name) != typeSyms.end();
}

namespace {

void checkWellFormed(const HolTheory& thy, const HolTypePtr& a, const HolTermPtr& at) {
  switch (a->kind) {
    case HolType::Kind::Bool: return;
    case HolType::Kind::Base:
      if (!thy.hasType(a->name)) throw HolTypeError("unknown type '" + a->name + "'", at);
      return;
    case HolType::Kind::Arrow:
      checkWellFormed(thy, a->dom, at);
      checkWellFormed(thy, a->cod, at);
      return;
  }
}

void expect(const HolTypePtr& got, const HolTypePtr& want, const HolTermPtr& at) {
  if (!holTypeEq(got, want))
    throw HolTypeError("expected " + printHolType(want) + ", found " + printHolType(got) + " in " + printHolTerm(at),
                       at);
}

}  // namespace

HolTypePtr holInferType(const HolTheory& thy, const HolContext& ctx, const HolTermPtr& t) {
  switch (t->op) {
    case HolOp::Const: {
      HolTypePtr a = thy.constType(t->name);
      if (!a) throw HolTypeError("unknown constant '" + t->name + "'", t);
      return a;
    }
    case HolOp::Var:
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
        if (it->first == t->name) return it->second;
      throw HolTypeError("unbound variable '" + t->name + "'", t);
    case HolOp::True:
    case HolOp::False: return holBool();
    case HolOp::Not: expect(holInferType(thy, ctx, t->lhs), holBool(), t); return holBool();
    case HolOp::App: {
      HolTypePtr f = holInferType(thy, ctx, t->lhs);
      if (f->kind != HolType::Kind::Arrow) throw HolTypeError("applying a non-function in " + printHolTerm(t), t);
      expect(holInferType(thy, ctx, t->rhs), f->dom, t);
      return f->cod;
    }
    case HolOp::Eq:
      checkWellFormed(thy, t->type, t);
      expect(holInferType(thy, ctx, t->lhs), t->type, t);
      expect(holInferType(thy, ctx, t->rhs), t->type, t);
      return holBool();
    case HolOp::Implies:
    case HolOp::And:
    case HolOp::Or:
    case HolOp::Iff:
      expect(holInferType(thy, ctx, t->lhs), holBool(), t);
      expect(holInferType(thy, ctx, t->rhs), holBool(), t);
      return holBool();
    case HolOp::Lam:
    case HolOp::Forall:
    case HolOp::Exists: {
      checkWellFormed(thy, t->type, t);
      HolContext inner = ctx;
      inner.emplace_back(t->name, t->type);
      HolTypePtr body = holInferType(thy, inner, t->lhs);
      if (t->op == HolOp::Lam) return holArrow(t->type, body);
      expect(body, holBool(), t);
      return holBool();
    }
  }
  throw HolTypeError("malformed term", t);
}

void holCheckTheory(const HolTheory& thy) {
  for (const auto& [c, a] : thy.consts) checkWellFormed(thy, a, holConst(c));
  for (const auto& [name, f] : thy.axioms) {
    HolTypePtr a = holInferType(thy, {}, f);
    if (!holTypeEq(a, holBool())) throw HolTypeError("axiom '" + name + "' is not boolean", f);
  }
}

}  // namespace dholc
