#pragma once

// Shared helpers for the test executables and the acceptance runner.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dholc/kernel.hpp"
#include "dholc/parser.hpp"
#include "dholc/pipeline.hpp"

namespace dholc::testing {

inline std::string sourceDir() { return DHOLC_SOURCE_DIR; }
inline std::string corpusFile(const std::string& name) { return sourceDir() + "/corpus/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Elaboration elaborateCorpus(const std::string& stem, const CheckOptions& opts = {}) {
  return elaborate(slurp(corpusFile(stem + ".dhol")), stem, opts);
}

// A checker whose signature holds the whole theory, for calling single-judgment entry points.
struct LoadedTheory {
  Checker checker;
  CheckResult result;
};

inline LoadedTheory loadTheory(const std::string& text, CheckOptions opts = {}) {
  ParsedTheory parsed = parseTheory(text);
  auto [decls, conjs] = expandDefinitions(parsed.decls, parsed.conjectures);
  LoadedTheory l{Checker(opts), {}};
  l.result = l.checker.checkTheory(expandSugar(decls), expandSugar(conjs));
  return l;
}

// Closed formulas compare up to alpha, beta and definitional sugar.
inline bool sameFormula(const TermPtr& a, const TermPtr& b) {
  return alphaEq(betaNormalize(expandSugar(a)), betaNormalize(expandSugar(b)));
}

struct GoldenEntry {
  std::string id, rule, formula;
};

// Golden files list "<id> <rule>" lines, each followed by an indented closed formula.
inline std::vector<GoldenEntry> readGolden(const std::string& path) {
  std::vector<GoldenEntry> out;
  std::istringstream in(slurp(path));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == ' ') {
      if (out.empty()) throw std::runtime_error("formula before header in " + path);
      out.back().formula = line.substr(line.find_first_not_of(' '));
      continue;
    }
    auto sp = line.find(' ');
    out.push_back({line.substr(0, sp), sp == std::string::npos ? "" : line.substr(sp + 1), ""});
  }
  return out;
}

inline std::vector<std::string> corpusStems() {
  return {"lists", "llist", "sets", "refined_domain", "settheory", "lconc_assoc", "sets_broken"};
}

// ---- random ASTs ----

// Syntactically valid (not necessarily well-typed) terms and types over a fixed vocabulary.
class AstGen {
 public:
  explicit AstGen(unsigned seed, bool sugar = true) : rng_(seed), sugar_(sugar) {}

  TermPtr term(int depth, std::vector<std::string> vars) {
    int hi = depth <= 0 ? 2 : (sugar_ ? 14 : 7);
    switch (pick(0, hi)) {
      case 0:
      case 1:
        if (!vars.empty()) return mkVar(vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))]);
        [[fallthrough]];
      case 2: return mkConst(kConsts[pick(0, 3)]);
      case 3: {
        std::string x = binder();
        TypePtr a = type(depth - 1, vars);
        vars.push_back(x);
        return mkLam(x, a, term(depth - 1, vars));
      }
      case 4:
      case 5: return mkApp(term(depth - 1, vars), term(depth - 1, vars));
      case 6: return mkEq(term(depth - 1, vars), term(depth - 1, vars), pick(0, 2) ? type(depth - 1, vars) : nullptr);
      case 7: return mkImplies(term(depth - 1, vars), term(depth - 1, vars));
      case 8: return pick(0, 1) ? mkTrue() : mkFalse();
      case 9: return mkNot(term(depth - 1, vars));
      case 10: return mkAnd(term(depth - 1, vars), term(depth - 1, vars));
      case 11: return mkOr(term(depth - 1, vars), term(depth - 1, vars));
      case 12: return mkIff(term(depth - 1, vars), term(depth - 1, vars));
      default: {
        std::string x = binder();
        TypePtr a = type(depth - 1, vars);
        vars.push_back(x);
        TermPtr body = term(depth - 1, vars);
        return pick(0, 1) ? mkForall(x, a, body) : mkExists(x, a, body);
      }
    }
  }

  TypePtr type(int depth, std::vector<std::string> vars) {
    switch (pick(0, depth <= 0 ? 2 : 6)) {
      case 0: return mkBool();
      case 1: return mkBase("a");
      case 2: return mkBase("b", {depth <= 0 || vars.empty() ? mkConst("c0") : term(0, vars)});
      case 3: {
        std::string x = binder();
        TypePtr dom = type(depth - 1, vars);
        vars.push_back(x);
        return mkPi(x, dom, type(depth - 1, vars));
      }
      case 4: return mkArrow(type(depth - 1, vars), type(depth - 1, vars));
      case 5: return mkRefine(type(depth - 1, vars), term(depth - 1, vars));
      default: return mkQuotient(type(depth - 1, vars), term(depth - 1, vars));
    }
  }

 private:
  static constexpr const char* kConsts[] = {"c0", "c1", "f", "g"};
  std::string binder() { return std::string(1, static_cast<char>('x' + pick(0, 2))); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937 rng_;
  bool sugar_;
};

// ---- random theories ----

// Generator-side view of types, enough to produce well-typed terms by construction.
struct GenType {
  enum Kind { Bool, Base, Pi, Refine, Quot } kind = Bool;
  std::string name;                 // Base: symbol; Pi: binder ("" when non-dependent)
  std::vector<std::string> args;    // Base arguments as source text
  std::shared_ptr<GenType> dom, cod, base;
  std::string fn;                   // Refine predicate / Quot relation as source text

  std::string text() const {
    switch (kind) {
      case Bool: return "bool";
      case Base: {
        std::string s = name;
        for (const auto& a : args) s += " (" + a + ")";
        return args.empty() ? s : "(" + s + ")";
      }
      case Pi:
        return name.empty() ? "(" + dom->text() + " -> " + cod->text() + ")"
                            : "((" + name + " : " + dom->text() + ") -> " + cod->text() + ")";
      case Refine: return "(" + base->text() + " | " + fn + ")";
      case Quot: return "(" + base->text() + " / " + fn + ")";
    }
    return "";
  }
  const GenType& core() const { return kind == Refine || kind == Quot ? base->core() : *this; }
};
using GenTypePtr = std::shared_ptr<GenType>;

inline GenTypePtr gBool() { return std::make_shared<GenType>(); }
inline GenTypePtr gBase(std::string n, std::vector<std::string> args = {}) {
  GenType t;
  t.kind = GenType::Base;
  t.name = std::move(n);
  t.args = std::move(args);
  return std::make_shared<GenType>(t);
}
inline GenTypePtr gPi(std::string x, GenTypePtr d, GenTypePtr c) {
  GenType t;
  t.kind = GenType::Pi;
  t.name = std::move(x);
  t.dom = std::move(d);
  t.cod = std::move(c);
  return std::make_shared<GenType>(t);
}
inline GenTypePtr gWrap(GenType::Kind k, GenTypePtr base, std::string fn) {
  GenType t;
  t.kind = k;
  t.base = std::move(base);
  t.fn = std::move(fn);
  return std::make_shared<GenType>(t);
}

// Replaces argument text equal to `x` by `s` (binders only ever appear as whole arguments).
inline GenTypePtr gSubst(const GenTypePtr& a, const std::string& x, const std::string& s) {
  auto out = std::make_shared<GenType>(*a);
  for (auto& arg : out->args)
    if (arg == x) arg = s;
  if (a->dom) out->dom = gSubst(a->dom, x, s);
  if (a->cod && a->name != x) out->cod = gSubst(a->cod, x, s);
  if (a->base) out->base = gSubst(a->base, x, s);
  return out;
}

class TheoryGen {
 public:
  explicit TheoryGen(unsigned seed, bool allowRefinements = true) : rng_(seed), fancy_(allowRefinements) {}

  // Source text of a random theory over nat/obj/vec with a few definitions, axioms and conjectures.
  std::string theory() {
    consts_.clear();
    std::ostringstream out;
    out << "type nat\ntype obj\ntype vec (n : nat)\n";
    declare(out, "zero", gBase("nat"));
    declare(out, "succ", gPi("", gBase("nat"), gBase("nat")));
    declare(out, "o", gBase("obj"));
    declare(out, "vnil", gBase("vec", {"zero"}));
    declare(out, "vcons", gPi("n", gBase("nat"), gPi("", gBase("obj"), gPi("", gBase("vec", {"n"}), gBase("vec", {"succ n"})))));
    declare(out, "even", gPi("", gBase("nat"), gBool()));
    declare(out, "same", gPi("", gBase("obj"), gPi("", gBase("obj"), gBool())));
    int extra = pick(1, 4);
    for (int i = 0; i < extra; ++i) declare(out, "c" + std::to_string(i), type(2, {}));
    int axioms = pick(0, 2);
    for (int i = 0; i < axioms; ++i) out << "axiom ax" << i << " : " << term(gBool(), 3, {}) << "\n";
    int defs = pick(1, 3);
    for (int i = 0; i < defs; ++i) {
      GenTypePtr a = type(2, {});
      out << "def d" << i << " : " << a->text() << " := " << term(a, 3, {}) << "\n";
    }
    int conjs = pick(0, 2);
    for (int i = 0; i < conjs; ++i) out << "conjecture g" << i << " : " << term(gBool(), 3, {}) << "\n";
    return out.str();
  }

  struct Var {
    std::string name;
    GenTypePtr type;
  };

  GenTypePtr type(int depth, const std::vector<Var>& nats) {
    int r = pick(0, depth > 0 ? 9 : 5);
    switch (r) {
      case 0: return gBool();
      case 1:
      case 2: return gBase("nat");
      case 3: return gBase("obj");
      case 4:
      case 5: return gBase("vec", {natTerm(nats)});
      case 6:
        if (fancy_) return gWrap(GenType::Refine, gBase("nat"), "(\\x:nat. even x)");
        return gBase("nat");
      case 7:
        if (fancy_) return gWrap(GenType::Quot, gBase("obj"), "(\\x:obj. \\y:obj. same x y)");
        return gBase("obj");
      case 8: {
        std::string x = "n" + std::to_string(nats.size());
        auto inner = nats;
        inner.push_back({x, gBase("nat")});
        return gPi(x, gBase("nat"), type(depth - 1, inner));
      }
      default: return gPi("", type(depth - 1, nats), type(depth - 1, nats));
    }
  }

  // Two types of the same shape whose index arguments may differ, or occasionally two unrelated types.
  std::pair<std::string, std::string> typePair(int depth) {
    GenTypePtr a = type(depth, {});
    GenTypePtr b = pick(0, 3) == 0 ? type(depth, {}) : perturb(a, {});
    return {a->text(), b->text()};
  }

  GenTypePtr perturb(const GenTypePtr& a, std::vector<Var> nats) {
    auto out = std::make_shared<GenType>(*a);
    if (a->kind == GenType::Base)
      for (auto& arg : out->args)
        if (pick(0, 1)) arg = natTerm(nats);
    if (a->kind == GenType::Pi) {
      out->dom = perturb(a->dom, nats);
      if (!a->name.empty()) nats.push_back({a->name, gBase("nat")});
      out->cod = perturb(a->cod, nats);
    }
    return out;
  }

  std::string natTerm(const std::vector<Var>& nats) {
    int r = pick(0, 3);
    if (r == 0 && !nats.empty()) return nats[static_cast<std::size_t>(pick(0, static_cast<int>(nats.size()) - 1))].name;
    if (r == 1) return "succ zero";
    return "zero";
  }

  std::string term(const GenTypePtr& a, int depth, std::vector<Var> ctx) {
    if (a->kind == GenType::Pi) {
      std::string x = fresh(ctx);
      auto cod = a->name.empty() ? a->cod : gSubst(a->cod, a->name, x);
      ctx.push_back({x, a->dom});
      return "(\\" + x + ":" + a->dom->text() + ". " + term(cod, depth - 1, ctx) + ")";
    }
    if (a->kind == GenType::Bool && depth > 0) {
      switch (pick(0, 5)) {
        case 0: {
          GenTypePtr b = type(1, natsOf(ctx));
          return "(" + term(b, depth - 1, ctx) + " = " + term(b, depth - 1, ctx) + ")";
        }
        case 1: return "(" + term(a, depth - 1, ctx) + " => " + term(a, depth - 1, ctx) + ")";
        case 2: {
          std::string x = fresh(ctx);
          GenTypePtr b = type(0, natsOf(ctx));
          auto inner = ctx;
          inner.push_back({x, b});
          return "(forall " + x + ":" + b->text() + ". " + term(a, depth - 1, inner) + ")";
        }
        case 3: return "(" + term(a, depth - 1, ctx) + " /\\ " + term(a, depth - 1, ctx) + ")";
        case 4: return "(~ " + term(a, depth - 1, ctx) + ")";
        default: break;
      }
    }
    return head(a, depth, ctx);
  }

 private:
  // A variable or constant application whose result has the same core head as `a`.
  std::string head(const GenTypePtr& a, int depth, const std::vector<Var>& ctx) {
    std::vector<std::pair<std::string, GenTypePtr>> cands;
    for (const auto& v : ctx) cands.emplace_back(v.name, v.type);
    for (const auto& c : consts_) cands.emplace_back(c.name, c.type);
    std::vector<std::pair<std::string, GenTypePtr>> ok;
    for (const auto& [n, t] : cands)
      if (resultMatches(t, a)) ok.emplace_back(n, t);
    if (ok.empty()) {
      if (a->core().kind == GenType::Bool) return pick(0, 1) ? "true" : "false";
      return "zero";  // not reached for the fixed signature
    }
    auto [name, t] = ok[static_cast<std::size_t>(pick(0, static_cast<int>(ok.size()) - 1))];
    std::string out = name;
    GenTypePtr cur = t;
    while (!sameHead(*cur, *a) && cur->core().kind == GenType::Pi) {
      const GenType& pi = cur->core();
      std::string arg = term(pi.dom, std::max(0, depth - 1), ctx);
      out = "(" + out + " " + arg + ")";
      cur = pi.name.empty() ? pi.cod : gSubst(pi.cod, pi.name, arg);
    }
    return out;
  }

  static bool sameHead(const GenType& x, const GenType& y) {
    const GenType& a = x.core();
    const GenType& b = y.core();
    if (a.kind != b.kind) return false;
    if (a.kind == GenType::Base) return a.name == b.name;
    if (a.kind == GenType::Pi) return a.text() == b.text();
    return true;
  }

  static bool resultMatches(const GenTypePtr& t, const GenTypePtr& want) {
    const GenType* cur = t.get();
    for (;;) {
      if (sameHead(*cur, *want)) return true;
      if (cur->core().kind != GenType::Pi) return false;
      cur = cur->core().cod.get();
    }
  }

  static std::vector<Var> natsOf(const std::vector<Var>& ctx) {
    std::vector<Var> out;
    for (const auto& v : ctx)
      if (v.type->kind == GenType::Base && v.type->name == "nat") out.push_back(v);
    return out;
  }

  std::string fresh(const std::vector<Var>& ctx) { return "v" + std::to_string(ctx.size()) + "_" + std::to_string(counter_++); }

  void declare(std::ostringstream& out, const std::string& name, GenTypePtr t) {
    out << "const " << name << " : " << t->text() << "\n";
    consts_.push_back({name, std::move(t)});
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937 rng_;
  bool fancy_;
  std::vector<Var> consts_;
  int counter_ = 0;
};

}  // namespace dholc::testing
