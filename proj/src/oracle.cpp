#include "dholc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <omp.h>

namespace dholc {

namespace {

using u64 = std::uint64_t;
constexpr u64 kMaxCode = u64{1} << 62;

u64 mulChecked(u64 a, u64 b) {
  if (a != 0 && b > kMaxCode / a) throw OracleError("function space too large for the finite oracle");
  return a * b;
}

u64 powChecked(u64 base, u64 exp) {
  u64 out = 1;
  for (u64 i = 0; i < exp; ++i) out = mulChecked(out, base);
  return out;
}

struct Sizes {
  const std::map<std::string, int>* carriers;

  u64 of(const HolTypePtr& a) const {
    switch (a->kind) {
      case HolType::Kind::Bool: return 2;
      case HolType::Kind::Base: {
        auto it = carriers->find(a->name);
        if (it == carriers->end()) throw OracleError("no carrier for type '" + a->name + "'");
        return static_cast<u64>(it->second);
      }
      case HolType::Kind::Arrow: return powChecked(of(a->cod), of(a->dom));
    }
    return 0;
  }
};

// Flat program for one term under fixed carrier sizes.
struct Program {
  enum class K : std::uint8_t { Const, Var, Lam, App, Eq, Implies, True, False, Not, And, Or, Iff, Forall, Exists };
  struct Node {
    K kind;
    int a = -1, b = -1;  // children
    int slot = -1;       // variable slot, or constant index
    u64 size = 0;        // binder domain size
    u64 cod = 0;         // codomain size for Lam/App
  };
  std::vector<Node> nodes;
  int root = -1;
  int slots = 0;
};

class Compiler {
 public:
  Compiler(const HolTheory& thy, const Sizes& sizes, const std::map<std::string, int>& constIndex)
      : thy_(thy), sizes_(sizes), constIndex_(constIndex) {}

  Program compile(const HolTermPtr& t) {
    prog_ = Program{};
    scope_.clear();
    prog_.root = go(t);
    return std::move(prog_);
  }

 private:
  int push(Program::Node n) {
    prog_.nodes.push_back(n);
    return static_cast<int>(prog_.nodes.size()) - 1;
  }

  HolTypePtr typeOf(const HolTermPtr& t) {
    HolContext ctx;
    for (const auto& [x, a, _] : scope_) ctx.emplace_back(x, a);
    return holInferType(thy_, ctx, t);
  }

  int go(const HolTermPtr& t) {
    using K = Program::K;
    switch (t->op) {
      case HolOp::Const: {
        auto it = constIndex_.find(t->name);
        if (it == constIndex_.end()) throw OracleError("unknown constant '" + t->name + "'");
        return push({K::Const, -1, -1, it->second});
      }
      case HolOp::Var:
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (std::get<0>(*it) == t->name) return push({K::Var, -1, -1, std::get<2>(*it)});
        throw OracleError("free variable '" + t->name + "'");
      case HolOp::True: return push({K::True});
      case HolOp::False: return push({K::False});
      case HolOp::Not: return push({K::Not, go(t->lhs)});
      case HolOp::App: {
        HolTypePtr f = typeOf(t->lhs);
        int a = go(t->lhs), b = go(t->rhs);
        return push({K::App, a, b, -1, 0, sizes_.of(f->cod)});
      }
      case HolOp::Lam:
      case HolOp::Forall:
      case HolOp::Exists: {
        int slot = static_cast<int>(scope_.size());
        prog_.slots = std::max(prog_.slots, slot + 1);
        u64 size = sizes_.of(t->type);
        scope_.emplace_back(t->name, t->type, slot);
        u64 cod = t->op == HolOp::Lam ? sizes_.of(typeOf(t->lhs)) : 2;
        int body = go(t->lhs);
        scope_.pop_back();
        K k = t->op == HolOp::Lam ? K::Lam : t->op == HolOp::Forall ? K::Forall : K::Exists;
        if (k == K::Lam) powChecked(cod, size);
        return push({k, body, -1, slot, size, cod});
      }
      default: break;
    }
    K k = t->op == HolOp::Eq ? K::Eq : t->op == HolOp::Implies ? K::Implies : t->op == HolOp::And ? K::And
          : t->op == HolOp::Or ? K::Or : K::Iff;
    int a = go(t->lhs), b = go(t->rhs);
    return push({k, a, b});
  }

  const HolTheory& thy_;
  const Sizes& sizes_;
  const std::map<std::string, int>& constIndex_;
  Program prog_;
  std::vector<std::tuple<std::string, HolTypePtr, int>> scope_;
};

u64 ipow(u64 base, u64 exp) {
  u64 out = 1;
  while (exp) {
    if (exp & 1) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

struct Machine {
  const Program& p;
  const u64* consts;
  std::vector<u64> env;

  Machine(const Program& prog, const u64* values) : p(prog), consts(values), env(static_cast<std::size_t>(prog.slots)) {}

  u64 run() { return eval(p.root); }

  u64 eval(int i) {
    using K = Program::K;
    const auto& n = p.nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case K::Const: return consts[n.slot];
      case K::Var: return env[static_cast<std::size_t>(n.slot)];
      case K::True: return 1;
      case K::False: return 0;
      case K::Not: return eval(n.a) ? 0 : 1;
      case K::App: {
        u64 f = eval(n.a), x = eval(n.b);
        return (f / ipow(n.cod, x)) % n.cod;
      }
      case K::Lam: {
        u64 code = 0, scale = 1;
        for (u64 x = 0; x < n.size; ++x) {
          env[static_cast<std::size_t>(n.slot)] = x;
          code += eval(n.a) * scale;
          scale *= n.cod;
        }
        return code;
      }
      case K::Forall:
        for (u64 x = 0; x < n.size; ++x) {
          env[static_cast<std::size_t>(n.slot)] = x;
          if (!eval(n.a)) return 0;
        }
        return 1;
      case K::Exists:
        for (u64 x = 0; x < n.size; ++x) {
          env[static_cast<std::size_t>(n.slot)] = x;
          if (eval(n.a)) return 1;
        }
        return 0;
      case K::Eq: return eval(n.a) == eval(n.b) ? 1 : 0;
      case K::Implies: return !eval(n.a) || eval(n.b) ? 1 : 0;
      case K::And: return eval(n.a) && eval(n.b) ? 1 : 0;
      case K::Or: return eval(n.a) || eval(n.b) ? 1 : 0;
      case K::Iff: return (eval(n.a) != 0) == (eval(n.b) != 0) ? 1 : 0;
    }
    return 0;
  }
};

void typesIn(const HolTypePtr& a, std::set<std::string>& out) {
  if (a->kind == HolType::Kind::Base) out.insert(a->name);
  if (a->kind == HolType::Kind::Arrow) {
    typesIn(a->dom, out);
    typesIn(a->cod, out);
  }
}

void typesIn(const HolTermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->type) typesIn(t->type, out);
  typesIn(t->lhs, out);
  typesIn(t->rhs, out);
}

// All size tuples in [1, bound]^k ordered by their maximum, then lexicographically.
std::vector<std::vector<int>> carrierTuples(std::size_t k, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (int s = 1; s <= bound; ++s) {
      cur[i] = s;
      rec(i + 1);
    }
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int ma = a.empty() ? 0 : *std::max_element(a.begin(), a.end());
    int mb = b.empty() ? 0 : *std::max_element(b.begin(), b.end());
    return ma < mb;
  });
  return out;
}

// A search over interpretations of `consts` (indices into the full constant list) satisfying `axioms`;
// with a formula, looks for an interpretation falsifying it.
struct Search {
  std::vector<int> consts;
  std::vector<u64> sizes;                     // per position in consts
  std::vector<std::vector<Program>> byDepth;  // axioms checked once position d is assigned
  std::vector<Program> upfront;               // axioms with none of the searched constants
  const Program* formula = nullptr;
  std::atomic<u64>* nodes = nullptr;
  u64 budget = 0;

  bool holds(const Program& p, const std::vector<u64>& vals) const {
    Machine m(p, vals.data());
    return m.run() != 0;
  }

  // Depth-first from position `depth`; true when a goal leaf was reached (values left in vals).
  bool dfs(std::size_t depth, std::vector<u64>& vals, bool& exhausted) const {
    if (nodes->fetch_add(1, std::memory_order_relaxed) >= budget) {
      exhausted = true;
      return false;
    }
    if (depth == consts.size()) return formula ? !holds(*formula, vals) : true;
    auto pos = static_cast<std::size_t>(consts[depth]);
    for (u64 v = 0; v < sizes[depth]; ++v) {
      vals[pos] = v;
      bool ok = true;
      for (const auto& ax : byDepth[depth])
        if (!holds(ax, vals)) {
          ok = false;
          break;
        }
      if (ok && dfs(depth + 1, vals, exhausted)) return true;
      if (exhausted) return false;
    }
    return false;
  }
};

struct Plan {
  std::vector<std::string> constNames;
  std::map<std::string, int> constIndex;
  std::vector<int> relevantConsts, otherConsts;
  std::vector<std::size_t> relevantAxioms, otherAxioms;
  std::vector<std::string> relevantTypes, otherTypes;
};

Plan makePlan(const HolTheory& thy, const HolTermPtr& formula) {
  Plan plan;
  for (const auto& [c, _] : thy.consts) {
    plan.constIndex[c] = static_cast<int>(plan.constNames.size());
    plan.constNames.push_back(c);
  }
  std::vector<std::set<std::string>> axConsts;
  for (const auto& [_, f] : thy.axioms) {
    std::set<std::string> cs;
    holConstants(f, cs);
    axConsts.push_back(cs);
  }
  std::set<std::string> relevant;
  holConstants(formula, relevant);
  std::vector<bool> axRelevant(thy.axioms.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < thy.axioms.size(); ++i) {
      if (axRelevant[i]) continue;
      bool touches = axConsts[i].empty() || std::any_of(axConsts[i].begin(), axConsts[i].end(),
                                                        [&](const auto& c) { return relevant.count(c) > 0; });
      if (!touches) continue;
      axRelevant[i] = true;
      changed = true;
      relevant.insert(axConsts[i].begin(), axConsts[i].end());
    }
  }
  std::set<std::string> types;
  typesIn(formula, types);
  for (std::size_t i = 0; i < thy.axioms.size(); ++i) {
    (axRelevant[i] ? plan.relevantAxioms : plan.otherAxioms).push_back(i);
    if (axRelevant[i]) typesIn(thy.axioms[i].second, types);
  }
  for (const auto& [c, a] : thy.consts) {
    if (!plan.constIndex.count(c)) continue;
    bool rel = relevant.count(c) > 0;
    (rel ? plan.relevantConsts : plan.otherConsts).push_back(plan.constIndex[c]);
    if (rel) typesIn(a, types);
  }
  for (const auto& a : thy.typeSyms) (types.count(a) ? plan.relevantTypes : plan.otherTypes).push_back(a);
  for (const auto& a : types)
    if (!thy.hasType(a)) throw OracleError("unknown type '" + a + "'");
  for (const auto& c : relevant)
    if (!plan.constIndex.count(c)) throw OracleError("unknown constant '" + c + "'");
  return plan;
}

Search buildSearch(const HolTheory& thy, const Plan& plan, const std::vector<int>& consts,
                   const std::vector<std::size_t>& axioms, const std::map<std::string, int>& carriers) {
  Sizes sizes{&carriers};
  Compiler comp(thy, sizes, plan.constIndex);
  Search s;
  s.consts = consts;
  for (int c : consts) s.sizes.push_back(sizes.of(thy.consts[static_cast<std::size_t>(c)].second));
  s.byDepth.resize(consts.size());
  for (std::size_t i : axioms) {
    const HolTermPtr& f = thy.axioms[i].second;
    std::set<std::string> cs;
    holConstants(f, cs);
    int depth = -1;
    for (std::size_t d = 0; d < consts.size(); ++d)
      if (cs.count(plan.constNames[static_cast<std::size_t>(consts[d])])) depth = static_cast<int>(d);
    Program p = comp.compile(f);
    if (depth < 0) s.upfront.push_back(std::move(p));
    else s.byDepth[static_cast<std::size_t>(depth)].push_back(std::move(p));
  }
  return s;
}

// Interprets the constants and axioms outside the formula's component, trying carrier sizes for
// the types only they mention.
std::optional<FiniteModel> complete(const HolTheory& thy, const Plan& plan, FiniteModel model,
                                    std::vector<u64> vals, int bound, std::atomic<u64>& nodes, u64 budget) {
  for (const auto& tuple : carrierTuples(plan.otherTypes.size(), bound)) {
    std::map<std::string, int> carriers = model.carriers;
    for (std::size_t i = 0; i < tuple.size(); ++i) carriers[plan.otherTypes[i]] = tuple[i];
    Search s = buildSearch(thy, plan, plan.otherConsts, plan.otherAxioms, carriers);
    s.nodes = &nodes;
    s.budget = budget;
    bool ok = std::all_of(s.upfront.begin(), s.upfront.end(), [&](const Program& p) { return s.holds(p, vals); });
    bool exhausted = false;
    if (ok && s.dfs(0, vals, exhausted)) {
      model.carriers = carriers;
      for (std::size_t c = 0; c < vals.size(); ++c) model.interp[plan.constNames[c]] = vals[c];
      return model;
    }
    if (exhausted) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

OracleResult checkValidFinite(const HolTheory& thy, const HolTermPtr& formula, const OracleOptions& opts) {
  OracleResult result;
  std::atomic<u64> nodes{0};
  try {
    if (!holTypeEq(holInferType(thy, {}, formula), holBool())) throw OracleError("formula is not boolean");
    Plan plan = makePlan(thy, formula);
    std::size_t n = plan.constNames.size();
    for (const auto& tuple : carrierTuples(plan.relevantTypes.size(), opts.sizeBound)) {
      std::map<std::string, int> carriers;
      for (std::size_t i = 0; i < tuple.size(); ++i) carriers[plan.relevantTypes[i]] = tuple[i];
      Search s = buildSearch(thy, plan, plan.relevantConsts, plan.relevantAxioms, carriers);
      Sizes sizes{&carriers};
      Compiler comp(thy, sizes, plan.constIndex);
      Program goal = comp.compile(formula);
      s.formula = &goal;
      s.nodes = &nodes;
      s.budget = opts.budget;

      std::vector<u64> base(n, 0);
      if (!std::all_of(s.upfront.begin(), s.upfront.end(), [&](const Program& p) { return s.holds(p, base); }))
        continue;

      // Split on the first searched constant; the smallest branch with a counterexample wins.
      u64 branches = s.consts.empty() ? 1 : s.sizes[0];
      std::atomic<u64> best{std::numeric_limits<u64>::max()};
      std::atomic<bool> exhausted{false};
      std::vector<std::vector<u64>> found(branches);
      auto branch = [&](u64 b) {
        if (b > best.load() || exhausted.load()) return;
        std::vector<u64> vals(n, 0);
        bool ex = false;
        bool hit = false;
        if (s.consts.empty()) {
          hit = s.dfs(0, vals, ex);
        } else {
          vals[static_cast<std::size_t>(s.consts[0])] = b;
          bool ok = std::all_of(s.byDepth[0].begin(), s.byDepth[0].end(),
                                [&](const Program& p) { return s.holds(p, vals); });
          hit = ok && s.dfs(1, vals, ex);
        }
        if (ex) exhausted = true;
        if (hit) {
          found[b] = vals;
          u64 cur = best.load();
          while (b < cur && !best.compare_exchange_weak(cur, b)) {
          }
        }
      };
      if (opts.parallel && branches > 1) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long long b = 0; b < static_cast<long long>(branches); ++b) branch(static_cast<u64>(b));
      } else {
        for (u64 b = 0; b < branches && best.load() == std::numeric_limits<u64>::max(); ++b) branch(b);
      }
      u64 winner = best.load();
      if (winner != std::numeric_limits<u64>::max()) {
        FiniteModel partial;
        partial.carriers = carriers;
        auto full = complete(thy, plan, partial, found[winner], opts.sizeBound, nodes, opts.budget);
        if (full) {
          result.status = OracleStatus::Counterexample;
          result.model = std::move(full);
          result.nodes = nodes.load();
          return result;
        }
        if (nodes.load() >= opts.budget) exhausted = true;
        // The other axioms cannot be satisfied with these carriers: no model here at all.
      }
      if (exhausted.load()) {
        result.status = OracleStatus::Inconclusive;
        result.note = "search budget exhausted";
        result.nodes = nodes.load();
        return result;
      }
    }
    result.status = OracleStatus::Valid;
  } catch (const OracleError& e) {
    result.status = OracleStatus::Inconclusive;
    result.note = e.what();
  } catch (const HolTypeError& e) {
    result.status = OracleStatus::Inconclusive;
    result.note = e.what();
  }
  result.nodes = nodes.load();
  return result;
}

namespace {

Program compileClosed(const HolTheory& thy, const FiniteModel& m, const HolTermPtr& t, std::vector<u64>& vals) {
  std::map<std::string, int> index;
  vals.clear();
  for (const auto& [c, _] : thy.consts) {
    index[c] = static_cast<int>(vals.size());
    auto it = m.interp.find(c);
    vals.push_back(it == m.interp.end() ? 0 : it->second);
  }
  Sizes sizes{&m.carriers};
  Compiler comp(thy, sizes, index);
  return comp.compile(t);
}

}  // namespace

u64 evalTerm(const HolTheory& thy, const FiniteModel& m, const HolTermPtr& t) {
  std::vector<u64> vals;
  Program p = compileClosed(thy, m, t, vals);
  Machine mach(p, vals.data());
  return mach.run();
}

bool evalFormula(const HolTheory& thy, const FiniteModel& m, const HolTermPtr& t) { return evalTerm(thy, m, t) != 0; }

namespace {

void describe(std::ostringstream& out, const std::string& prefix, const HolTypePtr& a, u64 code,
              const Sizes& sizes) {
  if (a->kind != HolType::Kind::Arrow) {
    out << "  " << prefix << " = " << (a->kind == HolType::Kind::Bool ? (code ? "true" : "false") : std::to_string(code))
        << "\n";
    return;
  }
  u64 dom = sizes.of(a->dom), cod = sizes.of(a->cod);
  for (u64 x = 0; x < dom; ++x) {
    std::string arg = a->dom->kind == HolType::Kind::Bool ? (x ? "true" : "false") : std::to_string(x);
    describe(out, prefix + " " + arg, a->cod, (code / ipow(cod, x)) % cod, sizes);
  }
}

}  // namespace

std::string printModel(const HolTheory& thy, const FiniteModel& m) {
  std::ostringstream out;
  for (const auto& [a, n] : m.carriers) out << "  |" << a << "| = " << n << "\n";
  Sizes sizes{&m.carriers};
  for (const auto& [c, a] : thy.consts) {
    auto it = m.interp.find(c);
    if (it == m.interp.end()) continue;
    try {
      describe(out, c, a, it->second, sizes);
    } catch (const OracleError&) {
      out << "  " << c << " = #" << it->second << "\n";
    }
  }
  return out.str();
}

}  // namespace dholc
