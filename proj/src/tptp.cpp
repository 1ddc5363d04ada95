#include "dholc/tptp.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace dholc {

namespace {

std::string lowerWord(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (c == '\'') out += "_q";
    else out += '_';
  }
  if (out.empty() || !std::islower(static_cast<unsigned char>(out[0]))) out = "c_" + out;
  return out;
}

std::string upperWord(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') out += c;
    else if (c == '\'') out += "_q";
    else out += '_';
  }
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0]))) out = "V" + out;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

// Injective map from symbol names to THF lower words.
class Namer {
 public:
  const std::string& symbol(const std::string& name) {
    auto it = names_.find(name);
    if (it != names_.end()) return it->second;
    std::string base = lowerWord(name), cand = base;
    for (int i = 1; taken_.count(cand); ++i) cand = base + "_" + std::to_string(i);
    taken_.insert(cand);
    return names_[name] = cand;
  }

 private:
  std::map<std::string, std::string> names_;
  std::set<std::string> taken_;
};

class Emitter {
 public:
  explicit Emitter(Namer& namer) : namer_(namer) {}

  std::string type(const HolTypePtr& a) {
    switch (a->kind) {
      case HolType::Kind::Bool: return "$o";
      case HolType::Kind::Base: return namer_.symbol(a->name);
      case HolType::Kind::Arrow: {
        std::string d = type(a->dom);
        if (a->dom->kind == HolType::Kind::Arrow) d = "(" + d + ")";
        return d + " > " + type(a->cod);
      }
    }
    return "";
  }

  std::string term(const HolTermPtr& t) {
    switch (t->op) {
      case HolOp::Const: return namer_.symbol(t->name);
      case HolOp::Var: return var(t->name);
      case HolOp::True: return "$true";
      case HolOp::False: return "$false";
      case HolOp::Not: return "(~ " + term(t->lhs) + ")";
      case HolOp::App: {
        std::vector<HolTermPtr> args;
        HolTermPtr head = t;
        while (head->op == HolOp::App) {
          args.push_back(head->rhs);
          head = head->lhs;
        }
        std::string out = "(" + term(head);
        for (auto it = args.rbegin(); it != args.rend(); ++it) out += " @ " + term(*it);
        return out + ")";
      }
      case HolOp::Lam:
      case HolOp::Forall:
      case HolOp::Exists: return binder(t);
      default: break;
    }
    const char* op = t->op == HolOp::Eq        ? " = "
                     : t->op == HolOp::Implies ? " => "
                     : t->op == HolOp::And     ? " & "
                     : t->op == HolOp::Or      ? " | "
                                               : " <=> ";
    return "(" + term(t->lhs) + op + term(t->rhs) + ")";
  }

 private:
  std::string var(const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return it->second;
    return upperWord(name);
  }

  std::string binder(const HolTermPtr& t) {
    const char* q = t->op == HolOp::Lam ? "^" : t->op == HolOp::Forall ? "!" : "?";
    std::string vars;
    std::size_t pushed = 0;
    HolTermPtr cur = t;
    do {
      std::set<std::string> used;
      for (const auto& [_, thf] : scope_) used.insert(thf);
      std::string base = upperWord(cur->name), cand = base;
      for (int i = 1; used.count(cand); ++i) cand = base + "_" + std::to_string(i);
      if (!vars.empty()) vars += ", ";
      vars += cand + ": " + type(cur->type);
      scope_.emplace_back(cur->name, cand);
      ++pushed;
      cur = cur->lhs;
    } while (cur->op == t->op);
    std::string out = std::string("(") + q + " [" + vars + "]: " + term(cur) + ")";
    scope_.resize(scope_.size() - pushed);
    return out;
  }

  Namer& namer_;
  std::vector<std::pair<std::string, std::string>> scope_;
};

std::string formulaName(const std::string& name, std::set<std::string>& used) {
  std::string base = lowerWord(name), cand = base;
  for (int i = 1; used.count(cand); ++i) cand = base + "_" + std::to_string(i);
  used.insert(cand);
  return cand;
}

}  // namespace

std::string emitThfFormula(const HolTermPtr& t) {
  Namer namer;
  return Emitter(namer).term(t);
}

std::string emitTptp(const HolTheory& thy, const HolConjecture& conj) {
  Namer namer;
  Emitter em(namer);
  std::set<std::string> used;
  std::ostringstream out;
  out << "% problem " << conj.name << "\n";
  for (const auto& a : thy.typeSyms)
    out << "thf(" << formulaName(a + "_type", used) << ", type, " << namer.symbol(a) << ": $tType).\n";
  for (const auto& [c, a] : thy.consts)
    out << "thf(" << formulaName(c + "_decl", used) << ", type, " << namer.symbol(c) << ": " << em.type(a) << ").\n";
  for (const auto& [name, f] : thy.axioms)
    out << "thf(" << formulaName(name, used) << ", axiom, " << em.term(f) << ").\n";
  out << "thf(" << formulaName(conj.name, used) << ", conjecture, " << em.term(conj.formula) << ").\n";
  return out.str();
}

// ---- reader ----

namespace {

class ThfReader {
 public:
  explicit ThfReader(const std::string& text) : s_(text) {}

  ThfProblem run() {
    ThfProblem out;
    skip();
    while (pos_ < s_.size()) {
      word("thf");
      expect('(');
      std::string name = lower();
      expect(',');
      std::string role = lower();
      expect(',');
      if (role == "type") {
        std::string sym = lower();
        expect(':');
        if (accept("$tType")) {
          out.theory.typeSyms.push_back(sym);
        } else {
          out.theory.consts.emplace_back(sym, type());
        }
      } else {
        thy_ = &out.theory;
        HolTermPtr f = formula();
        if (role == "conjecture") out.conjectures.push_back({name, f, name});
        else out.theory.axioms.emplace_back(name, f);
      }
      expect(')');
      expect('.');
      skip();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ThfParseError("THF parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      else if (s_[pos_] == '%') while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      else break;
    }
  }

  bool peek(const std::string& tok) {
    skip();
    return s_.compare(pos_, tok.size(), tok) == 0;
  }

  bool accept(const std::string& tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(char c) {
    if (!accept(std::string(1, c))) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return s_.substr(start, pos_ - start);
  }

  std::string lower() {
    std::string w = ident();
    if (!std::islower(static_cast<unsigned char>(w[0]))) fail("expected lower word, got " + w);
    return w;
  }

  void word(const std::string& w) {
    if (ident() != w) fail("expected " + w);
  }

  HolTypePtr type() {
    HolTypePtr dom;
    if (accept("(")) {
      dom = type();
      expect(')');
    } else if (accept("$o")) {
      dom = holBool();
    } else {
      dom = holBase(lower());
    }
    if (accept(">")) return holArrow(dom, type());
    return dom;
  }

  HolTypePtr typeOf(const HolTermPtr& t) {
    try {
      return holInferType(*thy_, ctx_, t);
    } catch (const HolTypeError& e) {
      fail(e.what());
    }
  }

  HolTermPtr formula() {
    HolTermPtr lhs = unitary();
    while (peek("@")) {
      ++pos_;
      lhs = holApp(lhs, unitary());
    }
    if (accept("<=>")) return holIff(lhs, formula());
    if (accept("=>")) return holImplies(lhs, formula());
    if (accept("&")) return holAnd(lhs, formula());
    if (accept("|")) return holOr(lhs, formula());
    if (peek("=") && !peek("=>")) {
      ++pos_;
      HolTypePtr at = typeOf(lhs);
      return holEq(lhs, formula(), at);
    }
    return lhs;
  }

  HolTermPtr unitary() {
    if (accept("(")) {
      HolTermPtr t = formula();
      expect(')');
      return t;
    }
    if (accept("~")) return holNot(unitary());
    if (accept("$true")) return holTrue();
    if (accept("$false")) return holFalse();
    for (const char* q : {"!", "?", "^"}) {
      if (!accept(q)) continue;
      expect('[');
      std::vector<std::pair<std::string, HolTypePtr>> vars;
      do {
        std::string x = ident();
        expect(':');
        vars.emplace_back(x, type());
      } while (accept(","));
      expect(']');
      expect(':');
      for (const auto& v : vars) ctx_.push_back(v);
      HolTermPtr body = unitary();
      ctx_.resize(ctx_.size() - vars.size());
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        if (*q == '!') body = holForall(it->first, it->second, body);
        else if (*q == '?') body = holExists(it->first, it->second, body);
        else body = holLam(it->first, it->second, body);
      }
      return body;
    }
    std::string w = ident();
    if (std::isupper(static_cast<unsigned char>(w[0]))) return holVar(w);
    return holConst(w);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  const HolTheory* thy_ = nullptr;
  HolContext ctx_;
};

}  // namespace

ThfProblem readThf(const std::string& text) { return ThfReader(text).run(); }

}  // namespace dholc
