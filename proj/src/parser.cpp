#include "dholc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace dholc {

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string msg = span.str() + ": " + message;
        if (!expected.empty()) {
          msg += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
          msg += ")";
        }
        return msg;
      }()),
      span_(std::move(span)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Keyword, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::set<std::string> kKeywords = {"type",   "const", "axiom", "conjecture", "def",  "forall",
                                         "exists", "use",   "as",    "return",     "in",   "bool",
                                         "true",   "false"};

// Longest symbols first.
const std::vector<std::string> kSymbols = {"<=>", ":=", "->", "=>", "=[", "/\\", "\\/", "(", ")", ":", ",",
                                           ".",   "=",  "]",  "|",  "/",  "\\",  "~"};

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourceSpan sp{file, line, col, line, col};
    if (isIdentStart(c)) {
      std::size_t j = i;
      while (j < text.size() && isIdentChar(text[j])) ++j;
      std::string word = text.substr(i, j - i);
      advance(j - i);
      sp.endLine = line;
      sp.endCol = col;
      out.push_back({kKeywords.count(word) ? Tok::Keyword : Tok::Ident, word, sp});
      continue;
    }
    bool matched = false;
    for (const auto& s : kSymbols) {
      if (text.compare(i, s.size(), s) == 0) {
        advance(s.size());
        sp.endLine = line;
        sp.endCol = col;
        out.push_back({Tok::Symbol, s, sp});
        matched = true;
        break;
      }
    }
    if (!matched) {
      sp.endCol = col + 1;
      throw ParseError(sp, std::string("unexpected character '") + c + "'", {});
    }
  }
  SourceSpan end{file, line, col, line, col};
  out.push_back({Tok::End, "<end of input>", end});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<std::string> bound) : toks_(std::move(toks)), scope_(std::move(bound)) {}

  ParsedTheory theory() {
    ParsedTheory out;
    std::set<std::string> names;
    while (!at(Tok::End)) {
      const Token& start = peek();
      if (isKw("conjecture")) {
        Conjecture c = conjecture();
        if (!names.insert(c.name).second) throw ParseError(start.span, "duplicate name '" + c.name + "'", {});
        out.conjectures.push_back(std::move(c));
        continue;
      }
      TheoryDecl d = declaration();
      out.decls.push_back(std::move(d));
    }
    return out;
  }

  TermPtr standaloneTerm() {
    TermPtr t = term();
    expectEnd();
    return t;
  }

  TypePtr standaloneType() {
    TypePtr a = type();
    expectEnd();
    return a;
  }

 private:
  // ---- token plumbing ----
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool isSym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Symbol && peek(k).text == s;
  }
  bool isKw(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Keyword && peek(k).text == s;
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  SourceSpan lastSpan() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().span, "unexpected '" + peek().text + "'", std::move(expected));
  }
  const Token& expectSym(const std::string& s) {
    if (!isSym(s)) fail({"'" + s + "'"});
    return next();
  }
  const Token& expectKw(const std::string& s) {
    if (!isKw(s)) fail({"'" + s + "'"});
    return next();
  }
  std::string ident() {
    if (!at(Tok::Ident)) fail({"identifier"});
    return next().text;
  }
  void expectEnd() {
    if (!at(Tok::End)) fail({"end of input"});
  }
  SourceSpan spanFrom(const SourceSpan& start) const { return join(start, lastSpan()); }

  bool bound(const std::string& name) const {
    return std::find(scope_.rbegin(), scope_.rend(), name) != scope_.rend();
  }

  template <class F> auto withBinders(const std::vector<std::string>& names, F&& f) {
    for (const auto& n : names) scope_.push_back(n);
    auto result = f();
    scope_.resize(scope_.size() - names.size());
    return result;
  }

  // ---- declarations ----
  Telescope telescope() {
    Telescope tele;
    while (isSym("(")) {
      next();
      std::string x = ident();
      expectSym(":");
      TypePtr a = type();
      expectSym(")");
      tele.emplace_back(x, a);
      scope_.push_back(x);
    }
    return tele;
  }

  TheoryDecl declaration() {
    SourceSpan start = peek().span;
    std::size_t depth = scope_.size();
    TheoryDecl out;
    if (isKw("type")) {
      next();
      std::string name = ident();
      Telescope tele = telescope();
      if (isSym(":=")) {
        next();
        TypePtr rhs = type();
        out = TheoryDecl{decl::TypeDef{name, std::move(tele), rhs}, {}};
      } else {
        out = TheoryDecl{decl::TypeSym{name, std::move(tele)}, {}};
      }
    } else if (isKw("def")) {
      next();
      std::string name = ident();
      if (isSym(":")) {
        next();
        TypePtr a = type();
        expectSym(":=");
        TermPtr rhs = term();
        out = TheoryDecl{decl::TermDef{name, a, rhs}, {}};
      } else {
        Telescope tele = telescope();
        expectSym(":=");
        TypePtr rhs = type();
        out = TheoryDecl{decl::TypeDef{name, std::move(tele), rhs}, {}};
      }
    } else if (isKw("const")) {
      next();
      std::string name = ident();
      expectSym(":");
      out = TheoryDecl{decl::ConstDecl{name, type()}, {}};
    } else if (isKw("axiom")) {
      next();
      std::string name = ident();
      expectSym(":");
      out = TheoryDecl{decl::Axiom{name, term()}, {}};
    } else {
      fail({"'type'", "'def'", "'const'", "'axiom'", "'conjecture'"});
    }
    scope_.resize(depth);
    out.span = spanFrom(start);
    return out;
  }

  Conjecture conjecture() {
    SourceSpan start = expectKw("conjecture").span;
    std::string name = ident();
    expectSym(":");
    TermPtr f = term();
    return Conjecture{name, f, spanFrom(start)};
  }

  // ---- types ----
  bool startsPi() const { return isSym("(") && peek(1).kind == Tok::Ident && isSym(":", 2); }

  TypePtr type() {
    SourceSpan start = peek().span;
    if (startsPi()) {
      next();
      std::string x = ident();
      expectSym(":");
      TypePtr dom = type();
      expectSym(")");
      expectSym("->");
      TypePtr cod = withBinders({x}, [&] { return type(); });
      return mkPi(x, dom, cod, spanFrom(start));
    }
    TypePtr a = postfixType();
    if (isSym("->")) {
      next();
      TypePtr cod = type();
      return mkArrow(a, cod, spanFrom(start));
    }
    return a;
  }

  TypePtr postfixType() {
    SourceSpan start = peek().span;
    TypePtr a = baseType();
    while (isSym("|") || isSym("/")) {
      bool refine = next().text == "|";
      TermPtr t = term();
      a = refine ? mkRefine(a, t, spanFrom(start)) : mkQuotient(a, t, spanFrom(start));
    }
    return a;
  }

  TypePtr baseType() {
    SourceSpan start = peek().span;
    if (isKw("bool")) {
      next();
      return mkBool(start);
    }
    if (isSym("(")) {
      next();
      TypePtr a = type();
      expectSym(")");
      return a;
    }
    if (!at(Tok::Ident)) fail({"type"});
    std::string name = next().text;
    std::vector<TermPtr> args;
    while (startsAtom()) args.push_back(atom());
    return mkBase(name, std::move(args), spanFrom(start));
  }

  // ---- terms ----
  bool startsBinder() const {
    return isSym("\\") || isKw("forall") || isKw("exists") || isKw("use");
  }
  bool startsAtom() const {
    return at(Tok::Ident) || isKw("true") || isKw("false") || isSym("(");
  }

  TermPtr term() {
    if (startsBinder()) return binderTerm();
    return iffTerm();
  }

  TermPtr operand(TermPtr (Parser::*level)()) {
    if (startsBinder()) return binderTerm();
    return (this->*level)();
  }

  TermPtr binderTerm() {
    SourceSpan start = peek().span;
    if (isSym("\\")) {
      next();
      std::string x = ident();
      expectSym(":");
      TypePtr a = type();
      expectSym(".");
      TermPtr body = withBinders({x}, [&] { return term(); });
      return mkLam(x, a, body, spanFrom(start));
    }
    if (isKw("forall") || isKw("exists")) {
      bool all = next().text == "forall";
      // forall x, y : A. F  /  forall x:A, y:B. F
      std::vector<std::pair<std::string, TypePtr>> binders;
      std::vector<std::string> pending;
      std::vector<std::string> names;
      while (true) {
        std::string x = ident();
        pending.push_back(x);
        if (isSym(",")) {
          next();
          continue;
        }
        expectSym(":");
        TypePtr a = withBinders(names, [&] { return type(); });
        for (auto& p : pending) {
          binders.emplace_back(p, a);
          names.push_back(p);
        }
        pending.clear();
        if (isSym(",")) {
          next();
          continue;
        }
        break;
      }
      expectSym(".");
      TermPtr body = withBinders(names, [&] { return term(); });
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = all ? mkForall(it->first, it->second, body, spanFrom(start))
                   : mkExists(it->first, it->second, body, spanFrom(start));
      return body;
    }
    expectKw("use");
    TermPtr scrutinee = term();
    expectKw("as");
    std::string x = ident();
    expectSym(":");
    TypePtr carrier = type();
    expectKw("return");
    TypePtr motive = withBinders({x}, [&] { return type(); });
    expectKw("in");
    TermPtr body = withBinders({x}, [&] { return term(); });
    return mkQuotElim(scrutinee, x, carrier, body, motive, spanFrom(start));
  }

  TermPtr iffTerm() {
    SourceSpan start = peek().span;
    TermPtr lhs = implTerm();
    if (isSym("<=>")) {
      next();
      TermPtr rhs = operand(&Parser::implTerm);
      return mkIff(lhs, rhs, spanFrom(start));
    }
    return lhs;
  }

  TermPtr implTerm() {
    SourceSpan start = peek().span;
    TermPtr lhs = orTerm();
    if (isSym("=>")) {
      next();
      TermPtr rhs = operand(&Parser::implTerm);
      return mkImplies(lhs, rhs, spanFrom(start));
    }
    return lhs;
  }

  TermPtr orTerm() {
    SourceSpan start = peek().span;
    TermPtr lhs = andTerm();
    while (isSym("\\/")) {
      next();
      bool binder = startsBinder();
      TermPtr rhs = operand(&Parser::andTerm);
      lhs = mkOr(lhs, rhs, spanFrom(start));
      if (binder) break;
    }
    return lhs;
  }

  TermPtr andTerm() {
    SourceSpan start = peek().span;
    TermPtr lhs = notTerm();
    while (isSym("/\\")) {
      next();
      bool binder = startsBinder();
      TermPtr rhs = operand(&Parser::notTerm);
      lhs = mkAnd(lhs, rhs, spanFrom(start));
      if (binder) break;
    }
    return lhs;
  }

  TermPtr notTerm() {
    SourceSpan start = peek().span;
    if (isSym("~")) {
      next();
      TermPtr arg = operand(&Parser::notTerm);
      return mkNot(arg, spanFrom(start));
    }
    return eqTerm();
  }

  TermPtr eqTerm() {
    SourceSpan start = peek().span;
    TermPtr lhs = appTerm();
    if (isSym("=")) {
      next();
      TermPtr rhs = operand(&Parser::appTerm);
      return mkEq(lhs, rhs, nullptr, spanFrom(start));
    }
    if (isSym("=[")) {
      next();
      TypePtr at = type();
      expectSym("]");
      TermPtr rhs = operand(&Parser::appTerm);
      return mkEq(lhs, rhs, at, spanFrom(start));
    }
    return lhs;
  }

  TermPtr appTerm() {
    SourceSpan start = peek().span;
    TermPtr head = atom();
    while (startsAtom() || startsBinder()) {
      if (startsBinder()) {
        TermPtr arg = binderTerm();
        head = mkApp(head, arg, spanFrom(start));
        break;
      }
      TermPtr arg = atom();
      head = mkApp(head, arg, spanFrom(start));
    }
    return head;
  }

  TermPtr atom() {
    SourceSpan start = peek().span;
    if (isKw("true")) {
      next();
      return mkTrue(start);
    }
    if (isKw("false")) {
      next();
      return mkFalse(start);
    }
    if (isSym("(")) {
      next();
      TermPtr t = term();
      expectSym(")");
      return t;
    }
    if (!at(Tok::Ident)) fail({"term"});
    std::string name = next().text;
    return bound(name) ? mkVar(name, start) : mkConst(name, start);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

ParsedTheory parseTheory(const std::string& text, const std::string& file) {
  return Parser(lex(text, file), {}).theory();
}

ParsedTheory parseTheoryFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(SourceSpan{path}, "cannot open file", {});
  std::stringstream ss;
  ss << in.rdbuf();
  return parseTheory(ss.str(), path);
}

TermPtr parseTerm(const std::string& text, const std::vector<std::string>& bound) {
  return Parser(lex(text, ""), bound).standaloneTerm();
}

TypePtr parseType(const std::string& text, const std::vector<std::string>& bound) {
  return Parser(lex(text, ""), bound).standaloneType();
}

// ---- printing ----

namespace {

enum Prec { kBinder = 0, kIff = 1, kImpl = 2, kOr = 3, kAnd = 4, kNot = 5, kEq = 6, kApp = 7, kAtom = 8 };

int precOf(const TermPtr& t) {
  return std::visit(
      [](const auto& n) -> int {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Lam> || std::is_same_v<N, tm::Forall> ||
                      std::is_same_v<N, tm::Exists> || std::is_same_v<N, tm::QuotElim>)
          return kBinder;
        else if constexpr (std::is_same_v<N, tm::Iff>)
          return kIff;
        else if constexpr (std::is_same_v<N, tm::Implies>)
          return kImpl;
        else if constexpr (std::is_same_v<N, tm::Or>)
          return kOr;
        else if constexpr (std::is_same_v<N, tm::And>)
          return kAnd;
        else if constexpr (std::is_same_v<N, tm::Not>)
          return kNot;
        else if constexpr (std::is_same_v<N, tm::Eq>)
          return kEq;
        else if constexpr (std::is_same_v<N, tm::App>)
          return kApp;
        else
          return kAtom;
      },
      t->node);
}

struct Printer {
  std::string term(const TermPtr& t, int ctx) const {
    std::string s = raw(t);
    return precOf(t) < ctx ? "(" + s + ")" : s;
  }

  std::string raw(const TermPtr& t) const {
    return std::visit(
        [&](const auto& n) -> std::string {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, tm::Const> || std::is_same_v<N, tm::Var>) {
            return n.name;
          } else if constexpr (std::is_same_v<N, tm::Lam>) {
            return "\\" + n.binder + ":" + type(n.annot) + ". " + term(n.body, kBinder);
          } else if constexpr (std::is_same_v<N, tm::Forall>) {
            return "forall " + n.binder + ":" + type(n.annot) + ". " + term(n.body, kBinder);
          } else if constexpr (std::is_same_v<N, tm::Exists>) {
            return "exists " + n.binder + ":" + type(n.annot) + ". " + term(n.body, kBinder);
          } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
            return "use " + term(n.scrutinee, kBinder + 1) + " as " + n.binder + " : " + type(n.carrier) +
                   " return " + type(n.motive) + " in " + term(n.body, kBinder);
          } else if constexpr (std::is_same_v<N, tm::App>) {
            return term(n.fun, kApp) + " " + term(n.arg, kAtom);
          } else if constexpr (std::is_same_v<N, tm::Eq>) {
            std::string op = n.at ? " =[" + type(n.at) + "] " : " = ";
            return term(n.lhs, kApp) + op + term(n.rhs, kApp);
          } else if constexpr (std::is_same_v<N, tm::Implies>) {
            return term(n.hyp, kOr) + " => " + term(n.concl, kImpl);
          } else if constexpr (std::is_same_v<N, tm::Iff>) {
            return term(n.lhs, kImpl) + " <=> " + term(n.rhs, kImpl);
          } else if constexpr (std::is_same_v<N, tm::Or>) {
            return term(n.lhs, kOr) + " \\/ " + term(n.rhs, kAnd);
          } else if constexpr (std::is_same_v<N, tm::And>) {
            return term(n.lhs, kAnd) + " /\\ " + term(n.rhs, kNot);
          } else if constexpr (std::is_same_v<N, tm::Not>) {
            return "~" + term(n.arg, kNot);
          } else if constexpr (std::is_same_v<N, tm::True>) {
            return "true";
          } else {
            return "false";
          }
        },
        t->node);
  }

  // Terms inside types are atoms unless they are plain names.
  std::string typeArg(const TermPtr& t) const { return term(t, kAtom); }

  std::string type(const TypePtr& a) const {
    return std::visit(
        [&](const auto& n) -> std::string {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ty::Bool>) {
            return "bool";
          } else if constexpr (std::is_same_v<N, ty::Base>) {
            std::string s = n.name;
            for (const auto& arg : n.args) s += " " + typeArg(arg);
            return s;
          } else if constexpr (std::is_same_v<N, ty::Pi>) {
            if (n.binder != kAnon && occursFree(n.binder, n.codomain))
              return "(" + n.binder + ":" + type(n.domain) + ") -> " + type(n.codomain);
            bool wrap = !n.domain->template is<ty::Bool>() && !n.domain->template is<ty::Base>();
            std::string dom = type(n.domain);
            return (wrap ? "(" + dom + ")" : dom) + " -> " + type(n.codomain);
          } else if constexpr (std::is_same_v<N, ty::Refine>) {
            return postfixBase(n.base) + " | " + typeArg(n.pred);
          } else {
            return postfixBase(n.base) + " / " + typeArg(n.rel);
          }
        },
        a->node);
  }

  std::string postfixBase(const TypePtr& a) const {
    std::string s = type(a);
    return a->is<ty::Pi>() ? "(" + s + ")" : s;
  }
};

TermPtr prepare(const TermPtr& t, const PrintOptions& opts) { return opts.resugar ? resugar(t) : t; }
TypePtr prepare(const TypePtr& a, const PrintOptions& opts) { return opts.resugar ? resugar(a) : a; }

std::string telescopeStr(const Telescope& tele, const PrintOptions& opts) {
  std::string s;
  for (const auto& [x, a] : tele) s += " (" + x + " : " + printType(a, opts) + ")";
  return s;
}

}  // namespace

std::string printTerm(const TermPtr& t, const PrintOptions& opts) {
  return Printer{}.term(prepare(t, opts), kBinder);
}

std::string printType(const TypePtr& a, const PrintOptions& opts) { return Printer{}.type(prepare(a, opts)); }

std::string printDecl(const TheoryDecl& d, const PrintOptions& opts) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, decl::TypeSym>) {
          return "type " + n.name + telescopeStr(n.telescope, opts);
        } else if constexpr (std::is_same_v<N, decl::ConstDecl>) {
          return "const " + n.name + " : " + printType(n.type, opts);
        } else if constexpr (std::is_same_v<N, decl::Axiom>) {
          return "axiom " + n.name + " : " + printTerm(n.formula, opts);
        } else if constexpr (std::is_same_v<N, decl::TypeDef>) {
          return "def " + n.name + telescopeStr(n.telescope, opts) + " := " + printType(n.rhs, opts);
        } else {
          return "def " + n.name + " : " + printType(n.type, opts) + " := " + printTerm(n.rhs, opts);
        }
      },
      d.node);
}

std::string printTheory(const ParsedTheory& thy, const PrintOptions& opts) {
  std::string out;
  for (const auto& d : thy.decls) out += printDecl(d, opts) + "\n";
  for (const auto& c : thy.conjectures) out += "conjecture " + c.name + " : " + printTerm(c.formula, opts) + "\n";
  return out;
}

std::string printContext(const Context& ctx, const PrintOptions& opts) {
  std::string out;
  for (const auto& e : ctx.entries()) {
    if (!out.empty()) out += ", ";
    out += e.isVar() ? e.name + ":" + printType(e.type, opts) : printTerm(e.formula, opts);
  }
  return out;
}

}  // namespace dholc
