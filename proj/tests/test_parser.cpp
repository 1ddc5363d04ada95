#include <doctest.h>

#include "dholc/parser.hpp"
#include "support.hpp"

using namespace dholc;
using dholc::testing::AstGen;

namespace {

bool sameDecl(const TheoryDecl& a, const TheoryDecl& b) {
  if (a.name() != b.name() || a.node.index() != b.node.index()) return false;
  auto sameTele = [](const Telescope& x, const Telescope& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].first != y[i].first || !alphaEq(x[i].second, y[i].second)) return false;
    return true;
  };
  if (const auto* t = a.as<decl::TypeSym>()) return sameTele(t->telescope, b.as<decl::TypeSym>()->telescope);
  if (const auto* c = a.as<decl::ConstDecl>()) return alphaEq(c->type, b.as<decl::ConstDecl>()->type);
  if (const auto* x = a.as<decl::Axiom>()) return alphaEq(x->formula, b.as<decl::Axiom>()->formula);
  if (const auto* d = a.as<decl::TypeDef>()) {
    const auto* e = b.as<decl::TypeDef>();
    return sameTele(d->telescope, e->telescope) && alphaEq(d->rhs, e->rhs);
  }
  const auto* d = a.as<decl::TermDef>();
  const auto* e = b.as<decl::TermDef>();
  return ((!d->type && !e->type) || (d->type && e->type && alphaEq(d->type, e->type))) && alphaEq(d->rhs, e->rhs);
}

void checkNested(const SourceSpan& outer, const TermPtr& t);
void checkNested(const SourceSpan& outer, const TypePtr& a) {
  if (!a) return;
  REQUIRE(a->span.known());
  CHECK(outer.contains(a->span));
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ty::Base>) {
          for (const auto& x : n.args) checkNested(a->span, x);
        } else if constexpr (std::is_same_v<N, ty::Pi>) {
          checkNested(a->span, n.domain);
          checkNested(a->span, n.codomain);
        } else if constexpr (std::is_same_v<N, ty::Refine>) {
          checkNested(a->span, n.base);
          checkNested(a->span, n.pred);
        } else if constexpr (std::is_same_v<N, ty::Quotient>) {
          checkNested(a->span, n.base);
          checkNested(a->span, n.rel);
        }
      },
      a->node);
}

void checkNested(const SourceSpan& outer, const TermPtr& t) {
  if (!t) return;
  REQUIRE(t->span.known());
  CHECK_MESSAGE(outer.contains(t->span), outer.str() << " vs " << t->span.str() << " " << printTerm(t));
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, tm::Lam> || std::is_same_v<N, tm::Forall> || std::is_same_v<N, tm::Exists>) {
          checkNested(t->span, n.annot);
          checkNested(t->span, n.body);
        } else if constexpr (std::is_same_v<N, tm::App>) {
          checkNested(t->span, n.fun);
          checkNested(t->span, n.arg);
        } else if constexpr (std::is_same_v<N, tm::Eq>) {
          checkNested(t->span, n.lhs);
          checkNested(t->span, n.rhs);
          checkNested(t->span, n.at);
        } else if constexpr (std::is_same_v<N, tm::Implies>) {
          checkNested(t->span, n.hyp);
          checkNested(t->span, n.concl);
        } else if constexpr (std::is_same_v<N, tm::QuotElim>) {
          checkNested(t->span, n.scrutinee);
          checkNested(t->span, n.carrier);
          checkNested(t->span, n.body);
          checkNested(t->span, n.motive);
        } else if constexpr (std::is_same_v<N, tm::Not>) {
          checkNested(t->span, n.arg);
        } else if constexpr (std::is_same_v<N, tm::And> || std::is_same_v<N, tm::Or> || std::is_same_v<N, tm::Iff>) {
          checkNested(t->span, n.lhs);
          checkNested(t->span, n.rhs);
        }
      },
      t->node);
}

}  // namespace

TEST_CASE("declarations") {
  ParsedTheory thy = parseTheory("type nat  const zero : nat");
  REQUIRE(thy.decls.size() == 2);
  const auto* nat = thy.decls[0].as<decl::TypeSym>();
  REQUIRE(nat);
  CHECK(nat->name == "nat");
  CHECK(nat->telescope.empty());
  const auto* zero = thy.decls[1].as<decl::ConstDecl>();
  REQUIRE(zero);
  CHECK(zero->name == "zero");
  CHECK(alphaEq(zero->type, mkBase("nat")));

  ParsedTheory ll = parseTheory("type llist (n : nat)");
  const auto* llist = ll.decls.at(0).as<decl::TypeSym>();
  REQUIRE(llist);
  REQUIRE(llist->telescope.size() == 1);
  CHECK(llist->telescope[0].first == "n");
  CHECK(alphaEq(llist->telescope[0].second, mkBase("nat")));
}

TEST_CASE("empty input") {
  ParsedTheory thy = parseTheory("");
  CHECK(thy.decls.empty());
  CHECK(thy.conjectures.empty());
  CHECK(parseTheory("# only a comment\n\n").decls.empty());
}

TEST_CASE("printing") {
  TypePtr refined = mkRefine(mkBase("list"), mkLam("l", mkBase("list"),
                                                   mkEq(mkApp(mkConst("length"), mkVar("l")), mkVar("n"), nullptr)));
  CHECK(printType(refined) == "list | (\\l:list. length l = n)");
  CHECK(printType(mkQuotient(mkBase("A"), mkConst("r"))) == "A / r");
  TypePtr lconc = parseType("(m:nat) -> (n:nat) -> llist m -> llist n -> llist (plus m n)");
  CHECK(printType(lconc) == "(m:nat) -> (n:nat) -> llist m -> llist n -> llist (plus m n)");
  CHECK(printTerm(parseTerm("s =[nat] t")) == "s =[nat] t");
}

TEST_CASE("precedence") {
  // refinement binds looser than the arrow
  CHECK(alphaEq(parseType("A -> B | p"), mkArrow(mkBase("A"), mkRefine(mkBase("B"), mkConst("p")))));
  CHECK(alphaEq(parseType("(A -> B) | p"), mkRefine(mkArrow(mkBase("A"), mkBase("B")), mkConst("p"))));
  // implication is right associative, conjunction binds tighter
  CHECK(alphaEq(parseTerm("a => b => c"), mkImplies(mkConst("a"), mkImplies(mkConst("b"), mkConst("c")))));
  CHECK(alphaEq(parseTerm("a /\\ b \\/ c"), mkOr(mkAnd(mkConst("a"), mkConst("b")), mkConst("c"))));
  CHECK(alphaEq(parseTerm("f x = g y /\\ z"),
                mkAnd(mkEq(mkApp(mkConst("f"), mkConst("x")), mkApp(mkConst("g"), mkConst("y")), nullptr), mkConst("z"))));
  // binders extend as far right as possible
  CHECK(alphaEq(parseTerm("forall x:A. p x => q x"),
                mkForall("x", mkBase("A"), mkImplies(mkApp(mkConst("p"), mkVar("x")), mkApp(mkConst("q"), mkVar("x"))))));
}

TEST_CASE("round trip on the corpus") {
  for (const auto& stem : dholc::testing::corpusStems()) {
    CAPTURE(stem);
    ParsedTheory thy = parseTheory(dholc::testing::slurp(dholc::testing::corpusFile(stem + ".dhol")), stem);
    ParsedTheory again = parseTheory(printTheory(thy), stem);
    REQUIRE(again.decls.size() == thy.decls.size());
    REQUIRE(again.conjectures.size() == thy.conjectures.size());
    for (std::size_t i = 0; i < thy.decls.size(); ++i) CHECK_MESSAGE(sameDecl(thy.decls[i], again.decls[i]), thy.decls[i].name());
    for (std::size_t i = 0; i < thy.conjectures.size(); ++i)
      CHECK(alphaEq(thy.conjectures[i].formula, again.conjectures[i].formula));
  }
}

TEST_CASE("round trip on random terms and types") {
  AstGen gen(2024);
  PrintOptions raw{false};
  for (int i = 0; i < 500; ++i) {
    TermPtr t = gen.term(5, {"u", "v"});
    std::string text = printTerm(t, raw);
    TermPtr back = parseTerm(text, {"u", "v"});
    CHECK_MESSAGE(alphaEq(back, t), text);
  }
  for (int i = 0; i < 200; ++i) {
    TypePtr a = gen.type(4, {"u"});
    std::string text = printType(a, raw);
    CHECK_MESSAGE(alphaEq(parseType(text, {"u"}), a), text);
  }
}

TEST_CASE("spans nest") {
  for (const auto& stem : dholc::testing::corpusStems()) {
    ParsedTheory thy = parseTheory(dholc::testing::slurp(dholc::testing::corpusFile(stem + ".dhol")), stem);
    for (const auto& d : thy.decls) {
      REQUIRE(d.span.known());
      CHECK(d.span.file == stem);
      if (const auto* c = d.as<decl::ConstDecl>()) checkNested(d.span, c->type);
      if (const auto* a = d.as<decl::Axiom>()) checkNested(d.span, a->formula);
      if (const auto* td = d.as<decl::TypeDef>()) checkNested(d.span, td->rhs);
      if (const auto* fd = d.as<decl::TermDef>()) {
        checkNested(d.span, fd->type);
        checkNested(d.span, fd->rhs);
      }
    }
    for (const auto& c : thy.conjectures) checkNested(c.span, c.formula);
  }
}

TEST_CASE("parse errors carry a span and the expected tokens") {
  try {
    parseTheory("type nat\nconst zero nat\n", "bad");
    FAIL("accepted malformed input");
  } catch (const ParseError& e) {
    CHECK(e.span().file == "bad");
    CHECK(e.span().startLine == 2);
    CHECK(e.span().startCol == 12);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "':'") != e.expected().end());
  }
  CHECK_THROWS_AS(parseTheory("axiom a : (p"), ParseError);
  CHECK_THROWS_AS(parseTheory("const c : "), ParseError);
  CHECK_THROWS_AS(parseTerm("\\x. x"), ParseError);  // lambdas need an annotation
  CHECK_THROWS_AS(parseTheory("frobnicate x"), ParseError);
}
