#include <doctest.h>

#include <map>

#include "dholc/hol.hpp"
#include "dholc/oracle.hpp"
#include "dholc/parser.hpp"
#include "dholc/translate.hpp"
#include "criteria.hpp"

using namespace dholc;
using namespace dholc::testing;

namespace {

TypePtr Ty(const std::string& s, const std::vector<std::string>& bound = {}) { return expandSugar(parseType(s, bound)); }
TermPtr T(const std::string& s, const std::vector<std::string>& bound = {}) { return expandSugar(parseTerm(s, bound)); }

HolTermPtr hv(const std::string& x) { return holVar(x); }
HolTermPtr hc(const std::string& x) { return holConst(x); }

bool holSame(const HolTermPtr& a, const HolTermPtr& b) { return holAlphaEq(holBetaNormalize(a), holBetaNormalize(b)); }

}  // namespace

TEST_CASE("type erasure") {
  CHECK(holTypeEq(translateType(Ty("llist n", {"n"})), holBase("llist")));
  CHECK(holTypeEq(translateType(Ty("(m:nat) -> llist m")), holArrow(holBase("nat"), holBase("llist"))));
  CHECK(holTypeEq(translateType(Ty("list / sc")), holBase("list")));
  CHECK(holTypeEq(translateType(Ty("list | ne")), holBase("list")));
  CHECK(holTypeEq(translateType(mkBool()), holBool()));
}

TEST_CASE("PER relations") {
  CHECK(holSame(perRelation(mkBool(), hv("s"), hv("t")), holEq(hv("s"), hv("t"), holBool())));
  CHECK(holSame(perRelation(Ty("llist n", {"n"}), hv("s"), hv("t")), holApps(hc("rel_llist"), {hv("n"), hv("s"), hv("t")})));

  HolTermPtr pi = perRelation(Ty("nat -> obj"), hv("f"), hv("g"));
  HolTermPtr expectPi = holForall(
      "x", holBase("nat"),
      holForall("y", holBase("nat"),
                holImplies(holApps(hc("rel_nat"), {hv("x"), hv("y")}),
                           holApps(hc("rel_obj"), {holApp(hv("f"), hv("x")), holApp(hv("g"), hv("y"))}))));
  CHECK(holSame(pi, expectPi));

  HolTermPtr quot = perRelation(Ty("list / sc"), hv("s"), hv("t"));
  HolTermPtr expectQuot = holAnd({holApps(hc("sc"), {hv("s"), hv("t")}), holApps(hc("rel_list"), {hv("s"), hv("s")}),
                                  holApps(hc("rel_list"), {hv("t"), hv("t")})});
  CHECK(holSame(quot, expectQuot));

  HolTermPtr ref = perRelation(Ty("list | ne"), hv("s"), hv("t"));
  HolTermPtr expectRef = holAnd({holApps(hc("rel_list"), {hv("s"), hv("t")}), holApp(hc("ne"), hv("s")), holApp(hc("ne"), hv("t"))});
  CHECK(holSame(ref, expectRef));
}

TEST_CASE("typing predicates are the diagonal of the PER") {
  for (const auto* t : {"bool", "llist n", "list | ne", "list / sc", "nat -> obj", "(m:nat) -> llist m -> bool",
                        "(list | ne) / sc", "(nat -> nat) | even"}) {
    TypePtr a = Ty(t, {"n"});
    CHECK(holAlphaEq(typingPredicate(a, hv("l")), perRelation(a, hv("l"), hv("l"))));
  }
  CHECK(holSame(typingPredicate(mkBool(), hv("F")), holEq(hv("F"), hv("F"), holBool())));
  CHECK(holSame(typingPredicate(Ty("llist n", {"n"}), hv("l")), holApps(hc("rel_llist"), {hv("n"), hv("l"), hv("l")})));
}

TEST_CASE("term translation") {
  CHECK(holAlphaEq(translateTerm(T("cons x l", {"x", "l"})), holApps(hc("cons"), {hv("x"), hv("l")})));
  CHECK(holSame(translateTerm(mkEq(mkVar("l"), mkVar("m"), Ty("llist n", {"n"}))),
                holApps(hc("rel_llist"), {hv("n"), hv("l"), hv("m")})));
  TypePtr set = Ty("list / sc");
  CHECK(holSame(translateTerm(mkEq(mkVar("x"), mkVar("y"), set)),
                holAnd({holApps(hc("sc"), {hv("x"), hv("y")}), holApps(hc("rel_list"), {hv("x"), hv("x")}),
                        holApps(hc("rel_list"), {hv("y"), hv("y")})})));
}

TEST_CASE("theory translation") {
  LoadedTheory l = loadTheory(slurp(corpusFile("lists.dhol")));
  REQUIRE(l.result.accepted());
  Translator tr;
  HolTheory thy = tr.theory(l.result.elaborated);
  CHECK(thy.hasType("llist"));
  REQUIRE(thy.constType("rel_llist"));
  CHECK(holTypeEq(thy.constType("rel_llist"),
                  holArrows({holBase("nat"), holBase("llist"), holBase("llist")}, holBool())));
  std::set<std::string> axioms;
  for (const auto& [name, ax] : thy.axioms) axioms.insert(name);
  for (const auto* n : {"llist_trans", "llist_sym", "llist_per", "nat_trans", "typing_zero", "typing_lcons"})
    CHECK(axioms.count(n));
  for (const auto& [name, ax] : thy.axioms)
    if (name == "typing_zero") CHECK(holSame(ax, holApps(hc("rel_nat"), {hc("zero"), hc("zero")})));

  HolTheory empty = Translator().theory({});
  CHECK(empty.typeSyms.empty());
  CHECK(empty.consts.empty());
  CHECK(empty.axioms.empty());
}

TEST_CASE("obligation translation") {
  Elaboration e = elaborateCorpus("llist");
  REQUIRE_FALSE(e.error);
  Translator tr;
  tr.theory(e.check.elaborated);
  REQUIRE(!e.check.obligations.empty());
  HolConjecture c = tr.obligation(e.check.obligations[0]);
  CHECK(holSame(c.formula, holApps(hc("rel_nat"), {holApp(hc("length"), hc("nil")), hc("zero")})));
  CHECK(c.sourceObligation == "ob001");

  Obligation bare{{}, mkEq(mkConst("zero"), mkConst("zero"), mkBase("nat")), "test", {}, "ob"};
  CHECK(holSame(tr.obligation(bare).formula, holApps(hc("rel_nat"), {hc("zero"), hc("zero")})));
}

TEST_CASE("translation invariants over the corpus and random theories") {
  int obligations = 0, judgments = 0;
  std::size_t violations = 0;
  auto audit = [&](const std::string& text) {
    JudgmentAudit a = auditJudgments(text);
    REQUIRE(a.accepted);
    for (const auto& v : a.violations) FAIL_CHECK(v);
    violations += a.violations.size();
    obligations += a.obligations;
    judgments += a.judgments;
  };
  for (const auto& stem : corpusStems()) {
    CAPTURE(stem);
    audit(slurp(corpusFile(stem + ".dhol")));
  }
  for (unsigned seed = 0; seed < 200; ++seed) {
    TheoryGen gen(seed);
    std::string text = gen.theory();
    CAPTURE(text);
    audit(text);
  }
  CHECK(violations == 0);
  CHECK(obligations > 500);
  CHECK(judgments > 5000);
}

TEST_CASE("equal types erase identically") {
  for (unsigned seed = 0; seed < 60; ++seed) {
    TheoryGen gen(500 + seed, false);
    LoadedTheory l = loadTheory(gen.theory());
    REQUIRE(l.result.accepted());
    for (int k = 0; k < 5; ++k) {
      auto [x, y] = gen.typePair(2);
      TypePtr a = l.checker.checkType({}, Ty(x)).first;
      TypePtr b = l.checker.checkType({}, Ty(y)).first;
      try {
        l.checker.typeEqual({}, a, b);
      } catch (const StructuralError&) {
        continue;
      }
      CHECK(holTypeEq(translateType(a), translateType(b)));
    }
  }
}

TEST_CASE("distinct terms have distinct images") {
  TranslateOptions raw;
  raw.simplify = false;
  int pairs = 0;
  for (unsigned seed = 0; pairs < 200 && seed < 400; ++seed) {
    TheoryGen gen(7000 + seed);
    LoadedTheory l = loadTheory(gen.theory());
    REQUIRE(l.result.accepted());
    GenTypePtr a = gen.type(1, {});
    TypePtr at = l.checker.checkType({}, Ty(a->text())).first;
    TermPtr s = l.checker.checkTermAgainst({}, T(gen.term(a, 3, {})), at).term;
    TermPtr t = l.checker.checkTermAgainst({}, T(gen.term(a, 3, {})), at).term;
    if (alphaEq(s, t)) continue;
    ++pairs;
    Translator tr(raw);
    tr.theory(l.result.elaborated);
    CHECK_MESSAGE(!holAlphaEq(tr.term(s), tr.term(t)), printTerm(s) << " vs " << printTerm(t));
  }
  CHECK(pairs == 200);
}

TEST_CASE("generated PER axioms entail symmetry and transitivity") {
  OracleOptions oo;
  oo.sizeBound = 2;
  for (const auto& stem : corpusStems()) {
    Elaboration e = elaborateCorpus(stem);
    REQUIRE_FALSE(e.error);
    HolTheory thy = perFragment(translateTheory(e));
    for (const auto& a : thy.typeSyms) {
      CAPTURE(a);
      HolTypePtr relType = thy.constType("rel_" + a);
      REQUIRE(relType);
      std::vector<HolTypePtr> idx;
      for (HolTypePtr cur = relType; cur->kind == HolType::Kind::Arrow && cur->cod->kind == HolType::Kind::Arrow &&
                                     cur->cod->cod->kind == HolType::Kind::Arrow;
           cur = cur->cod)
        idx.push_back(cur->dom);
      std::vector<HolTermPtr> args;
      for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(hv("i" + std::to_string(i)));
      auto rel = [&](const char* x, const char* y) {
        auto all = args;
        all.push_back(hv(x));
        all.push_back(hv(y));
        return holApps(hc("rel_" + a), all);
      };
      auto close = [&](HolTermPtr body, std::vector<std::string> vars) {
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = holForall(*it, holBase(a), body);
        for (std::size_t i = idx.size(); i-- > 0;) body = holForall("i" + std::to_string(i), idx[i], body);
        return body;
      };
      HolTermPtr sym = close(holImplies(rel("x", "y"), rel("y", "x")), {"x", "y"});
      HolTermPtr trans = close(holImplies(rel("x", "y"), holImplies(rel("y", "z"), rel("x", "z"))), {"x", "y", "z"});
      CHECK(checkValidFinite(thy, sym, oo).status == OracleStatus::Valid);
      CHECK(checkValidFinite(thy, trans, oo).status == OracleStatus::Valid);
    }
  }
}

namespace {

OracleStatus oracle(const PerLaw& law, const HolTermPtr& body) {
  HolTermPtr closed;
  OracleResult res = perLawOracle(law, body, &closed);
  if (res.status == OracleStatus::Counterexample) {
    REQUIRE(res.model);
    CHECK_FALSE(evalFormula(law.thy, *res.model, closed));
  }
  return res.status;
}

}  // namespace

TEST_CASE("identity relations model the PER axioms") {
  for (const auto& stem : corpusStems()) {
    Elaboration e = elaborateCorpus(stem);
    REQUIRE_FALSE(e.error);
    HolTheory thy = perFragment(translateTheory(e));
    for (int n = 1; n <= 2; ++n) {
      FiniteModel m = identityRelationModel(thy, n);
      for (const auto& [name, ax] : thy.axioms) {
        CAPTURE(stem);
        CAPTURE(name);
        CHECK(evalFormula(thy, m, ax));
      }
    }
  }
}

TEST_CASE("PER identities behind the normalization laws") {
  for (const auto& t : perIdentityLaws()) {
    CAPTURE(t);
    PerLaw law = perLaw(t);
    CHECK_FALSE(alphaEq(law.lhs, law.rhs));
    HolTermPtr iff = holIff(law.tr.per(law.lhs, hv("f"), hv("g")), law.tr.per(law.rhs, hv("f"), hv("g")));
    CHECK(oracle(law, iff) == OracleStatus::Valid);
    // control: dropping the predicate and relation changes the PER
    TypePtr core = law.loaded.checker.normalizeType({}, law.lhs).first.core;
    HolTermPtr wrong = holIff(law.tr.per(law.lhs, hv("f"), hv("g")), law.tr.per(core, hv("f"), hv("g")));
    CHECK(oracle(law, wrong) == OracleStatus::Counterexample);
  }
}

TEST_CASE("the refined domain law is only an inclusion of PERs") {
  PerLaw law = perLaw("(A | p) -> B");
  REQUIRE(law.rhs->is<ty::Quotient>());
  HolTermPtr lhs = law.tr.per(law.lhs, hv("f"), hv("g"));
  HolTermPtr rhs = law.tr.per(law.rhs, hv("f"), hv("g"));
  CHECK(oracle(law, holImplies(rhs, lhs)) == OracleStatus::Valid);
  CHECK(oracle(law, holImplies(lhs, rhs)) == OracleStatus::Counterexample);
}
