#include <doctest.h>

#include "dholc/oracle.hpp"
#include "dholc/tptp.hpp"
#include "dholc/translate.hpp"
#include "criteria.hpp"

using namespace dholc;
using namespace dholc::testing;

namespace {

OracleResult run(const HolTheory& thy, const HolTermPtr& f, int bound, bool parallel = true,
                 std::uint64_t budget = 50'000'000) {
  OracleOptions o;
  o.sizeBound = bound;
  o.parallel = parallel;
  o.budget = budget;
  return checkValidFinite(thy, f, o);
}

HolTheory relationTheory() {
  HolTheory thy;
  thy.typeSyms = {"a"};
  thy.consts = {{"r", holArrows({holBase("a"), holBase("a")}, holBool())}};
  return thy;
}

HolTermPtr rApp(const char* x, const char* y) { return holApps(holConst("r"), {holVar(x), holVar(y)}); }

}  // namespace

TEST_CASE("curated verdicts at bound 2") {
  int matched = 0;
  for (const auto& c : curatedFormulas()) {
    CAPTURE(c.name);
    ThfProblem p = curatedProblem(c);
    REQUIRE(p.conjectures.size() == 1);
    OracleResult r = run(p.theory, p.conjectures[0].formula, 2);
    CHECK(r.status == c.expected);
    matched += r.status == c.expected;
    if (r.status == OracleStatus::Counterexample) {
      REQUIRE(r.model);
      CHECK_FALSE(evalFormula(p.theory, *r.model, p.conjectures[0].formula));
      for (const auto& [name, ax] : p.theory.axioms) CHECK(evalFormula(p.theory, *r.model, ax));
    }
  }
  CHECK(matched == 20);
}

TEST_CASE("a relation that relates nothing is not reflexive") {
  HolTheory thy = relationTheory();
  thy.axioms.emplace_back("empty", holForall("x", holBase("a"), holForall("y", holBase("a"), holNot(rApp("x", "y")))));
  OracleResult r = run(thy, holForall("x", holBase("a"), rApp("x", "x")), 1);
  REQUIRE(r.status == OracleStatus::Counterexample);
  CHECK(r.model->carriers.at("a") == 1);
  CHECK(r.model->interp.at("r") == 0);
}

TEST_CASE("model evaluation") {
  HolTheory thy = relationTheory();
  HolTypePtr a = holBase("a");
  HolTermPtr sym = holForall("x", a, holForall("y", a, holImplies(rApp("x", "y"), rApp("y", "x"))));
  HolTermPtr per = holForall("u", a, holForall("v", a, holImplies(rApp("v", "v"),
      holEq(rApp("u", "v"), holEq(holVar("u"), holVar("v"), a), holBool()))));
  HolTermPtr oneWay = holExists("x", a, holExists("y", a, holAnd(rApp("x", "y"), holNot(rApp("y", "x")))));

  FiniteModel m;
  m.carriers["a"] = 2;
  // r = {(0,1)}: the row for x = 0 is the predicate {1} (value 2), the row for x = 1 is empty.
  m.interp["r"] = 2;
  CHECK(evalFormula(thy, m, oneWay));
  CHECK_FALSE(evalFormula(thy, m, sym));

  HolTheory bare;
  bare.typeSyms = {"a"};
  m.interp["r"] = evalTerm(bare, m, holLam("x", a, holLam("y", a, holEq(holVar("x"), holVar("y"), a))));
  CHECK(m.interp["r"] == 1 + 4 * 2);
  CHECK(evalFormula(thy, m, sym));
  CHECK(evalFormula(thy, m, per));
  CHECK_FALSE(evalFormula(thy, m, oneWay));
}

TEST_CASE("small validities") {
  HolTheory empty;
  CHECK(run(empty, holForall("x", holBool(), holEq(holVar("x"), holVar("x"), holBool())), 2).status ==
        OracleStatus::Valid);
  CHECK(run(empty, holFalse(), 2).status == OracleStatus::Counterexample);
  CHECK(run(empty, holVar("free"), 2).status == OracleStatus::Inconclusive);
}

TEST_CASE("sets quotient relation is an equivalence at bound 2") {
  Elaboration e = dholc::testing::elaborateCorpus("sets");
  REQUIRE_FALSE(e.error);
  Translator tr;
  HolTheory thy = tr.theory(e.check.elaborated);
  int qtypes = 0;
  for (const auto& ob : e.check.obligations) {
    if (ob.rule.rfind("Qtype", 0) != 0) continue;
    ++qtypes;
    CAPTURE(ob.id);
    CHECK(run(thy, tr.obligation(ob).formula, 2).status == OracleStatus::Valid);
  }
  CHECK(qtypes == 3);
}

TEST_CASE("validity is antitone in the bound") {
  for (const auto& c : curatedFormulas()) {
    CAPTURE(c.name);
    ThfProblem p = curatedProblem(c);
    const HolTermPtr& f = p.conjectures[0].formula;
    OracleStatus small = run(p.theory, f, 1).status;
    OracleStatus big = run(p.theory, f, 2).status;
    if (big == OracleStatus::Valid) CHECK(small == OracleStatus::Valid);
    if (small == OracleStatus::Counterexample) CHECK(big == OracleStatus::Counterexample);
  }
}

TEST_CASE("serial and parallel search agree") {
  for (const auto& c : curatedFormulas()) {
    CAPTURE(c.name);
    ThfProblem p = curatedProblem(c);
    const HolTermPtr& f = p.conjectures[0].formula;
    OracleResult s = run(p.theory, f, 2, false);
    OracleResult q = run(p.theory, f, 2, true);
    CHECK(s.status == q.status);
    if (s.status == OracleStatus::Counterexample) {
      CHECK(s.model->carriers == q.model->carriers);
      CHECK(s.model->interp == q.model->interp);
    }
  }
  for (const auto& stem : {"sets", "sets_broken", "lconc_assoc"}) {
    CAPTURE(stem);
    Elaboration e = dholc::testing::elaborateCorpus(stem);
    Translator tr;
    HolTheory thy = tr.theory(e.check.elaborated);
    for (const auto& ob : e.check.obligations) {
      HolTermPtr f = tr.obligation(ob).formula;
      CHECK(run(thy, f, 2, false).status == run(thy, f, 2, true).status);
    }
  }
}

TEST_CASE("an exhausted budget is inconclusive") {
  const CuratedFormula& c = curatedFormulas()[14];  // cantor: many function values to enumerate
  ThfProblem p = curatedProblem(c);
  OracleResult r = run(p.theory, p.conjectures[0].formula, 2, false, 1);
  CHECK(r.status == OracleStatus::Inconclusive);
  CHECK_FALSE(r.note.empty());
}
