// Acceptance runner: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "criteria.hpp"
#include "dholc/atp.hpp"

using namespace dholc;
using namespace dholc::testing;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kCorpusSeconds = 2.0;
constexpr double kLawSeconds = 1.0;
constexpr double kPerSeconds = 60.0;
constexpr int kRandomTheories = 200;
constexpr int kTypePairsPerTheory = 5;
constexpr int kOracleBound = 2;
constexpr int kProverSeconds = 60;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fixed(double x, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << x;
  return os.str();
}

Outcome corpusGoldens() {
  Outcome out;
  for (const std::string stem : {"lists", "llist", "sets", "refined_domain", "settheory"}) {
    Elaboration e = elaborateCorpus(stem);
    if (e.error) {
      out.require(false, stem + ": " + *e.error);
      continue;
    }
    auto golden = readGolden(corpusFile("golden/" + stem + ".golden"));
    if (golden.size() != e.check.obligations.size()) {
      out.require(false, stem + ": " + std::to_string(e.check.obligations.size()) + " obligations, golden has " +
                             std::to_string(golden.size()));
      continue;
    }
    for (std::size_t i = 0; i < golden.size(); ++i) {
      const Obligation& ob = e.check.obligations[i];
      out.require(ob.id == golden[i].id && ob.rule == golden[i].rule &&
                      sameFormula(closeObligation(ob), parseTerm(golden[i].formula)),
                  stem + " " + ob.id + " differs from golden");
    }
  }
  auto start = std::chrono::steady_clock::now();
  for (const std::string stem : {"lists", "llist", "sets", "refined_domain", "settheory"}) {
    Report r = runCheck(slurp(corpusFile(stem + ".dhol")), stem, PipelineOptions{});
    out.require(!r.error, stem + " check failed");
  }
  double secs = secondsSince(start);
  out.require(secs < kCorpusSeconds, "corpus check took " + fixed(secs) + " s");
  out.note("5 theories in " + fixed(secs) + " s");
  return out;
}

Outcome lconcAssociativity() {
  Outcome out;
  Elaboration e = elaborateCorpus("lconc_assoc");
  if (e.error) {
    out.require(false, *e.error);
    return out;
  }
  TermPtr expected = parseTerm("forall m:nat. forall n:nat. forall k:nat. plus m (plus n k) =[nat] plus (plus m n) k");
  int typing = 0;
  for (const auto& ob : e.check.obligations) {
    if (ob.rule == "conjecture") continue;
    ++typing;
    out.require(sameFormula(closeObligation(ob), expected), ob.id + ": " + printTerm(closeObligation(ob)));
  }
  out.require(typing == 1, std::to_string(typing) + " typing obligations");
  return out;
}

Outcome normalizationLaws() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  LoadedTheory l = loadTheory(kLawSignature);
  out.require(l.result.accepted(), "law signature rejected");
  for (const auto& law : lawCases()) {
    std::string why = lawMismatch(l.checker, law);
    out.require(why.empty(), law.name + ": " + why);
  }
  out.require(refinedDomainPreserved(), "RDom counterexample: refined domain not kept in the core");
  double secs = secondsSince(start);
  out.require(secs < kLawSeconds, "took " + fixed(secs) + " s");
  out.note(std::to_string(lawCases().size()) + " laws and the refined-domain counterexample in " + fixed(secs) + " s");
  return out;
}

Outcome translationInvariants() {
  Outcome out;
  int judgments = 0, obligations = 0, violations = 0;
  auto audit = [&](const std::string& text, const std::string& label) {
    JudgmentAudit a = auditJudgments(text);
    out.require(a.accepted, label + " rejected");
    for (const auto& v : a.violations) out.require(false, label + ": " + v);
    violations += static_cast<int>(a.violations.size());
    judgments += a.judgments;
    obligations += a.obligations;
  };
  for (const auto& stem : corpusStems()) audit(slurp(corpusFile(stem + ".dhol")), stem);
  for (unsigned seed = 0; seed < kRandomTheories; ++seed) audit(TheoryGen(seed).theory(), "random " + std::to_string(seed));
  out.note(std::to_string(judgments) + " judgments, " + std::to_string(obligations) + " obligations, " +
           std::to_string(violations) + " violations");
  return out;
}

Outcome perSemantics() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  for (const auto& stem : corpusStems()) {
    Elaboration e = elaborateCorpus(stem);
    if (e.error) {
      out.require(false, stem + ": " + *e.error);
      continue;
    }
    HolTheory thy = perFragment(translateTheory(e));
    for (int n = 1; n <= kOracleBound; ++n) {
      FiniteModel m = identityRelationModel(thy, n);
      for (const auto& [name, ax] : thy.axioms)
        out.require(evalFormula(thy, m, ax), stem + ": identity model violates " + name);
    }
  }
  auto decide = [&](const PerLaw& law, const HolTermPtr& body, OracleStatus want, const std::string& label) {
    HolTermPtr closed;
    OracleResult r = perLawOracle(law, body, &closed);
    out.require(r.status == want, label);
    if (r.status == OracleStatus::Counterexample)
      out.require(r.model && !evalFormula(law.thy, *r.model, closed), label + ": counterexample does not refute");
  };
  for (const auto& t : perIdentityLaws()) {
    PerLaw law = perLaw(t);
    decide(law, holIff(perOf(law, law.lhs), perOf(law, law.rhs)), OracleStatus::Valid, t + ": PER differs from normal form");
  }
  PerLaw rdom = perLaw("(A | p) -> B");
  HolTermPtr lhs = perOf(rdom, rdom.lhs), rhs = perOf(rdom, rdom.rhs);
  decide(rdom, holImplies(rhs, lhs), OracleStatus::Valid, "refined domain: normal-form PER not included");
  decide(rdom, holImplies(lhs, rhs), OracleStatus::Counterexample, "refined domain: PERs unexpectedly equal");
  double secs = secondsSince(start);
  out.require(secs < kPerSeconds, "took " + fixed(secs) + " s");
  out.note("bound " + std::to_string(kOracleBound) + ", " + fixed(secs, 2) + " s");
  return out;
}

Outcome conservativityCheck() {
  Outcome out;
  ConservativityStats st = conservativity(kRandomTheories, kTypePairsPerTheory);
  for (const auto& d : st.discrepancies) out.require(false, d);
  out.require(st.compared == kRandomTheories * kTypePairsPerTheory, "fewer comparisons than planned");
  out.note(std::to_string(st.compared) + " pairs, " + std::to_string(st.succeeded) + " equal, " +
           std::to_string(st.discrepancies.size()) + " discrepancies");
  return out;
}

// Reference HOL formulas for the composition and associativity conjectures, with two typos corrected: the final
// guard of the first reads `set_rel x x`, and the hypothesis on h in the second ranges over `x in u`.
const char* kReferencePrelude =
    "thf(set_type, type, set: $tType).\n"
    "thf(set_rel_decl, type, set_rel: set > set > $o).\n"
    "thf(in_decl, type, in: set > set > $o).\n";

const char* kCompositionReference =
    "thf(composition, conjecture, ! [S: set]: ((set_rel @ S @ S) => (! [T: set]: ((set_rel @ T @ T) => "
    "(! [U: set]: ((set_rel @ U @ U) => "
    "(! [F: set > set]: (((! [X: set]: ((in @ X @ S) => (set_rel @ (F @ X) @ (F @ X)))) & "
    "(! [X: set]: ((in @ X @ S) => (in @ (F @ X) @ T)))) => "
    "(! [G: set > set]: (((! [X: set]: ((in @ X @ T) => (set_rel @ (G @ X) @ (G @ X)))) & "
    "(! [X: set]: ((in @ X @ T) => (in @ (G @ X) @ U)))) => "
    "(! [X: set]: ((set_rel @ X @ X) => ((in @ X @ S) => (in @ (G @ (F @ X)) @ U)))))))))))))).\n";

const char* kAssociativityReference =
    "thf(associativity, conjecture, ! [S: set]: ((set_rel @ S @ S) => (! [T: set]: ((set_rel @ T @ T) => "
    "(! [U: set]: ((set_rel @ U @ U) => (! [V: set]: ((set_rel @ V @ V) => "
    "(! [F: set > set]: (((! [X: set]: ((in @ X @ S) => (set_rel @ (F @ X) @ (F @ X)))) & "
    "(! [X: set]: ((in @ X @ S) => (in @ (F @ X) @ T)))) => "
    "(! [G: set > set]: (((! [X: set]: ((in @ X @ T) => (set_rel @ (G @ X) @ (G @ X)))) & "
    "(! [X: set]: ((in @ X @ T) => (in @ (G @ X) @ U)))) => "
    "(! [H: set > set]: (((! [X: set]: ((in @ X @ U) => (set_rel @ (H @ X) @ (H @ X)))) & "
    "(! [X: set]: ((in @ X @ U) => (in @ (H @ X) @ V)))) => "
    "(! [X: set]: ((set_rel @ X @ X) => ((in @ X @ S) => "
    "(set_rel @ (H @ (G @ (F @ X))) @ (H @ (G @ (F @ X))))))))))))))))))))).\n";

Outcome setTheoryReproduction() {
  Outcome out;
  Elaboration e = elaborateCorpus("settheory");
  if (e.error) {
    out.require(false, *e.error);
    return out;
  }
  fs::path dir = fs::temp_directory_path() / ("dholc-acceptance-" + std::to_string(::getpid()));
  writeProblems(e, dir.string(), false);
  struct Target {
    std::string id, label;
    const char* reference;
    std::string difference;
  };
  const std::string guards = "adds set_rel guards to every bound x and a congruence conjunct to each function hypothesis";
  std::vector<Target> targets = {
      {"ob009", "composition typing", kCompositionReference, guards},
      {"ob011", "associativity", kAssociativityReference,
       guards + "; its conclusion is the full typing of h (g (f x)), of which the reference keeps one conjunct"}};
  auto prover = defaultProverCommand();
  for (const auto& t : targets) {
    std::string path = (dir / ("settheory__" + t.id + ".p")).string();
    std::string emitted = slurp(path);
    out.require(emitted == slurp(corpusFile("golden/settheory__" + t.id + ".p")), t.label + ": emitted file differs from golden");
    HolTermPtr ours = readThf(emitted).conjectures.at(0).formula;
    HolTermPtr theirs = readThf(std::string(kReferencePrelude) + t.reference).conjectures.at(0).formula;
    out.require(holAlphaEqUpToRenaming(ours, theirs),
                t.label + ": not alpha-equal to the reference; the emitted conjecture " + t.difference);
    if (prover) {
      ProveOptions po;
      po.timeoutSeconds = kProverSeconds;
      ProverVerdict v = prove(path, *prover, po);
      out.require(v.status == ProverStatus::Theorem && v.seconds < kProverSeconds,
                  t.label + ": prover says " + toString(v.status));
      out.note(t.label + ": prover " + toString(v.status) + " in " + fixed(v.seconds, 2) + " s");
    }
  }
  if (!prover) out.note("prover half skipped (DHOLC_PROVER unset)");
  fs::remove_all(dir);
  return out;
}

Outcome oracleIntegrity() {
  Outcome out;
  int matched = 0;
  for (const auto& c : curatedFormulas()) {
    ThfProblem p = curatedProblem(c);
    const HolTermPtr& f = p.conjectures.at(0).formula;
    OracleOptions oo;
    oo.sizeBound = kOracleBound;
    OracleResult r = checkValidFinite(p.theory, f, oo);
    bool ok = r.status == c.expected;
    out.require(ok, std::string(c.name) + ": unexpected verdict");
    if (r.status == OracleStatus::Counterexample) {
      bool genuine = r.model && !evalFormula(p.theory, *r.model, f);
      for (const auto& [name, ax] : p.theory.axioms) genuine = genuine && evalFormula(p.theory, *r.model, ax);
      out.require(genuine, std::string(c.name) + ": counterexample does not re-evaluate to false");
      ok = ok && genuine;
    }
    matched += ok;
  }
  out.note(std::to_string(matched) + "/" + std::to_string(curatedFormulas().size()) + " verdicts match");
  return out;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden corpus", corpusGoldens},
      {"dependent-type obligation", lconcAssociativity},
      {"normalization laws", normalizationLaws},
      {"translation invariants", translationInvariants},
      {"PER semantics", perSemantics},
      {"conservativity", conservativityCheck},
      {"set theory reproduction", setTheoryReproduction},
      {"oracle integrity", oracleIntegrity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  }
  return failures;
}
