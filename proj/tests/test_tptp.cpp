#include <doctest.h>

#include "dholc/tptp.hpp"
#include "dholc/translate.hpp"
#include "support.hpp"

using namespace dholc;
using dholc::testing::corpusStems;
using dholc::testing::elaborateCorpus;

namespace {

struct Emitted {
  HolTheory theory;
  std::vector<HolConjecture> conjectures;
  std::vector<std::string> files;
};

Emitted emitCorpus(const std::string& stem, bool raw = false) {
  Elaboration e = elaborateCorpus(stem);
  REQUIRE_FALSE(e.error);
  TranslateOptions opts;
  opts.rawCore = raw;
  Translator tr(opts);
  Emitted out;
  out.theory = tr.theory(e.check.elaborated);
  for (const auto& ob : e.check.obligations) {
    out.conjectures.push_back(tr.obligation(ob));
    out.files.push_back(emitTptp(out.theory, out.conjectures.back()));
  }
  return out;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("type and formula syntax") {
  HolTheory thy;
  thy.typeSyms = {"a", "b"};
  thy.consts = {{"f", holArrows({holBase("a"), holBase("b")}, holBool())}};
  HolConjecture conj{"goal", holTrue(), ""};
  std::string text = emitTptp(thy, conj);
  CHECK(contains(text, "thf(a_type, type, a: $tType)."));
  CHECK(contains(text, "f: a > b > $o"));
  CHECK(contains(text, "thf(goal, conjecture, $true)."));
  CHECK(emitThfFormula(holImplies(holFalse(), holNot(holTrue()))) == "($false => (~ $true))");

  HolTheory empty;
  std::string bare = emitTptp(empty, conj);
  int thfLines = 0;
  std::istringstream in(bare);
  for (std::string line; std::getline(in, line);) thfLines += line.rfind("thf(", 0) == 0;
  CHECK(thfLines == 1);
}

TEST_CASE("arrow types read back right-associated") {
  ThfProblem p = readThf("thf(a_type, type, a: $tType).\nthf(f_decl, type, f: a > a > $o).\n"
                         "thf(g_decl, type, g: (a > a) > a).\n");
  CHECK(holTypeEq(p.theory.constType("f"), holArrow(holBase("a"), holArrow(holBase("a"), holBool()))));
  CHECK(holTypeEq(p.theory.constType("g"), holArrow(holArrow(holBase("a"), holBase("a")), holBase("a"))));
}

TEST_CASE("every corpus problem reads back to the same theory and conjecture") {
  for (const auto& stem : corpusStems()) {
    for (bool raw : {false, true}) {
      CAPTURE(stem);
      CAPTURE(raw);
      Emitted em = emitCorpus(stem, raw);
      for (std::size_t i = 0; i < em.files.size(); ++i) {
        ThfProblem p = readThf(em.files[i]);
        REQUIRE(p.conjectures.size() == 1);
        CHECK(p.conjectures[0].name == em.conjectures[i].name);
        CHECK(holAlphaEqUpToRenaming(p.conjectures[0].formula, em.conjectures[i].formula));
        REQUIRE(p.theory.axioms.size() == em.theory.axioms.size());
        for (std::size_t k = 0; k < p.theory.axioms.size(); ++k)
          CHECK(holAlphaEqUpToRenaming(p.theory.axioms[k].second, em.theory.axioms[k].second));
        CHECK_NOTHROW(holCheckTheory(p.theory));
        CHECK(emitTptp(p.theory, p.conjectures[0]) == em.files[i]);
      }
    }
  }
}

TEST_CASE("emission is deterministic") {
  for (const auto& stem : corpusStems()) {
    CAPTURE(stem);
    CHECK(emitCorpus(stem).files == emitCorpus(stem).files);
  }
}

TEST_CASE("settheory composition problems match the reviewed goldens") {
  Emitted em = emitCorpus("settheory");
  for (const std::string id : {"ob009", "ob011"}) {
    CAPTURE(id);
    std::string golden = dholc::testing::slurp(dholc::testing::corpusFile("golden/settheory__" + id + ".p"));
    auto it = std::find_if(em.conjectures.begin(), em.conjectures.end(),
                           [&](const HolConjecture& c) { return c.name == id; });
    REQUIRE(it != em.conjectures.end());
    const std::string& file = em.files[static_cast<std::size_t>(it - em.conjectures.begin())];
    CHECK(file == golden);
    CHECK(holAlphaEq(readThf(golden).conjectures.at(0).formula, it->formula));
  }
}

TEST_CASE("raw cores spell connectives as equalities") {
  Emitted native = emitCorpus("settheory");
  Emitted raw = emitCorpus("settheory", true);
  REQUIRE(native.files.size() == raw.files.size());
  REQUIRE_FALSE(native.files.empty());
  CHECK(native.files[0] != raw.files[0]);
  CHECK_FALSE(contains(native.files[0], ": $o"));
  CHECK(contains(raw.files[0], ": $o"));
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(readThf("thf(x, axiom, (p @ ).\n"), ThfParseError);
  CHECK_THROWS_AS(holCheckTheory(readThf("thf(x, axiom, undeclared).\n").theory), HolTypeError);
  CHECK_THROWS_AS(readThf("fof(x, axiom, p).\n"), ThfParseError);
}

TEST_CASE("goldens compare equal to renamed copies of themselves") {
  auto replaceAll = [](std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
    return s;
  };
  for (const std::string id : {"ob009", "ob011"}) {
    std::string golden = dholc::testing::slurp(dholc::testing::corpusFile("golden/settheory__" + id + ".p"));
    std::string renamed = replaceAll(replaceAll(golden, "rel_set", "set_rel"), "mem", "in");
    HolTermPtr a = readThf(golden).conjectures.at(0).formula;
    HolTermPtr b = readThf(renamed).conjectures.at(0).formula;
    CHECK_FALSE(holAlphaEq(a, b));
    CHECK(holAlphaEqUpToRenaming(a, b));
  }
}
