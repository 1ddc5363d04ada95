// Serial versus OpenMP oracle search on a few representative problems.

#include <benchmark/benchmark.h>

#include "criteria.hpp"

using namespace dholc;
using namespace dholc::testing;

namespace {

struct Problem {
  HolTheory theory;
  HolTermPtr formula;
  int bound;
};

Problem curated(const std::string& name, int bound) {
  for (const auto& c : curatedFormulas()) {
    if (name != c.name) continue;
    ThfProblem p = curatedProblem(c);
    return {p.theory, p.conjectures.at(0).formula, bound};
  }
  throw std::runtime_error("no curated formula " + name);
}

// Transitivity of the set relation in the sets theory: valid, so the whole space is searched.
Problem setsTransitivity() {
  Elaboration e = elaborateCorpus("sets");
  Translator tr;
  HolTheory thy = tr.theory(e.check.elaborated);
  for (const auto& ob : e.check.obligations)
    if (ob.rule == "Qtype-trans") return {thy, tr.obligation(ob).formula, 2};
  throw std::runtime_error("sets has no transitivity obligation");
}

void run(benchmark::State& state, const Problem& p) {
  OracleOptions o;
  o.sizeBound = p.bound;
  o.parallel = state.range(0) != 0;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    OracleResult r = checkValidFinite(p.theory, p.formula, o);
    nodes = r.nodes;
    benchmark::DoNotOptimize(r.status);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
  state.SetLabel(o.parallel ? "parallel" : "serial");
}

void BM_Pigeonhole3(benchmark::State& s) { static Problem p = curated("pigeonhole", 3); run(s, p); }
void BM_Extensionality3(benchmark::State& s) { static Problem p = curated("extensionality", 3); run(s, p); }
void BM_SerialPerRefl3(benchmark::State& s) { static Problem p = curated("serial_per_refl", 3); run(s, p); }
void BM_SetsTransitivity(benchmark::State& s) { static Problem p = setsTransitivity(); run(s, p); }

}  // namespace

BENCHMARK(BM_Pigeonhole3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Extensionality3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialPerRefl3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetsTransitivity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
