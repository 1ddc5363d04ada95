#include "dholc/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "dholc/atp.hpp"
#include "dholc/oracle.hpp"
#include "dholc/parser.hpp"
#include "dholc/tptp.hpp"
#include "dholc/translate.hpp"

namespace dholc {

namespace fs = std::filesystem;

VerdictClass classify(const std::string& verdict) {
  if (verdict == "trivial" || verdict == "theorem" || verdict.rfind("finite-valid", 0) == 0)
    return VerdictClass::Discharged;
  if (verdict == "counterexample" || verdict == "countersatisfiable") return VerdictClass::Refuted;
  return VerdictClass::Remaining;
}

void Report::tally() {
  total = static_cast<int>(obligations.size());
  discharged = remaining = refuted = 0;
  for (const auto& o : obligations) {
    switch (classify(o.verdict)) {
      case VerdictClass::Discharged: ++discharged; break;
      case VerdictClass::Remaining: ++remaining; break;
      case VerdictClass::Refuted: ++refuted; break;
    }
  }
}

int Report::exitCode() const {
  if (error) return 2;
  return remaining == 0 && refuted == 0 ? 0 : 1;
}

nlohmann::json Report::toJson() const {
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : obligations) {
    nlohmann::json j = {{"id", o.id},           {"rule", o.rule},       {"span", o.span},
                        {"dholGoal", o.dholGoal}, {"verdict", o.verdict}, {"time", o.time}};
    j["tptpFile"] = o.tptpFile ? nlohmann::json(*o.tptpFile) : nlohmann::json(nullptr);
    if (!o.detail.empty()) j["detail"] = o.detail;
    obs.push_back(std::move(j));
  }
  nlohmann::json out = {
      {"theory", theory},
      {"obligations", obs},
      {"summary", {{"total", total}, {"discharged", discharged}, {"remaining", remaining}, {"refuted", refuted}}},
      {"warnings", warnings},
  };
  if (error) out["error"] = *error;
  return out;
}

std::string theoryNameOf(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  return stem.empty() ? "theory" : stem;
}

Elaboration elaborate(const std::string& text, const std::string& theoryName, const CheckOptions& opts) {
  Elaboration e;
  e.theory = theoryName;
  try {
    ParsedTheory parsed = parseTheory(text, theoryName);
    auto [decls, conjs] = expandDefinitions(parsed.decls, parsed.conjectures);
    Checker checker(opts);
    e.check = checker.checkTheory(expandSugar(decls), expandSugar(conjs));
    e.signature = checker.signature();
    if (e.check.rejected) e.error = e.check.rejected->span.str() + ": " + e.check.rejected->reason;
  } catch (const ParseError& err) {
    e.error = std::string("parse error: ") + err.what();
  } catch (const StructuralError& err) {
    e.error = err.what();
  }
  return e;
}

HolTheory translateTheory(const Elaboration& e, bool rawCore) {
  TranslateOptions topts;
  topts.rawCore = rawCore;
  Translator tr(topts);
  return tr.theory(e.check.elaborated);
}

namespace {

struct Job {
  const Obligation* ob;
  ObligationReport* rep;
  HolConjecture conj;
  bool oracleRefuted = false;
};

std::string problemPath(const std::string& dir, const std::string& theory, const std::string& id) {
  return (fs::path(dir) / (theory + "__" + id + ".p")).string();
}

}  // namespace

std::vector<std::string> writeProblems(const Elaboration& e, const std::string& dir, bool rawCore) {
  std::vector<std::string> out;
  if (e.check.obligations.empty()) return out;
  fs::create_directories(dir);
  TranslateOptions topts;
  topts.rawCore = rawCore;
  Translator tr(topts);
  HolTheory thy = tr.theory(e.check.elaborated);
  for (const auto& ob : e.check.obligations) {
    std::string path = problemPath(dir, e.theory, ob.id);
    std::ofstream(path) << emitTptp(thy, tr.obligation(ob));
    out.push_back(path);
  }
  return out;
}

Report runCheck(const std::string& text, const std::string& theoryName, const PipelineOptions& opts) {
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); };

  Report report;
  report.theory = theoryName;
  CheckOptions copts;
  copts.quotCodAxiom = opts.quotCodAxiom;
  Elaboration e = elaborate(text, theoryName, copts);
  report.warnings = e.check.warnings;
  if (e.error) {
    report.error = e.error;
    report.tally();
    return report;
  }

  TranslateOptions topts;
  topts.rawCore = opts.rawCore;
  Translator tr(topts);
  HolTheory thy;
  try {
    thy = tr.theory(e.check.elaborated);
    holCheckTheory(thy);
  } catch (const HolTypeError& err) {
    report.error = std::string("translation produced ill-typed HOL: ") + err.what();
    report.tally();
    return report;
  }

  std::string dir;
  bool wantFiles = opts.emitDir.has_value() || opts.prover.has_value();
  if (opts.emitDir) {
    dir = *opts.emitDir;
  } else if (opts.prover) {
    dir = (fs::temp_directory_path() / ("dholc-" + std::to_string(::getpid()) + "-" + theoryName)).string();
  }
  if (wantFiles && !e.check.obligations.empty()) fs::create_directories(dir);

  report.obligations.resize(e.check.obligations.size());
  std::vector<Job> atpQueue;
  for (std::size_t i = 0; i < e.check.obligations.size(); ++i) {
    const Obligation& ob = e.check.obligations[i];
    ObligationReport& rep = report.obligations[i];
    auto start = Clock::now();
    rep.id = ob.id;
    rep.rule = ob.rule;
    rep.span = ob.span.str();
    rep.dholGoal = printObligation(ob);
    rep.verdict = "open";

    HolConjecture conj = tr.obligation(ob);
    if (wantFiles) {
      rep.tptpFile = problemPath(dir, theoryName, ob.id);
      std::ofstream(*rep.tptpFile) << emitTptp(thy, conj);
    }

    if (simplifyObligation(ob, e.signature).status == SimplifyStatus::Discharged) {
      rep.verdict = "trivial";
      rep.time = seconds(start);
      continue;
    }
    bool refuted = false;
    if (opts.oracleSize > 0) {
      OracleOptions oo;
      oo.sizeBound = opts.oracleSize;
      oo.budget = opts.oracleBudget;
      OracleResult r = checkValidFinite(thy, conj.formula, oo);
      if (r.status == OracleStatus::Valid) {
        rep.verdict = "finite-valid(" + std::to_string(opts.oracleSize) + ")";
      } else if (r.status == OracleStatus::Counterexample) {
        rep.verdict = "counterexample";
        rep.detail = printModel(thy, *r.model);
        refuted = true;
      } else {
        rep.verdict = "inconclusive";
        rep.detail = r.note;
      }
    }
    rep.time = seconds(start);
    // A finite-valid verdict is final; a counterexample still goes to the prover to catch disagreement.
    if (opts.prover && (rep.verdict == "open" || rep.verdict == "inconclusive" || refuted))
      atpQueue.push_back({&ob, &rep, conj, refuted});
  }

  if (!atpQueue.empty()) {
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::vector<std::string> conflicts;
    ProveOptions popts;
    popts.timeoutSeconds = opts.timeoutSeconds;
    auto worker = [&] {
      for (std::size_t k; (k = next.fetch_add(1)) < atpQueue.size();) {
        Job& job = atpQueue[k];
        ProverVerdict v = prove(*job.rep->tptpFile, *opts.prover, popts);
        std::lock_guard lock(mu);
        job.rep->time += v.seconds;
        if (job.oracleRefuted) {
          if (v.status == ProverStatus::Theorem)
            conflicts.push_back(job.rep->id + ": oracle found a counterexample but the prover reports Theorem");
          continue;
        }
        switch (v.status) {
          case ProverStatus::Theorem: job.rep->verdict = "theorem"; break;
          case ProverStatus::CounterSatisfiable: job.rep->verdict = "countersatisfiable"; break;
          case ProverStatus::Timeout: job.rep->verdict = "timeout"; break;
          case ProverStatus::GaveUp: job.rep->verdict = "gaveup"; break;
          case ProverStatus::ProcessError: job.rep->verdict = "error"; break;
        }
        if (!v.message.empty() && job.rep->detail.empty()) job.rep->detail = v.message;
      }
    };
    int n = std::max(1, std::min<int>(opts.jobs, static_cast<int>(atpQueue.size())));
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!conflicts.empty()) {
      std::sort(conflicts.begin(), conflicts.end());
      std::string msg = "oracle and prover disagree (translation bug?):";
      for (const auto& c : conflicts) msg += "\n  " + c;
      report.error = msg;
    }
  }

  report.tally();
  return report;
}

std::string normalizeIn(const std::string& text, const std::string& theoryName, const std::string& typeExpr,
                        const CheckOptions& opts) {
  ParsedTheory parsed = parseTheory(text, theoryName);
  std::set<std::string> names;
  for (const auto& d : parsed.decls) names.insert(d.name());
  std::string target = freshName("normalize_target", names);
  ParsedTheory extra = parseTheory(text + "\ndef " + target + " := " + typeExpr + "\n", theoryName);
  auto [decls, conjs] = expandDefinitions(extra.decls, extra.conjectures);
  Checker checker(opts);
  CheckResult r = checker.checkTheory(expandSugar(decls), expandSugar(conjs));
  if (r.rejected) throw std::runtime_error(r.rejected->span.str() + ": " + r.rejected->reason);
  for (const auto& d : r.elaborated) {
    const auto* td = d.as<decl::TypeDef>();
    if (!td || td->name != target) continue;
    auto [normal, obs] = checker.normalizeType(Context{}, td->rhs);
    return printNormalType(normal);
  }
  throw std::runtime_error("type expression was not elaborated");
}

}  // namespace dholc
