#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dholc/hol.hpp"
#include "dholc/kernel.hpp"

namespace dholc {

struct PipelineOptions {
  std::optional<std::string> prover;  // command template; ATP stage runs only when set
  int timeoutSeconds = 30;
  int oracleSize = 0;  // 0 disables the finite oracle
  std::uint64_t oracleBudget = 50'000'000;
  int jobs = 1;
  std::optional<std::string> emitDir;  // where .p files go; a temporary directory is used otherwise
  bool quotCodAxiom = true;
  bool rawCore = false;
};

struct ObligationReport {
  std::string id;
  std::string rule;
  std::string span;
  std::string dholGoal;
  std::optional<std::string> tptpFile;
  std::string verdict;  // trivial, finite-valid(N), theorem, counterexample, countersatisfiable, open, ...
  double time = 0;
  std::string detail;   // counterexample tables or prover messages
};

enum class VerdictClass { Discharged, Remaining, Refuted };
VerdictClass classify(const std::string& verdict);

struct Report {
  std::string theory;
  std::vector<ObligationReport> obligations;
  std::vector<std::string> warnings;
  std::optional<std::string> error;  // structural failure: parse error, ill-typed declaration, oracle/ATP conflict
  int total = 0, discharged = 0, remaining = 0, refuted = 0;

  void tally();
  int exitCode() const;
  nlohmann::json toJson() const;
};

// Parses, checks and elaborates a theory; a structural failure is reported in `error`.
struct Elaboration {
  std::string theory;
  CheckResult check;
  Signature signature;
  std::optional<std::string> error;
};

Elaboration elaborate(const std::string& text, const std::string& theoryName, const CheckOptions& opts = {});
std::string theoryNameOf(const std::string& path);

HolTheory translateTheory(const Elaboration& e, bool rawCore = false);

// Check plus discharge: simplifier, then oracle, then ATP.
Report runCheck(const std::string& text, const std::string& theoryName, const PipelineOptions& opts);

// Writes <theory>__<id>.p for every obligation; returns the written paths.
std::vector<std::string> writeProblems(const Elaboration& e, const std::string& dir, bool rawCore);

// Normal form of a type expression read in the theory's signature. Throws std::runtime_error on failure.
std::string normalizeIn(const std::string& text, const std::string& theoryName, const std::string& typeExpr,
                        const CheckOptions& opts = {});

}  // namespace dholc
