// dholc: type checker and proof-obligation compiler for DHOL theories.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "dholc/atp.hpp"
#include "dholc/pipeline.hpp"

namespace {

using namespace dholc;

std::optional<std::string> readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void printReport(const Report& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& o : r.obligations) {
    std::cout << o.id << " [" << o.rule << "] " << o.verdict << "\n    " << o.dholGoal << "\n";
    if (o.verdict == "counterexample" && !o.detail.empty()) std::cout << "  counterexample:\n" << o.detail;
    else if (!o.detail.empty() && o.verdict != "theorem") std::cout << "    (" << o.detail << ")\n";
  }
  if (r.error) std::cerr << "error: " << *r.error << "\n";
  std::cout << r.theory << ": " << r.total << " obligations, " << r.discharged << " discharged, " << r.remaining
            << " remaining, " << r.refuted << " refuted\n";
}

struct Flags {
  std::string file;
  std::string prover;
  int timeout = 30;
  int oracleSize = 0;
  int jobs = 1;
  std::string emitDir;
  std::string reportPath;
  bool noQuotCod = false;
  bool rawCore = false;
};

void addCheckFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("file", f.file, "theory file (.dhol)")->required();
  cmd->add_option("--prover", f.prover, "prover command template with {file} and {timeout}; default $DHOLC_PROVER");
  cmd->add_option("--timeout", f.timeout, "prover timeout in seconds")->capture_default_str();
  cmd->add_option("--oracle-size", f.oracleSize, "finite oracle carrier bound, 0 = off")->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "concurrent prover processes and oracle threads")->capture_default_str();
  cmd->add_option("--emit-tptp", f.emitDir, "directory for .p problem files");
  cmd->add_option("--report", f.reportPath, "write the JSON report here");
  cmd->add_flag("--no-quot-cod-axiom", f.noQuotCod, "keep quotient codomains in normal-form cores");
  cmd->add_flag("--raw-core", f.rawCore, "translate connectives through their equality definitions");
}

int runCheckCommand(const Flags& f, bool withProver) {
  auto text = readFile(f.file);
  if (!text) {
    std::cerr << "error: cannot read " << f.file << "\n";
    return 2;
  }
  PipelineOptions opts;
  opts.timeoutSeconds = f.timeout;
  opts.oracleSize = f.oracleSize;
  opts.jobs = std::max(1, f.jobs);
  opts.quotCodAxiom = !f.noQuotCod;
  opts.rawCore = f.rawCore;
  if (!f.emitDir.empty()) opts.emitDir = f.emitDir;
  if (!f.prover.empty()) opts.prover = f.prover;
  else if (withProver) opts.prover = defaultProverCommand();
  if (withProver && !opts.prover) {
    std::cerr << "error: no prover configured (use --prover or set DHOLC_PROVER)\n";
    return 2;
  }
  if (f.jobs > 0) omp_set_num_threads(f.jobs);

  Report r = runCheck(*text, theoryNameOf(f.file), opts);
  printReport(r);
  if (!f.reportPath.empty()) {
    std::ofstream out(f.reportPath);
    out << r.toJson().dump(2) << "\n";
    if (!out) {
      std::cerr << "error: cannot write " << f.reportPath << "\n";
      return 2;
    }
  }
  return r.exitCode();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DHOL type checker and proof-obligation compiler"};
  app.require_subcommand(1);

  Flags checkFlags, proveFlags;
  auto* check = app.add_subcommand("check", "type-check a theory and discharge its obligations");
  addCheckFlags(check, checkFlags);
  auto* prove = app.add_subcommand("prove", "like check, with the external prover enabled");
  addCheckFlags(prove, proveFlags);

  std::string trFile, trOut = ".";
  bool trRaw = false, trNoQuotCod = false;
  auto* translate = app.add_subcommand("translate", "write one THF problem per obligation");
  translate->add_option("file", trFile, "theory file (.dhol)")->required();
  translate->add_option("-o,--out", trOut, "output directory")->capture_default_str();
  translate->add_flag("--raw-core", trRaw, "translate connectives through their equality definitions");
  translate->add_flag("--no-quot-cod-axiom", trNoQuotCod, "keep quotient codomains in normal-form cores");

  std::string nmFile, nmType;
  bool nmNoQuotCod = false;
  auto* normalize = app.add_subcommand("normalize", "print the normal form of a type");
  normalize->add_option("file", nmFile, "theory file providing the signature")->required();
  normalize->add_option("type", nmType, "type expression")->required();
  normalize->add_flag("--no-quot-cod-axiom", nmNoQuotCod, "keep quotient codomains in normal-form cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return runCheckCommand(checkFlags, false);
    if (*prove) return runCheckCommand(proveFlags, true);
    if (*translate) {
      auto text = readFile(trFile);
      if (!text) {
        std::cerr << "error: cannot read " << trFile << "\n";
        return 2;
      }
      CheckOptions copts;
      copts.quotCodAxiom = !trNoQuotCod;
      Elaboration e = elaborate(*text, theoryNameOf(trFile), copts);
      for (const auto& w : e.check.warnings) std::cerr << "warning: " << w << "\n";
      if (e.error) {
        std::cerr << "error: " << *e.error << "\n";
        return 2;
      }
      for (const auto& path : writeProblems(e, trOut, trRaw)) std::cout << path << "\n";
      return 0;
    }
    if (*normalize) {
      auto text = readFile(nmFile);
      if (!text) {
        std::cerr << "error: cannot read " << nmFile << "\n";
        return 2;
      }
      CheckOptions copts;
      copts.quotCodAxiom = !nmNoQuotCod;
      std::cout << normalizeIn(*text, theoryNameOf(nmFile), nmType, copts) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
