#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <sys/stat.h>
#include <unistd.h>

#include "dholc/atp.hpp"
#include "dholc/pipeline.hpp"
#include "support.hpp"

using namespace dholc;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("dholc-atp-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  std::string script(const std::string& name, const std::string& body) const {
    fs::path p = dir / name;
    std::ofstream(p) << "#!/bin/sh\n" << body << "\n";
    ::chmod(p.c_str(), 0755);
    return p.string();
  }
  std::string problem(const std::string& name = "goal.p") const {
    fs::path p = dir / name;
    std::ofstream(p) << "thf(g, conjecture, $true).\n";
    return p.string();
  }
};

bool processWithArgumentExists(const std::string& marker) {
  for (const auto& entry : fs::directory_iterator("/proc")) {
    std::ifstream in(entry.path() / "cmdline");
    std::string cmdline((std::istreambuf_iterator<char>(in)), {});
    if (cmdline.find(marker) != std::string::npos) return true;
  }
  return false;
}

ProveOptions quick(int timeout = 5) {
  ProveOptions o;
  o.timeoutSeconds = timeout;
  o.graceSeconds = 0.5;
  return o;
}

}  // namespace

TEST_CASE("SZS lines") {
  std::string raw;
  CHECK((parseSzs("% SZS status Theorem for goal\n", &raw) == ProverStatus::Theorem));
  CHECK(raw == "Theorem");
  CHECK((parseSzs("SZS status Unsatisfiable") == ProverStatus::Theorem));
  CHECK((parseSzs("# SZS status CounterSatisfiable") == ProverStatus::CounterSatisfiable));
  CHECK((parseSzs("SZS status Timeout") == ProverStatus::Timeout));
  CHECK((parseSzs("SZS status ResourceOut") == ProverStatus::Timeout));
  CHECK((parseSzs("SZS status GaveUp") == ProverStatus::GaveUp));
  CHECK((parseSzs("SZS status Unknown") == ProverStatus::GaveUp));
  CHECK((parseSzs("proved it!") == std::nullopt));
  CHECK((parseSzs("noise\nSZS status Theorem\nSZS status CounterSatisfiable\n") == ProverStatus::Theorem));
}

TEST_CASE("command templates") {
  CHECK(expandCommand("eprover --cpu-limit={timeout} {file}", "/tmp/a b.p", 7) == "eprover --cpu-limit=7 '/tmp/a b.p'");
  CHECK(expandCommand("x {file} {file}", "it's.p", 1) == "x 'it'\\''s.p' 'it'\\''s.p'");
}

TEST_CASE("prover verdicts and transcripts") {
  Scratch s;
  std::string p = s.problem();

  ProverVerdict thm = prove(p, s.script("thm", "echo starting; echo '% SZS status Theorem for $1' >&2") + " {file}", quick());
  CHECK((thm.status == ProverStatus::Theorem));
  CHECK(thm.transcript.find("starting") != std::string::npos);
  std::string saved = dholc::testing::slurp((s.dir / "goal.out").string());
  CHECK(saved == thm.transcript);

  ProverVerdict cs = prove(p, s.script("cs", "for i in 1 2 3; do echo chatter $i; done; echo 'SZS status CounterSatisfiable'"),
                           quick());
  CHECK((cs.status == ProverStatus::CounterSatisfiable));

  ProverVerdict none = prove(p, s.script("none", "echo done; exit 0"), quick());
  CHECK((none.status == ProverStatus::ProcessError));
  CHECK(none.message.find("SZS") != std::string::npos);

  ProverVerdict missing = prove(p, (s.dir / "no-such-prover").string() + " {file}", quick());
  CHECK((missing.status == ProverStatus::ProcessError));
  CHECK(missing.message.find("could not run") != std::string::npos);

  ProverVerdict noFile = prove((s.dir / "absent.p").string(), "true", quick());
  CHECK((noFile.status == ProverStatus::ProcessError));

  ProveOptions quiet = quick();
  quiet.saveTranscript = false;
  fs::remove(s.dir / "goal.out");
  prove(p, s.script("thm2", "echo 'SZS status Theorem'"), quiet);
  CHECK_FALSE(fs::exists(s.dir / "goal.out"));
}

TEST_CASE("timeouts kill the whole process group") {
  Scratch s;
  std::string marker = "dholc-orphan-marker-" + std::to_string(::getpid());
  std::string hang = s.script("hang", "sh -c 'sleep 30; : " + marker + "' &\nsh -c 'sleep 30; : " + marker + "'\n");
  auto start = std::chrono::steady_clock::now();
  ProverVerdict v = prove(s.problem(), hang, quick(1));
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK((v.status == ProverStatus::Timeout));
  CHECK(elapsed < 5);
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  CHECK_FALSE(processWithArgumentExists(marker));
}

TEST_CASE("a detached child that keeps the pipe open does not block past the deadline") {
  Scratch s;
  std::string marker = "dholc-straggler-marker-" + std::to_string(::getpid());
  std::string script = s.script("fork", "sh -c 'sleep 30; : " + marker + "' &\necho 'SZS status Theorem'\n");
  auto start = std::chrono::steady_clock::now();
  ProverVerdict v = prove(s.problem(), script, quick(1));
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK((v.status == ProverStatus::Theorem));
  CHECK(elapsed < 5);
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  CHECK_FALSE(processWithArgumentExists(marker));
}

TEST_CASE("pipeline with a stub prover") {
  Scratch s;
  std::string yes = s.script("yes", "echo 'SZS status Theorem'");
  std::string no = s.script("no", "echo 'SZS status CounterSatisfiable'");

  PipelineOptions opts;
  opts.emitDir = (s.dir / "problems").string();
  opts.prover = yes + " {file}";
  opts.timeoutSeconds = 5;
  opts.jobs = 2;
  Report proved = runCheck(dholc::testing::slurp(dholc::testing::corpusFile("lconc_assoc.dhol")), "lconc_assoc", opts);
  REQUIRE_FALSE(proved.error);
  CHECK(proved.remaining == 0);
  CHECK(proved.refuted == 0);
  CHECK(proved.exitCode() == 0);
  for (const auto& o : proved.obligations) {
    REQUIRE(o.tptpFile);
    CHECK(fs::exists(*o.tptpFile));
  }

  opts.prover = no + " {file}";
  Report refuted = runCheck(dholc::testing::slurp(dholc::testing::corpusFile("lconc_assoc.dhol")), "lconc_assoc", opts);
  CHECK(refuted.refuted > 0);
  CHECK(refuted.exitCode() == 1);

  // A prover claiming Theorem for an obligation the oracle refutes is a structural failure.
  opts.prover = yes + " {file}";
  opts.oracleSize = 2;
  Report conflict = runCheck(dholc::testing::slurp(dholc::testing::corpusFile("sets_broken.dhol")), "sets_broken", opts);
  REQUIRE(conflict.error);
  CHECK(conflict.error->find("disagree") != std::string::npos);
  CHECK(conflict.exitCode() == 2);
}
