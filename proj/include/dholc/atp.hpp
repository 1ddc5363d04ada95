#pragma once

#include <optional>
#include <string>

namespace dholc {

enum class ProverStatus { Theorem, CounterSatisfiable, GaveUp, Timeout, ProcessError };

struct ProverVerdict {
  ProverStatus status = ProverStatus::ProcessError;
  double seconds = 0;
  std::string message;     // ProcessError details, or the raw SZS status
  std::string transcript;  // combined stdout and stderr
};

std::string toString(ProverStatus s);

// Maps the first `SZS status <S>` line of a transcript; nullopt when there is none.
std::optional<ProverStatus> parseSzs(const std::string& transcript, std::string* raw = nullptr);

// Replaces {file} and {timeout} in the command template.
std::string expandCommand(const std::string& tmpl, const std::string& file, int timeoutSeconds);

struct ProveOptions {
  int timeoutSeconds = 30;
  double graceSeconds = 2;
  bool saveTranscript = true;  // writes <file without .p>.out
};

// Runs the prover in its own process group; the whole group is killed once timeout plus grace elapses.
ProverVerdict prove(const std::string& problemFile, const std::string& commandTemplate, const ProveOptions& opts = {});

// The DHOLC_PROVER environment variable, if set and non-empty.
std::optional<std::string> defaultProverCommand();

}  // namespace dholc
