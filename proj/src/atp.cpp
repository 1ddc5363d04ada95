#include "dholc/atp.hpp"

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <regex>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

namespace dholc {

std::string toString(ProverStatus s) {
  switch (s) {
    case ProverStatus::Theorem: return "Theorem";
    case ProverStatus::CounterSatisfiable: return "CounterSatisfiable";
    case ProverStatus::GaveUp: return "GaveUp";
    case ProverStatus::Timeout: return "Timeout";
    case ProverStatus::ProcessError: return "ProcessError";
  }
  return "?";
}

std::optional<ProverStatus> parseSzs(const std::string& transcript, std::string* raw) {
  static const std::regex line(R"(SZS\s+status\s+([A-Za-z]+))");
  std::smatch m;
  if (!std::regex_search(transcript, m, line)) return std::nullopt;
  std::string s = m[1];
  if (raw) *raw = s;
  if (s == "Theorem" || s == "Unsatisfiable") return ProverStatus::Theorem;
  if (s == "CounterSatisfiable" || s == "Satisfiable") return ProverStatus::CounterSatisfiable;
  if (s == "Timeout" || s == "ResourceOut") return ProverStatus::Timeout;
  return ProverStatus::GaveUp;
}

std::string expandCommand(const std::string& tmpl, const std::string& file, int timeoutSeconds) {
  auto replaceAll = [](std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
    return s;
  };
  // Single-quote the path for /bin/sh.
  std::string quoted = "'" + replaceAll(file, "'", "'\\''") + "'";
  return replaceAll(replaceAll(tmpl, "{file}", quoted), "{timeout}", std::to_string(timeoutSeconds));
}

std::optional<std::string> defaultProverCommand() {
  const char* env = std::getenv("DHOLC_PROVER");
  if (!env || !*env) return std::nullopt;
  return std::string(env);
}

namespace {

void saveTranscript(const std::string& problemFile, const std::string& text) {
  std::string out = problemFile;
  if (out.size() > 2 && out.compare(out.size() - 2, 2, ".p") == 0) out.resize(out.size() - 2);
  std::ofstream(out + ".out") << text;
}

}  // namespace

ProverVerdict prove(const std::string& problemFile, const std::string& commandTemplate, const ProveOptions& opts) {
  using Clock = std::chrono::steady_clock;
  ProverVerdict v;
  auto start = Clock::now();
  auto finish = [&](ProverVerdict& out) -> ProverVerdict {
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (opts.saveTranscript) saveTranscript(problemFile, out.transcript);
    return out;
  };

  struct stat st {};
  if (::stat(problemFile.c_str(), &st) != 0) {
    v.message = "problem file not found: " + problemFile;
    return finish(v);
  }
  std::string cmd = expandCommand(commandTemplate, problemFile, opts.timeoutSeconds);

  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    v.message = std::string("pipe: ") + std::strerror(errno);
    return finish(v);
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    v.message = std::string("fork: ") + std::strerror(errno);
    return finish(v);
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);  // also from the parent, so killpg works even if the child has not run yet
  ::close(fds[1]);

  auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(opts.timeoutSeconds + opts.graceSeconds));
  bool killed = false;
  bool eof = false;
  char buf[4096];
  while (!eof) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (left <= 0) {
      ::killpg(pid, SIGTERM);
      killed = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    int r = ::poll(&p, 1, static_cast<int>(std::min<long long>(left, 200)));
    if (r < 0 && errno != EINTR) break;
    if (r <= 0) continue;
    ssize_t n = ::read(fds[0], buf, sizeof buf);
    if (n > 0) v.transcript.append(buf, static_cast<std::size_t>(n));
    else if (n == 0 || errno != EINTR) eof = true;
  }

  int status = 0;
  if (killed) {
    // Give the group a moment to exit on SIGTERM, then force it.
    auto hard = Clock::now() + std::chrono::milliseconds(500);
    while (::waitpid(pid, &status, WNOHANG) == 0 && Clock::now() < hard) ::usleep(10'000);
    ::killpg(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
  } else {
    ::waitpid(pid, &status, 0);
    ::killpg(pid, SIGKILL);  // stragglers that inherited the group but closed the pipe
  }
  // Drain anything left in the pipe.
  ::fcntl(fds[0], F_SETFL, O_NONBLOCK);
  for (ssize_t n; (n = ::read(fds[0], buf, sizeof buf)) > 0;) v.transcript.append(buf, static_cast<std::size_t>(n));
  ::close(fds[0]);

  std::string raw;
  auto szs = parseSzs(v.transcript, &raw);
  if (szs) {
    v.status = *szs;
    v.message = raw;
  } else if (killed) {
    v.status = ProverStatus::Timeout;
    v.message = "killed after timeout";
  } else if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    v.message = "could not run prover command: " + cmd;
  } else {
    v.message = "no SZS status line in prover output";
  }
  return finish(v);
}

}  // namespace dholc
