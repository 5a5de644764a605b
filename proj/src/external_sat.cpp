#include <sys/wait.h>
#include <unistd.h>

#include <cstring>
#include <sstream>
#include <string>

#include "ink/sat.hpp"

namespace ink::sat::detail {

namespace {

std::string cnf_to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  const std::size_t nclauses = cnf.clauses.size() + (cnf.has_empty_clause ? 1 : 0);
  out << "p cnf " << cnf.nvars << ' ' << nclauses << '\n';
  if (cnf.has_empty_clause) out << "0\n";
  for (const auto& clause : cnf.clauses) {
    for (Lit l : clause) out << (lit_neg(l) ? -(lit_var(l) + 1) : (lit_var(l) + 1)) << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace

/// Spawns `solver_path` with the problem in DIMACS on stdin and reads the
/// conventional "s SATISFIABLE/UNSATISFIABLE" + "v ..." answer on stdout.
SatResult run_external_dimacs(const Cnf& cnf, const SignaturePtr& sig, const std::string& solver_path) {
  int to_child[2], from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0) throw Error("external solver: pipe failed");

  pid_t pid = fork();
  if (pid < 0) throw Error("external solver: fork failed");
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl(solver_path.c_str(), solver_path.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);

  const std::string input = cnf_to_dimacs(cnf);
  std::size_t written = 0;
  while (written < input.size()) {
    ssize_t n = write(to_child[1], input.data() + written, input.size() - written);
    if (n <= 0) break;
    written += static_cast<std::size_t>(n);
  }
  close(to_child[1]);

  std::string output;
  char buf[4096];
  for (;;) {
    ssize_t n = read(from_child[0], buf, sizeof(buf));
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  close(from_child[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    throw Error("external solver: cannot execute " + solver_path);
  }

  bool satisfiable = false, answered = false;
  std::vector<std::uint8_t> model(static_cast<std::size_t>(cnf.nvars), 0);
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("s ", 0) == 0) {
      answered = true;
      satisfiable = line.find("UNSATISFIABLE") == std::string::npos && line.find("SATISFIABLE") != std::string::npos;
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream vs(line.substr(2));
      long lit;
      while (vs >> lit) {
        if (lit == 0) continue;
        const long var = lit < 0 ? -lit : lit;
        if (var >= 1 && var <= cnf.nvars) model[static_cast<std::size_t>(var - 1)] = lit > 0 ? 1 : 0;
      }
    }
  }
  if (!answered) throw Error("external solver: no answer line from " + solver_path);
  if (!satisfiable) return {false, std::nullopt};

  Interpretation w(sig);
  for (std::size_t i = 0; i < sig->size() && i < model.size(); ++i) w.set(i, model[i] != 0);
  return {true, std::move(w)};
}

}  // namespace ink::sat::detail
