#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <string>

namespace irreg_test {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the irreg binary with `args` through the shell, capturing stdout.
inline CliResult run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" IRREG_CLI_PATH "' " + args;
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace irreg_test
