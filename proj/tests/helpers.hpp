#pragma once

#include "axa/matrix.hpp"
#include "axa/torus.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace test {

inline axa::IntMatrix mk(int n, std::initializer_list<long> entries) {
  std::vector<axa::Int> e;
  for (long v : entries) e.push_back(axa::Int(v));
  return axa::IntMatrix(n, std::move(e));
}

inline axa::TorusPoint pt(std::initializer_list<std::pair<long, long>> coords) {
  axa::TorusPoint p;
  for (const auto& [num, den] : coords) p.push_back(axa::Rat(num, den));
  return axa::canonical_point(p);
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs a command with stderr folded into stdout and captures both.
inline RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), p)) > 0) r.output.append(buf, got);
  int st = pclose(p);
  r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

inline std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string(P_tmpdir) + "/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace test
