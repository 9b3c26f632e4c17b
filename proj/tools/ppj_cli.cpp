// ppj: command-line front end over the C interface.
//
//   ppj solve [--model] [--trace] [--timeout-ms N] [--support-mode full|bounded] FILE|-
//   ppj from-d FILE|-
//   ppj oracle FILE|-
//   ppj selftest
//
// One formula per line; '#' starts a comment. Every input line produces one
// verdict line, with ERROR (parse or fragment problem) or UNKNOWN (aborted)
// where no verdict exists. Exit status: 0 all SAT, 1 some UNSAT, 2 some
// input error, 3 some aborted; the largest applicable code wins.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppj/ppj.h"

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> split_lines(const std::string& input) {
  std::vector<Line> out;
  std::istringstream in(input);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back({number, raw});
  }
  return out;
}

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

void report(const ppj_solver* s, const std::string& path, std::size_t line) {
  std::cerr << path << ':' << line;
  if (ppj_solver_error_column(s) > 0) std::cerr << ':' << ppj_solver_error_column(s);
  std::cerr << ": " << ppj_solver_last_error(s) << '\n';
}

int exit_for(ppj_status st) {
  switch (st) {
    case PPJ_OK: return 0;
    case PPJ_ERR_ABORTED: return 3;
    default: return 2;
  }
}

using SolverPtr = std::unique_ptr<ppj_solver, decltype(&ppj_solver_free)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability of probabilistic justification logic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ppj_version()));

  bool emit_model = false;
  bool emit_trace = false;
  std::uint64_t timeout_ms = 60000;
  std::string support_mode = "full";
  std::string input;

  auto* solve = app.add_subcommand("solve", "decide satisfiability, one formula per line");
  solve->add_flag("--model", emit_model, "print a witness model for SAT lines");
  solve->add_flag("--trace", emit_trace, "print the tableau outline");
  solve->add_option("--timeout-ms", timeout_ms, "per-formula time limit")
      ->check(CLI::PositiveNumber);
  solve->add_option("--support-mode", support_mode, "PROB marking strategy")
      ->check(CLI::IsMember({"full", "bounded"}));
  solve->add_option("input", input, "input file, or - for standard input")->required();

  auto* from_d = app.add_subcommand("from-d", "translate modal D formulas");
  from_d->add_option("input", input, "input file, or - for standard input")->required();

  auto* oracle = app.add_subcommand("oracle", "decide depth-1 justification-free formulas semantically");
  oracle->add_option("input", input, "input file, or - for standard input")->required();

  auto* selftest = app.add_subcommand("selftest", "run the built-in checks");

  CLI11_PARSE(app, argc, argv);

  SolverPtr solver(ppj_solver_new(), &ppj_solver_free);
  if (!solver) {
    std::cerr << "ppj: out of memory\n";
    return 2;
  }
  ppj_solver* s = solver.get();

  if (selftest->parsed()) {
    int passed = 0;
    ppj_status st = ppj_selftest(s, &passed);
    if (st != PPJ_OK) {
      std::cerr << "selftest: " << ppj_solver_last_error(s) << '\n';
      return exit_for(st);
    }
    std::cout << ppj_solver_output(s) << (passed ? "selftest passed\n" : "selftest FAILED\n");
    return passed ? 0 : 1;
  }

  std::string text;
  if (!read_input(input, text)) {
    std::cerr << input << ": cannot read input\n";
    return 2;
  }
  const std::string label = input == "-" ? "<stdin>" : input;
  int code = 0;
  auto raise = [&code](int c) { code = std::max(code, c); };

  if (from_d->parsed()) {
    for (const auto& line : split_lines(text)) {
      ppj_status st = ppj_translate_d(s, line.text.c_str());
      if (st == PPJ_OK) {
        std::cout << ppj_solver_output(s) << '\n';
      } else {
        report(s, label, line.number);
        std::cout << "ERROR\n";
        raise(exit_for(st));
      }
    }
    return code;
  }

  if (solve->parsed()) {
    ppj_solver_set_timeout_ms(s, timeout_ms);
    ppj_solver_set_support_mode(s, support_mode == "bounded" ? PPJ_SUPPORT_BOUNDED : PPJ_SUPPORT_FULL);
    ppj_solver_set_trace(s, emit_trace ? 1 : 0);
  }

  for (const auto& line : split_lines(text)) {
    ppj_verdict v = PPJ_UNKNOWN;
    ppj_status st = solve->parsed() ? ppj_solve(s, line.text.c_str(), &v)
                                    : ppj_oracle(s, line.text.c_str(), &v);
    if (st != PPJ_OK) {
      report(s, label, line.number);
      std::cout << (st == PPJ_ERR_ABORTED ? "UNKNOWN" : "ERROR") << '\n';
      raise(exit_for(st));
      continue;
    }
    std::cout << (v == PPJ_SAT ? "SAT" : "UNSAT") << '\n';
    if (v == PPJ_UNSAT) raise(1);
    if (emit_model && v == PPJ_SAT && ppj_solver_model_json(s) != nullptr) {
      std::cout << ppj_solver_model_json(s) << '\n';
    }
    if (emit_trace && ppj_solver_trace(s) != nullptr) std::cout << ppj_solver_trace(s);
  }
  return code;
}
