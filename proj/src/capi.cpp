#include "ppj/ppj.h"

#include <chrono>
#include <exception>
#include <optional>
#include <sstream>
#include <string>

#include "ppj/errors.hpp"
#include "ppj/oracle.hpp"
#include "ppj/parser.hpp"
#include "ppj/reduction.hpp"
#include "ppj/tableau.hpp"

struct ppj_solver {
  std::uint64_t timeout_ms = 60000;
  ppj::tab::SupportMode mode = ppj::tab::SupportMode::Full;
  bool trace = false;

  std::optional<std::string> model;
  std::optional<std::string> trace_text;
  std::string output;
  std::string error;
  std::size_t error_line = 0;
  std::size_t error_column = 0;

  void reset() {
    model.reset();
    trace_text.reset();
    output.clear();
    error.clear();
    error_line = 0;
    error_column = 0;
  }
};

namespace {

ppj_status fail(ppj_solver* s, ppj_status status, std::string message) {
  s->error = std::move(message);
  return status;
}

// Maps exceptions escaping the core onto status codes.
template <class F>
ppj_status guarded(ppj_solver* s, F&& body) {
  if (s == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  s->reset();
  try {
    return body();
  } catch (const ppj::ParseError& e) {
    s->error_line = e.pos().line;
    s->error_column = e.pos().column;
    return fail(s, PPJ_ERR_PARSE, e.what());
  } catch (const ppj::ContractError& e) {
    return fail(s, PPJ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(s, PPJ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(s, PPJ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(s, PPJ_ERR_INTERNAL, "unknown error");
  }
}

ppj::tab::DecideOptions options_of(const ppj_solver* s) {
  ppj::tab::DecideOptions o;
  o.support_mode = s->mode;
  o.trace = s->trace;
  if (s->timeout_ms > 0) o.timeout = std::chrono::milliseconds(s->timeout_ms);
  return o;
}

struct SelfCase {
  const char* formula;
  bool sat;
};

// Small instances with known answers, each run through the tableau and,
// where the fragment allows, the oracle.
constexpr SelfCase kSelfCases[] = {
    {"P>=0 p", true},
    {"~(P>=0 p)", false},
    {"P>=1/2 p & P>=1/2 ~p", true},
    {"P>=3/5 p & P>=3/5 ~p", false},
    {"P>=1/2 p & ~P>=1/2 p", false},
    {"~P>=1 ~p", true},
    {"p & ~p", false},
    {"x:p & ~x:p", false},
    {"~c:(p & q -> p)", false},
    {"~!c:c:(p -> (q -> p))", false},
    {"x:(p -> q) & y:p & ~(x.y):q", false},
    {"x:p & ~!x:x:p", true},
    {"x:p & ~y:p", true},
    {"P>=1/2 P>=1/3 p & ~P>=2/3 q", true},
    {"P>=1 (p -> q) & P>=1 p & ~P>=1 q", false},
};

}  // namespace

extern "C" {

const char* ppj_version(void) { return "1.0.0"; }

const char* ppj_status_string(ppj_status status) {
  switch (status) {
    case PPJ_OK: return "ok";
    case PPJ_ERR_PARSE: return "parse error";
    case PPJ_ERR_FRAGMENT: return "outside the oracle fragment";
    case PPJ_ERR_ABORTED: return "aborted";
    case PPJ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PPJ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ppj_solver* ppj_solver_new(void) {
  try {
    return new ppj_solver();
  } catch (...) {
    return nullptr;
  }
}

void ppj_solver_free(ppj_solver* solver) { delete solver; }

ppj_status ppj_solver_set_timeout_ms(ppj_solver* solver, uint64_t ms) {
  if (solver == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  solver->timeout_ms = ms;
  return PPJ_OK;
}

ppj_status ppj_solver_set_support_mode(ppj_solver* solver, ppj_support_mode mode) {
  if (solver == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  switch (mode) {
    case PPJ_SUPPORT_FULL: solver->mode = ppj::tab::SupportMode::Full; return PPJ_OK;
    case PPJ_SUPPORT_BOUNDED: solver->mode = ppj::tab::SupportMode::Bounded; return PPJ_OK;
  }
  return fail(solver, PPJ_ERR_INVALID_ARGUMENT, "unknown support mode");
}

ppj_status ppj_solver_set_trace(ppj_solver* solver, int enabled) {
  if (solver == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  solver->trace = enabled != 0;
  return PPJ_OK;
}

ppj_status ppj_solve(ppj_solver* solver, const char* formula, ppj_verdict* verdict) {
  if (verdict != nullptr) *verdict = PPJ_UNKNOWN;
  if (formula == nullptr || verdict == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  return guarded(solver, [&] {
    auto a = ppj::parse_formula(formula);
    auto d = ppj::tab::decide(a, options_of(solver));
    if (solver->trace) solver->trace_text = d.trace;
    switch (d.outcome) {
      case ppj::tab::Outcome::Sat:
        *verdict = PPJ_SAT;
        solver->model = ppj::tab::to_json(*d.model);
        return PPJ_OK;
      case ppj::tab::Outcome::Unsat:
        *verdict = PPJ_UNSAT;
        return PPJ_OK;
      case ppj::tab::Outcome::Aborted: break;
    }
    return fail(solver, PPJ_ERR_ABORTED, "aborted: " + d.abort_reason);
  });
}

const char* ppj_solver_model_json(const ppj_solver* solver) {
  return solver != nullptr && solver->model ? solver->model->c_str() : nullptr;
}

const char* ppj_solver_trace(const ppj_solver* solver) {
  return solver != nullptr && solver->trace_text ? solver->trace_text->c_str() : nullptr;
}

const char* ppj_solver_output(const ppj_solver* solver) {
  return solver != nullptr ? solver->output.c_str() : nullptr;
}

const char* ppj_solver_last_error(const ppj_solver* solver) {
  return solver != nullptr ? solver->error.c_str() : "null solver";
}

size_t ppj_solver_error_line(const ppj_solver* solver) {
  return solver != nullptr ? solver->error_line : 0;
}

size_t ppj_solver_error_column(const ppj_solver* solver) {
  return solver != nullptr ? solver->error_column : 0;
}

ppj_status ppj_oracle(ppj_solver* solver, const char* formula, ppj_verdict* verdict) {
  if (verdict != nullptr) *verdict = PPJ_UNKNOWN;
  if (formula == nullptr || verdict == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  return guarded(solver, [&] {
    auto a = ppj::parse_formula(formula);
    if (!ppj::oracle::in_fragment(a))
      return fail(solver, PPJ_ERR_FRAGMENT,
                  "oracle handles probability depth <= 1 without justification terms");
    *verdict = ppj::oracle::oracle_decide(a).sat ? PPJ_SAT : PPJ_UNSAT;
    return PPJ_OK;
  });
}

ppj_status ppj_translate_d(ppj_solver* solver, const char* modal_formula) {
  if (modal_formula == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  return guarded(solver, [&] {
    solver->output = ppj::print_formula(ppj::translate_d(ppj::parse_modal(modal_formula)));
    return PPJ_OK;
  });
}

ppj_status ppj_verify_model_json(ppj_solver* solver, const char* model_json, const char* formula,
                                 int* holds) {
  if (model_json == nullptr || formula == nullptr || holds == nullptr)
    return PPJ_ERR_INVALID_ARGUMENT;
  *holds = 0;
  return guarded(solver, [&] {
    auto a = ppj::parse_formula(formula);
    auto m = ppj::tab::model_from_json(model_json);
    auto r = ppj::tab::verify_model(m, a);
    *holds = r.holds ? 1 : 0;
    if (!r.holds) {
      solver->output = "fails at " + r.at->str() + ": " + ppj::print_formula(*r.sub);
    }
    return PPJ_OK;
  });
}

ppj_status ppj_selftest(ppj_solver* solver, int* passed) {
  if (passed == nullptr) return PPJ_ERR_INVALID_ARGUMENT;
  *passed = 0;
  return guarded(solver, [&] {
    std::ostringstream os;
    bool all = true;
    for (const auto& c : kSelfCases) {
      auto a = ppj::parse_formula(c.formula);
      auto opts = options_of(solver);
      opts.trace = false;
      auto d = ppj::tab::decide(a, opts);
      bool ok = d.outcome == (c.sat ? ppj::tab::Outcome::Sat : ppj::tab::Outcome::Unsat);
      if (ok && d.model) ok = ppj::tab::verify_model(*d.model, a).holds;
      if (ok && ppj::oracle::in_fragment(a)) ok = ppj::oracle::oracle_decide(a).sat == c.sat;
      os << (ok ? "ok   " : "FAIL ") << (c.sat ? "SAT   " : "UNSAT ") << c.formula << '\n';
      all = all && ok;
    }
    solver->output = os.str();
    *passed = all ? 1 : 0;
    return PPJ_OK;
  });
}

}  // extern "C"
