#ifndef PPJ_PPJ_H
#define PPJ_PPJ_H

/*
 * C interface of the PPJ satisfiability library.
 *
 * All functions taking a solver report errors through the returned status;
 * details are available from ppj_solver_last_error() and the position
 * accessors until the next call on the same solver. Strings returned by a
 * solver stay valid until the next call on it. A solver must not be used
 * from two threads at once; distinct solvers are independent.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define PPJ_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define PPJ_API __attribute__((visibility("default")))
#else
#  define PPJ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ppj_solver ppj_solver;

typedef enum ppj_status {
  PPJ_OK = 0,
  PPJ_ERR_PARSE = 1,            /* lexical, syntax or range error */
  PPJ_ERR_FRAGMENT = 2,         /* input outside the oracle fragment */
  PPJ_ERR_ABORTED = 3,          /* timeout or step budget */
  PPJ_ERR_INVALID_ARGUMENT = 4, /* null pointer, bad option value, bad model */
  PPJ_ERR_INTERNAL = 5
} ppj_status;

typedef enum ppj_verdict { PPJ_SAT = 0, PPJ_UNSAT = 1, PPJ_UNKNOWN = 2 } ppj_verdict;

typedef enum ppj_support_mode { PPJ_SUPPORT_FULL = 0, PPJ_SUPPORT_BOUNDED = 1 } ppj_support_mode;

PPJ_API const char* ppj_version(void);
PPJ_API const char* ppj_status_string(ppj_status status);

PPJ_API ppj_solver* ppj_solver_new(void);
PPJ_API void ppj_solver_free(ppj_solver* solver);

/* 0 disables the timeout. */
PPJ_API ppj_status ppj_solver_set_timeout_ms(ppj_solver* solver, uint64_t ms);
PPJ_API ppj_status ppj_solver_set_support_mode(ppj_solver* solver, ppj_support_mode mode);
/* Record a tableau outline on each solve. */
PPJ_API ppj_status ppj_solver_set_trace(ppj_solver* solver, int enabled);

/* Decides one formula. On PPJ_ERR_ABORTED the verdict is PPJ_UNKNOWN. */
PPJ_API ppj_status ppj_solve(ppj_solver* solver, const char* formula, ppj_verdict* verdict);

/* Witness model (JSON) of the last SAT answer, or NULL. */
PPJ_API const char* ppj_solver_model_json(const ppj_solver* solver);
/* Tableau outline of the last solve when tracing is on, or NULL. */
PPJ_API const char* ppj_solver_trace(const ppj_solver* solver);
/* Text output of the last translation or self-test. */
PPJ_API const char* ppj_solver_output(const ppj_solver* solver);

PPJ_API const char* ppj_solver_last_error(const ppj_solver* solver);
/* 1-based position of the last parse error; 0 when not applicable. */
PPJ_API size_t ppj_solver_error_line(const ppj_solver* solver);
PPJ_API size_t ppj_solver_error_column(const ppj_solver* solver);

/* Semantic oracle for probability depth <= 1 without justification terms;
 * PPJ_ERR_FRAGMENT for other inputs. */
PPJ_API ppj_status ppj_oracle(ppj_solver* solver, const char* formula, ppj_verdict* verdict);

/* Translates a modal formula ([] and <>) into PPJ; result in ppj_solver_output. */
PPJ_API ppj_status ppj_translate_d(ppj_solver* solver, const char* modal_formula);

/* Checks a model in the JSON format of ppj_solver_model_json against a formula. */
PPJ_API ppj_status ppj_verify_model_json(ppj_solver* solver, const char* model_json,
                                         const char* formula, int* holds);

/* Runs the built-in sanity checks; report in ppj_solver_output. */
PPJ_API ppj_status ppj_selftest(ppj_solver* solver, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* PPJ_PPJ_H */
