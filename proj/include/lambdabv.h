/*
 * lambda-bv: certified computation of the p-Lambda-variation of piecewise
 * functions on [0,1], the spike/tent witness construction for Waterman-Shiba
 * classes, and a machine-checkable verification harness around them.
 *
 * C surface over the C++ core: opaque handles, status codes, and JSON
 * payloads in the documented interchange formats. All returned strings are
 * heap-allocated and must be released with lbv_string_free. Handles are
 * immutable after creation and safe to share across threads.
 */
#ifndef LAMBDABV_H
#define LAMBDABV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lbv_status {
  LBV_OK = 0,
  LBV_ERR_INVALID_ARGUMENT = 1, /* precondition violated, bad descriptor */
  LBV_ERR_PARSE = 2,            /* malformed interchange document */
  LBV_ERR_UNSUPPORTED = 3,      /* outside a method's class (e.g. not spike) */
  LBV_ERR_TOO_LARGE = 4,        /* exhaustive search refused with an estimate */
  LBV_ERR_INTERNAL = 5
} lbv_status;

typedef struct lbv_sequence lbv_sequence; /* Waterman weight sequence */
typedef struct lbv_function lbv_function; /* piecewise function on [0,1] */
typedef struct lbv_witness lbv_witness;   /* built witness system */

const char* lbv_version(void);

/* Thread-local message for the most recent failing call. */
const char* lbv_last_error(void);

void lbv_string_free(char* s);

/* --- sequences ----------------------------------------------------------- */

/* descriptor: {"family":"ones"|"linear"|"power"|"custom",
 *              "alpha":0.5, "prefix":["1","3/2"], "tail":"constant"} */
lbv_status lbv_sequence_create(const char* descriptor_json, lbv_sequence** out);
void lbv_sequence_free(lbv_sequence* seq);

lbv_status lbv_sequence_term(const lbv_sequence* seq, long long i, double* out);

/* Lambda(r) = sum_{i<=floor(r)} 1/lambda_i, r >= 1. */
lbv_status lbv_sequence_partial_sum(const lbv_sequence* seq, double r, double* out);

/* JSON array of violations over the first n_check terms (empty = valid). */
lbv_status lbv_sequence_validate(const lbv_sequence* seq, long long n_check,
                                 char** violations_json);

/* --- functions ------------------------------------------------------------ */

/* {"kind":"step"|"linear","breakpoints":["0","1/4",...,"1"],"values":[...]} */
lbv_status lbv_function_parse(const char* document_json, lbv_function** out);
lbv_status lbv_function_serialize(const lbv_function* f, char** document_json);
void lbv_function_free(lbv_function* f);

/* x, a, b are exact rationals, e.g. "93/256". */
lbv_status lbv_function_evaluate(const lbv_function* f, const char* x, double* out);
lbv_status lbv_function_increment(const lbv_function* f, const char* a, const char* b,
                                  double* out);
lbv_status lbv_function_total_variation(const lbv_function* f, double* out);
lbv_status lbv_function_oscillation(const lbv_function* f, double* out);

/* alpha*f + g, exact on the merged breakpoint grid. */
lbv_status lbv_function_scale_add(double alpha, const lbv_function* f,
                                  const lbv_function* g, lbv_function** out);

/* --- variation ------------------------------------------------------------ */

/* method: "brute" | "spike" | "enclosure". Result:
 * {"lower":..,"upper":..,"method":..,"family":[["a","b"],...],"note":..} */
lbv_status lbv_variation(const lbv_function* f, const lbv_sequence* seq, double p,
                         const char* method, int max_intervals, int effort,
                         char** result_json);

/* [|f(0)| + lower, |f(0)| + upper] as {"lower":..,"upper":..} */
lbv_status lbv_norm(const lbv_function* f, const lbv_sequence* seq, double p,
                    char** result_json);

/* --- witness system -------------------------------------------------------- */

/* config: {"sequence":{...},"p":2.0,"levels":6,"depth_r":0}
 * depth_r 0 picks the default grid-anchored depth. */
lbv_status lbv_witness_build(const char* config_json, lbv_witness** out);
void lbv_witness_free(lbv_witness* w);

/* Full system in the interchange format: h, per-level heights, r points,
 * J intervals, J', tail bound. */
lbv_status lbv_witness_serialize(const lbv_witness* w, char** document_json);

/* Tent function for index l with the given plateau sign (-1, 0, +1). */
lbv_status lbv_witness_tent(const lbv_witness* w, long long l, int plateau_sign,
                            lbv_function** out);

/* Evaluates the alternating functional against f.
 * selector: "identity" | "evens" | "list:1,3,7"; j_max <= 0 picks a depth
 * whose certified tail is negligible. Result:
 * {"value":..,"tail_radius":..,"terms_used":..,"breakdown":[...]} */
lbv_status lbv_functional_evaluate(const lbv_witness* w, const char* selector,
                                   const lbv_function* f, long long j_max,
                                   char** result_json);

/* --- harness ---------------------------------------------------------------- */

/* options: {"sequence":{...},"p":2.0,"levels":6,"selector":"identity",
 *           "s_max":8,"seed":42,"sabotage":"none"|"heights-x50"|"shuffle-r"}
 * Returns the verification report; *all_pass is 1 only if every check passed
 * (inconclusive counts as failure). */
lbv_status lbv_verify(const char* options_json, char** report_json, int* all_pass);

/* grid: {"sequences":[...],"p":[...],"levels":[...],"selectors":[...],"s_max":4} */
lbv_status lbv_sweep(const char* grid_json, char** csv_out);

/* Oracle fuzzing; *clean is 1 when no property was violated.
 * inject_pairing_bug != 0 mis-pairs increments on purpose (negative control). */
lbv_status lbv_fuzz(uint64_t seed, long long cases, int inject_pairing_bug,
                    char** stats_json, int* clean);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LAMBDABV_H */
