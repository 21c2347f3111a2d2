#ifndef IVLEV_H
#define IVLEV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call. Zero is success; errors are negative.
typedef enum IvlevStatus {
  IVLEV_STATUS_OK = 0,
  IVLEV_STATUS_NULL_ARGUMENT = -1,
  IVLEV_STATUS_INVALID_UTF8 = -2,
  IVLEV_STATUS_UNKNOWN_SYSTEM = -3,
  IVLEV_STATUS_PARSE_ERROR = -4,
  IVLEV_STATUS_INVALID_INPUT = -5,
  IVLEV_STATUS_INTERNAL = -6,
} IvlevStatus;

// Outcome of a decision procedure.
typedef enum IvlevVerdict {
  // Tautology, valid up to the bound, or an accepted derivation.
  IVLEV_VERDICT_HOLDS = 0,
  // A counterexample or rejection was found.
  IVLEV_VERDICT_REFUTED = 1,
  // A limit or budget ran out first.
  IVLEV_VERDICT_UNDECIDED = 2,
} IvlevVerdict;

// Opaque handle to a parsed formula together with its inferred signature.
typedef struct IvlevFormula IvlevFormula;

// Opaque handle to a logic: carrier, identity mode and quantifier mode.
typedef struct IvlevSystem IvlevSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *ivlev_last_error(void);

// Library version as a static NUL-terminated string.
const char *ivlev_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void ivlev_string_free(char *s);

// Creates a system from a name such as `tm`, `t45m-c` or `km`, with
// nondeterministic quantifiers when `nondeterministic` is true.
//
// # Safety
// `name` must be null or a NUL-terminated string; `out` must be null or
// writable.
enum IvlevStatus ivlev_system_new(const char *name,
                                  bool nondeterministic,
                                  struct IvlevSystem **out);

// The display name of a system, e.g. `tm-c (nd quantifiers)`.
//
// # Safety
// `sys` must be null or a live system handle; `out` must be null or writable.
enum IvlevStatus ivlev_system_name(const struct IvlevSystem *sys, char **out);

// # Safety
// `sys` must be null or a handle from [`ivlev_system_new`], not yet freed.
void ivlev_system_free(struct IvlevSystem *sys);

// Parses a formula. `constants` is a comma-separated list of names to read
// as individual constants, or null.
//
// # Safety
// `text` and `constants` must be null or NUL-terminated; `out` must be
// null or writable.
enum IvlevStatus ivlev_formula_parse(const char *text,
                                     const char *constants,
                                     struct IvlevFormula **out);

// Prints a formula in the ASCII syntax accepted by the parser.
//
// # Safety
// `f` must be null or a live formula handle; `out` must be null or writable.
enum IvlevStatus ivlev_formula_to_string(const struct IvlevFormula *f, char **out);

// # Safety
// `f` must be null or a handle from [`ivlev_formula_parse`], not yet freed.
void ivlev_formula_free(struct IvlevFormula *f);

// Decides a propositional formula by enumerating legal valuations. A
// `limit` of zero means no limit. When `witness_json` is not null it
// receives the falsifying valuation as JSON, or null when there is none.
//
// # Safety
// Handles must be null or live; out pointers must be null or writable.
enum IvlevStatus ivlev_check_tautology(const struct IvlevSystem *sys,
                                       const struct IvlevFormula *f,
                                       uint64_t limit,
                                       enum IvlevVerdict *verdict,
                                       char **witness_json);

// Searches for a countermodel with universes of size 1 to `max_universe`.
// `budget` caps the search steps; zero selects the default. When
// `countermodel_json` is not null it receives the countermodel as JSON, or
// null when none was found.
//
// # Safety
// Handles must be null or live; out pointers must be null or writable.
enum IvlevStatus ivlev_find_countermodel(const struct IvlevSystem *sys,
                                         const struct IvlevFormula *f,
                                         size_t max_universe,
                                         uint64_t budget,
                                         enum IvlevVerdict *verdict,
                                         char **countermodel_json);

// Checks a derivation given as a JSON document. The verdict is Holds for
// an accepted derivation and Refuted for a rejected one. When
// `report_json` is not null it receives the full check report as JSON.
//
// # Safety
// `document` must be null or NUL-terminated; out pointers must be null or
// writable.
enum IvlevStatus ivlev_check_proof(const char *document,
                                   enum IvlevVerdict *verdict,
                                   char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IVLEV_H */
