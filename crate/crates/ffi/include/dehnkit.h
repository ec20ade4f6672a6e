#ifndef DEHNKIT_H
#define DEHNKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DkStatus {
  DK_STATUS_OK = 0,
  DK_STATUS_NULL_ARGUMENT = 1,
  DK_STATUS_INVALID_UTF8 = 2,
  DK_STATUS_PARSE_ERROR = 3,
  DK_STATUS_INVALID_ARGUMENT = 4,
  DK_STATUS_UNSUPPORTED = 5,
  DK_STATUS_PANIC = 6,
} DkStatus;

// Torsion classification of a one-relator presentation.
typedef enum DkTorsion {
  DK_TORSION_TORSION = 0,
  DK_TORSION_TORSION_FREE = 1,
  DK_TORSION_NOT_ONE_RELATOR = 2,
} DkTorsion;

typedef enum DkVerdict {
  DK_VERDICT_TRIVIAL = 0,
  DK_VERDICT_NONTRIVIAL = 1,
  DK_VERDICT_UNKNOWN = 2,
} DkVerdict;

typedef struct DkPresentation DkPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message left by the last failed call on this thread, or null. The
// pointer stays valid until the next call into the library.
const char *dk_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library.
void dk_string_free(char *s);

// Parse presentation file text (`generators:` and `relator:` lines).
//
// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum DkStatus dk_presentation_parse(const char *text, struct DkPresentation **out);

// The standard presentation of the closed orientable surface group.
//
// # Safety
// `out` must be writable.
enum DkStatus dk_presentation_surface(uintptr_t genus, struct DkPresentation **out);

// # Safety
// `p` must be null or a handle from this library not yet freed.
void dk_presentation_free(struct DkPresentation *p);

// # Safety
// `p` must be a live handle and `out` writable.
enum DkStatus dk_presentation_rank(const struct DkPresentation *p, uintptr_t *out);

// File-format text of the presentation.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum DkStatus dk_presentation_format(const struct DkPresentation *p, char **out);

// Torsion classification; `exponent` receives the relator's power (1 when
// torsion-free, 0 when not one-relator).
//
// # Safety
// `p` must be a live handle; `kind` and `exponent` writable.
enum DkStatus dk_classify(const struct DkPresentation *p, enum DkTorsion *kind, uint64_t *exponent);

// Decide whether `word` is trivial, with the default oracle budget.
//
// # Safety
// `p` must be a live handle, `word` a nul-terminated string and
// `verdict` writable.
enum DkStatus dk_word_problem(const struct DkPresentation *p,
                              const char *word,
                              enum DkVerdict *verdict);

// Like [`dk_word_problem`] but returns the full result (verdict, method,
// trace, certificate) as JSON.
//
// # Safety
// As for [`dk_word_problem`]; `out` must be writable.
enum DkStatus dk_word_problem_json(const struct DkPresentation *p, const char *word, char **out);

// Number of homomorphisms into the symmetric group of the given degree.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum DkStatus dk_hom_count(const struct DkPresentation *p, uintptr_t degree, uint64_t *out);

// Run the one-relator descent with default choices and return it as JSON.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum DkStatus dk_descend_json(const struct DkPresentation *p, char **out);

// Simplify by Tietze moves into a new handle.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum DkStatus dk_simplify(const struct DkPresentation *p, struct DkPresentation **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEHNKIT_H */
