#ifndef SUBLATTICE_H
#define SUBLATTICE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_ARGUMENT = 2,
  SL_STATUS_DIMENSION_MISMATCH = 3,
  SL_STATUS_SINGULAR = 4,
  SL_STATUS_PARSE = 5,
  SL_STATUS_CAP_EXCEEDED = 6,
  SL_STATUS_INTERNAL = 7,
  SL_STATUS_PANIC = 8,
} SlStatus;

// Opaque census handle, holding the classes of one `(n, m)` cell.
typedef struct SlCensus SlCensus;

// Opaque sublattice handle.
typedef struct SlSublattice SlSublattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *sl_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void sl_string_free(char *s);

// Builds the sublattice spanned by the rows of an `n x n` row-major matrix.
//
// # Safety
// `entries` must point to `n * n` readable values and `out` must be writable.
enum SlStatus sl_sublattice_from_rows(const int64_t *entries, size_t n, struct SlSublattice **out);

// Parses `"a,b;c,d"` or a JSON array of rows.
//
// # Safety
// `text` must be a NUL-terminated string and `out` must be writable.
enum SlStatus sl_sublattice_parse(const char *text, struct SlSublattice **out);

// # Safety
// `s` must come from this library and not have been freed already.
void sl_sublattice_free(struct SlSublattice *s);

// # Safety
// `s` must be a live handle and `out` writable.
enum SlStatus sl_sublattice_dimension(const struct SlSublattice *s, size_t *out);

// Index `[Z^n : L]` as a decimal string.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum SlStatus sl_sublattice_index(const struct SlSublattice *s, char **out);

// Canonical Hermite basis in `"a,b;c,d"` form.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum SlStatus sl_sublattice_canonical(const struct SlSublattice *s, char **out);

// Invariant chain, largest first, as `"(d1,d2,...)"`.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum SlStatus sl_sublattice_chain(const struct SlSublattice *s, char **out);

// # Safety
// `a` and `b` must be live handles and `out` writable.
enum SlStatus sl_sublattice_equals(const struct SlSublattice *a,
                                   const struct SlSublattice *b,
                                   bool *out);

// # Safety
// `a` and `b` must be live handles and `out` writable.
enum SlStatus sl_sublattice_equivalent(const struct SlSublattice *a,
                                       const struct SlSublattice *b,
                                       bool *out);

// Unimodular `M` with `hnf(A * M) = hnf(B)`, as `"a,b;c,d"`. Writes null
// when the sublattices are not equivalent.
//
// # Safety
// `a` and `b` must be live handles and `out` writable.
enum SlStatus sl_sublattice_witness(const struct SlSublattice *a,
                                    const struct SlSublattice *b,
                                    char **out);

// Number of sublattices of index `m` in `Z^n`, as a decimal string.
//
// # Safety
// `out` must be writable.
enum SlStatus sl_count_sublattices(size_t n, uint64_t m, char **out);

// Number of equivalence classes of index `m` in `Z^n`, as a decimal string.
//
// # Safety
// `out` must be writable.
enum SlStatus sl_count_classes(size_t n, uint64_t m, char **out);

// Enumerates every sublattice of index `m` and groups them into classes.
// Fails with `CapExceeded` when there are more than `cap` sublattices.
//
// # Safety
// `out` must be writable.
enum SlStatus sl_census_new(size_t n, uint64_t m, uint64_t cap, struct SlCensus **out);

// # Safety
// `c` must be a live handle and `out` writable.
enum SlStatus sl_census_class_count(const struct SlCensus *c, size_t *out);

// Class `i` in descending chain order. Any of the out pointers may be null
// to skip that field.
//
// # Safety
// `c` must be a live handle; non-null out pointers must be writable.
enum SlStatus sl_census_class(const struct SlCensus *c,
                              size_t i,
                              char **chain,
                              char **size,
                              char **representative);

// # Safety
// `c` must come from this library and not have been freed already.
void sl_census_free(struct SlCensus *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBLATTICE_H */
