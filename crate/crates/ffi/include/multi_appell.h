#ifndef MULTI_APPELL_H
#define MULTI_APPELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum MaStatus {
  MA_STATUS_OK = 0,
  MA_STATUS_NULL_POINTER = 1,
  MA_STATUS_INVALID_UTF8 = 2,
  MA_STATUS_PARSE = 3,
  MA_STATUS_ARITY_MISMATCH = 4,
  MA_STATUS_DEGENERATE_SEED = 5,
  // Index, degree or order outside what the object holds or allows.
  MA_STATUS_OUT_OF_RANGE = 6,
  MA_STATUS_NOT_APPELL = 7,
  MA_STATUS_INVALID_ARGUMENT = 8,
  // The computation ran but a check failed.
  MA_STATUS_VERIFICATION_FAILED = 9,
  MA_STATUS_PANIC = 10,
} MaStatus;

// A finite table of polynomials indexed by multi-indices.
typedef struct MaFamily MaFamily;

// An exact polynomial in the falling-factorial basis.
typedef struct MaPoly MaPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library on the same thread.
const char *ma_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ma_string_free(char *s);

// The multiple Charlier polynomial with index `n[0..arity]` and comma
// separated weights `a`, e.g. `"1,1/2"`.
//
// # Safety
// `n` must point to `arity` values, `a` to a NUL-terminated string.
enum MaStatus ma_charlier(const size_t *n, size_t arity, const char *a, struct MaPoly **out);

// # Safety
// `p` must come from this library and not have been freed. Null is ignored.
void ma_poly_free(struct MaPoly *p);

// Degree of `p`; the zero polynomial reports `InvalidArgument`.
//
// # Safety
// `p` must be a live polynomial handle.
enum MaStatus ma_poly_degree(const struct MaPoly *p, size_t *out);

// Exact value `p(x)` as a newly allocated string.
//
// # Safety
// `p` must be a live handle and `x` a NUL-terminated string.
enum MaStatus ma_poly_eval(const struct MaPoly *p, const char *x, char **out);

// `Delta_omega p` as a new handle.
//
// # Safety
// `p` must be a live handle.
enum MaStatus ma_poly_delta(const struct MaPoly *p, struct MaPoly **out);

// JSON `{"basis", "omega", "coeffs"}` in the falling-factorial or the
// monomial basis.
//
// # Safety
// `p` must be a live handle.
enum MaStatus ma_poly_to_json(const struct MaPoly *p, bool monomial, char **out);

// Builds the Appell family of a seed file given as JSON text.
//
// # Safety
// `seed_json` must be a NUL-terminated string.
enum MaStatus ma_appell_build(const char *seed_json, struct MaFamily **out);

// The Charlier family with weights `a` for all `|n| <= order`.
//
// # Safety
// `a` must be a NUL-terminated string.
enum MaStatus ma_charlier_family(const char *a, size_t order, struct MaFamily **out);

// # Safety
// `f` must come from this library and not have been freed. Null is ignored.
void ma_family_free(struct MaFamily *f);

// Arity and truncation order of `f`. Either out pointer may be null.
//
// # Safety
// `f` must be a live handle.
enum MaStatus ma_family_shape(const struct MaFamily *f, size_t *arity, size_t *order);

// Copies the member at `n[0..arity]` into a new polynomial handle.
//
// # Safety
// `f` must be a live handle and `n` point to `arity` values.
enum MaStatus ma_family_get(const struct MaFamily *f,
                            const size_t *n,
                            size_t arity,
                            struct MaPoly **out);

// The family as JSON, the format read by the command-line tool.
//
// # Safety
// `f` must be a live handle.
enum MaStatus ma_family_to_json(const struct MaFamily *f, bool monomial, char **out);

// Decides whether `f` is a multiple Charlier family on `|n| <= max_degree`.
// On success `out` receives the weights, e.g. `"(1,2)"`; otherwise the call
// returns `VerificationFailed` and `ma_last_error` names the failing stage.
//
// # Safety
// `f` must be a live handle.
enum MaStatus ma_family_identify_charlier(const struct MaFamily *f, size_t max_degree, char **out);

// Runs one `verify` suite (`"difference"`, `"addition"`, ..., `"all"`) for
// weights `a` over `|n| <= max_degree`. `out` receives the JSON-lines
// records; it is set on both `Ok` and `VerificationFailed`.
//
// # Safety
// `suite` and `a` must be NUL-terminated strings.
enum MaStatus ma_verify(const char *suite, const char *a, size_t max_degree, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTI_APPELL_H */
