#ifndef CDGL_H
#define CDGL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum CdglStatus {
  CDGL_STATUS_OK = 0,
  CDGL_STATUS_NULL_POINTER = 1,
  CDGL_STATUS_INVALID_UTF8 = 2,
  CDGL_STATUS_PARSE = 3,
  CDGL_STATUS_INVALID_INPUT = 4,
  CDGL_STATUS_NOT_MAURER_CARTAN = 5,
  CDGL_STATUS_CHECK_FAILED = 6,
  CDGL_STATUS_UNSOLVED = 7,
  CDGL_STATUS_PANIC = 8,
} CdglStatus;

// An element of a model's Lie algebra.
typedef struct CdglElement CdglElement;

// A built or loaded model: the cDGL of a simplicial complex.
typedef struct CdglModel CdglModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or NULL. The caller
// frees it with `cdgl_string_free`.
char *cdgl_last_error_message(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void cdgl_string_free(char *s);

// Builds the model of a complex given as JSON (`vertices`, `facets`,
// optional `loops`) at truncation `trunc`.
//
// # Safety
// `complex_json` is a NUL-terminated string; `out` is writable.
enum CdglStatus cdgl_model_build(const char *complex_json, size_t trunc, struct CdglModel **out);

// Loads a model document previously produced by `cdgl_model_to_json`.
//
// # Safety
// `model_json` is a NUL-terminated string; `out` is writable.
enum CdglStatus cdgl_model_load(const char *model_json, struct CdglModel **out);

// Frees a model. NULL is ignored.
//
// # Safety
// `model` comes from this library and has not been freed.
void cdgl_model_free(struct CdglModel *model);

// The model document as JSON.
//
// # Safety
// `model` is a live handle; `out` is writable.
enum CdglStatus cdgl_model_to_json(const struct CdglModel *model, char **out);

// Number of generators of the model.
//
// # Safety
// `model` is a live handle; `out` is writable.
enum CdglStatus cdgl_model_generator_count(const struct CdglModel *model, size_t *out);

// Whether the differential squares to zero up to the truncation.
//
// # Safety
// `model` is a live handle; `out` is writable.
enum CdglStatus cdgl_model_d_squared_clean(const struct CdglModel *model, bool *out);

// Parses an element in the model's text format (`1/2*[s0,s0_1] + s1`).
//
// # Safety
// `model` is a live handle; `expr` is a NUL-terminated string; `out` is writable.
enum CdglStatus cdgl_element_parse(const struct CdglModel *model,
                                   const char *expr,
                                   struct CdglElement **out);

// Frees an element. NULL is ignored.
//
// # Safety
// `element` comes from this library and has not been freed.
void cdgl_element_free(struct CdglElement *element);

// The element in text format.
//
// # Safety
// `element` is a live handle; `out` is writable.
enum CdglStatus cdgl_element_to_string(const struct CdglElement *element, char **out);

// Whether the element satisfies `du + ½[u,u] = 0` in the model.
//
// # Safety
// Both handles are live; `out` is writable.
enum CdglStatus cdgl_element_is_mc(const struct CdglModel *model,
                                   const struct CdglElement *element,
                                   bool *out);

// The gauge action of the degree-0 element `x` on `z`.
//
// # Safety
// All handles are live and from the same model; `out` is writable.
enum CdglStatus cdgl_gauge(const struct CdglModel *model,
                           const struct CdglElement *x,
                           const struct CdglElement *z,
                           struct CdglElement **out);

// The BCH product of two degree-0 elements.
//
// # Safety
// Both handles are live and share a model; `out` is writable.
enum CdglStatus cdgl_bch(const struct CdglElement *x,
                         const struct CdglElement *y,
                         struct CdglElement **out);

// Classifies a Maurer-Cartan element. The JSON report holds the verdict
// (`"zero"` or `{"component": i}`), the gauge witness and whether it was
// verified. A negative `base_vertex` picks the smallest vertex of each
// component.
//
// # Safety
// Both handles are live; `out` is writable.
enum CdglStatus cdgl_classify(const struct CdglModel *model,
                              const struct CdglElement *element,
                              int64_t base_vertex,
                              char **out);

// Classifies 0 and every vertex generator. The JSON report holds the
// component count, the class count and the verdict of each element.
//
// # Safety
// `model` is a live handle; `out` is writable.
enum CdglStatus cdgl_pi0(const struct CdglModel *model, char **out);

// The Bernoulli number `B_n` as `p/q` text.
//
// # Safety
// `out` is writable.
enum CdglStatus cdgl_bernoulli(size_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CDGL_H */
