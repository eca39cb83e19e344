#ifndef RANDCOMPLEX_RANDCOMPLEX_H
#define RANDCOMPLEX_RANDCOMPLEX_H

/* C interface to the randcomplex library. Functions return an rc_status;
 * on failure rc_last_error() describes the error for the calling thread.
 * Strings returned through char** are released with rc_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RC_API __declspec(dllexport)
#else
#define RC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rc_status {
  RC_OK = 0,
  RC_INVALID_ARGUMENT = 1,
  RC_OUT_OF_RANGE = 2,
  RC_NOT_A_FACE = 3,
  RC_PRECONDITION_VIOLATED = 4,
  RC_GUARD_EXCEEDED = 5,
  RC_ZERO_PROBABILITY = 6,
  RC_PARSE_ERROR = 7,
  RC_IO = 8,
  RC_INTERNAL = 99
} rc_status;

typedef struct rc_complex rc_complex;

RC_API const char* rc_last_error(void);
RC_API void rc_string_free(char* s);

/* Complexes. `sizes[i]` vertices of generator i are read consecutively from
 * `vertices`; the result is their downward closure. */
RC_API rc_status rc_complex_build(uint32_t n, int r, const uint32_t* vertices, const size_t* sizes,
                                  size_t generators, rc_complex** out);
RC_API rc_status rc_complex_from_json(const char* json, rc_complex** out);
RC_API rc_status rc_complex_to_json(const rc_complex* y, char** out);
RC_API void rc_complex_free(rc_complex* y);
RC_API uint32_t rc_complex_n(const rc_complex* y);
RC_API int rc_complex_r(const rc_complex* y);
/* f and e must hold r + 1 entries. */
RC_API rc_status rc_complex_face_profile(const rc_complex* y, uint64_t* f, uint64_t* e);

/* Log of P(Y) for parameters p[0..len). */
RC_API rc_status rc_measure_log(const rc_complex* y, const double* p, size_t len, double* out);

/* Trial `index` of the sampler. */
RC_API rc_status rc_sample(uint32_t n, int r, const double* p, size_t len, uint64_t seed,
                           uint64_t index, rc_complex** out);
/* Calls fn with the canonical JSON of trials 0..count-1 in order; a nonzero
 * return from fn stops the stream with RC_IO. */
typedef int (*rc_line_fn)(const char* line, void* user);
RC_API rc_status rc_sample_stream(uint32_t n, int r, const double* p, size_t len, uint64_t seed,
                                  uint64_t count, rc_line_fn fn, void* user);

/* what: "connected", "isolated", "certificate" or "dimension". */
RC_API rc_status rc_check_json(const rc_complex* y, const char* what, char** out);

/* Parameter transforms. `out` must hold len entries; *out_len receives the
 * result length. */
RC_API rc_status rc_law_link(const double* p, size_t len, int k, double* out, size_t* out_len);
RC_API rc_status rc_law_links_intersection(const double* p, size_t len, uint64_t k, double* out,
                                           size_t* out_len);
RC_API rc_status rc_law_intersect(const double* p, const double* q, size_t len, double* out);
RC_API rc_status rc_law_degree(const double* p, size_t len, uint64_t n, int k, uint64_t* trials,
                               double* success);

/* Lab. Each returns a JSON document (CSV for rc_sweep with format 0). */
RC_API rc_status rc_enumerate_json(uint32_t n, int r, const double* p, size_t len, char** out);
/* grid holds `rows` parameter vectors of length r + 1, row-major. */
RC_API rc_status rc_verify_json(uint32_t n, int r, const double* grid, size_t rows, char** out,
                                int* all_pass);
RC_API rc_status rc_monte_carlo_json(const char* metric, uint32_t n, int r, const double* p,
                                     size_t len, uint64_t seed, uint64_t trials, unsigned workers,
                                     char** out);
/* axes holds (start, stop, step) per axis; format 0 = CSV, 1 = JSON. */
RC_API rc_status rc_sweep(const double* axes, size_t axis_count, uint32_t n, uint64_t trials,
                          const char* metric, uint64_t seed, unsigned workers, int format,
                          char** out);

#ifdef __cplusplus
}
#endif

#endif
