/* lefvar: exact verification laboratory for Lefschetz decompositions,
 * Hodge-star variation and harmonic-form variation on flat-torus models.
 *
 * C interface to the shared library. All functions are thread-safe as
 * long as each lv_model handle is used by one thread at a time; distinct
 * handles never share mutable state. Strings returned through out
 * parameters are heap-allocated and must be released with
 * lv_string_free.
 */
#ifndef LEFVAR_H
#define LEFVAR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef LV_API
#if defined(_WIN32)
#define LV_API __declspec(dllexport)
#else
#define LV_API __attribute__((visibility("default")))
#endif
#endif

typedef struct lv_model lv_model; /* opaque */

typedef enum lv_status {
    LV_OK = 0,
    LV_ERR_BAD_ARGUMENT = 1,   /* null pointer, unknown name, bad flag */
    LV_ERR_PARSE = 2,          /* expression syntax / index errors */
    LV_ERR_DESCRIPTOR = 3,     /* malformed or invalid model descriptor */
    LV_ERR_DOMAIN = 4,         /* precondition violated (not primitive, ...) */
    LV_ERR_SINGULAR = 5,       /* singular or inconsistent linear system */
    LV_ERR_OVERFLOW = 6,       /* mode left the declared mode set */
    LV_ERR_INVARIANT = 7,      /* internal invariant failed */
    LV_ERR_CHECKS_FAILED = 8   /* suite ran, some checks failed */
} lv_status;

/* Stable name for a status code ("DomainError", ...). */
LV_API const char* lv_status_name(lv_status status);

/* Message for the most recent failure on the calling thread. */
LV_API const char* lv_last_error(void);

/* Builds a model from a JSON descriptor (see README for the schema).
 * On success *out owns the model; release with lv_model_destroy. */
LV_API lv_status lv_model_create(const char* descriptor_json, lv_model** out);

LV_API void lv_model_destroy(lv_model* model);

/* Complex dimension N of the model, or -1 on a null handle. */
LV_API int lv_model_dimension(const lv_model* model);

/* One report line per verification check. */
typedef void (*lv_line_callback)(const char* line, void* user);

#define LV_FORMAT_JSON 0
#define LV_FORMAT_TABLE 1

/* Runs a suite ("sl2", "hodge", "torus", "cones", "all"). seed_override
 * < 0 keeps the descriptor's seed. Streams one line per check in a
 * deterministic order; *failures_out (optional) receives the number of
 * failed checks. Returns LV_ERR_CHECKS_FAILED when any check failed. */
LV_API lv_status lv_run_suite(lv_model* model, const char* suite, int64_t seed_override,
                              int format, lv_line_callback callback, void* user,
                              int* failures_out);

/* Primitive decomposition of a constant homogeneous form expression;
 * with deform_expr, the decomposition for omega + eps*v instead. The
 * result is a JSON document. */
LV_API lv_status lv_decompose(lv_model* model, const char* expr, const char* deform_expr,
                              char** json_out);

/* Hodge star of an expression (JSON document with the printed result). */
LV_API lv_status lv_star(lv_model* model, const char* expr, char** json_out);

/* Harmonic-variation map on alpha*omega^j along v: JSON with h, h_tilde
 * and whether the form stays harmonic. */
LV_API lv_status lv_hmap(lv_model* model, const char* alpha_expr, const char* v_expr, int j,
                         char** json_out);

LV_API void lv_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LEFVAR_H */
