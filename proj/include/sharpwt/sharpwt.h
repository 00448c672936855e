#ifndef SHARPWT_SHARPWT_H
#define SHARPWT_SHARPWT_H

#include <stddef.h>
#include <stdint.h>

#if defined(SHARPWT_BUILDING)
#define SWT_API __attribute__((visibility("default")))
#else
#define SWT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swt_status {
  SWT_OK = 0,
  SWT_ERR_INVALID_ARGUMENT = 1,
  SWT_ERR_DOMAIN = 2,
  SWT_ERR_GRID_MISMATCH = 3,
  SWT_ERR_IO = 4,
  SWT_ERR_PARSE = 5,
  SWT_ERR_NUMERIC = 6,
  SWT_ERR_COARSE_RESOLUTION = 7,
  SWT_ERR_INTERNAL = 99
} swt_status;

typedef struct swt_function swt_function;
typedef struct swt_weight swt_weight;
typedef struct swt_decomposition swt_decomposition;
typedef struct swt_report swt_report;

/* Message of the last failed call on this thread; "" if none. */
SWT_API const char* swt_last_error(void);
SWT_API const char* swt_status_name(swt_status s);
SWT_API const char* swt_version(void);

/* Grid functions on [origin, origin + 2^level), 2^resolution cells per unit length.
   origin_cells is the origin measured in cells. */
SWT_API swt_status swt_function_create(int level, int resolution, int64_t origin_cells, const double* values,
                                       size_t count, swt_function** out);
/* Spec strings: const:<c>, indicator:<a>:<b>, haar:<a>:<b>, power:<a>[:<centre>],
   bump:<centre>:<radius>:<a>, alternating, random:<seed>[:<kind>], file:<json>. */
SWT_API swt_status swt_function_from_spec(const char* spec, int level, int resolution, double origin,
                                          swt_function** out);
SWT_API swt_status swt_function_load(const char* json_path, swt_function** out);
/* format: "json" or "csv". */
SWT_API swt_status swt_function_save(const swt_function* f, const char* path, const char* format);
SWT_API size_t swt_function_size(const swt_function* f);
SWT_API swt_status swt_function_grid(const swt_function* f, int* level, int* resolution, int64_t* origin_cells);
SWT_API swt_status swt_function_values(const swt_function* f, double* out, size_t count);
SWT_API void swt_function_free(swt_function* f);

/* Weight specs: const:<c>, power:<a>[:<centre>], random:<seed>, file:<json>. */
SWT_API swt_status swt_weight_from_spec(const char* spec, int level, int resolution, double origin,
                                        swt_weight** out);
SWT_API swt_status swt_weight_ap(const swt_weight* w, double p, double* out);
SWT_API swt_status swt_weight_ainfty(const swt_weight* w, double* out);
SWT_API void swt_weight_free(swt_weight* w);

/* op: identity|maximal|sd|spsi|gpsi|hilbert|hilbert-max|galpha|gtilde.
   options: flat key=value text (beta, alpha, q, nodes_per_box, t_min_level, t_max_level, mode), may be NULL. */
SWT_API swt_status swt_apply(const char* op, const swt_function* f, const char* options, swt_function** out);

/* Stopping-time decomposition over the whole (dyadic) domain of f. */
SWT_API swt_status swt_decompose(const swt_function* f, double lambda, swt_decomposition** out);
SWT_API swt_status swt_decomposition_save(const swt_decomposition* d, const char* path);
SWT_API size_t swt_decomposition_cube_count(const swt_decomposition* d);
SWT_API size_t swt_decomposition_generations(const swt_decomposition* d);
SWT_API void swt_decomposition_free(swt_decomposition* d);

/* Reports. The config arguments are flat key=value text. */
SWT_API swt_status swt_verify(const swt_decomposition* d, swt_report** out);
SWT_API swt_status swt_verify_file(const char* tree_json_path, swt_report** out);
SWT_API swt_status swt_exponent(const char* config, swt_report** out);
SWT_API swt_status swt_ratio_scan(const char* config, swt_report** out);
SWT_API int swt_report_passed(const swt_report* r);
/* Rendered text stays valid until the next render of the same report or its free. */
SWT_API swt_status swt_report_render(swt_report* r, const char* format, const char** text);
/* One line per failed assertion; "" when everything passed. */
SWT_API const char* swt_report_failures(const swt_report* r);
/* Short human-readable summary. */
SWT_API const char* swt_report_summary(const swt_report* r);
SWT_API void swt_report_free(swt_report* r);

/* Names of the available ratio scans, one per line. */
SWT_API const char* swt_scan_names(void);

#ifdef __cplusplus
}
#endif

#endif
