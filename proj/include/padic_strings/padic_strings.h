#ifndef PADIC_STRINGS_H
#define PADIC_STRINGS_H

#include <stddef.h>

#if defined(PS_BUILDING_LIBRARY)
#define PS_API __attribute__((visibility("default")))
#else
#define PS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
    PS_OK = 0,
    PS_ERR_NULL_ARG = 1,
    PS_ERR_INVALID_ARGUMENT = 2,
    PS_ERR_PRECISION = 3,
    PS_ERR_CONSISTENCY = 4,
    PS_ERR_POLE = 5,
    PS_ERR_ROOT_FINDING = 6,
    PS_ERR_INTERNAL = 7
} ps_status;

typedef enum ps_format { PS_FORMAT_JSON = 0, PS_FORMAT_CSV = 1 } ps_format;

/* A fractal string source: a self-similar system or an Euler string. */
typedef struct ps_source ps_source;

typedef struct ps_line {
    double omega_re;
    double omega_im;
    int multiplicity;
    double residue_re; /* NaN when multiplicity > 1 */
    double residue_im;
} ps_line;

typedef struct ps_grid {
    double lo;
    double hi;
    int count;
} ps_grid;

/* Message for the last failing call on this thread ("" if none). */
PS_API const char* ps_last_error(void);
PS_API const char* ps_version(void);
PS_API const char* ps_status_name(ps_status s);

/* name: "cantor3", "fibonacci2" or "euler:<p>". */
PS_API ps_status ps_source_builtin(const char* name, ps_source** out);
/* System JSON; shape is checked here, measure identities by ps_validate. */
PS_API ps_status ps_source_from_json(const char* json, ps_source** out);
PS_API void ps_source_free(ps_source* src);
PS_API void ps_string_free(char* s);

PS_API ps_status ps_source_to_json(const ps_source* src, char** out);
PS_API ps_status ps_source_prime(const ps_source* src, unsigned* p);

/* Report JSON with every violation; *valid is 1 or 0. When depth > 0 the
   balls of the first depth levels are listed too. */
PS_API ps_status ps_validate(const ps_source* src, int depth, int* valid, char** report_json);

PS_API ps_status ps_dimension(const ps_source* src, double* D);
PS_API ps_status ps_period(const ps_source* src, double* period);
PS_API ps_status ps_line_count(const ps_source* src, size_t* count);
PS_API ps_status ps_line_at(const ps_source* src, size_t index, ps_line* out);
PS_API ps_status ps_dimensions_json(const ps_source* src, char** out);

PS_API ps_status ps_zeta_eval(const ps_source* src, double s_re, double s_im, double* z_re, double* z_im);

/* eps as "a/b" or an integer; the exact volume is returned as "num/den". */
PS_API ps_status ps_thin_tube_volume(const ps_source* src, const char* eps, char** exact, double* approx);
PS_API ps_status ps_tube_series(const ps_source* src, double eps, int n_max, double* out);
/* Oracle vs series over a log-spaced grid moved off the jump points. */
PS_API ps_status ps_tube_table(const ps_source* src, ps_grid eps, int n_max, ps_format fmt, char** out);

/* zeta on sigma x t; a point near a pole gets status "pole". */
PS_API ps_status ps_zeta_table(const ps_source* src, ps_grid sigma, ps_grid t, ps_format fmt, char** out);

/* T > 0 is used as given; otherwise T = r^-periods. */
PS_API ps_status ps_content_closed(const ps_source* src, double* out);
PS_API ps_status ps_content_report(const ps_source* src, double T, double periods, ps_format fmt, char** out);

/* Real Cantor string against the 3-adic one. */
PS_API ps_status ps_compare_table(ps_grid eps, int n_max, double periods, ps_format fmt, char** out);

#ifdef __cplusplus
}
#endif

#endif
