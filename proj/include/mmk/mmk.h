/* mmk - verification toolkit for the graph geometry of sphere maps.
 *
 * C API of the shared library. All entry points return mmk_status; results
 * travel through opaque handles that must be released with the matching
 * _free call. Strings returned by accessors stay owned by the handle and
 * are valid until it is freed.
 */
#ifndef MMK_H
#define MMK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmk_status {
    MMK_OK = 0,
    MMK_ERR_INVALID_ARG = 1,
    MMK_ERR_CHART_DEGENERATE = 2,
    MMK_ERR_RANK_DEFICIENT = 3,
    MMK_ERR_NUMERICAL = 4,
    MMK_ERR_DENOMINATOR_UNDERFLOW = 5,
    MMK_ERR_BLOWUP = 6,
    MMK_ERR_STIFFNESS = 7,
    MMK_ERR_NO_BRACKET = 8,
    MMK_ERR_ENDPOINT_SINGULAR = 9,
    MMK_ERR_NOT_MINIMAL = 10,
    MMK_ERR_POLE_SWAP = 11,
    MMK_ERR_IO = 12,
    MMK_ERR_UNKNOWN = 13
} mmk_status;

const char* mmk_status_str(mmk_status s);
const char* mmk_version(void);

/* ------------------------------------------------------------------ */
/* verification suites                                                  */

typedef struct mmk_run_config {
    const char* suite;  /* verify-structure | verify-bochner | hopf-invariants
                           | scan-conformal | codazzi-check | solve-ode */
    uint64_t seed;
    int samples;        /* 0 -> suite default */
    int k, l;           /* equivariant indices */
    double c;           /* conformal family constant */
    double target_radius; /* < 0 -> suite default */
    int has_moebius;    /* when set, moebius[8] holds a,b,c,d as re/im pairs */
    double moebius[8];
    double tol_scale;   /* multiplies every tolerance; 0 -> from MMK_TOL_SCALE */
    const char* tol_overrides; /* optional "name=value,name=value" */
} mmk_run_config;

/* fill the defaults (seed, k=l=1, c=1, tol_scale from the environment) */
void mmk_run_config_init(mmk_run_config* cfg);

typedef struct mmk_report mmk_report;

typedef struct mmk_check {
    const char* name;
    const char* anchor;
    double measured;
    double expected;
    double tol;
    int pass;
} mmk_check;

mmk_status mmk_run_suite(const mmk_run_config* cfg, mmk_report** out);

int mmk_report_check_count(const mmk_report* r);
mmk_status mmk_report_check(const mmk_report* r, int index, mmk_check* out);
int mmk_report_passed(const mmk_report* r);
int mmk_report_failed(const mmk_report* r);
/* serialized forms; owned by the report handle */
const char* mmk_report_json(mmk_report* r);
const char* mmk_report_csv(mmk_report* r);
mmk_status mmk_report_write(mmk_report* r, const char* path, const char* format);
void mmk_report_free(mmk_report* r);

/* ------------------------------------------------------------------ */
/* generating-function boundary value problem                           */

typedef struct mmk_profile mmk_profile;

typedef struct mmk_bvp_options {
    double start_offset;   /* series seed offset, default 1e-6 */
    double rel_tol;        /* integrator relative tolerance, default 1e-10 */
    double match_point;    /* interior matching abscissa, default pi/4 */
    double secant_tol;     /* mismatch tolerance, default 1e-10 */
} mmk_bvp_options;

void mmk_bvp_options_init(mmk_bvp_options* opt);

/* Solves the equivariant minimality equation with boundary data a(0)=0,
 * a(pi/2)=pi. Returns MMK_ERR_ENDPOINT_SINGULAR (with *coefficient set to
 * the obstructing endpoint value when the pointer is non-null) when no C^2
 * solution exists for these indices. */
mmk_status mmk_solve_bvp(int k, int l, const mmk_bvp_options* opt, mmk_profile** out,
                         double* nonexistence_coefficient);

int mmk_profile_size(const mmk_profile* p);
double mmk_profile_initial_slope(const mmk_profile* p);
double mmk_profile_mismatch(const mmk_profile* p);
mmk_status mmk_profile_row(const mmk_profile* p, int index, double* s, double* a, double* a_s,
                           double* residual);
mmk_status mmk_profile_write_csv(const mmk_profile* p, const char* path);
void mmk_profile_free(mmk_profile* p);

/* ------------------------------------------------------------------ */
/* direct point evaluations                                             */

typedef enum mmk_hopf_variant {
    MMK_HOPF_COMPLEX = 0,
    MMK_HOPF_QUATERNIONIC = 1,
    MMK_HOPF_OCTONIONIC = 2
} mmk_hopf_variant;

/* |A|^2 and |H| statistics over seeded random points */
mmk_status mmk_hopf_invariants(mmk_hopf_variant variant, double target_radius, uint64_t seed,
                               int samples, double* mean_normA2, double* max_dev, double* max_H);

#ifdef __cplusplus
}
#endif

#endif /* MMK_H */
