#ifndef PTODA_H
#define PTODA_H

#include <stddef.h>
#include <stdint.h>

#if defined(PTODA_BUILDING)
#define PTODA_API __attribute__((visibility("default")))
#else
#define PTODA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptoda_status {
    PTODA_OK = 0,
    PTODA_INVALID_ARGUMENT = 1,
    PTODA_CONSTRAINT_VIOLATED = 2,
    PTODA_ZERO_A = 3,
    PTODA_SINGULAR_MATRIX = 4,
    PTODA_WRONG_COMPONENT = 5,
    PTODA_ZERO_B = 6,
    PTODA_AT_SINGULARITY = 7,
    PTODA_POLE_AT_U = 8,
    PTODA_ON_CUT = 9,
    PTODA_NEAR_SINGULAR_SYSTEM = 10,
    PTODA_FIT_RESIDUAL_TOO_LARGE = 11,
    PTODA_STEP_COLLAPSE_WITHOUT_POLE = 12,
    PTODA_NO_BLOWUP_IN_BRACKET = 13,
    PTODA_RADIUS_TOO_COARSE = 14,
    PTODA_GAUGE_FIT_FAILED = 15,
    PTODA_OVERFLOW = 16,
    PTODA_BUFFER_TOO_SMALL = 98,
    PTODA_INTERNAL = 99
} ptoda_status;

typedef enum ptoda_component { PTODA_RADIAL_TODA = 0, PTODA_PARTNER = 1 } ptoda_component;
typedef enum ptoda_ode_kind { PTODA_ODE_PARTNER = 0, PTODA_ODE_RADIAL = 1, PTODA_ODE_PIII_D7 = 2 } ptoda_ode_kind;
typedef enum ptoda_form { PTODA_FORM_PARTNER = 0, PTODA_FORM_RADIAL = 1 } ptoda_form;

typedef struct ptoda_point ptoda_point;
typedef struct ptoda_trajectory ptoda_trajectory;
typedef struct ptoda_report ptoda_report;

typedef struct ptoda_asymptotics {
    double nu_re, nu_im;
    double nu0_im;
    double s1_re, s1_im;
    double sigma_re, sigma_im;
    double psi;
    double arg_gamma;
} ptoda_asymptotics;

typedef struct ptoda_singularity {
    long n;
    double x_exact;
    double x_asym;
    double x_printed;
} ptoda_singularity;

typedef struct ptoda_leading {
    double alpha_hat_re, alpha_hat_im;
    double beta_hat_re, beta_hat_im;
    double phi;
    double X;
    double exp_m2v_main;
    double exp_m2v_cramer;
    double exp_m2v_closed;
} ptoda_leading;

typedef struct ptoda_monodromy_result {
    double E_re[9], E_im[9];
    double A, s, x, y;
    int component;
    double residual1, residual2;
    double s_fit_residual;
    double pattern_residual;
    double det_residual;
    double symmetry_residual;
    double truncation;
} ptoda_monodromy_result;

typedef struct ptoda_roundtrip_result {
    double x0_requested, x0_used;
    double v0, v0x;
    double recovered[4];
    double error[4];
    double max_error;
    int component;
} ptoda_roundtrip_result;

PTODA_API const char* ptoda_status_name(int status);
/* Message of the last failure on the calling thread. */
PTODA_API const char* ptoda_last_error(void);
PTODA_API const char* ptoda_version(void);

/* Constraint residuals of an arbitrary quadruple, without validation. */
PTODA_API int ptoda_constraint_residuals(double A, double s, double x, double y, double out[2]);
PTODA_API int ptoda_point_create(double A, double s, double x, double y, double tol, ptoda_point** out);
PTODA_API int ptoda_point_from_chart_sy(double s, double y, ptoda_point** out);
PTODA_API int ptoda_point_from_chart_spsi(double s, double psi, ptoda_point** out);
PTODA_API void ptoda_point_destroy(ptoda_point* p);
PTODA_API int ptoda_point_get(const ptoda_point* p, double out[4]);
PTODA_API int ptoda_point_component(const ptoda_point* p, int* out);
PTODA_API int ptoda_point_residuals(const ptoda_point* p, double out[2]);
PTODA_API int ptoda_point_to_chart_sy(const ptoda_point* p, double out[2]);
PTODA_API int ptoda_point_to_chart_spsi(const ptoda_point* p, double out[2]);
/* Row-major 3x3, real and imaginary parts. */
PTODA_API int ptoda_point_E1(const ptoda_point* p, double re[9], double im[9]);

PTODA_API int ptoda_asymptotic_params(const ptoda_point* p, ptoda_asymptotics* out);
PTODA_API int ptoda_theta(const ptoda_point* p, double x, double* theta, double* phi);
PTODA_API int ptoda_v0_asym(const ptoda_point* p, double x, double* v0, double* dv0);
PTODA_API int ptoda_singularities(const ptoda_point* p, double xmin, double xmax, ptoda_singularity* buf,
                                  size_t capacity, size_t* count);
PTODA_API int ptoda_piii_map(double v0, double x, double* s, double* wtilde);
PTODA_API int ptoda_leading_data(const ptoda_point* p, double x, ptoda_leading* out);

PTODA_API int ptoda_integrate(int kind, double x0, double y0, double dy0, double x1, double tol,
                              ptoda_trajectory** out);
PTODA_API int ptoda_integrate_asymptotic(const ptoda_point* p, double x0, double x1, double tol,
                                         ptoda_trajectory** out);
/* Restarts from fresh asymptotic data at root + eps after each detected pole; segments are concatenated. */
PTODA_API int ptoda_integrate_restarts(const ptoda_point* p, double x0, double x1, double eps, double tol,
                                       ptoda_trajectory** out);
PTODA_API void ptoda_trajectory_destroy(ptoda_trajectory* t);
PTODA_API size_t ptoda_trajectory_size(const ptoda_trajectory* t);
PTODA_API int ptoda_trajectory_sample(const ptoda_trajectory* t, size_t i, double out[3]);
PTODA_API size_t ptoda_trajectory_pole_count(const ptoda_trajectory* t);
PTODA_API int ptoda_trajectory_pole(const ptoda_trajectory* t, size_t i, double* x_pole, double* lo, double* hi);
PTODA_API int ptoda_trajectory_residual(const ptoda_trajectory* t, double* out);
PTODA_API int ptoda_trajectory_piii_residual(const ptoda_trajectory* t, double* out);

PTODA_API int ptoda_monodromy(int form, double x, double v0, double v0x, ptoda_monodromy_result* out);
PTODA_API int ptoda_roundtrip(const ptoda_point* p, double x0, int recenter, ptoda_roundtrip_result* out);

PTODA_API int ptoda_identity_suite(uint64_t seed, ptoda_report** out);
PTODA_API void ptoda_report_destroy(ptoda_report* r);
PTODA_API size_t ptoda_report_size(const ptoda_report* r);
PTODA_API int ptoda_report_entry(const ptoda_report* r, size_t i, const char** name, const char** note,
                                 double* residual, double* threshold, int* pass, int* informational);
PTODA_API int ptoda_report_all_pass(const ptoda_report* r);

#ifdef __cplusplus
}
#endif

#endif
