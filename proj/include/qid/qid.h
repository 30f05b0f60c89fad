/*
 * Copyright 2026 The QID Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the quantum information distributor simulator.
 *
 * Every fallible call returns a qid_status; on failure the message is available from
 * qid_last_error() on the calling thread until the next failing call. Objects are
 * opaque handles released with their matching *_free function (NULL is accepted).
 * Output parameters are written only on success.
 */

#ifndef QID_QID_H
#define QID_QID_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QID_API __declspec(dllexport)
#else
#define QID_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qid_status {
    QID_OK = 0,
    QID_ERR_INVALID_ARGUMENT = 1,
    QID_ERR_DIMENSION_MISMATCH = 2,
    QID_ERR_OUT_OF_RANGE = 3,
    QID_ERR_NORMALIZATION = 4,
    QID_ERR_GRID = 5,
    QID_ERR_NYQUIST = 6,
    QID_ERR_CAPACITY = 7,
    QID_ERR_IO = 8,
    QID_ERR_INTERNAL = 99
} qid_status;

QID_API const char *qid_status_string(qid_status status);
QID_API const char *qid_last_error(void);
QID_API const char *qid_version(void);

/* Largest register dimension the full three-register simulation accepts. */
QID_API size_t qid_simulation_dim_cap(void);

/* ---- Single-register pure states ---- */

typedef struct qid_state qid_state;

/* Haar-random state from a 64-bit seed. */
QID_API qid_status qid_state_random(size_t dim, uint64_t seed, qid_state **out);
/* State from `dim` amplitudes, rescaled to unit norm. */
QID_API qid_status qid_state_from_amplitudes(size_t dim, const double *re, const double *im, qid_state **out);
QID_API size_t qid_state_dim(const qid_state *state);
QID_API qid_status qid_state_amplitudes(const qid_state *state, double *re, double *im, size_t count);
QID_API void qid_state_free(qid_state *state);

/* ---- Discrete distributor ---- */

/* s = (N + 2) / (2 (N + 1)) and F = (N + 3) / (2 (N + 1)). */
QID_API qid_status qid_clone_closed_form(size_t dim, double *scaling, double *fidelity);

typedef struct qid_clone_result {
    double scaling;
    double fidelity;
    double fidelity_second;
    double clone_mismatch;
} qid_clone_result;

/* Full simulation of the symmetric cloner on `input`. */
QID_API qid_status qid_clone_simulate(const qid_state *input, qid_clone_result *out);

/* Nonnegative beta on the program normalization curve for weight alpha in [0, 1]. */
QID_API qid_status qid_program_beta(size_t dim, double alpha, double *beta);

typedef struct qid_distribute_report {
    double alpha;
    double beta;
    double rho1_fidelity;           /* <psi|rho1|psi>, simulated */
    double rho2_fidelity;           /* <psi|rho2|psi>, simulated */
    double rho3_transpose_fidelity; /* <psi*|rho3|psi*>, simulated */
    double predicted_rho1_fidelity; /* 1 - beta^2 (1 - 1/N) */
    double predicted_rho2_fidelity; /* 1 - alpha^2 (1 - 1/N) */
    double max_deviation;           /* largest elementwise gap to the closed-form outputs */
    double rho3_negativity;         /* negativity of the output 1-3 pair */
} qid_distribute_report;

QID_API qid_status qid_distribute(const qid_state *input, double alpha, qid_distribute_report *out);

typedef struct qid_covariance_report {
    double max_deviation;
    double max_fidelity_delta;
    double identity_deviation; /* deviation for the (0, 0) shift */
    size_t pairs_checked;
} qid_covariance_report;

/* All N^2 shift pairs on `trials` Haar-random inputs drawn from `seed`. */
QID_API qid_status qid_covariance_scan(size_t dim, double alpha, size_t trials, uint64_t seed,
                                       qid_covariance_report *out);

QID_API qid_status qid_classical_fidelity(unsigned m_in, unsigned m_out, double overlap, double *out);

/* ---- Continuous-variable distributor ---- */

typedef enum qid_kernel_part { QID_KERNEL_ENTANGLED = 1, QID_KERNEL_PRODUCT = 2, QID_KERNEL_CROSS = 3 } qid_kernel_part;

typedef enum qid_norm_method {
    QID_NORM_CLOSED = 0,    /* 1, 1, 4 / sqrt(4 + 2 sinh^2 2xi) */
    QID_NORM_GAUSSIAN = 1,  /* exact Gaussian reduction of the program terms */
    QID_NORM_QUADRATURE = 2 /* adaptive quadrature of the defining integrals */
} qid_norm_method;

/* `mode` selects output 1 or 2. QID_NORM_CLOSED is available for mode 1 only. */
QID_API qid_status qid_cv_kernel_norm(qid_kernel_part part, double xi, qid_norm_method method, int mode, double *out);
QID_API qid_status qid_cv_solve_beta(double xi, double alpha, double *beta);
QID_API qid_status qid_cv_symmetric_weight(double xi, double *alpha);
/* Largest per-axis standard deviation of the weighted kernel Wigner function. */
QID_API qid_status qid_cv_kernel_spread(double xi, double alpha, double beta, int mode, double *sigma_x,
                                        double *sigma_p);
/* <z| rho_out |z> for a coherent input, exact. */
QID_API qid_status qid_cv_analytic_fidelity(double xi, double alpha, double beta, int mode, double re, double im,
                                            double *out);

typedef struct qid_grid_spec {
    double x_min;
    double x_max;
    double p_min;
    double p_max;
    size_t nx;
    size_t np;
} qid_grid_spec;

/* Squeezing above which mode-1 outputs use the large-squeezing form. */
QID_API double qid_cv_grid_xi_max(void);
/* n x n grid over +-8 sigma. */
QID_API qid_status qid_grid_default(double sigma, size_t n, qid_grid_spec *out);

typedef struct qid_wigner qid_wigner;

/* Coherent state |re + i im> sampled on `spec`; fails with QID_ERR_NYQUIST if unresolved. */
QID_API qid_status qid_wigner_coherent(double re, double im, const qid_grid_spec *spec, qid_wigner **out);
QID_API qid_status qid_wigner_kernel(qid_kernel_part part, double xi, const qid_grid_spec *spec, qid_wigner **out);
/* Output Wigner function of mode 1 or 2 for program weights (alpha, beta). */
QID_API qid_status qid_wigner_output(const qid_wigner *input, double xi, double alpha, double beta, int mode,
                                     qid_wigner **out);
/* Input convolved with one unweighted kernel part. */
QID_API qid_status qid_wigner_convolve_part(const qid_wigner *input, qid_kernel_part part, double xi, int mode,
                                            qid_wigner **out);
QID_API qid_status qid_wigner_spec(const qid_wigner *w, qid_grid_spec *out);
/* Copies nx * np values, x-major. */
QID_API qid_status qid_wigner_values(const qid_wigner *w, double *out, size_t count);
QID_API qid_status qid_wigner_normalization(const qid_wigner *w, double *out);
/* (1/2pi) sum W_a W_b dx dp; the grids must match. */
QID_API qid_status qid_wigner_overlap(const qid_wigner *a, const qid_wigner *b, double *out);

typedef enum qid_format { QID_FORMAT_CSV = 0, QID_FORMAT_JSON = 1 } qid_format;

/* Serializes with `n_meta` key/value metadata pairs; release the text with qid_string_free. */
QID_API qid_status qid_wigner_serialize(const qid_wigner *w, qid_format format, const char *const *keys,
                                        const char *const *values, size_t n_meta, char **out);
QID_API void qid_wigner_free(qid_wigner *w);
QID_API void qid_string_free(char *s);

/* ---- Coherent-state cloner ---- */

typedef struct qid_coherent_report {
    double clone_fidelity[2];  /* outputs 1, 2 against |z> */
    double anticlone_fidelity; /* output 3 against |z*> */
    double mean[3][2];
    double cov[3][4]; /* row-major 2 x 2 per output */
} qid_coherent_report;

QID_API qid_status qid_coherent_clone(double re, double im, qid_coherent_report *out);

/* Locale-independent 17-significant-digit rendering into `buf`; returns the length
 * written (excluding the terminator), or the needed length if `size` is too small. */
QID_API size_t qid_format_double(double v, char *buf, size_t size);

#ifdef __cplusplus
}
#endif

#endif
