// Copyright 2026 The QID Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qid/qid.h"

#include <cstring>
#include <new>
#include <random>
#include <string>

#include "errors.hpp"
#include "format.hpp"
#include "gaussian_state.hpp"
#include "kernels.hpp"
#include "qid_network.hpp"
#include "qudit_core.hpp"
#include "wigner.hpp"

struct qid_state {
    qid::PureState state;
};

struct qid_wigner {
    qid::WignerGrid grid;
};

namespace {

thread_local std::string last_error;

qid_status to_status(qid::ErrorCode code) {
    return static_cast<qid_status>(static_cast<int>(code));
}

// Runs `fn`, translating exceptions into status codes and recording the message.
template <typename Fn>
qid_status guarded(Fn &&fn) {
    try {
        fn();
        return QID_OK;
    } catch (const qid::Error &e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return QID_ERR_CAPACITY;
    } catch (const std::exception &e) {
        last_error = e.what();
        return QID_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return QID_ERR_INTERNAL;
    }
}

void require_out(const void *p, const char *name) {
    qid::require(p != nullptr, qid::ErrorCode::kInvalidArgument, std::string(name) + " must not be null");
}

qid::OutputMode to_mode(int mode) {
    qid::require(mode == 1 || mode == 2, qid::ErrorCode::kInvalidArgument, "output mode must be 1 or 2");
    return static_cast<qid::OutputMode>(mode);
}

qid::KernelPart to_part(qid_kernel_part part) {
    qid::require(part >= QID_KERNEL_ENTANGLED && part <= QID_KERNEL_CROSS, qid::ErrorCode::kInvalidArgument,
                 "kernel part must be 1, 2 or 3");
    return static_cast<qid::KernelPart>(part);
}

qid::GridSpec to_spec(const qid_grid_spec *spec) {
    require_out(spec, "grid spec");
    qid::require(spec->nx >= 4 && spec->np >= 4 && spec->x_max > spec->x_min && spec->p_max > spec->p_min,
                 qid::ErrorCode::kGrid, "grid needs increasing bounds and at least 4 points per axis");
    return qid::GridSpec{spec->x_min, spec->x_max, spec->p_min, spec->p_max, spec->nx, spec->np};
}

qid_grid_spec from_spec(const qid::GridSpec &s) {
    return qid_grid_spec{s.x_min, s.x_max, s.p_min, s.p_max, s.nx, s.np};
}

char *copy_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char *qid_status_string(qid_status status) {
    switch (status) {
        case QID_OK:
            return "ok";
        case QID_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case QID_ERR_DIMENSION_MISMATCH:
            return "dimension mismatch";
        case QID_ERR_OUT_OF_RANGE:
            return "out of range";
        case QID_ERR_NORMALIZATION:
            return "normalization violated";
        case QID_ERR_GRID:
            return "incompatible grid";
        case QID_ERR_NYQUIST:
            return "grid resolution too coarse";
        case QID_ERR_CAPACITY:
            return "capacity exceeded";
        case QID_ERR_IO:
            return "i/o failure";
        case QID_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char *qid_last_error(void) {
    return last_error.c_str();
}

const char *qid_version(void) {
    return "1.0.0";
}

size_t qid_simulation_dim_cap(void) {
    return qid::kMaxTripartiteDim;
}

qid_status qid_state_random(size_t dim, uint64_t seed, qid_state **out) {
    return guarded([&] {
        require_out(out, "out");
        std::mt19937_64 rng(seed);
        *out = new qid_state{qid::random_state(qid::Dim(dim), rng)};
    });
}

qid_status qid_state_from_amplitudes(size_t dim, const double *re, const double *im, qid_state **out) {
    return guarded([&] {
        require_out(out, "out");
        require_out(re, "re");
        require_out(im, "im");
        std::vector<qid::Complex> amps(dim);
        for (size_t i = 0; i < dim; ++i) {
            amps[i] = {re[i], im[i]};
        }
        *out = new qid_state{qid::PureState::normalized({qid::Dim(dim)}, std::move(amps))};
    });
}

size_t qid_state_dim(const qid_state *state) {
    return state == nullptr ? 0 : state->state.size();
}

qid_status qid_state_amplitudes(const qid_state *state, double *re, double *im, size_t count) {
    return guarded([&] {
        require_out(state, "state");
        require_out(re, "re");
        require_out(im, "im");
        qid::require(count == state->state.size(), qid::ErrorCode::kDimensionMismatch,
                     "amplitude buffer size does not match the state");
        for (size_t i = 0; i < count; ++i) {
            re[i] = state->state[i].real();
            im[i] = state->state[i].imag();
        }
    });
}

void qid_state_free(qid_state *state) {
    delete state;
}

qid_status qid_clone_closed_form(size_t dim, double *scaling, double *fidelity) {
    return guarded([&] {
        require_out(scaling, "scaling");
        require_out(fidelity, "fidelity");
        const qid::Dim d(dim);
        *scaling = qid::clone_scaling(d);
        *fidelity = qid::clone_fidelity(d);
    });
}

qid_status qid_clone_simulate(const qid_state *input, qid_clone_result *out) {
    return guarded([&] {
        require_out(input, "input");
        require_out(out, "out");
        const qid::CloneMeasurement m = qid::measure_clone(input->state);
        *out = qid_clone_result{m.scaling, m.fidelity, m.fidelity_second, m.clone_mismatch};
    });
}

qid_status qid_program_beta(size_t dim, double alpha, double *beta) {
    return guarded([&] {
        require_out(beta, "beta");
        *beta = qid::solve_beta(qid::Dim(dim), alpha);
    });
}

qid_status qid_distribute(const qid_state *input, double alpha, qid_distribute_report *out) {
    return guarded([&] {
        require_out(input, "input");
        require_out(out, "out");
        const qid::PureState &psi = input->state;
        const qid::Dim dim(psi.size());
        const double beta = qid::solve_beta(dim, alpha);
        const qid::DistributorOutput sim = qid::distribute(psi, qid::program_state(dim, alpha, beta));
        const auto predicted = qid::predicted_outputs(dim, alpha, beta, psi);
        double deviation = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            deviation = std::max(deviation, qid::max_abs_diff(sim.reduced[j].matrix(), predicted[j].matrix()));
        }
        const std::size_t pair13[] = {0, 2};
        const double n = static_cast<double>(psi.size());
        qid_distribute_report r{};
        r.alpha = alpha;
        r.beta = beta;
        r.rho1_fidelity = qid::fidelity(sim.reduced[0], psi);
        r.rho2_fidelity = qid::fidelity(sim.reduced[1], psi);
        r.rho3_transpose_fidelity = qid::fidelity(qid::transpose_op(sim.reduced[2]), psi);
        r.predicted_rho1_fidelity = 1.0 - beta * beta * (1.0 - 1.0 / n);
        r.predicted_rho2_fidelity = 1.0 - alpha * alpha * (1.0 - 1.0 / n);
        r.max_deviation = deviation;
        r.rho3_negativity = qid::negativity(qid::partial_trace(sim.joint, pair13));
        *out = r;
    });
}

qid_status qid_covariance_scan(size_t dim, double alpha, size_t trials, uint64_t seed, qid_covariance_report *out) {
    return guarded([&] {
        require_out(out, "out");
        qid::require(trials >= 1, qid::ErrorCode::kInvalidArgument, "covariance scan needs at least one trial");
        const qid::Dim d(dim);
        const qid::ProgramState program = qid::program_state(d, alpha, qid::solve_beta(d, alpha));
        std::mt19937_64 rng(seed);
        qid_covariance_report r{};
        const auto n = static_cast<long long>(dim);
        for (size_t t = 0; t < trials; ++t) {
            const qid::PureState psi = qid::random_state(d, rng);
            for (long long sx = 0; sx < n; ++sx) {
                for (long long sp = 0; sp < n; ++sp) {
                    const qid::CovarianceReport c = qid::covariance_check(psi, program.ket, sx, sp);
                    r.max_deviation = std::max(r.max_deviation, c.max_deviation);
                    r.max_fidelity_delta = std::max(r.max_fidelity_delta, c.fidelity_delta);
                    if (sx == 0 && sp == 0) {
                        r.identity_deviation = std::max(r.identity_deviation, c.max_deviation);
                    }
                    ++r.pairs_checked;
                }
            }
        }
        *out = r;
    });
}

qid_status qid_classical_fidelity(unsigned m_in, unsigned m_out, double overlap, double *out) {
    return guarded([&] {
        require_out(out, "out");
        *out = qid::classical_distributor_fidelity(m_in, m_out, overlap);
    });
}

qid_status qid_cv_kernel_norm(qid_kernel_part part, double xi, qid_norm_method method, int mode, double *out) {
    return guarded([&] {
        require_out(out, "out");
        const qid::KernelPart p = to_part(part);
        const qid::OutputMode m = to_mode(mode);
        switch (method) {
            case QID_NORM_CLOSED:
                qid::require(m == qid::OutputMode::kFirst, qid::ErrorCode::kInvalidArgument,
                             "closed-form kernel norms exist for output 1 only");
                *out = qid::kernel_norm_closed(p, xi);
                return;
            case QID_NORM_GAUSSIAN:
                *out = qid::kernel_norm(qid::kernel_part_terms(p, xi, m));
                return;
            case QID_NORM_QUADRATURE:
                *out = qid::kernel_norm_quadrature(p, xi, m);
                return;
        }
        qid::fail(qid::ErrorCode::kInvalidArgument, "unknown kernel norm method");
    });
}

qid_status qid_cv_solve_beta(double xi, double alpha, double *beta) {
    return guarded([&] {
        require_out(beta, "beta");
        *beta = qid::cv_solve_beta(xi, alpha);
    });
}

qid_status qid_cv_symmetric_weight(double xi, double *alpha) {
    return guarded([&] {
        require_out(alpha, "alpha");
        *alpha = qid::cv_symmetric_weight(xi);
    });
}

qid_status qid_cv_kernel_spread(double xi, double alpha, double beta, int mode, double *sigma_x, double *sigma_p) {
    return guarded([&] {
        require_out(sigma_x, "sigma_x");
        require_out(sigma_p, "sigma_p");
        const auto [sx, sp] = qid::kernel_spread(qid::weighted_kernel(xi, alpha, beta, to_mode(mode)));
        *sigma_x = sx;
        *sigma_p = sp;
    });
}

qid_status qid_cv_analytic_fidelity(double xi, double alpha, double beta, int mode, double re, double im,
                                    double *out) {
    return guarded([&] {
        require_out(out, "out");
        qid::require(std::abs(qid::cv_norm_constraint(alpha, beta, xi)) <= 1e-10, qid::ErrorCode::kNormalization,
                     "weights violate the program normalization");
        *out = qid::analytic_fidelity(qid::weighted_kernel(xi, alpha, beta, to_mode(mode)),
                                      qid::GaussianState::coherent({re, im}));
    });
}

double qid_cv_grid_xi_max(void) {
    return qid::kXiGridMax;
}

qid_status qid_grid_default(double sigma, size_t n, qid_grid_spec *out) {
    return guarded([&] {
        require_out(out, "out");
        qid::require(std::isfinite(sigma) && sigma > 0.0, qid::ErrorCode::kGrid, "grid width must be positive");
        *out = from_spec(qid::default_grid(sigma, n));
    });
}

qid_status qid_wigner_coherent(double re, double im, const qid_grid_spec *spec, qid_wigner **out) {
    return guarded([&] {
        require_out(out, "out");
        *out = new qid_wigner{qid::render(qid::GaussianState::coherent({re, im}), to_spec(spec))};
    });
}

qid_status qid_wigner_kernel(qid_kernel_part part, double xi, const qid_grid_spec *spec, qid_wigner **out) {
    return guarded([&] {
        require_out(out, "out");
        *out = new qid_wigner{qid::kernel_wigner(to_part(part), xi, to_spec(spec))};
    });
}

qid_status qid_wigner_output(const qid_wigner *input, double xi, double alpha, double beta, int mode,
                             qid_wigner **out) {
    return guarded([&] {
        require_out(input, "input");
        require_out(out, "out");
        *out = new qid_wigner{qid::output_wigner(input->grid, xi, alpha, beta, to_mode(mode))};
    });
}

qid_status qid_wigner_convolve_part(const qid_wigner *input, qid_kernel_part part, double xi, int mode,
                                    qid_wigner **out) {
    return guarded([&] {
        require_out(input, "input");
        require_out(out, "out");
        *out = new qid_wigner{qid::convolve(input->grid, qid::kernel_part_terms(to_part(part), xi, to_mode(mode)))};
    });
}

qid_status qid_wigner_spec(const qid_wigner *w, qid_grid_spec *out) {
    return guarded([&] {
        require_out(w, "wigner");
        require_out(out, "out");
        *out = from_spec(w->grid.spec());
    });
}

qid_status qid_wigner_values(const qid_wigner *w, double *out, size_t count) {
    return guarded([&] {
        require_out(w, "wigner");
        require_out(out, "out");
        const auto &v = w->grid.values();
        qid::require(count == static_cast<size_t>(v.size()), qid::ErrorCode::kDimensionMismatch,
                     "value buffer size does not match the grid");
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            for (Eigen::Index j = 0; j < v.cols(); ++j) {
                out[i * v.cols() + j] = v(i, j);
            }
        }
    });
}

qid_status qid_wigner_normalization(const qid_wigner *w, double *out) {
    return guarded([&] {
        require_out(w, "wigner");
        require_out(out, "out");
        *out = w->grid.normalization();
    });
}

qid_status qid_wigner_overlap(const qid_wigner *a, const qid_wigner *b, double *out) {
    return guarded([&] {
        require_out(a, "a");
        require_out(b, "b");
        require_out(out, "out");
        *out = qid::cv_fidelity(a->grid, b->grid);
    });
}

qid_status qid_wigner_serialize(const qid_wigner *w, qid_format format, const char *const *keys,
                                const char *const *values, size_t n_meta, char **out) {
    return guarded([&] {
        require_out(w, "wigner");
        require_out(out, "out");
        qid::Metadata meta;
        if (n_meta > 0) {
            require_out(keys, "keys");
            require_out(values, "values");
        }
        for (size_t i = 0; i < n_meta; ++i) {
            require_out(keys[i], "metadata key");
            require_out(values[i], "metadata value");
            meta.emplace_back(keys[i], values[i]);
        }
        switch (format) {
            case QID_FORMAT_CSV:
                *out = copy_string(qid::to_csv(w->grid, meta));
                return;
            case QID_FORMAT_JSON:
                *out = copy_string(qid::to_json(w->grid, meta));
                return;
        }
        qid::fail(qid::ErrorCode::kInvalidArgument, "unknown output format");
    });
}

void qid_wigner_free(qid_wigner *w) {
    delete w;
}

void qid_string_free(char *s) {
    delete[] s;
}

qid_status qid_coherent_clone(double re, double im, qid_coherent_report *out) {
    return guarded([&] {
        require_out(out, "out");
        const std::complex<double> z(re, im);
        const auto input = qid::GaussianState::coherent(z);
        const auto outputs = qid::coherent_cloner(input);
        qid_coherent_report r{};
        r.clone_fidelity[0] = qid::gaussian_fidelity(outputs[0], input);
        r.clone_fidelity[1] = qid::gaussian_fidelity(outputs[1], input);
        r.anticlone_fidelity = qid::gaussian_fidelity(outputs[2], qid::GaussianState::coherent(std::conj(z)));
        for (int j = 0; j < 3; ++j) {
            r.mean[j][0] = outputs[j].mean()(0);
            r.mean[j][1] = outputs[j].mean()(1);
            for (int k = 0; k < 4; ++k) {
                r.cov[j][k] = outputs[j].cov()(k / 2, k % 2);
            }
        }
        *out = r;
    });
}

size_t qid_format_double(double v, char *buf, size_t size) {
    const std::string s = qid::format_double(v);
    if (buf != nullptr && size > s.size()) {
        std::memcpy(buf, s.c_str(), s.size() + 1);
    }
    return s.size();
}

}  // extern "C"
