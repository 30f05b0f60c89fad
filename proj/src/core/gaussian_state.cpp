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

#include "gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace qid {

namespace {

void require_squeezing(double xi) {
    require(std::isfinite(xi) && xi >= 0.0, ErrorCode::kOutOfRange, "squeezing parameter must be finite and >= 0");
}

void require_single_mode(const GaussianState &s, const char *what) {
    require(s.modes() == 1, ErrorCode::kInvalidArgument, std::string(what) + ": single-mode state required");
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto n = mean_.size();
    require(n > 0 && n % 2 == 0, ErrorCode::kDimensionMismatch, "mean vector must have 2 * modes entries");
    require(cov_.rows() == n && cov_.cols() == n, ErrorCode::kDimensionMismatch, "covariance shape does not match mean");
    require(mean_.allFinite() && cov_.allFinite(), ErrorCode::kInvalidArgument, "moments must be finite");
    require((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() <= 1e-12, ErrorCode::kInvalidArgument,
            "covariance matrix is not symmetric");
    require(uncertainty_margin(cov_) >= -kUncertaintyTol, ErrorCode::kInvalidArgument,
            "covariance violates the uncertainty relation");
}

GaussianState GaussianState::vacuum(std::size_t modes) {
    require(modes >= 1, ErrorCode::kInvalidArgument, "vacuum needs at least one mode");
    const auto n = static_cast<Eigen::Index>(2 * modes);
    return GaussianState(Eigen::VectorXd::Zero(n), 0.5 * Eigen::MatrixXd::Identity(n, n));
}

GaussianState GaussianState::coherent(std::complex<double> z) {
    Eigen::VectorXd mean(2);
    mean << std::sqrt(2.0) * z.real(), std::sqrt(2.0) * z.imag();
    return GaussianState(std::move(mean), 0.5 * Eigen::MatrixXd::Identity(2, 2));
}

Eigen::MatrixXd symplectic_form(std::size_t modes) {
    const auto n = static_cast<Eigen::Index>(2 * modes);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; k += 2) {
        j(k, k + 1) = 1.0;
        j(k + 1, k) = -1.0;
    }
    return j;
}

double uncertainty_margin(const Eigen::MatrixXd &cov) {
    const auto modes = static_cast<std::size_t>(cov.rows() / 2);
    Eigen::MatrixXcd h = cov.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 0.5) * symplectic_form(modes).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double mean_excitation(double xi) {
    require_squeezing(xi);
    const double s = std::sinh(xi);
    return s * s;
}

GaussianState regularized_x0(double xi) {
    require_squeezing(xi);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
    cov(0, 0) = std::exp(-2.0 * xi) / 2.0;
    cov(1, 1) = std::exp(2.0 * xi) / 2.0;
    return GaussianState(Eigen::VectorXd::Zero(2), std::move(cov));
}

GaussianState regularized_p0(double xi) {
    require_squeezing(xi);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
    cov(0, 0) = std::exp(2.0 * xi) / 2.0;
    cov(1, 1) = std::exp(-2.0 * xi) / 2.0;
    return GaussianState(Eigen::VectorXd::Zero(2), std::move(cov));
}

GaussianState regularized_epr(double xi) {
    require_squeezing(xi);
    const double c = std::cosh(2.0 * xi) / 2.0;
    const double s = std::sinh(2.0 * xi) / 2.0;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
    cov.diagonal().setConstant(c);
    cov(0, 2) = cov(2, 0) = s;
    cov(1, 3) = cov(3, 1) = -s;
    return GaussianState(Eigen::VectorXd::Zero(4), std::move(cov));
}

GaussianState thermal_reduction(double xi) {
    const std::size_t keep[] = {0};
    return reduce(regularized_epr(xi), keep);
}

GaussianState reduce(const GaussianState &state, std::span<const std::size_t> keep) {
    require(!keep.empty(), ErrorCode::kInvalidArgument, "reduce: keep set is empty");
    const auto k = static_cast<Eigen::Index>(2 * keep.size());
    Eigen::VectorXd mean(k);
    Eigen::MatrixXd cov(k, k);
    for (std::size_t a = 0; a < keep.size(); ++a) {
        require(keep[a] < state.modes(), ErrorCode::kOutOfRange, "reduce: mode index out of range");
        for (std::size_t b = 0; b < a; ++b) {
            require(keep[a] != keep[b], ErrorCode::kInvalidArgument, "reduce: duplicate mode");
        }
    }
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (Eigen::Index qa = 0; qa < 2; ++qa) {
            const auto row = static_cast<Eigen::Index>(2 * a) + qa;
            const auto src_row = static_cast<Eigen::Index>(2 * keep[a]) + qa;
            mean(row) = state.mean()(src_row);
            for (std::size_t b = 0; b < keep.size(); ++b) {
                for (Eigen::Index qb = 0; qb < 2; ++qb) {
                    cov(row, static_cast<Eigen::Index>(2 * b) + qb) =
                        state.cov()(src_row, static_cast<Eigen::Index>(2 * keep[b]) + qb);
                }
            }
        }
    }
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState tensor(const GaussianState &a, const GaussianState &b) {
    const auto na = a.mean().size();
    const auto nb = b.mean().size();
    Eigen::VectorXd mean(na + nb);
    mean << a.mean(), b.mean();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState evolve(const GaussianState &state, const Eigen::MatrixXd &s) {
    require(s.rows() == state.mean().size() && s.cols() == state.mean().size(), ErrorCode::kDimensionMismatch,
            "evolve: symplectic matrix shape does not match the state");
    Eigen::MatrixXd cov = s * state.cov() * s.transpose();
    // Restore exact symmetry lost to rounding.
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(s * state.mean(), std::move(cov));
}

GaussianState transpose(const GaussianState &state) {
    const auto n = state.mean().size();
    Eigen::VectorXd flip = Eigen::VectorXd::Ones(n);
    for (Eigen::Index k = 1; k < n; k += 2) {
        flip(k) = -1.0;
    }
    const Eigen::MatrixXd r = flip.asDiagonal();
    return GaussianState(r * state.mean(), r * state.cov() * r);
}

GaussianState from_real_wavefunction(const Eigen::MatrixXd &quad) {
    const auto m = quad.rows();
    require(m >= 1 && quad.cols() == m, ErrorCode::kDimensionMismatch, "wavefunction quadratic form must be square");
    Eigen::LLT<Eigen::MatrixXd> llt(quad);
    require(llt.info() == Eigen::Success, ErrorCode::kInvalidArgument,
            "wavefunction quadratic form must be positive definite");
    const Eigen::MatrixXd pos = 0.5 * llt.solve(Eigen::MatrixXd::Identity(m, m));
    const Eigen::MatrixXd mom = 0.5 * quad;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            cov(2 * a, 2 * b) = pos(a, b);
            cov(2 * a + 1, 2 * b + 1) = mom(a, b);
        }
    }
    cov = 0.5 * (cov + cov.transpose()).eval();
    return GaussianState(Eigen::VectorXd::Zero(2 * m), std::move(cov));
}

Eigen::MatrixXd qid_symplectic() {
    Eigen::Matrix3d a;
    a << 1, -1, 1, 1, 1, 0, 1, 0, 1;
    const Eigen::Matrix3d a_inv_t = a.inverse().transpose();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(6, 6);
    for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            s(2 * i, 2 * j) = a(i, j);
            s(2 * i + 1, 2 * j + 1) = std::round(a_inv_t(i, j));
        }
    }
    return s;
}

GaussianState coherent_cloner_program() {
    // x2^2 + (x3 - x2)^2 = v^T [[2, -1], [-1, 1]] v.
    Eigen::MatrixXd quad(2, 2);
    quad << 2.0, -1.0, -1.0, 1.0;
    return from_real_wavefunction(quad);
}

std::array<GaussianState, 3> coherent_cloner(const GaussianState &input) {
    require_single_mode(input, "coherent_cloner");
    require((input.cov() - 0.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= kUncertaintyTol,
            ErrorCode::kInvalidArgument, "coherent_cloner: input must be a coherent state (cov = identity / 2)");
    const GaussianState joint = evolve(tensor(input, coherent_cloner_program()), qid_symplectic());
    const std::size_t m1[] = {0};
    const std::size_t m2[] = {1};
    const std::size_t m3[] = {2};
    return {reduce(joint, m1), reduce(joint, m2), reduce(joint, m3)};
}

double gaussian_fidelity(const GaussianState &a, const GaussianState &b) {
    require_single_mode(a, "gaussian_fidelity");
    require_single_mode(b, "gaussian_fidelity");
    const Eigen::Matrix2d sum = a.cov() + b.cov();
    const Eigen::Vector2d d = a.mean() - b.mean();
    const double big_delta = sum.determinant();
    // Purity excesses; clamp rounding below the pure-state bound.
    const double pa = std::max(a.cov().determinant() - 0.25, 0.0);
    const double pb = std::max(b.cov().determinant() - 0.25, 0.0);
    const double small_delta = 4.0 * pa * pb;
    const double gauss = std::exp(-0.5 * d.dot(sum.inverse() * d));
    const double f = gauss / (std::sqrt(big_delta + small_delta) - std::sqrt(small_delta));
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace qid
