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

#include "qid_network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace qid {

namespace {

Operator conditional_shift(Dim dim, int direction) {
    const std::size_t n = dim.value();
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n * n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t t = 0; t < n; ++t) {
            std::size_t target = dim.wrap(static_cast<long long>(t) + direction * static_cast<long long>(k));
            m(static_cast<Eigen::Index>(k * n + target), static_cast<Eigen::Index>(k * n + t)) = 1.0;
        }
    }
    return Operator({dim, dim}, std::move(m));
}

void require_tripartite_dim(Dim dim) {
    require(dim.value() <= kMaxTripartiteDim, ErrorCode::kCapacity,
            "dimension " + std::to_string(dim.value()) + " exceeds the tripartite simulation cap of " +
                std::to_string(kMaxTripartiteDim));
}

}  // namespace

Operator conditional_add(Dim dim) {
    return conditional_shift(dim, +1);
}

Operator conditional_sub(Dim dim) {
    return conditional_shift(dim, -1);
}

PermutationGate::PermutationGate(Dim dim, std::vector<std::uint32_t> map) : dim_(dim), map_(std::move(map)) {
    const std::size_t n = dim.value();
    require(map_.size() == n * n * n, ErrorCode::kDimensionMismatch, "permutation size must be N^3");
    std::vector<std::uint8_t> hit(map_.size(), 0);
    for (std::uint32_t target : map_) {
        if (target >= map_.size() || hit[target]) {
            fail(ErrorCode::kInvalidArgument, "label map is not a bijection");
        }
        hit[target] = 1;
    }
}

PureState PermutationGate::apply(const PureState &state) const {
    require(state.registers() == 3 && state.dims()[0] == dim_ && state.dims()[1] == dim_ && state.dims()[2] == dim_,
            ErrorCode::kDimensionMismatch, "permutation gate expects three registers of its dimension");
    std::vector<Complex> out(state.size());
    auto in = state.amplitudes();
    for (std::size_t i = 0; i < map_.size(); ++i) {
        out[map_[i]] = in[i];
    }
    return PureState(state.dims(), std::move(out));
}

PermutationGate build_qid_unitary(Dim dim) {
    require_tripartite_dim(dim);
    const std::size_t n = dim.value();
    std::vector<std::uint32_t> map(n * n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                const auto sa = static_cast<long long>(a);
                const auto sb = static_cast<long long>(b);
                const auto sc = static_cast<long long>(c);
                std::size_t out1 = dim.wrap(sa - sb + sc);
                std::size_t out2 = dim.wrap(sb + sa);
                std::size_t out3 = dim.wrap(sc + sa);
                map[(a * n + b) * n + c] = static_cast<std::uint32_t>((out1 * n + out2) * n + out3);
            }
        }
    }
    return PermutationGate(dim, std::move(map));
}

double program_norm_residual(Dim dim, double alpha, double beta) {
    const double n = static_cast<double>(dim.value());
    return alpha * alpha + beta * beta + 2.0 * alpha * beta / n - 1.0;
}

double solve_beta(Dim dim, double alpha) {
    require(alpha >= 0.0 && alpha <= 1.0, ErrorCode::kOutOfRange, "solve_beta: alpha must lie in [0, 1]");
    const double n = static_cast<double>(dim.value());
    const double half_b = alpha / n;
    const double c = alpha * alpha - 1.0;
    const double disc = half_b * half_b - c;
    // c <= 0 for alpha in [0, 1], so the discriminant is nonnegative and one root is >= 0.
    const double root = std::sqrt(std::max(disc, 0.0));
    // Stable form of -half_b + root when the two terms nearly cancel.
    double beta = (half_b > 0 && root > 0) ? -c / (half_b + root) : root - half_b;
    return std::max(beta, 0.0);
}

double cloner_alpha(Dim dim) {
    const double n = static_cast<double>(dim.value());
    return std::sqrt(n / (2.0 * (n + 1.0)));
}

ProgramState program_state(Dim dim, double alpha, double beta) {
    const double residual = program_norm_residual(dim, alpha, beta);
    require(std::abs(residual) <= kChainTol, ErrorCode::kNormalization,
            "program weights violate alpha^2 + beta^2 + 2 alpha beta / N = 1 (residual " + std::to_string(residual) +
                ")");
    const std::size_t n = dim.value();
    PureState xi = entangled_state(dim, 0, 0);
    const double p0 = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Complex> amps(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        amps[i] = alpha * xi[i];
    }
    // |x_0>_2 |p_0>_3: register 2 pinned to label 0, register 3 uniform.
    for (std::size_t k = 0; k < n; ++k) {
        amps[k] += beta * p0;
    }
    return ProgramState{dim, alpha, beta, PureState({dim, dim}, std::move(amps))};
}

DistributorOutput distribute(const PureState &psi, const PureState &program) {
    require(psi.registers() == 1, ErrorCode::kDimensionMismatch, "distribute: input must be a single register");
    require(program.registers() == 2, ErrorCode::kDimensionMismatch, "distribute: program must have two registers");
    const Dim dim = psi.dims()[0];
    require(program.dims()[0] == dim && program.dims()[1] == dim, ErrorCode::kDimensionMismatch,
            "distribute: input and program dimensions differ");
    PureState joint = build_qid_unitary(dim).apply(psi.tensor(program));
    const std::size_t keep1[] = {0};
    const std::size_t keep2[] = {1};
    const std::size_t keep3[] = {2};
    std::array<DensityOperator, 3> reduced{partial_trace(joint, keep1), partial_trace(joint, keep2),
                                           partial_trace(joint, keep3)};
    return DistributorOutput{std::move(joint), std::move(reduced)};
}

DistributorOutput distribute(const PureState &psi, const ProgramState &program) {
    return distribute(psi, program.ket);
}

std::array<DensityOperator, 3> predicted_outputs(Dim dim, double alpha, double beta, const PureState &psi) {
    require(std::abs(program_norm_residual(dim, alpha, beta)) <= kChainTol, ErrorCode::kNormalization,
            "predicted_outputs: weights violate the program normalization");
    require(psi.registers() == 1 && psi.dims()[0] == dim, ErrorCode::kDimensionMismatch,
            "predicted_outputs: input dimension mismatch");
    const double n = static_cast<double>(dim.value());
    const CMatrix proj = DensityOperator::pure(psi).matrix();
    const CMatrix id = CMatrix::Identity(proj.rows(), proj.cols());
    const double cross = 2.0 * alpha * beta / n;
    return {DensityOperator({dim}, (alpha * alpha + cross) * proj + (beta * beta / n) * id),
            DensityOperator({dim}, (beta * beta + cross) * proj + (alpha * alpha / n) * id),
            DensityOperator({dim}, cross * proj.transpose() + ((n - 2.0 * alpha * beta) / (n * n)) * id)};
}

double clone_scaling(Dim dim) {
    const double n = static_cast<double>(dim.value());
    return (n + 2.0) / (2.0 * (n + 1.0));
}

double clone_fidelity(Dim dim) {
    const double n = static_cast<double>(dim.value());
    return (n + 3.0) / (2.0 * (n + 1.0));
}

CloneMeasurement measure_clone(const PureState &psi) {
    require(psi.registers() == 1, ErrorCode::kDimensionMismatch, "measure_clone: input must be a single register");
    const Dim dim = psi.dims()[0];
    const double a = cloner_alpha(dim);
    auto out = distribute(psi, program_state(dim, a, a));
    const double n = static_cast<double>(dim.value());
    const double f1 = fidelity(out.reduced[0], psi);
    const double f2 = fidelity(out.reduced[1], psi);
    return CloneMeasurement{(f1 - 1.0 / n) / (1.0 - 1.0 / n), f1, f2,
                            max_abs_diff(out.reduced[0].matrix(), out.reduced[1].matrix())};
}

CovarianceReport covariance_check(const PureState &psi, const PureState &program, long long n, long long m) {
    require(psi.registers() == 1, ErrorCode::kDimensionMismatch, "covariance_check: input must be a single register");
    const Dim dim = psi.dims()[0];
    const Operator shift = shift_x(dim, n) * shift_p(dim, m);
    const Operator shift_conj = shift_x(dim, n) * shift_p(dim, -m);

    auto original = distribute(psi, program);
    const PureState moved = psi.apply(shift, 0);
    auto displaced = distribute(moved, program);

    CovarianceReport report{0.0, 0.0};
    for (std::size_t j = 0; j < 3; ++j) {
        const CMatrix &u = (j == 2 ? shift_conj : shift).matrix();
        CMatrix expected = u * original.reduced[j].matrix() * u.adjoint();
        report.max_deviation = std::max(report.max_deviation, max_abs_diff(displaced.reduced[j].matrix(), expected));
    }
    for (std::size_t j = 0; j < 2; ++j) {
        double delta = std::abs(fidelity(displaced.reduced[j], moved) - fidelity(original.reduced[j], psi));
        report.fidelity_delta = std::max(report.fidelity_delta, delta);
    }
    return report;
}

double classical_distributor_fidelity(unsigned m_in, unsigned m_out, double overlap) {
    require(m_in >= 1, ErrorCode::kInvalidArgument, "classical distributor needs at least one input");
    require(m_out >= m_in, ErrorCode::kInvalidArgument, "classical distributor needs m_out >= m_in");
    require(overlap >= 0.0 && overlap <= 1.0, ErrorCode::kOutOfRange, "overlap must lie in [0, 1]");
    if (m_in == m_out) {
        return 1.0;
    }
    const double direct = static_cast<double>(m_in) / static_cast<double>(m_out);
    return direct + (1.0 - direct) * overlap;
}

}  // namespace qid
