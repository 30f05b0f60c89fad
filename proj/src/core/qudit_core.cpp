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

#include "qudit_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace qid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::size_t> strides_of(std::span<const Dim> dims) {
    std::vector<std::size_t> strides(dims.size());
    std::size_t s = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
        strides[i] = s;
        s *= dims[i].value();
    }
    return strides;
}

// Flat offsets enumerating the sub-lattice spanned by `regs` (first listed register is
// the most significant digit of the enumeration).
std::vector<std::size_t> offsets_for(std::span<const Dim> dims, std::span<const std::size_t> regs) {
    auto strides = strides_of(dims);
    std::vector<std::size_t> out{0};
    for (std::size_t r : regs) {
        std::vector<std::size_t> next;
        next.reserve(out.size() * dims[r].value());
        for (std::size_t base : out) {
            for (std::size_t k = 0; k < dims[r].value(); ++k) {
                next.push_back(base + k * strides[r]);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<std::size_t> complement(std::size_t count, std::span<const std::size_t> regs) {
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < count; ++r) {
        if (std::find(regs.begin(), regs.end(), r) == regs.end()) {
            rest.push_back(r);
        }
    }
    return rest;
}

std::vector<std::size_t> validated_keep(std::size_t registers, std::span<const std::size_t> keep) {
    std::vector<std::size_t> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    require(!sorted.empty(), ErrorCode::kInvalidArgument, "partial_trace: keep set is empty");
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorCode::kInvalidArgument,
            "partial_trace: duplicate register in keep set");
    require(sorted.back() < registers, ErrorCode::kOutOfRange, "partial_trace: register index out of range");
    require(sorted.size() < registers, ErrorCode::kInvalidArgument,
            "partial_trace: keep set must be a proper subset of the registers");
    return sorted;
}

std::vector<Dim> select(std::span<const Dim> dims, std::span<const std::size_t> regs) {
    std::vector<Dim> out;
    for (std::size_t r : regs) {
        out.push_back(dims[r]);
    }
    return out;
}

}  // namespace

Dim::Dim(std::size_t n) : n_(n) {
    require(n >= 2, ErrorCode::kInvalidArgument, "dimension must be at least 2, got " + std::to_string(n));
}

std::size_t Dim::wrap(long long k) const noexcept {
    auto n = static_cast<long long>(n_);
    return static_cast<std::size_t>(((k % n) + n) % n);
}

std::size_t total_size(std::span<const Dim> dims) {
    std::size_t s = 1;
    for (Dim d : dims) {
        s *= d.value();
    }
    return s;
}

PureState::PureState(std::vector<Dim> dims, std::vector<Complex> amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    require(!dims_.empty(), ErrorCode::kInvalidArgument, "state needs at least one register");
    require(amplitudes_.size() == total_size(dims_), ErrorCode::kDimensionMismatch,
            "amplitude count does not match register dimensions");
    double norm2 = 0;
    for (const auto &a : amplitudes_) {
        norm2 += std::norm(a);
    }
    require(std::abs(norm2 - 1.0) <= kChainTol, ErrorCode::kNormalization,
            "state is not normalized (squared norm " + std::to_string(norm2) + ")");
}

PureState PureState::normalized(std::vector<Dim> dims, std::vector<Complex> amplitudes) {
    double norm2 = 0;
    for (const auto &a : amplitudes) {
        norm2 += std::norm(a);
    }
    require(norm2 > 0 && std::isfinite(norm2), ErrorCode::kNormalization, "cannot normalize a zero vector");
    double scale = 1.0 / std::sqrt(norm2);
    for (auto &a : amplitudes) {
        a *= scale;
    }
    return PureState(std::move(dims), std::move(amplitudes));
}

PureState PureState::basis(Dim dim, std::size_t k) {
    require(k < dim.value(), ErrorCode::kOutOfRange, "basis label out of range");
    std::vector<Complex> amps(dim.value());
    amps[k] = 1.0;
    return PureState({dim}, std::move(amps));
}

Complex PureState::inner(const PureState &other) const {
    require(dims_ == other.dims_, ErrorCode::kDimensionMismatch, "inner product of mismatched states");
    Complex acc = 0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return acc;
}

PureState PureState::tensor(const PureState &other) const {
    std::vector<Dim> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    std::vector<Complex> amps;
    amps.reserve(amplitudes_.size() * other.amplitudes_.size());
    for (const auto &a : amplitudes_) {
        for (const auto &b : other.amplitudes_) {
            amps.push_back(a * b);
        }
    }
    return PureState(std::move(dims), std::move(amps));
}

PureState PureState::apply(const Operator &op, std::span<const std::size_t> targets) const {
    require(targets.size() == op.dims().size(), ErrorCode::kDimensionMismatch,
            "operator register count does not match targets");
    for (std::size_t j = 0; j < targets.size(); ++j) {
        require(targets[j] < dims_.size(), ErrorCode::kOutOfRange, "target register out of range");
        require(dims_[targets[j]] == op.dims()[j], ErrorCode::kDimensionMismatch,
                "operator dimension does not match target register");
        for (std::size_t i = 0; i < j; ++i) {
            require(targets[i] != targets[j], ErrorCode::kInvalidArgument, "duplicate target register");
        }
    }
    auto local = offsets_for(dims_, targets);
    auto bases = offsets_for(dims_, complement(dims_.size(), targets));
    const CMatrix &m = op.matrix();
    std::vector<Complex> out(amplitudes_.size());
    Eigen::VectorXcd gathered(local.size());
    for (std::size_t base : bases) {
        for (std::size_t c = 0; c < local.size(); ++c) {
            gathered[static_cast<Eigen::Index>(c)] = amplitudes_[base + local[c]];
        }
        Eigen::VectorXcd result = m * gathered;
        for (std::size_t r = 0; r < local.size(); ++r) {
            out[base + local[r]] = result[static_cast<Eigen::Index>(r)];
        }
    }
    return PureState(dims_, std::move(out));
}

PureState PureState::apply(const Operator &op, std::size_t target) const {
    const std::size_t targets[] = {target};
    return apply(op, targets);
}

Operator::Operator(std::vector<Dim> dims, CMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    auto n = static_cast<Eigen::Index>(total_size(dims_));
    require(matrix_.rows() == n && matrix_.cols() == n, ErrorCode::kDimensionMismatch,
            "operator matrix shape does not match register dimensions");
}

Operator Operator::operator*(const Operator &rhs) const {
    require(dims_ == rhs.dims_, ErrorCode::kDimensionMismatch, "product of operators on different spaces");
    return Operator(dims_, matrix_ * rhs.matrix_);
}

Operator Operator::adjoint() const {
    return Operator(dims_, matrix_.adjoint());
}

bool Operator::is_unitary(double tol) const {
    CMatrix id = CMatrix::Identity(matrix_.rows(), matrix_.cols());
    return max_abs_diff(matrix_.adjoint() * matrix_, id) <= tol;
}

DensityOperator::DensityOperator(std::vector<Dim> dims, CMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    auto n = static_cast<Eigen::Index>(total_size(dims_));
    require(matrix_.rows() == n && matrix_.cols() == n, ErrorCode::kDimensionMismatch,
            "density matrix shape does not match register dimensions");
    require(max_abs_diff(matrix_, matrix_.adjoint()) <= kChainTol, ErrorCode::kInvalidArgument,
            "density matrix is not Hermitian");
    require(std::abs(matrix_.trace() - Complex(1.0)) <= kChainTol, ErrorCode::kNormalization,
            "density matrix trace is not 1");
    require(min_eigenvalue() >= -kChainTol, ErrorCode::kInvalidArgument, "density matrix is not positive");
}

DensityOperator DensityOperator::pure(const PureState &psi) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.size()));
    return DensityOperator(psi.dims(), v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Dim dim) {
    auto n = static_cast<Eigen::Index>(dim.value());
    return DensityOperator({dim}, CMatrix::Identity(n, n) / static_cast<double>(n));
}

double DensityOperator::min_eigenvalue() const {
    CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Operator fourier_operator(Dim dim) {
    const std::size_t n = dim.value();
    CMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            // Reduce k*l mod N first so large dimensions keep full phase accuracy.
            double phase = kTwoPi * static_cast<double>((k * l) % n) / static_cast<double>(n);
            f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = std::polar(scale, phase);
        }
    }
    return Operator({dim}, std::move(f));
}

Operator shift_x(Dim dim, long long n) {
    const std::size_t size = dim.value();
    CMatrix m = CMatrix::Zero(size, size);
    for (std::size_t l = 0; l < size; ++l) {
        std::size_t k = dim.wrap(static_cast<long long>(l) - n);
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = 1.0;
    }
    return Operator({dim}, std::move(m));
}

Operator shift_p(Dim dim, long long m) {
    const std::size_t size = dim.value();
    CMatrix d = CMatrix::Zero(size, size);
    const std::size_t mm = dim.wrap(m);
    for (std::size_t l = 0; l < size; ++l) {
        double phase = kTwoPi * static_cast<double>((mm * l) % size) / static_cast<double>(size);
        d(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = std::polar(1.0, phase);
    }
    return Operator({dim}, std::move(d));
}

Operator position_operator(Dim dim) {
    const auto n = static_cast<Eigen::Index>(dim.value());
    CMatrix x = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        x(k, k) = static_cast<double>(k);
    }
    return Operator({dim}, std::move(x));
}

Operator momentum_operator(Dim dim) {
    const CMatrix f = fourier_operator(dim).matrix();
    const auto n = static_cast<Eigen::Index>(dim.value());
    CMatrix diag = CMatrix::Zero(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        diag(l, l) = static_cast<double>(l);
    }
    return Operator({dim}, f * diag * f.adjoint());
}

PureState entangled_state(Dim dim, std::size_t m, std::size_t n) {
    const std::size_t size = dim.value();
    require(m < size && n < size, ErrorCode::kOutOfRange, "entangled_state: labels must lie in [0, N)");
    std::vector<Complex> amps(size * size);
    const double scale = 1.0 / std::sqrt(static_cast<double>(size));
    for (std::size_t k = 0; k < size; ++k) {
        std::size_t partner = dim.wrap(static_cast<long long>(k) - static_cast<long long>(n));
        double phase = kTwoPi * static_cast<double>((m * k) % size) / static_cast<double>(size);
        amps[k * size + partner] = std::polar(scale, phase);
    }
    return PureState({dim, dim}, std::move(amps));
}

DensityOperator partial_trace(const PureState &state, std::span<const std::size_t> keep) {
    auto kept = validated_keep(state.registers(), keep);
    auto kept_offsets = offsets_for(state.dims(), kept);
    auto rest_offsets = offsets_for(state.dims(), complement(state.registers(), kept));
    CMatrix block(kept_offsets.size(), rest_offsets.size());
    for (std::size_t a = 0; a < kept_offsets.size(); ++a) {
        for (std::size_t b = 0; b < rest_offsets.size(); ++b) {
            block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                state[kept_offsets[a] + rest_offsets[b]];
        }
    }
    CMatrix rho = block * block.adjoint();
    return DensityOperator(select(state.dims(), kept), std::move(rho));
}

DensityOperator partial_trace(const DensityOperator &rho, std::span<const std::size_t> keep) {
    auto kept = validated_keep(rho.dims().size(), keep);
    auto kept_offsets = offsets_for(rho.dims(), kept);
    auto rest_offsets = offsets_for(rho.dims(), complement(rho.dims().size(), kept));
    const auto k = static_cast<Eigen::Index>(kept_offsets.size());
    CMatrix out = CMatrix::Zero(k, k);
    const CMatrix &m = rho.matrix();
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index c = 0; c < k; ++c) {
            Complex acc = 0;
            for (std::size_t r : rest_offsets) {
                acc += m(static_cast<Eigen::Index>(kept_offsets[a] + r), static_cast<Eigen::Index>(kept_offsets[c] + r));
            }
            out(a, c) = acc;
        }
    }
    return DensityOperator(select(rho.dims(), kept), std::move(out));
}

double fidelity(const DensityOperator &rho, const PureState &psi) {
    require(rho.dims() == psi.dims(), ErrorCode::kDimensionMismatch, "fidelity: state and operator dimensions differ");
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.size()));
    double f = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    return std::clamp(f, 0.0, 1.0);
}

DensityOperator transpose_op(const DensityOperator &rho) {
    return DensityOperator(rho.dims(), rho.matrix().transpose());
}

CMatrix partial_transpose_second(const DensityOperator &rho) {
    require(rho.dims().size() == 2, ErrorCode::kInvalidArgument, "partial transpose needs a two-register operator");
    const std::size_t na = rho.dims()[0].value();
    const std::size_t nb = rho.dims()[1].value();
    const CMatrix &m = rho.matrix();
    CMatrix out(m.rows(), m.cols());
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            for (std::size_t c = 0; c < na; ++c) {
                for (std::size_t d = 0; d < nb; ++d) {
                    out(static_cast<Eigen::Index>(a * nb + b), static_cast<Eigen::Index>(c * nb + d)) =
                        m(static_cast<Eigen::Index>(a * nb + d), static_cast<Eigen::Index>(c * nb + b));
                }
            }
        }
    }
    return out;
}

double negativity(const DensityOperator &rho) {
    CMatrix pt = partial_transpose_second(rho);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
    double neg = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        neg += std::max(0.0, -solver.eigenvalues()[i]);
    }
    return neg;
}

PureState random_state(std::span<const Dim> dims, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(total_size(dims));
    for (auto &a : amps) {
        double re = normal(rng);
        double im = normal(rng);
        a = Complex(re, im);
    }
    return PureState::normalized(std::vector<Dim>(dims.begin(), dims.end()), std::move(amps));
}

PureState random_state(Dim dim, std::mt19937_64 &rng) {
    const Dim dims[] = {dim};
    return random_state(dims, rng);
}

double phase_insensitive_distance(const PureState &a, const PureState &b) {
    return std::max(0.0, 1.0 - std::abs(a.inner(b)));
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kDimensionMismatch, "matrix shapes differ");
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qid
