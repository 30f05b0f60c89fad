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

// Finite-dimensional Hilbert-space objects for N-level systems.
//
// Everything is stored densely in the x-basis {|x_0>, ..., |x_{N-1}>}. Multi-register
// amplitudes use register-major mixed-radix indexing: the label (k_1, k_2, ..., k_r)
// lives at flat index sum_i k_i * prod_{j>i} N_j, so register 1 is the most
// significant digit. The momentum basis is |p_l> = N^{-1/2} sum_k exp(2 pi i k l / N) |x_k>.

#ifndef QID_CORE_QUDIT_CORE_HPP
#define QID_CORE_QUDIT_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qid {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for exact algebraic identities.
inline constexpr double kExactTol = 1e-12;
/// Tolerance for chained floating-point pipelines.
inline constexpr double kChainTol = 1e-10;
/// Largest dimension accepted for tripartite pure-state simulation (N^3 amplitudes).
inline constexpr std::size_t kMaxTripartiteDim = 64;

/// Hilbert-space dimension N >= 2.
class Dim {
   public:
    explicit Dim(std::size_t n);
    std::size_t value() const noexcept {
        return n_;
    }
    /// Reduces an arbitrary integer label or shift into [0, N).
    std::size_t wrap(long long k) const noexcept;
    friend bool operator==(Dim a, Dim b) = default;

   private:
    std::size_t n_;
};

std::size_t total_size(std::span<const Dim> dims);

class Operator;

/// Normalized amplitude vector over one or more registers.
class PureState {
   public:
    /// Throws kNormalization unless the squared norm is 1 within kChainTol.
    PureState(std::vector<Dim> dims, std::vector<Complex> amplitudes);

    /// Rescales `amplitudes` to unit norm; throws kNormalization for a zero vector.
    static PureState normalized(std::vector<Dim> dims, std::vector<Complex> amplitudes);
    static PureState basis(Dim dim, std::size_t k);

    const std::vector<Dim> &dims() const noexcept {
        return dims_;
    }
    std::size_t registers() const noexcept {
        return dims_.size();
    }
    std::size_t size() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    Complex operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    /// <this|other>.
    Complex inner(const PureState &other) const;
    PureState tensor(const PureState &other) const;

    /// Applies a unitary `op` to the registers listed in `targets`; op register j acts on
    /// targets[j]. Throws kNormalization if the result is not normalized.
    PureState apply(const Operator &op, std::span<const std::size_t> targets) const;
    PureState apply(const Operator &op, std::size_t target) const;

   private:
    std::vector<Dim> dims_;
    std::vector<Complex> amplitudes_;
};

/// Dense operator on one or more registers of the same layout as PureState.
class Operator {
   public:
    Operator(std::vector<Dim> dims, CMatrix matrix);

    const std::vector<Dim> &dims() const noexcept {
        return dims_;
    }
    const CMatrix &matrix() const noexcept {
        return matrix_;
    }
    Operator operator*(const Operator &rhs) const;
    Operator adjoint() const;
    bool is_unitary(double tol = kExactTol) const;

   private:
    std::vector<Dim> dims_;
    CMatrix matrix_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (each within kChainTol).
class DensityOperator {
   public:
    DensityOperator(std::vector<Dim> dims, CMatrix matrix);

    static DensityOperator pure(const PureState &psi);
    static DensityOperator maximally_mixed(Dim dim);

    const std::vector<Dim> &dims() const noexcept {
        return dims_;
    }
    const CMatrix &matrix() const noexcept {
        return matrix_;
    }
    double min_eigenvalue() const;

   private:
    std::vector<Dim> dims_;
    CMatrix matrix_;
};

/// F[k][l] = exp(2 pi i k l / N) / sqrt(N); column l holds |p_l> in the x-basis.
Operator fourier_operator(Dim dim);

/// Position shift with <x_k| R_x(n) |x_l> = delta_{k+n, l}, i.e. |x_l> -> |x_{l-n}>.
/// With this orientation R_x(n) R_p(m) = exp(2 pi i m n / N) R_p(m) R_x(n) and
/// |Xi_mn> = (1 (x) R_x(n) R_p(m)) |Xi_00>.
Operator shift_x(Dim dim, long long n);
/// Momentum kick, diagonal in the x-basis with entries exp(2 pi i m l / N).
Operator shift_p(Dim dim, long long m);
/// Position operator X = sum_k k |x_k><x_k|.
Operator position_operator(Dim dim);
/// Momentum operator P = sum_l l |p_l><p_l|.
Operator momentum_operator(Dim dim);

/// Maximally entangled |Xi_mn> = N^{-1/2} sum_k exp(2 pi i m k / N) |x_k>|x_{k-n}>.
PureState entangled_state(Dim dim, std::size_t m, std::size_t n);

/// Reduced state on the registers in `keep` (returned in ascending register order).
DensityOperator partial_trace(const PureState &state, std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator &rho, std::span<const std::size_t> keep);

/// <psi|rho|psi> clipped to [0, 1]. `psi` must live on the same registers as `rho`.
double fidelity(const DensityOperator &rho, const PureState &psi);

/// Matrix transpose in the x-basis.
DensityOperator transpose_op(const DensityOperator &rho);

/// Partial transpose of a two-register operator on its second register.
CMatrix partial_transpose_second(const DensityOperator &rho);

/// Sum of |negative eigenvalues| of the partial transpose of a two-register state.
double negativity(const DensityOperator &rho);

/// Haar-random pure state (normalized complex Gaussian vector).
PureState random_state(std::span<const Dim> dims, std::mt19937_64 &rng);
PureState random_state(Dim dim, std::mt19937_64 &rng);

/// 1 - |<a|b>|: zero iff the states agree up to a global phase.
double phase_insensitive_distance(const PureState &a, const PureState &b);

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

}  // namespace qid

#endif
