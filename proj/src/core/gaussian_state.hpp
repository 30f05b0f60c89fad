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

// Gaussian states of bosonic modes, described by first and second moments.
//
// Conventions: hbar = 1, vacuum quadrature variance 1/2, quadratures interleaved as
// (x1, p1, x2, p2, ...). A coherent state |z> has mean (sqrt(2) Re z, sqrt(2) Im z).

#ifndef QID_CORE_GAUSSIAN_STATE_HPP
#define QID_CORE_GAUSSIAN_STATE_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>

namespace qid {

/// Tolerance on the uncertainty relation cov + iJ/2 >= 0.
inline constexpr double kUncertaintyTol = 1e-9;

class GaussianState {
   public:
    /// Throws unless `cov` is symmetric (1e-12) and physical (cov + iJ/2 >= -1e-9).
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    static GaussianState vacuum(std::size_t modes = 1);
    static GaussianState coherent(std::complex<double> z);

    std::size_t modes() const noexcept {
        return static_cast<std::size_t>(mean_.size() / 2);
    }
    const Eigen::VectorXd &mean() const noexcept {
        return mean_;
    }
    const Eigen::MatrixXd &cov() const noexcept {
        return cov_;
    }

   private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// Block-diagonal symplectic form, [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(std::size_t modes);

/// Smallest eigenvalue of the Hermitian matrix cov + iJ/2.
double uncertainty_margin(const Eigen::MatrixXd &cov);

/// Regularized position eigenstate: cov diag(e^{-2 xi}/2, e^{2 xi}/2).
GaussianState regularized_x0(double xi);
/// Regularized momentum eigenstate: cov diag(e^{2 xi}/2, e^{-2 xi}/2).
GaussianState regularized_p0(double xi);
/// Two-mode squeezed vacuum correlating x1 with x2 and p1 with -p2.
GaussianState regularized_epr(double xi);
/// One mode of the two-mode squeezed vacuum: thermal with nbar = sinh^2 xi.
GaussianState thermal_reduction(double xi);

double mean_excitation(double xi);

/// Marginal on the listed modes, in the given order.
GaussianState reduce(const GaussianState &state, std::span<const std::size_t> keep);
/// Product state a (x) b.
GaussianState tensor(const GaussianState &a, const GaussianState &b);
/// r -> S r.
GaussianState evolve(const GaussianState &state, const Eigen::MatrixXd &s);
/// Momentum reflection p -> -p on every mode; the x-basis transpose of the state.
GaussianState transpose(const GaussianState &state);

/// Pure state with real wavefunction proportional to exp(-v^T Q v / 2), v the positions
/// of all modes. Position covariance Q^{-1}/2, momentum covariance Q/2.
GaussianState from_real_wavefunction(const Eigen::MatrixXd &quad);

/// 6x6 map taking input quadratures of modes (1, 2, 3) to distributor outputs.
/// Positions transform by A = [[1, -1, 1], [1, 1, 0], [1, 0, 1]], momenta by A^{-T}.
Eigen::MatrixXd qid_symplectic();

/// Program with wavefunction exp(-(x2^2 + (x3 - x2)^2) / 2), optimized for coherent inputs.
GaussianState coherent_cloner_program();

/// Runs a coherent input through the distributor with the coherent-cloner program and
/// returns the three single-mode outputs.
std::array<GaussianState, 3> coherent_cloner(const GaussianState &input);

/// Overlap fidelity of two single-mode Gaussian states.
double gaussian_fidelity(const GaussianState &a, const GaussianState &b);

}  // namespace qid

#endif
