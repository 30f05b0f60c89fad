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

// The quantum information distributor: four conditional shifts acting on an input
// register (1) and a two-register program (2, 3).
//
// Registers are always ordered (1, 2, 3) with register-major flat indexing, so the
// label (n, m, k) lives at n*N^2 + m*N + k.

#ifndef QID_CORE_QID_NETWORK_HPP
#define QID_CORE_QID_NETWORK_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qudit_core.hpp"

namespace qid {

/// Conditional adder D_ab: |k>|m> -> |k>|(k + m) mod N> (control is the first register).
Operator conditional_add(Dim dim);
/// Inverse adder D_ab^dagger: |k>|m> -> |k>|(m - k) mod N>.
Operator conditional_sub(Dim dim);

/// Phase-free permutation of the tripartite x-basis labels.
class PermutationGate {
   public:
    /// `map[i]` is the flat index that basis label i is sent to. Throws unless bijective.
    PermutationGate(Dim dim, std::vector<std::uint32_t> map);

    Dim dim() const noexcept {
        return dim_;
    }
    std::span<const std::uint32_t> map() const noexcept {
        return map_;
    }
    /// Permutes the amplitude vector of a three-register state.
    PureState apply(const PureState &state) const;

   private:
    Dim dim_;
    std::vector<std::uint32_t> map_;
};

/// U = D_31 D_21^dagger D_13 D_12 as the label map
/// (n, m, k) -> (n - m + k, m + n, k + n) mod N. Never materializes the N^3 x N^3 matrix.
PermutationGate build_qid_unitary(Dim dim);

/// Two-register program driving the distributor.
struct ProgramState {
    Dim dim;
    double alpha;
    double beta;
    PureState ket;
};

/// Nonnegative root beta of beta^2 + (2 alpha / N) beta + alpha^2 - 1 = 0, alpha in [0, 1].
double solve_beta(Dim dim, double alpha);

/// Residual alpha^2 + beta^2 + 2 alpha beta / N - 1.
double program_norm_residual(Dim dim, double alpha, double beta);

/// alpha |Xi_00> + beta |x_0>|p_0>; throws kNormalization if the pair is off the
/// normalization curve by more than kChainTol.
ProgramState program_state(Dim dim, double alpha, double beta);

/// Symmetric cloner weight alpha = beta = sqrt(N / (2 (N + 1))).
double cloner_alpha(Dim dim);

struct DistributorOutput {
    PureState joint;
    std::array<DensityOperator, 3> reduced;
};

/// Runs U_123 (psi (x) program) and reduces onto each output register. Accepts any
/// normalized two-register program ket.
DistributorOutput distribute(const PureState &psi, const PureState &program);
DistributorOutput distribute(const PureState &psi, const ProgramState &program);

/// Closed-form reduced outputs for the alpha/beta program family:
///   rho1 = (a^2 + 2ab/N) P + (b^2/N) 1
///   rho2 = (b^2 + 2ab/N) P + (a^2/N) 1
///   rho3 = (2ab/N) P^T + ((N - 2ab)/N^2) 1,      P = |psi><psi|.
std::array<DensityOperator, 3> predicted_outputs(Dim dim, double alpha, double beta, const PureState &psi);

/// Cloner scaling factor s = (N + 2) / (2 (N + 1)).
double clone_scaling(Dim dim);
/// Cloner fidelity s + (1 - s)/N = (N + 3) / (2 (N + 1)).
double clone_fidelity(Dim dim);

struct CloneMeasurement {
    double scaling;   // s recovered from <psi|rho_1|psi> = s + (1 - s)/N
    double fidelity;  // <psi|rho_1|psi>
    double fidelity_second;
    double clone_mismatch;  // max |rho_1 - rho_2|
};

/// Simulates the symmetric cloner on `psi`.
CloneMeasurement measure_clone(const PureState &psi);

struct CovarianceReport {
    double max_deviation;   // max elementwise |rho_j(shifted input) - D_j rho_j D_j^dagger|
    double fidelity_delta;  // max_j=1,2 |F_j(shifted) - F_j(original)|
};

/// Compares distributing R_x(n) R_p(m) psi against shifting the original outputs:
/// outputs 1 and 2 by R_x(n) R_p(m), output 3 by R_x(n) R_p(-m).
CovarianceReport covariance_check(const PureState &psi, const PureState &program, long long n, long long m);

/// Coin-flip distributor: each output gets the input with probability m_in/m_out,
/// otherwise a random state with mean fidelity `overlap`.
double classical_distributor_fidelity(unsigned m_in, unsigned m_out, double overlap);

}  // namespace qid

#endif
