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

#include <gtest/gtest.h>

#include <cmath>

#include "errors.hpp"
#include "oracles.hpp"

using namespace qid;

namespace {

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode{};
}

std::size_t label(std::size_t n, std::size_t a, std::size_t b, std::size_t c) {
    return (a * n + b) * n + c;
}

// |psi>_{reg} |Xi_00>_{other two}, written out amplitude by amplitude.
std::vector<Complex> psi_with_pair(const PureState &psi, std::size_t reg) {
    const std::size_t n = psi.size();
    const double r = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Complex> out(n * n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t idx = reg == 0 ? label(n, j, k, k) : reg == 1 ? label(n, k, j, k) : label(n, k, k, j);
            out[idx] += r * psi[j];
        }
    }
    return out;
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace

TEST(conditional_add, qutrit_example) {
    Dim d(3);
    auto out = PureState::basis(d, 2).tensor(PureState::basis(d, 2)).apply(conditional_add(d), std::vector<std::size_t>{0, 1});
    EXPECT_NEAR(std::abs(out[2 * 3 + 1]), 1.0, kExactTol);
}

TEST(conditional_add, qubit_add_equals_sub) {
    Dim d(2);
    EXPECT_LT(max_abs_diff(conditional_add(d).matrix(), conditional_sub(d).matrix()), kExactTol);
}

TEST(conditional_add, sub_inverts_add) {
    for (std::size_t n = 2; n <= 7; ++n) {
        Dim d(n);
        auto add = conditional_add(d);
        auto sub = conditional_sub(d);
        EXPECT_TRUE(add.is_unitary());
        EXPECT_TRUE(sub.is_unitary());
        EXPECT_LT(max_abs_diff((sub * add).matrix(), CMatrix::Identity(add.matrix().rows(), add.matrix().cols())),
                  kExactTol);
        EXPECT_LT(max_abs_diff(sub.matrix(), add.adjoint().matrix()), kExactTol);
    }
}

TEST(build_qid_unitary, label_examples) {
    auto gate = build_qid_unitary(Dim(3));
    EXPECT_EQ(gate.map()[label(3, 1, 0, 2)], label(3, 0, 1, 0));
    for (std::size_t n = 2; n <= 6; ++n) {
        auto g = build_qid_unitary(Dim(n));
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t k = 0; k < n; ++k) {
                EXPECT_EQ(g.map()[label(n, 0, m, k)], label(n, (k + n - m) % n, m, k));
            }
        }
    }
}

TEST(build_qid_unitary, equals_dense_gate_composition) {
    std::mt19937_64 rng(1234);
    for (std::size_t n = 2; n <= 6; ++n) {
        Dim d(n);
        CMatrix dense = oracle::dense_qid(n);
        auto gate = build_qid_unitary(d);
        // Column by column: the dense matrix is exactly the permutation.
        for (std::size_t i = 0; i < n * n * n; ++i) {
            EXPECT_EQ(dense(static_cast<Eigen::Index>(gate.map()[i]), static_cast<Eigen::Index>(i)), Complex(1.0));
        }
        std::vector<Dim> dims = {d, d, d};
        for (int trial = 0; trial < 20; ++trial) {
            auto psi = random_state(dims, rng);
            Eigen::VectorXcd want = dense * oracle::column(psi);
            EXPECT_LT((oracle::column(gate.apply(psi)) - want).cwiseAbs().maxCoeff(), kExactTol);
        }
    }
}

TEST(build_qid_unitary, gates_applied_one_by_one) {
    // Same composition via the library's two-register gates on a state vector.
    std::mt19937_64 rng(77);
    for (std::size_t n = 2; n <= 5; ++n) {
        Dim d(n);
        std::vector<Dim> dims = {d, d, d};
        auto psi = random_state(dims, rng);
        auto add = conditional_add(d);
        auto sub = conditional_sub(d);
        auto s = psi.apply(add, std::vector<std::size_t>{0, 1});
        s = s.apply(add, std::vector<std::size_t>{0, 2});
        s = s.apply(sub, std::vector<std::size_t>{1, 0});
        s = s.apply(add, std::vector<std::size_t>{2, 0});
        EXPECT_LT(max_diff(s.amplitudes(), build_qid_unitary(d).apply(psi).amplitudes()), kExactTol);
    }
}

TEST(build_qid_unitary, capacity_cap) {
    EXPECT_EQ(code_of([] { build_qid_unitary(Dim(kMaxTripartiteDim + 1)); }), ErrorCode::kCapacity);
    EXPECT_NO_THROW(build_qid_unitary(Dim(kMaxTripartiteDim)));
}

TEST(permutation_gate, rejects_non_bijections) {
    EXPECT_EQ(code_of([] { PermutationGate(Dim(2), {0, 1, 2, 3, 4, 5, 6, 6}); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { PermutationGate(Dim(2), {0, 1, 2, 3, 4, 5, 6, 8}); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { PermutationGate(Dim(2), {0, 1, 2}); }), ErrorCode::kDimensionMismatch);
}

TEST(solve_beta, endpoints_and_symmetric_point) {
    for (std::size_t n : {2u, 3u, 10u}) {
        EXPECT_NEAR(solve_beta(Dim(n), 0.0), 1.0, kExactTol);
        EXPECT_NEAR(solve_beta(Dim(n), 1.0), 0.0, kExactTol);
    }
    const double a = std::sqrt(1.0 / 3.0);
    EXPECT_NEAR(solve_beta(Dim(2), a), a, kExactTol);
    EXPECT_NEAR(cloner_alpha(Dim(2)), 0.5773502691896258, kExactTol);
}

TEST(solve_beta, satisfies_normalization) {
    for (std::size_t n = 2; n <= 12; ++n) {
        for (int i = 0; i <= 100; ++i) {
            const double a = i / 100.0;
            const double b = solve_beta(Dim(n), a);
            EXPECT_GE(b, 0.0);
            EXPECT_LT(std::abs(program_norm_residual(Dim(n), a, b)), kExactTol);
        }
    }
    EXPECT_EQ(code_of([] { solve_beta(Dim(2), 1.5); }), ErrorCode::kOutOfRange);
    EXPECT_EQ(code_of([] { solve_beta(Dim(2), -0.1); }), ErrorCode::kOutOfRange);
}

TEST(program_state, endpoints) {
    Dim d(4);
    auto xi = program_state(d, 1.0, 0.0);
    EXPECT_LT(phase_insensitive_distance(xi.ket, entangled_state(d, 0, 0)), kExactTol);
    auto swap = program_state(d, 0.0, 1.0);
    for (std::size_t i = 0; i < 16; ++i) {
        Complex want = i < 4 ? Complex(0.5) : Complex(0.0);
        EXPECT_NEAR(std::abs(swap.ket[i] - want), 0.0, kExactTol);
    }
}

TEST(program_state, cloner_form) {
    for (std::size_t n = 2; n <= 7; ++n) {
        Dim d(n);
        const double a = cloner_alpha(d);
        auto prog = program_state(d, a, a);
        const double pref = 1.0 / std::sqrt(2.0 * (static_cast<double>(n) + 1.0));
        std::vector<Complex> want(n * n);
        for (std::size_t m = 0; m < n; ++m) {
            want[0 * n + m] += pref;
            want[m * n + m] += pref;
        }
        EXPECT_LT(max_diff(prog.ket.amplitudes(), want), kExactTol);
    }
}

TEST(program_state, rejects_off_curve_weights) {
    EXPECT_EQ(code_of([] { program_state(Dim(3), 0.7, 0.7); }), ErrorCode::kNormalization);
}

TEST(distribute, entangled_program_is_transparent) {
    std::mt19937_64 rng(8);
    for (std::size_t n = 2; n <= 6; ++n) {
        Dim d(n);
        auto psi = random_state(d, rng);
        auto out = distribute(psi, program_state(d, 1.0, 0.0));
        auto before = psi.tensor(entangled_state(d, 0, 0));
        EXPECT_NEAR(std::abs(before.inner(out.joint)), 1.0, kExactTol);
        EXPECT_LT(max_diff(before.amplitudes(), out.joint.amplitudes()), kExactTol);
    }
}

TEST(distribute, product_program_swaps_input) {
    std::mt19937_64 rng(9);
    for (std::size_t n = 2; n <= 6; ++n) {
        Dim d(n);
        auto psi = random_state(d, rng);
        auto out = distribute(psi, program_state(d, 0.0, 1.0));
        PureState want({d, d, d}, psi_with_pair(psi, 1));
        EXPECT_NEAR(std::abs(want.inner(out.joint)), 1.0, kExactTol);
    }
}

TEST(distribute, generic_joint_state) {
    std::mt19937_64 rng(10);
    for (std::size_t n : {2u, 3u, 5u}) {
        Dim d(n);
        auto psi = random_state(d, rng);
        const double a = 0.6;
        const double b = solve_beta(d, a);
        auto out = distribute(psi, program_state(d, a, b));
        auto keep1 = psi_with_pair(psi, 0);
        auto keep2 = psi_with_pair(psi, 1);
        std::vector<Complex> want(keep1.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
            want[i] = a * keep1[i] + b * keep2[i];
        }
        EXPECT_LT(max_diff(out.joint.amplitudes(), want), kExactTol);
    }
}

TEST(distribute, reduced_states_match_brute_force) {
    std::mt19937_64 rng(11);
    Dim d(3);
    auto psi = random_state(d, rng);
    auto out = distribute(psi, program_state(d, cloner_alpha(d), cloner_alpha(d)));
    std::vector<Complex> amps(out.joint.amplitudes().begin(), out.joint.amplitudes().end());
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_LT(max_abs_diff(out.reduced[j].matrix(), oracle::brute_partial_trace(amps, {3, 3, 3}, {j})), kExactTol);
        EXPECT_NEAR(std::abs(out.reduced[j].matrix().trace() - Complex(1.0)), 0.0, kExactTol);
    }
}

TEST(distribute, matches_closed_form_outputs) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        Dim d(n);
        for (int pair = 0; pair < 10; ++pair) {
            const double a = unit(rng);
            const double b = solve_beta(d, a);
            auto prog = program_state(d, a, b);
            for (int trial = 0; trial < 50; ++trial) {
                auto psi = random_state(d, rng);
                auto out = distribute(psi, prog);
                auto want = predicted_outputs(d, a, b, psi);
                for (std::size_t j = 0; j < 3; ++j) {
                    ASSERT_LT(max_abs_diff(out.reduced[j].matrix(), want[j].matrix()), 1e-10)
                        << "N=" << n << " a=" << a << " output " << j + 1;
                }
            }
        }
    }
}

TEST(distribute, accepts_general_program_kets) {
    std::mt19937_64 rng(12);
    Dim d(3);
    auto psi = random_state(d, rng);
    auto prog = random_state(std::vector<Dim>{d, d}, rng);
    auto out = distribute(psi, prog);
    EXPECT_NEAR(std::abs(out.joint.inner(out.joint)), 1.0, kExactTol);
    // Negative beta is reachable only through the general-ket path.
    auto xi = program_state(d, 1.0, 0.0).ket;
    const double a = 0.8;
    const double b = -a / 3.0 - std::sqrt(a * a / 9.0 - a * a + 1.0);
    ASSERT_LT(std::abs(program_norm_residual(d, a, b)), kExactTol);
    auto base = program_state(d, 0.0, 1.0).ket;
    std::vector<Complex> amps(9);
    for (std::size_t i = 0; i < 9; ++i) {
        amps[i] = a * xi[i] + b * base[i];
    }
    auto out2 = distribute(psi, PureState({d, d}, amps));
    // The cross term keeps the sign of alpha * beta.
    CMatrix proj = DensityOperator::pure(psi).matrix();
    CMatrix id = CMatrix::Identity(3, 3);
    CMatrix rho1 = (a * a + 2.0 * a * b / 3.0) * proj + (b * b / 3.0) * id;
    CMatrix flipped = (a * a - 2.0 * a * b / 3.0) * proj + (b * b / 3.0) * id;
    EXPECT_LT(max_abs_diff(out2.reduced[0].matrix(), rho1), 1e-10);
    EXPECT_GT(max_abs_diff(out2.reduced[0].matrix(), flipped), 1e-3);
}

TEST(distribute, dimension_errors) {
    Dim d(3);
    auto prog = program_state(d, 1.0, 0.0);
    EXPECT_EQ(code_of([&] { distribute(PureState::basis(Dim(2), 0), prog); }), ErrorCode::kDimensionMismatch);
    EXPECT_EQ(code_of([&] { distribute(prog.ket, prog); }), ErrorCode::kDimensionMismatch);
    EXPECT_EQ(code_of([&] { distribute(PureState::basis(d, 0), PureState::basis(d, 0)); }),
              ErrorCode::kDimensionMismatch);
}

TEST(predicted_outputs, endpoints_and_cloner) {
    std::mt19937_64 rng(13);
    for (std::size_t n = 2; n <= 6; ++n) {
        Dim d(n);
        const double dn = static_cast<double>(n);
        auto psi = random_state(d, rng);
        CMatrix proj = DensityOperator::pure(psi).matrix();
        CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

        auto ends = predicted_outputs(d, 1.0, 0.0, psi);
        EXPECT_LT(max_abs_diff(ends[0].matrix(), proj), kExactTol);
        EXPECT_LT(max_abs_diff(ends[1].matrix(), id / dn), kExactTol);

        const double a = cloner_alpha(d);
        auto clone = predicted_outputs(d, a, a, psi);
        const double s = clone_scaling(d);
        EXPECT_LT(max_abs_diff(clone[0].matrix(), clone[1].matrix()), kExactTol);
        EXPECT_LT(max_abs_diff(clone[0].matrix(), s * proj + (1.0 - s) / dn * id), kExactTol);
        EXPECT_LT(max_abs_diff(clone[2].matrix(), (proj.transpose() + id) / (dn + 1.0)), kExactTol);
    }
}

TEST(clone_fidelity, closed_form_values) {
    EXPECT_NEAR(clone_fidelity(Dim(2)), 5.0 / 6.0, kExactTol);
    EXPECT_NEAR(clone_fidelity(Dim(3)), 0.75, kExactTol);
    EXPECT_NEAR(clone_scaling(Dim(2)), 4.0 / 6.0, kExactTol);
    EXPECT_NEAR(clone_scaling(Dim(3)), 0.625, kExactTol);
    EXPECT_NEAR(clone_fidelity(Dim(64)), 67.0 / 130.0, kExactTol);
    double prev = 1.0;
    for (std::size_t n = 2; n <= 4096; n *= 2) {
        const double f = clone_fidelity(Dim(n));
        EXPECT_LT(f, prev);
        EXPECT_GT(f, 0.5);
        prev = f;
    }
    EXPECT_LT(prev - 0.5, 1e-3);
}

TEST(clone_fidelity, simulation_matches) {
    std::mt19937_64 rng(14);
    for (std::size_t n : {2u, 3u, 4u, 5u, 8u, 16u}) {
        Dim d(n);
        auto m = measure_clone(random_state(d, rng));
        EXPECT_NEAR(m.fidelity, clone_fidelity(d), 1e-10);
        EXPECT_NEAR(m.fidelity_second, clone_fidelity(d), 1e-10);
        EXPECT_NEAR(m.scaling, clone_scaling(d), 1e-10);
        EXPECT_LT(m.clone_mismatch, 1e-10);
    }
}

TEST(clone_fidelity, independent_of_input) {
    std::mt19937_64 rng(15);
    for (std::size_t n : {2u, 3u, 5u}) {
        Dim d(n);
        const double a = 0.35;
        auto prog = program_state(d, a, solve_beta(d, a));
        double lo1 = 2, hi1 = -1, lo2 = 2, hi2 = -1;
        for (int t = 0; t < 50; ++t) {
            auto psi = random_state(d, rng);
            auto out = distribute(psi, prog);
            const double f1 = fidelity(out.reduced[0], psi);
            const double f2 = fidelity(out.reduced[1], psi);
            lo1 = std::min(lo1, f1), hi1 = std::max(hi1, f1);
            lo2 = std::min(lo2, f2), hi2 = std::max(hi2, f2);
        }
        EXPECT_LT(hi1 - lo1, 1e-10);
        EXPECT_LT(hi2 - lo2, 1e-10);
        const double b = prog.beta, dn = static_cast<double>(n);
        EXPECT_NEAR(lo1, 1.0 - b * b * (1.0 - 1.0 / dn), 1e-10);
        EXPECT_NEAR(lo2, 1.0 - a * a * (1.0 - 1.0 / dn), 1e-10);
    }
}

TEST(covariance_check, identity_shift_is_exact) {
    std::mt19937_64 rng(16);
    Dim d(3);
    auto prog = program_state(d, cloner_alpha(d), cloner_alpha(d));
    auto report = covariance_check(random_state(d, rng), prog.ket, 0, 0);
    EXPECT_EQ(report.max_deviation, 0.0);
    EXPECT_EQ(report.fidelity_delta, 0.0);
}

TEST(covariance_check, all_shifts) {
    std::mt19937_64 rng(17);
    for (std::size_t n : {2u, 3u, 5u}) {
        Dim d(n);
        auto prog = program_state(d, 0.45, solve_beta(d, 0.45));
        auto psi = random_state(d, rng);
        for (long long s = 0; s < static_cast<long long>(n); ++s) {
            for (long long m = 0; m < static_cast<long long>(n); ++m) {
                auto report = covariance_check(psi, prog.ket, s, m);
                EXPECT_LT(report.max_deviation, 1e-10);
                EXPECT_LT(report.fidelity_delta, 1e-10);
            }
        }
    }
}

TEST(covariance_check, third_output_needs_opposite_kick) {
    // Shifting output 3 with the same momentum kick as outputs 1, 2 must fail.
    std::mt19937_64 rng(18);
    Dim d(3);
    auto prog = program_state(d, cloner_alpha(d), cloner_alpha(d));
    auto psi = random_state(d, rng);
    auto shift = shift_p(d, 1);
    auto original = distribute(psi, prog);
    auto moved = distribute(psi.apply(shift, 0), prog);
    CMatrix wrong = shift.matrix() * original.reduced[2].matrix() * shift.matrix().adjoint();
    EXPECT_GT(max_abs_diff(moved.reduced[2].matrix(), wrong), 1e-3);
}

TEST(negativity, finite_dimension_exposure) {
    // Reported only; no monotonicity claim is made.
    Dim d(3);
    const double a = cloner_alpha(d);
    auto out = distribute(PureState::basis(d, 0), program_state(d, a, a));
    const std::size_t keep[] = {0, 1};
    const double neg = negativity(partial_trace(out.joint, keep));
    EXPECT_GE(neg, 0.0);
    EXPECT_TRUE(std::isfinite(neg));
}

TEST(classical_distributor_fidelity, routing_values) {
    EXPECT_DOUBLE_EQ(classical_distributor_fidelity(1, 2, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(classical_distributor_fidelity(2, 4, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(classical_distributor_fidelity(3, 3, 0.37), 1.0);
    EXPECT_DOUBLE_EQ(classical_distributor_fidelity(1, 4, 0.5), 0.25 + 0.75 * 0.5);
    EXPECT_EQ(code_of([] { classical_distributor_fidelity(3, 2, 0.0); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { classical_distributor_fidelity(0, 2, 0.0); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { classical_distributor_fidelity(1, 2, 1.5); }), ErrorCode::kOutOfRange);
}
