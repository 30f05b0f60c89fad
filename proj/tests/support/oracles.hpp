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

// Slow, independent reference implementations used only by tests.

#ifndef QID_TESTS_SUPPORT_ORACLES_HPP
#define QID_TESTS_SUPPORT_ORACLES_HPP

#include <cstddef>
#include <vector>

#include "qudit_core.hpp"

namespace qid::oracle {

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Embeds a two-register gate (first register control, second target) into `registers`
/// equal registers of dimension n, acting on (control, target).
CMatrix embed_pair(const CMatrix &gate, std::size_t n, std::size_t registers, std::size_t control,
                   std::size_t target);

/// Dense D31 D21^dagger D13 D12 built from explicit matrices, N^3 x N^3.
CMatrix dense_qid(std::size_t n);

/// rho_keep by explicit digit decoding of every (row, column, traced) label triple.
CMatrix brute_partial_trace(const std::vector<Complex> &amps, const std::vector<std::size_t> &dims,
                            const std::vector<std::size_t> &keep);

/// Amplitude vector as an Eigen column.
Eigen::VectorXcd column(const PureState &psi);

/// |<a|b>| maximized over global phase, for raw vectors.
double phase_free_overlap(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

}  // namespace qid::oracle

#endif
