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

#include "oracles.hpp"

#include <cmath>

namespace qid::oracle {

namespace {

std::vector<std::size_t> digits(std::size_t flat, const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t r = dims.size(); r-- > 0;) {
        out[r] = flat % dims[r];
        flat /= dims[r];
    }
    return out;
}

std::size_t flatten(const std::vector<std::size_t> &label, const std::vector<std::size_t> &dims) {
    std::size_t flat = 0;
    for (std::size_t r = 0; r < dims.size(); ++r) {
        flat = flat * dims[r] + label[r];
    }
    return flat;
}

}  // namespace

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix embed_pair(const CMatrix &gate, std::size_t n, std::size_t registers, std::size_t control,
                   std::size_t target) {
    std::vector<std::size_t> dims(registers, n);
    std::size_t total = 1;
    for (std::size_t r = 0; r < registers; ++r) {
        total *= n;
    }
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    for (std::size_t col = 0; col < total; ++col) {
        auto in = digits(col, dims);
        std::size_t gate_col = in[control] * n + in[target];
        for (std::size_t gate_row = 0; gate_row < n * n; ++gate_row) {
            Complex v = gate(static_cast<Eigen::Index>(gate_row), static_cast<Eigen::Index>(gate_col));
            if (v == Complex(0.0)) {
                continue;
            }
            auto outl = in;
            outl[control] = gate_row / n;
            outl[target] = gate_row % n;
            out(static_cast<Eigen::Index>(flatten(outl, dims)), static_cast<Eigen::Index>(col)) += v;
        }
    }
    return out;
}

CMatrix dense_qid(std::size_t n) {
    // Explicit conditional shifts written from their action on basis kets.
    CMatrix add = CMatrix::Zero(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n * n));
    CMatrix sub = add;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
            add(static_cast<Eigen::Index>(k * n + (k + m) % n), static_cast<Eigen::Index>(k * n + m)) = 1.0;
            sub(static_cast<Eigen::Index>(k * n + (m + n - k) % n), static_cast<Eigen::Index>(k * n + m)) = 1.0;
        }
    }
    CMatrix d12 = embed_pair(add, n, 3, 0, 1);
    CMatrix d13 = embed_pair(add, n, 3, 0, 2);
    CMatrix d21_dag = embed_pair(sub, n, 3, 1, 0);
    CMatrix d31 = embed_pair(add, n, 3, 2, 0);
    return d31 * d21_dag * d13 * d12;
}

CMatrix brute_partial_trace(const std::vector<Complex> &amps, const std::vector<std::size_t> &dims,
                            const std::vector<std::size_t> &keep) {
    std::size_t kept = 1;
    std::vector<std::size_t> kept_dims;
    for (std::size_t r : keep) {
        kept *= dims[r];
        kept_dims.push_back(dims[r]);
    }
    CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(kept));
    for (std::size_t a = 0; a < amps.size(); ++a) {
        auto la = digits(a, dims);
        for (std::size_t b = 0; b < amps.size(); ++b) {
            auto lb = digits(b, dims);
            bool same_rest = true;
            for (std::size_t r = 0; r < dims.size(); ++r) {
                bool is_kept = false;
                for (std::size_t k : keep) {
                    is_kept = is_kept || k == r;
                }
                if (!is_kept && la[r] != lb[r]) {
                    same_rest = false;
                }
            }
            if (!same_rest) {
                continue;
            }
            std::vector<std::size_t> ka, kb;
            for (std::size_t k : keep) {
                ka.push_back(la[k]);
                kb.push_back(lb[k]);
            }
            rho(static_cast<Eigen::Index>(flatten(ka, kept_dims)), static_cast<Eigen::Index>(flatten(kb, kept_dims))) +=
                amps[a] * std::conj(amps[b]);
        }
    }
    return rho;
}

Eigen::VectorXcd column(const PureState &psi) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.size()));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = psi[i];
    }
    return v;
}

double phase_free_overlap(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    return std::abs(a.dot(b));
}

}  // namespace qid::oracle
