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

#include "kernels.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace qid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuadTol = 1e-11;
// Looser tolerance for an outer integral whose integrand is itself a quadrature.
constexpr double kOuterQuadTol = 1e-9;
constexpr unsigned kQuadDepth = 20;

void require_squeezing(double xi) {
    require(std::isfinite(xi) && xi >= 0.0, ErrorCode::kOutOfRange, "squeezing parameter must be finite and >= 0");
}

// Integral over the real line, split at `breaks` so that narrow peaks sitting at a
// breakpoint are resolved by the adaptive rule.
double integrate_line(const auto &f, std::vector<double> breaks, double tol = kQuadTol) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::sort(breaks.begin(), breaks.end());
    // Slivers between nearly equal breakpoints stall the relative error test.
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-6; }),
                 breaks.end());
    double total = Rule::integrate(f, -inf, breaks.front(), kQuadDepth, tol);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        total += Rule::integrate(f, breaks[i], breaks[i + 1], kQuadDepth, tol);
    }
    return total + Rule::integrate(f, breaks.back(), inf, kQuadDepth, tol);
}

double sinh_sq_2xi(double xi) {
    const double s = std::sinh(2.0 * xi);
    return s * s;
}

// Linear maps from w = (integration variable, xbar, eta) to the arguments of the two
// program wavefunctions in the kernel integral.
struct PairMaps {
    Eigen::Matrix<double, 2, 3> first;
    Eigen::Matrix<double, 2, 3> second;
    double prefactor;
};

PairMaps maps_for(OutputMode mode) {
    PairMaps m;
    if (mode == OutputMode::kFirst) {
        m.first << 0.5, 0.0, -0.5, 0.5, 0.0, 0.5;
        m.second << 0.5, 1.0, -0.5, 0.5, 1.0, 0.5;
        m.prefactor = 1.0 / (2.0 * std::sqrt(kTwoPi));
    } else {
        m.first << 0.0, 0.0, 1.0, 1.0, 0.0, 0.0;
        m.second << 0.0, 0.0, 1.0, 1.0, 1.0, 0.0;
        m.prefactor = 1.0 / std::sqrt(kTwoPi);
    }
    return m;
}

double product_wavefunction(double xi, double x2, double x3) {
    return phi_x0(xi, x2) * phi_p0(xi, x3);
}

// Integrand of the kernel integral at integration variable w0.
double kernel_integrand(KernelPart part, double xi, OutputMode mode, double w0, double xbar, double eta) {
    const PairMaps m = maps_for(mode);
    const Eigen::Vector3d w(w0, xbar, eta);
    const Eigen::Vector2d u = m.first * w;
    const Eigen::Vector2d v = m.second * w;
    double value = 0.0;
    switch (part) {
        case KernelPart::kEntangled:
            value = phi_entangled(xi, u(0), u(1)) * phi_entangled(xi, v(0), v(1));
            break;
        case KernelPart::kProduct:
            value = product_wavefunction(xi, u(0), u(1)) * product_wavefunction(xi, v(0), v(1));
            break;
        case KernelPart::kCross:
            value = phi_entangled(xi, u(0), u(1)) * product_wavefunction(xi, v(0), v(1)) +
                    product_wavefunction(xi, u(0), u(1)) * phi_entangled(xi, v(0), v(1));
            break;
    }
    // Far tails underflow toward denormals, where the relative error test never settles.
    return std::abs(value) < 1e-250 ? 0.0 : m.prefactor * value;
}

}  // namespace

double phi_x0(double xi, double x) {
    return std::pow(2.0, 0.25) * std::exp(xi / 2.0) * std::exp(-std::exp(2.0 * xi) * x * x / 2.0);
}

double phi_p0(double xi, double x) {
    return std::pow(2.0, 0.25) * std::exp(-xi / 2.0) * std::exp(-std::exp(-2.0 * xi) * x * x / 2.0);
}

double phi_entangled(double xi, double x2, double x3) {
    const double minus = x2 - x3;
    const double plus = x2 + x3;
    return std::sqrt(2.0) * std::exp(-std::exp(2.0 * xi) / 4.0 * minus * minus - std::exp(-2.0 * xi) / 4.0 * plus * plus);
}

GaussianTerm entangled_term(double xi) {
    require_squeezing(xi);
    const double big = std::exp(2.0 * xi) / 2.0;
    const double small = std::exp(-2.0 * xi) / 2.0;
    Eigen::Matrix2d q;
    q << big + small, small - big, small - big, big + small;
    return GaussianTerm{std::sqrt(2.0), q};
}

GaussianTerm product_term(double xi) {
    require_squeezing(xi);
    Eigen::Matrix2d q;
    q << std::exp(2.0 * xi), 0.0, 0.0, std::exp(-2.0 * xi);
    return GaussianTerm{std::sqrt(2.0), q};
}

GaussianTerm coherent_program_term() {
    Eigen::Matrix2d q;
    q << 2.0, -1.0, -1.0, 1.0;
    return GaussianTerm{std::sqrt(2.0), q};
}

KernelTerm reduce_pair(const GaussianTerm &first, const GaussianTerm &second, OutputMode mode) {
    const PairMaps m = maps_for(mode);
    const Eigen::Matrix3d form =
        m.first.transpose() * first.quad * m.first + m.second.transpose() * second.quad * m.second;
    const double pivot = form(0, 0);
    require(pivot > 0.0, ErrorCode::kInvalidArgument, "kernel integral diverges for this program");
    // Schur complement after integrating out w0.
    const double a = form(1, 1) - form(0, 1) * form(0, 1) / pivot;
    const double b = form(1, 2) - form(0, 1) * form(0, 2) / pivot;
    const double d = form(2, 2) - form(0, 2) * form(0, 2) / pivot;
    const double coeff = m.prefactor * first.coeff * second.coeff * std::sqrt(kTwoPi / pivot);
    return KernelTerm{coeff, a, b, d};
}

std::vector<KernelTerm> program_kernel(std::span<const GaussianTerm> program, OutputMode mode) {
    std::vector<KernelTerm> out;
    out.reserve(program.size() * program.size());
    for (const auto &first : program) {
        for (const auto &second : program) {
            out.push_back(reduce_pair(first, second, mode));
        }
    }
    return out;
}

std::vector<KernelTerm> kernel_part_terms(KernelPart part, double xi, OutputMode mode) {
    const GaussianTerm ent = entangled_term(xi);
    const GaussianTerm prod = product_term(xi);
    switch (part) {
        case KernelPart::kEntangled:
            return {reduce_pair(ent, ent, mode)};
        case KernelPart::kProduct:
            return {reduce_pair(prod, prod, mode)};
        case KernelPart::kCross:
            return {reduce_pair(ent, prod, mode), reduce_pair(prod, ent, mode)};
    }
    fail(ErrorCode::kInvalidArgument, "unknown kernel part");
}

std::vector<KernelTerm> weighted_kernel(double xi, double alpha, double beta, OutputMode mode) {
    std::vector<KernelTerm> out;
    const std::pair<KernelPart, double> parts[] = {
        {KernelPart::kEntangled, alpha * alpha}, {KernelPart::kProduct, beta * beta}, {KernelPart::kCross, alpha * beta}};
    for (const auto &[part, weight] : parts) {
        for (KernelTerm t : kernel_part_terms(part, xi, mode)) {
            t.coeff *= weight;
            out.push_back(t);
        }
    }
    return out;
}

double evaluate(std::span<const KernelTerm> terms, double xbar, double eta) {
    double total = 0.0;
    for (const auto &t : terms) {
        total += t.coeff * std::exp(-0.5 * (t.a * xbar * xbar + 2.0 * t.b * xbar * eta + t.d * eta * eta));
    }
    return total;
}

std::complex<double> transfer(std::span<const KernelTerm> terms, double kx, double kp) {
    std::complex<double> total = 0.0;
    for (const auto &t : terms) {
        const double quad = (t.a - t.b * t.b / t.d) * kp * kp + kx * kx / t.d;
        const double phase = t.b * kx * kp / t.d;
        total += t.coeff / std::sqrt(t.d) * std::exp(std::complex<double>(-0.5 * quad, phase));
    }
    return total;
}

double kernel_norm(std::span<const KernelTerm> terms) {
    return transfer(terms, 0.0, 0.0).real();
}

double kernel_eval(KernelPart part, double xi, double xbar, double eta) {
    require_squeezing(xi);
    const double e2 = std::exp(2.0 * xi);
    const double em2 = std::exp(-2.0 * xi);
    switch (part) {
        case KernelPart::kEntangled:
            return std::exp(xi) * std::exp(-em2 / 2.0 * xbar * xbar - e2 / 2.0 * eta * eta);
        case KernelPart::kProduct: {
            const double c = std::cosh(2.0 * xi);
            return std::exp(-c / 2.0 * xbar * xbar - eta * eta / (2.0 * c)) / std::sqrt(c);
        }
        case KernelPart::kCross: {
            const double denom = 3.0 * em2 + e2;
            const double em4 = std::exp(-4.0 * xi);
            const double e4 = std::exp(4.0 * xi);
            const double gauss =
                std::exp(-(em4 * (1.0 + e4) * xbar * xbar + (2.0 + sinh_sq_2xi(xi)) * eta * eta) / denom);
            const double odd = em4 * (e4 - 1.0) * xbar * eta / denom;
            return 2.0 / std::sqrt(denom) * gauss * 2.0 * std::cosh(odd);
        }
    }
    fail(ErrorCode::kInvalidArgument, "unknown kernel part");
}

double kernel_quadrature(KernelPart part, double xi, double xbar, double eta, OutputMode mode) {
    require_squeezing(xi);
    // Break the line at the w0-maximum of every wavefunction factor: the product
    // factors peak where each argument vanishes, the entangled one where its
    // squeezed quadratic form in w0 is smallest.
    const PairMaps m = maps_for(mode);
    const double big = std::exp(2.0 * xi), small = std::exp(-2.0 * xi);
    std::vector<double> breaks;
    for (const Eigen::Matrix<double, 2, 3> *map : {&m.first, &m.second}) {
        const Eigen::Vector2d slope = map->col(0);
        const Eigen::Vector2d offset = map->col(1) * xbar + map->col(2) * eta;
        for (int r = 0; r < 2; ++r) {
            if (slope(r) != 0.0) {
                breaks.push_back(-offset(r) / slope(r));
            }
        }
        const double ds = slope(0) - slope(1), ss = slope(0) + slope(1);
        const double d_o = offset(0) - offset(1), s_o = offset(0) + offset(1);
        const double curvature = big * ds * ds + small * ss * ss;
        if (curvature > 0.0) {
            breaks.push_back(-(big * ds * d_o + small * ss * s_o) / curvature);
        }
    }
    return integrate_line([&](double w0) { return kernel_integrand(part, xi, mode, w0, xbar, eta); },
                          std::move(breaks));
}

double kernel_norm_quadrature(KernelPart part, double xi, OutputMode mode) {
    require_squeezing(xi);
    const double total = integrate_line([&](double eta) { return kernel_quadrature(part, xi, 0.0, eta, mode); }, {0.0},
                                       kOuterQuadTol);
    return total / std::sqrt(kTwoPi);
}

double kernel_norm_closed(KernelPart part, double xi) {
    require_squeezing(xi);
    if (part == KernelPart::kCross) {
        return 4.0 / std::sqrt(4.0 + 2.0 * sinh_sq_2xi(xi));
    }
    return 1.0;
}

double cv_norm_constraint(double alpha, double beta, double xi) {
    return alpha * alpha + beta * beta + alpha * beta * kernel_norm_closed(KernelPart::kCross, xi) - 1.0;
}

double cv_solve_beta(double xi, double alpha) {
    require(alpha >= 0.0 && alpha <= 1.0, ErrorCode::kOutOfRange, "cv_solve_beta: alpha must lie in [0, 1]");
    const double half_b = alpha * kernel_norm_closed(KernelPart::kCross, xi) / 2.0;
    const double c = alpha * alpha - 1.0;
    const double root = std::sqrt(std::max(half_b * half_b - c, 0.0));
    const double beta = (half_b > 0 && root > 0) ? -c / (half_b + root) : root - half_b;
    return std::max(beta, 0.0);
}

double cv_symmetric_weight(double xi) {
    return 1.0 / std::sqrt(2.0 + kernel_norm_closed(KernelPart::kCross, xi));
}

double analytic_fidelity(std::span<const KernelTerm> terms, const GaussianState &input) {
    require(input.modes() == 1, ErrorCode::kInvalidArgument, "analytic_fidelity: single-mode input required");
    require(std::abs(input.cov().determinant() - 0.25) <= 1e-9, ErrorCode::kInvalidArgument,
            "analytic_fidelity: input must be pure");
    using C = std::complex<double>;
    std::complex<double> total = 0.0;
    for (const auto &t : terms) {
        const C sxx = 1.0 / t.d;
        const C sxp = C(0.0, -t.b / t.d);
        const C spp = t.a - t.b * t.b / t.d;
        const C m00 = 2.0 * input.cov()(0, 0) + sxx;
        const C m01 = 2.0 * input.cov()(0, 1) + sxp;
        const C m11 = 2.0 * input.cov()(1, 1) + spp;
        total += t.coeff / std::sqrt(t.d) / std::sqrt(m00 * m11 - m01 * m01);
    }
    return total.real();
}

}  // namespace qid
