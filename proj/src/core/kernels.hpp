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

// Integral kernels of the continuous-variable distributor.
//
// Wavefunctions follow <x|y> = sqrt(2 pi) delta(x - y): a one-mode wavefunction phi is
// normalized as (1/sqrt(2 pi)) int |phi|^2 dx = 1, a two-mode one with 1/(2 pi).
//
// After tracing out two outputs, one output mode is left in
//   rho = (2 pi)^{-3/2} int d eta dx dx' psi(x) psi*(x') K(x - x'; eta) |x + eta><x' + eta|
// so the kernel K(xbar; eta) fully describes the channel. For the first output
//   K(xbar; eta) = 1/(2 sqrt(2 pi)) int dchi mu(u, v) mu(u + xbar, v + xbar),
//   u = (chi - eta)/2, v = (chi + eta)/2,
// and for the second output
//   K(xbar; eta) = 1/sqrt(2 pi) int dt mu(eta, t) mu(eta, t + xbar),
// where mu(x2, x3) is the program wavefunction.

#ifndef QID_CORE_KERNELS_HPP
#define QID_CORE_KERNELS_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "gaussian_state.hpp"

namespace qid {

/// Kernel pieces of the alpha |Xi_00(xi)> + beta |x0(xi)>|p0(xi)> program:
/// K = alpha^2 K1 + beta^2 K2 + alpha beta K3.
enum class KernelPart { kEntangled = 1, kProduct = 2, kCross = 3 };

enum class OutputMode { kFirst = 1, kSecond = 2 };

/// coeff * exp(-v^T quad v / 2) with v = (x2, x3).
struct GaussianTerm {
    double coeff;
    Eigen::Matrix2d quad;
};

/// coeff * exp(-(a xbar^2 + 2 b xbar eta + d eta^2) / 2).
struct KernelTerm {
    double coeff;
    double a;
    double b;
    double d;
};

// Program wavefunctions, directly from their defining closed forms.
double phi_x0(double xi, double x);
double phi_p0(double xi, double x);
double phi_entangled(double xi, double x2, double x3);

// The same wavefunctions as Gaussian terms.
GaussianTerm entangled_term(double xi);
GaussianTerm product_term(double xi);
/// sqrt(2) exp(-(x2^2 + (x3 - x2)^2) / 2).
GaussianTerm coherent_program_term();

/// Gaussian-integrates the product of two program terms into kernel form.
KernelTerm reduce_pair(const GaussianTerm &first, const GaussianTerm &second, OutputMode mode);
/// Kernel of an arbitrary Gaussian-sum program: sum over ordered pairs of terms.
std::vector<KernelTerm> program_kernel(std::span<const GaussianTerm> program, OutputMode mode);

/// Unweighted terms of K1, K2 or K3.
std::vector<KernelTerm> kernel_part_terms(KernelPart part, double xi, OutputMode mode = OutputMode::kFirst);
/// alpha^2 K1 + beta^2 K2 + alpha beta K3 as one term list.
std::vector<KernelTerm> weighted_kernel(double xi, double alpha, double beta, OutputMode mode = OutputMode::kFirst);

double evaluate(std::span<const KernelTerm> terms, double xbar, double eta);

/// T(kx, kp) = (1/sqrt(2 pi)) int d eta K(kp; eta) exp(-i kx eta): the Fourier
/// multiplier of the output-Wigner convolution. T(0, 0) is the kernel norm.
std::complex<double> transfer(std::span<const KernelTerm> terms, double kx, double kp);

/// (1/sqrt(2 pi)) int K(0; eta) d eta, exact for Gaussian terms.
double kernel_norm(std::span<const KernelTerm> terms);

/// Closed forms of K1, K2, K3 for the first output. K3 carries xbar * eta in the
/// argument of its hyperbolic cosine.
double kernel_eval(KernelPart part, double xi, double xbar, double eta);

/// Adaptive Gauss-Kronrod quadrature of the kernel integral over the program
/// wavefunctions phi_x0, phi_p0, phi_entangled; the reference path.
double kernel_quadrature(KernelPart part, double xi, double xbar, double eta, OutputMode mode = OutputMode::kFirst);
/// (1/sqrt(2 pi)) int K(0; eta) d eta with both integrals done by quadrature.
double kernel_norm_quadrature(KernelPart part, double xi, OutputMode mode = OutputMode::kFirst);
/// 1 for K1 and K2, 4 / sqrt(4 + 2 sinh^2 2xi) for K3.
double kernel_norm_closed(KernelPart part, double xi);

/// alpha^2 + beta^2 + 4 alpha beta / sqrt(4 + 2 sinh^2 2xi) - 1.
double cv_norm_constraint(double alpha, double beta, double xi);
/// Nonnegative beta zeroing cv_norm_constraint, for alpha in [0, 1].
double cv_solve_beta(double xi, double alpha);
/// alpha = beta on the normalization curve.
double cv_symmetric_weight(double xi);

/// <psi| rho_out |psi> for a pure single-mode Gaussian input sent through `terms`.
double analytic_fidelity(std::span<const KernelTerm> terms, const GaussianState &input);

}  // namespace qid

#endif
