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

// Sampled Wigner functions and the output-Wigner convolution.
//
// Normalization uses the phase-space measure dx dp / (2 pi): (1/2pi) int W dx dp = 1,
// so a Gaussian state has W(r) = exp(-(r - m)^T V^{-1} (r - m) / 2) / sqrt(det V).
// Grids are half-open lattices x_i = x_min + i dx, dx = (x_max - x_min) / nx; a
// symmetric grid with even nx therefore contains the origin.

#ifndef QID_CORE_WIGNER_HPP
#define QID_CORE_WIGNER_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gaussian_state.hpp"
#include "kernels.hpp"

namespace qid {

/// Squeezing above which grid paths switch to asymptotic forms.
inline constexpr double kXiGridMax = 3.0;
inline constexpr std::size_t kDefaultGridPoints = 512;

struct GridSpec {
    double x_min;
    double x_max;
    double p_min;
    double p_max;
    std::size_t nx;
    std::size_t np;

    double dx() const {
        return (x_max - x_min) / static_cast<double>(nx);
    }
    double dp() const {
        return (p_max - p_min) / static_cast<double>(np);
    }
    double x(std::size_t i) const {
        return x_min + static_cast<double>(i) * dx();
    }
    double p(std::size_t j) const {
        return p_min + static_cast<double>(j) * dp();
    }
    friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

/// [-half_x, half_x) x [-half_p, half_p) with n points per axis.
GridSpec symmetric_grid(double half_x, double half_p, std::size_t n);
/// n x n grid over +-8 sigma_max.
GridSpec default_grid(double sigma_max, std::size_t n = kDefaultGridPoints);

/// Throws kNyquist if either spacing exceeds sigma_min / 2.
void check_resolution(const GridSpec &spec, double sigma_min);

class WignerGrid {
   public:
    /// `values(i, j)` holds W(x_i, p_j).
    WignerGrid(GridSpec spec, Eigen::MatrixXd values);

    const GridSpec &spec() const noexcept {
        return spec_;
    }
    const Eigen::MatrixXd &values() const noexcept {
        return values_;
    }
    /// (1/2pi) sum W dx dp.
    double normalization() const;

   private:
    GridSpec spec_;
    Eigen::MatrixXd values_;
};

WignerGrid sample(const GridSpec &spec, const std::function<double(double, double)> &f);

/// Wigner function of a single-mode Gaussian state at (x, p).
double gaussian_wigner(const GaussianState &state, double x, double p);
/// Renders a single-mode Gaussian after checking the grid resolves its narrowest axis.
WignerGrid render(const GaussianState &state, const GridSpec &spec);

/// Two-mode squeezed vacuum Wigner function, closed form.
double epr_wigner(double xi, double x1, double p1, double x2, double p2);
/// Thermal field (2 / (1 + 2 nbar)) exp(-(x^2 + p^2) / (1 + 2 nbar)), nbar = sinh^2 xi.
double thermal_wigner(double xi, double x, double p);

/// Wigner function of one kernel, W(x', p') = (1/sqrt(2pi)) int dz e^{i p' z} K(z; x').
double kernel_term_wigner(std::span<const KernelTerm> terms, double x, double p);
/// Closed forms for K1 (e^{2xi} exp(-e^{2xi}(x^2 + p^2)/2)) and K2 (thermal of width cosh 2xi).
double kernel_wigner_closed(KernelPart part, double xi, double x, double p);
/// Large-squeezing form of the K3 Wigner function, 2 sqrt(2) exp(-e^{2xi}(x^2 + p^2)/4).
double kernel_wigner_k3_asymptotic(double xi, double x, double p);
/// Grid rendering; K3 by numerical Fourier transform of kernel_eval along xbar.
WignerGrid kernel_wigner(KernelPart part, double xi, const GridSpec &spec);

/// Momentum argument of the input in the convolution: W_in(x - x', p - p') or
/// W_in(x - x', p + p'). The two agree whenever the kernel Wigner function is even in p'.
enum class ConvolutionSign { kMinus, kPlus };

/// W_out = (1/2pi) W^K (*) W_in, applied as a Fourier multiplier on the grid.
WignerGrid convolve(const WignerGrid &input, std::span<const KernelTerm> terms,
                    ConvolutionSign sign = ConvolutionSign::kMinus);

/// Output Wigner function of the chosen mode for program weights (alpha, beta).
/// For the first output with xi > kXiGridMax, uses
///   alpha^2 W_in + beta^2 (W_in (*) W^{K2}) / 2pi + 4 sqrt(2) e^{-2xi} alpha beta W_in.
/// Throws kNormalization off the weight constraint and kGrid if the grid is too small
/// to hold the kernel spread (half-range < 6 sigma).
WignerGrid output_wigner(const WignerGrid &input, double xi, double alpha, double beta,
                         OutputMode mode = OutputMode::kFirst, ConvolutionSign sign = ConvolutionSign::kMinus);

/// Largest standard deviation (per axis) of the kernel Wigner functions of `terms`.
std::pair<double, double> kernel_spread(std::span<const KernelTerm> terms);

/// (1/2pi) sum W_in W_out dx dp on a shared grid.
double cv_fidelity(const WignerGrid &input, const WignerGrid &output);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// '#'-prefixed key=value metadata lines, then "x,p,value" rows (x-major).
std::string to_csv(const WignerGrid &grid, const Metadata &metadata);
/// {"schema_version", "metadata", "grid": {...}, "values": row-major nx * np array}.
std::string to_json(const WignerGrid &grid, const Metadata &metadata);

}  // namespace qid

#endif
