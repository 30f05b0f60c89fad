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

#include "wigner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "errors.hpp"
#include "format.hpp"

namespace qid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
// Kernel spreads must fit this many standard deviations inside the half-range.
constexpr double kRangeSigmas = 6.0;

void require_squeezing(double xi) {
    require(std::isfinite(xi) && xi >= 0.0, ErrorCode::kOutOfRange, "squeezing parameter must be finite and >= 0");
}

// Angular frequency of DFT bin `f` on an n-point axis with spacing `step`.
double frequency(std::size_t f, std::size_t n, double step) {
    const auto signed_f = f < (n + 1) / 2 ? static_cast<double>(f) : static_cast<double>(f) - static_cast<double>(n);
    return kTwoPi * signed_f / (static_cast<double>(n) * step);
}

// In-place 2D transform: along p for every x row, then along x for every p column.
void fft_2d(Eigen::MatrixXcd &m, bool inverse) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd in, out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        in = m.row(i).transpose();
        if (inverse) {
            fft.inv(out, in);
        } else {
            fft.fwd(out, in);
        }
        m.row(i) = out.transpose();
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        in = m.col(j);
        if (inverse) {
            fft.inv(out, in);
        } else {
            fft.fwd(out, in);
        }
        m.col(j) = out;
    }
}

std::vector<KernelTerm> nonzero(std::span<const KernelTerm> terms) {
    std::vector<KernelTerm> out;
    for (const auto &t : terms) {
        if (t.coeff != 0.0) {
            out.push_back(t);
        }
    }
    return out;
}

void require_range(const GridSpec &spec, std::span<const KernelTerm> terms) {
    const auto [sx, sp] = kernel_spread(terms);
    const double half_x = (spec.x_max - spec.x_min) / 2.0;
    const double half_p = (spec.p_max - spec.p_min) / 2.0;
    require(half_x >= kRangeSigmas * sx && half_p >= kRangeSigmas * sp, ErrorCode::kGrid,
            "incompatible grid: half-range must cover " + format_double(kRangeSigmas) +
                " kernel standard deviations (need x " + format_double(kRangeSigmas * sx) + ", p " +
                format_double(kRangeSigmas * sp) + ")");
}

double sigma_min_of(std::span<const KernelTerm> terms) {
    double var = std::numeric_limits<double>::infinity();
    for (const auto &t : terms) {
        var = std::min({var, 1.0 / (t.d - t.b * t.b / t.a), t.a});
    }
    return std::sqrt(var);
}

}  // namespace

GridSpec symmetric_grid(double half_x, double half_p, std::size_t n) {
    require(half_x > 0.0 && half_p > 0.0 && std::isfinite(half_x) && std::isfinite(half_p), ErrorCode::kGrid,
            "grid half-ranges must be positive");
    require(n >= 4, ErrorCode::kGrid, "grid needs at least 4 points per axis");
    return GridSpec{-half_x, half_x, -half_p, half_p, n, n};
}

GridSpec default_grid(double sigma_max, std::size_t n) {
    return symmetric_grid(8.0 * sigma_max, 8.0 * sigma_max, n);
}

void check_resolution(const GridSpec &spec, double sigma_min) {
    require(spec.dx() <= sigma_min / 2.0 && spec.dp() <= sigma_min / 2.0, ErrorCode::kNyquist,
            "grid spacing (" + format_double(std::max(spec.dx(), spec.dp())) +
                ") does not resolve the narrowest width " + format_double(sigma_min) + "; need spacing <= sigma / 2");
}

WignerGrid::WignerGrid(GridSpec spec, Eigen::MatrixXd values) : spec_(spec), values_(std::move(values)) {
    require(spec_.nx >= 1 && spec_.np >= 1 && spec_.x_max > spec_.x_min && spec_.p_max > spec_.p_min,
            ErrorCode::kGrid, "grid bounds must be increasing and nonempty");
    require(values_.rows() == static_cast<Eigen::Index>(spec_.nx) &&
                values_.cols() == static_cast<Eigen::Index>(spec_.np),
            ErrorCode::kDimensionMismatch, "grid values do not match the grid shape");
}

double WignerGrid::normalization() const {
    return values_.sum() * spec_.dx() * spec_.dp() / kTwoPi;
}

WignerGrid sample(const GridSpec &spec, const std::function<double(double, double)> &f) {
    Eigen::MatrixXd v(static_cast<Eigen::Index>(spec.nx), static_cast<Eigen::Index>(spec.np));
    for (std::size_t i = 0; i < spec.nx; ++i) {
        for (std::size_t j = 0; j < spec.np; ++j) {
            v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f(spec.x(i), spec.p(j));
        }
    }
    return WignerGrid(spec, std::move(v));
}

double gaussian_wigner(const GaussianState &state, double x, double p) {
    require(state.modes() == 1, ErrorCode::kInvalidArgument, "gaussian_wigner: single-mode state required");
    const Eigen::Vector2d r(x - state.mean()(0), p - state.mean()(1));
    const Eigen::Matrix2d v = state.cov();
    return std::exp(-0.5 * r.dot(v.inverse() * r)) / std::sqrt(v.determinant());
}

WignerGrid render(const GaussianState &state, const GridSpec &spec) {
    require(state.modes() == 1, ErrorCode::kInvalidArgument, "render: single-mode state required");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(state.cov(), Eigen::EigenvaluesOnly);
    check_resolution(spec, std::sqrt(solver.eigenvalues().minCoeff()));
    return sample(spec, [&](double x, double p) { return gaussian_wigner(state, x, p); });
}

double epr_wigner(double xi, double x1, double p1, double x2, double p2) {
    require_squeezing(xi);
    const double big = std::exp(2.0 * xi) / 2.0;
    const double small = std::exp(-2.0 * xi) / 2.0;
    const double xm = x1 - x2, pp = p1 + p2, xp = x1 + x2, pm = p1 - p2;
    return 4.0 * std::exp(-big * (xm * xm + pp * pp) - small * (xp * xp + pm * pm));
}

double thermal_wigner(double xi, double x, double p) {
    const double w = 1.0 + 2.0 * mean_excitation(xi);
    return 2.0 / w * std::exp(-(x * x + p * p) / w);
}

double kernel_term_wigner(std::span<const KernelTerm> terms, double x, double p) {
    std::complex<double> total = 0.0;
    for (const auto &t : terms) {
        const double quad = (t.d - t.b * t.b / t.a) * x * x + p * p / t.a;
        total += t.coeff / std::sqrt(t.a) * std::exp(std::complex<double>(-0.5 * quad, -t.b * x * p / t.a));
    }
    return total.real();
}

double kernel_wigner_closed(KernelPart part, double xi, double x, double p) {
    require_squeezing(xi);
    require(part != KernelPart::kCross, ErrorCode::kInvalidArgument,
            "kernel_wigner_closed: no exact closed form for the cross kernel");
    if (part == KernelPart::kEntangled) {
        const double e2 = std::exp(2.0 * xi);
        return e2 * std::exp(-e2 * (x * x + p * p) / 2.0);
    }
    const double c = std::cosh(2.0 * xi);
    return std::exp(-(x * x + p * p) / (2.0 * c)) / c;
}

double kernel_wigner_k3_asymptotic(double xi, double x, double p) {
    require_squeezing(xi);
    return 2.0 * std::sqrt(2.0) * std::exp(-std::exp(2.0 * xi) * (x * x + p * p) / 4.0);
}

WignerGrid kernel_wigner(KernelPart part, double xi, const GridSpec &spec) {
    require_squeezing(xi);
    require(xi <= kXiGridMax, ErrorCode::kOutOfRange,
            "kernel_wigner: xi above the grid limit; use the closed or asymptotic forms");
    const auto terms = kernel_part_terms(part, xi);
    check_resolution(spec, sigma_min_of(terms));
    if (part != KernelPart::kCross) {
        return sample(spec, [&](double x, double p) { return kernel_wigner_closed(part, xi, x, p); });
    }

    // W(x', p') = (2/sqrt(2pi)) int_0^inf cos(p' z) K3(z; x') dz, K3 even in z.
    double a_max = 0.0, reach = 0.0;
    const double x_abs = std::max(std::abs(spec.x_min), std::abs(spec.x_max));
    const double p_abs = std::max(std::abs(spec.p_min), std::abs(spec.p_max));
    for (const auto &t : terms) {
        a_max = std::max(a_max, t.a);
        reach = std::max(reach, std::abs(t.b) * x_abs / t.a + 12.0 / std::sqrt(t.a));
    }
    const double h = kPi / (p_abs + 10.0 * std::sqrt(a_max));
    const auto nz = static_cast<Eigen::Index>(std::ceil(reach / h)) + 1;
    Eigen::MatrixXd kernel(static_cast<Eigen::Index>(spec.nx), nz);
    for (std::size_t i = 0; i < spec.nx; ++i) {
        for (Eigen::Index k = 0; k < nz; ++k) {
            const double weight = k == 0 ? 0.5 * h : h;
            kernel(static_cast<Eigen::Index>(i), k) =
                weight * kernel_eval(part, xi, static_cast<double>(k) * h, spec.x(i));
        }
    }
    Eigen::MatrixXd cosines(nz, static_cast<Eigen::Index>(spec.np));
    for (Eigen::Index k = 0; k < nz; ++k) {
        for (std::size_t j = 0; j < spec.np; ++j) {
            cosines(k, static_cast<Eigen::Index>(j)) = std::cos(spec.p(j) * static_cast<double>(k) * h);
        }
    }
    Eigen::MatrixXd values = (2.0 / std::sqrt(kTwoPi)) * (kernel * cosines);
    return WignerGrid(spec, std::move(values));
}

std::pair<double, double> kernel_spread(std::span<const KernelTerm> terms) {
    double vx = 0.0, vp = 0.0;
    for (const auto &t : terms) {
        if (t.coeff == 0.0) {
            continue;
        }
        vx = std::max(vx, 1.0 / (t.d - t.b * t.b / t.a));
        vp = std::max(vp, t.a);
    }
    return {std::sqrt(vx), std::sqrt(vp)};
}

WignerGrid convolve(const WignerGrid &input, std::span<const KernelTerm> terms, ConvolutionSign sign) {
    const GridSpec &spec = input.spec();
    Eigen::MatrixXcd m = input.values().cast<std::complex<double>>();
    fft_2d(m, false);
    const double flip = sign == ConvolutionSign::kPlus ? -1.0 : 1.0;
    for (std::size_t i = 0; i < spec.nx; ++i) {
        const double kx = frequency(i, spec.nx, spec.dx());
        for (std::size_t j = 0; j < spec.np; ++j) {
            const double kp = frequency(j, spec.np, spec.dp());
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= transfer(terms, kx, flip * kp);
        }
    }
    fft_2d(m, true);
    return WignerGrid(spec, m.real());
}

WignerGrid output_wigner(const WignerGrid &input, double xi, double alpha, double beta, OutputMode mode,
                         ConvolutionSign sign) {
    require_squeezing(xi);
    require(std::abs(cv_norm_constraint(alpha, beta, xi)) <= 1e-10, ErrorCode::kNormalization,
            "output_wigner: weights violate the program normalization");
    if (mode == OutputMode::kFirst && xi > kXiGridMax) {
        auto thermal = nonzero(kernel_part_terms(KernelPart::kProduct, xi));
        Eigen::MatrixXd values = (alpha * alpha + 4.0 * std::sqrt(2.0) * std::exp(-2.0 * xi) * alpha * beta) *
                                 input.values();
        if (beta != 0.0) {
            require_range(input.spec(), thermal);
            values += beta * beta * convolve(input, thermal, sign).values();
        }
        return WignerGrid(input.spec(), std::move(values));
    }
    const auto terms = nonzero(weighted_kernel(xi, alpha, beta, mode));
    require_range(input.spec(), terms);
    return convolve(input, terms, sign);
}

double cv_fidelity(const WignerGrid &input, const WignerGrid &output) {
    require(input.spec() == output.spec(), ErrorCode::kGrid, "cv_fidelity: incompatible grids");
    const GridSpec &s = input.spec();
    return input.values().cwiseProduct(output.values()).sum() * s.dx() * s.dp() / kTwoPi;
}

std::string to_csv(const WignerGrid &grid, const Metadata &metadata) {
    const GridSpec &s = grid.spec();
    std::string out;
    for (const auto &[key, value] : metadata) {
        out += "# " + key + "=" + value + "\n";
    }
    out += "x,p,value\n";
    for (std::size_t i = 0; i < s.nx; ++i) {
        for (std::size_t j = 0; j < s.np; ++j) {
            out += format_double(s.x(i));
            out += ',';
            out += format_double(s.p(j));
            out += ',';
            out += format_double(grid.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            out += '\n';
        }
    }
    return out;
}

std::string to_json(const WignerGrid &grid, const Metadata &metadata) {
    const GridSpec &s = grid.spec();
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto &[key, value] : metadata) {
        meta[key] = value;
    }
    doc["metadata"] = meta;
    doc["grid"] = {{"x_min", s.x_min}, {"x_max", s.x_max}, {"p_min", s.p_min},
                   {"p_max", s.p_max}, {"nx", s.nx},       {"np", s.np}};
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.nx; ++i) {
        for (std::size_t j = 0; j < s.np; ++j) {
            values.push_back(grid.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    }
    doc["values"] = std::move(values);
    return dump_json(doc);
}

}  // namespace qid
