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

// Experiment runner for the distributor simulator. Every command prints a CSV or JSON
// report and exits with status 1 when one of its built-in checks fails, 2 on a usage
// or library error.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qid/qid.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;
constexpr int kSchemaVersion = 1;

// Check tolerances.
constexpr double kCloneTol = 1e-10;
constexpr double kDistributeTol = 1e-10;
constexpr double kCovarianceTol = 1e-8;
constexpr double kKernelNormTol = 1e-6;
constexpr double kGridAnalyticTol = 1e-4;
constexpr double kCoherentTol = 1e-9;
constexpr double kCoherentClone = 2.0 / 3.0;
constexpr double kCoherentAnticlone = 1.0 / 8.0;

struct LibraryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(qid_status status) {
    if (status != QID_OK) {
        throw LibraryError(std::string(qid_status_string(status)) + ": " + qid_last_error());
    }
}

std::string fmt(double v) {
    char buf[64];
    const size_t n = qid_format_double(v, buf, sizeof buf);
    return std::string(buf, n);
}

using Cell = std::variant<std::monostate, double, long long, std::string, std::vector<double>>;

std::string cell_text(const Cell &c, bool json) {
    if (std::holds_alternative<std::monostate>(c)) {
        return json ? "null" : "";
    }
    if (const auto *d = std::get_if<double>(&c)) {
        return std::isfinite(*d) ? fmt(*d) : (json ? "null" : fmt(*d));
    }
    if (const auto *i = std::get_if<long long>(&c)) {
        return std::to_string(*i);
    }
    if (const auto *s = std::get_if<std::string>(&c)) {
        return json ? nlohmann::json(*s).dump() : *s;
    }
    const auto &v = std::get<std::vector<double>>(c);
    std::string out = json ? "[" : "";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i == 0 ? "" : json ? ", " : " ") + fmt(v[i]);
    }
    return json ? out + "]" : out;
}

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> failures;

    void meta(const std::string &key, const std::string &value) {
        metadata.emplace_back(key, value);
    }
    void set(const std::string &key, Cell value) {
        summary.emplace_back(key, std::move(value));
    }

    std::string csv() const {
        std::string out = "# schema_version=" + std::to_string(kSchemaVersion) + "\n# command=" + command + "\n";
        for (const auto &[k, v] : metadata) {
            out += "# " + k + "=" + v + "\n";
        }
        if (columns.empty()) {
            out += "key,value\n";
            for (const auto &[k, v] : summary) {
                out += k + "," + cell_text(v, false) + "\n";
            }
            return out;
        }
        for (const auto &[k, v] : summary) {
            out += "# " + k + "=" + cell_text(v, false) + "\n";
        }
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out += (i == 0 ? "" : ",") + columns[i];
        }
        out += "\n";
        for (const auto &row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out += (i == 0 ? "" : ",") + cell_text(row[i], false);
            }
            out += "\n";
        }
        return out;
    }

    std::string json() const {
        const auto key = [](const std::string &k) { return nlohmann::json(k).dump(); };
        std::string out = "{\n  \"schema_version\": " + std::to_string(kSchemaVersion) +
                          ",\n  \"command\": " + key(command) + ",\n  \"metadata\": {";
        for (std::size_t i = 0; i < metadata.size(); ++i) {
            out += (i == 0 ? "\n    " : ",\n    ") + key(metadata[i].first) + ": " + key(metadata[i].second);
        }
        out += metadata.empty() ? "},\n" : "\n  },\n";
        out += "  \"summary\": {";
        for (std::size_t i = 0; i < summary.size(); ++i) {
            out += (i == 0 ? "\n    " : ",\n    ") + key(summary[i].first) + ": " + cell_text(summary[i].second, true);
        }
        out += summary.empty() ? "},\n" : "\n  },\n";
        out += "  \"rows\": [";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            out += r == 0 ? "\n    {" : ",\n    {";
            for (std::size_t i = 0; i < columns.size(); ++i) {
                out += (i == 0 ? "" : ", ") + key(columns[i]) + ": " + cell_text(rows[r][i], true);
            }
            out += "}";
        }
        out += rows.empty() ? "],\n" : "\n  ],\n";
        out += "  \"checks_passed\": ";
        out += failures.empty() ? "true" : "false";
        out += "\n}\n";
        return out;
    }
};

struct Common {
    std::string format = "csv";
    std::string out;
};

// --out wins; otherwise $QID_OUTPUT_DIR/<command>.<ext>; otherwise stdout.
void emit(const std::string &text, const std::string &command, const Common &common) {
    std::string path = common.out;
    if (path.empty()) {
        if (const char *dir = std::getenv("QID_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
            std::filesystem::create_directories(dir);
            path = (std::filesystem::path(dir) / (command + "." + common.format)).string();
        }
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw LibraryError("i/o failure: cannot write " + path);
    }
}

int finish(const Report &report, const Common &common) {
    emit(common.format == "json" ? report.json() : report.csv(), report.command, common);
    for (const auto &f : report.failures) {
        std::cerr << "qid " << report.command << ": check failed: " << f << "\n";
    }
    return report.failures.empty() ? 0 : kExitCheckFailed;
}

double parse_double(const std::string &s) {
    double v = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw CLI::ValidationError("not a number: '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string &s) {
    const auto parts = split(s, ':');
    if (parts.size() != 2) {
        throw CLI::ValidationError("--dim-range expects A:B");
    }
    const auto a = static_cast<std::size_t>(parse_double(parts[0]));
    const auto b = static_cast<std::size_t>(parse_double(parts[1]));
    if (a < 2 || b < a) {
        throw CLI::ValidationError("--dim-range needs 2 <= A <= B");
    }
    return {a, b};
}

// "re" or "re:im".
std::complex<double> parse_amplitude(const std::string &s) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) {
        return {parse_double(parts[0]), 0.0};
    }
    if (parts.size() == 2) {
        return {parse_double(parts[0]), parse_double(parts[1])};
    }
    throw CLI::ValidationError("malformed amplitude '" + s + "' (expected re or re:im)");
}

// "re,im" for a coherent amplitude.
std::complex<double> parse_point(const std::string &s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) {
        throw CLI::ValidationError("expected re,im but got '" + s + "'");
    }
    return {parse_double(parts[0]), parse_double(parts[1])};
}

std::vector<double> parse_list(const std::string &s) {
    std::vector<double> out;
    for (const auto &p : split(s, ',')) {
        out.push_back(parse_double(p));
    }
    if (out.empty()) {
        throw CLI::ValidationError("empty value list");
    }
    return out;
}

struct StateHandle {
    qid_state *ptr = nullptr;
    ~StateHandle() {
        qid_state_free(ptr);
    }
};

struct WignerHandle {
    qid_wigner *ptr = nullptr;
    WignerHandle() = default;
    WignerHandle(const WignerHandle &) = delete;
    WignerHandle &operator=(const WignerHandle &) = delete;
    ~WignerHandle() {
        qid_wigner_free(ptr);
    }
};

double cloner_alpha(std::size_t n) {
    return std::sqrt(static_cast<double>(n) / (2.0 * (static_cast<double>(n) + 1.0)));
}

// ---- clone ----

struct CloneArgs {
    std::string dim_range = "2:16";
    std::optional<std::size_t> dim;
    std::uint64_t seed = 1;
};

int run_clone(const CloneArgs &args, const Common &common) {
    const auto [lo, hi] = args.dim ? std::pair{*args.dim, *args.dim} : parse_range(args.dim_range);
    Report r;
    r.command = "clone";
    r.meta("dim_range", std::to_string(lo) + ":" + std::to_string(hi));
    r.meta("seed", std::to_string(args.seed));
    r.meta("simulation_dim_cap", std::to_string(qid_simulation_dim_cap()));
    r.columns = {"N", "s_closed", "F_closed", "s_simulated", "F_simulated", "F2_simulated", "clone_mismatch",
                 "max_difference"};
    for (std::size_t n = lo; n <= hi; ++n) {
        double s = 0.0, f = 0.0;
        check(qid_clone_closed_form(n, &s, &f));
        std::vector<Cell> row{static_cast<long long>(n), s, f};
        if (n <= qid_simulation_dim_cap()) {
            StateHandle psi;
            check(qid_state_random(n, args.seed + n, &psi.ptr));
            qid_clone_result sim{};
            check(qid_clone_simulate(psi.ptr, &sim));
            const double diff = std::max({std::abs(sim.scaling - s), std::abs(sim.fidelity - f),
                                          std::abs(sim.fidelity_second - f)});
            row.insert(row.end(), {sim.scaling, sim.fidelity, sim.fidelity_second, sim.clone_mismatch, diff});
            if (!(diff <= kCloneTol && sim.clone_mismatch <= kCloneTol)) {
                r.failures.push_back("N=" + std::to_string(n) + " simulation differs from closed form by " + fmt(diff));
            }
        } else {
            row.insert(row.end(), {Cell{}, Cell{}, Cell{}, Cell{}, Cell{}});
        }
        r.rows.push_back(std::move(row));
    }
    return finish(r, common);
}

// ---- distribute ----

struct DistributeArgs {
    std::optional<std::size_t> dim;
    std::optional<double> alpha;
    std::string input = "random:1";
};

int run_distribute(const DistributeArgs &args, const Common &common) {
    StateHandle psi;
    std::size_t n = 0;
    if (args.input.rfind("random:", 0) == 0) {
        n = args.dim.value_or(3);
        const auto seed = static_cast<std::uint64_t>(std::stoull(args.input.substr(7)));
        check(qid_state_random(n, seed, &psi.ptr));
    } else {
        std::vector<double> re, im;
        for (const auto &token : split(args.input, ',')) {
            const auto a = parse_amplitude(token);
            re.push_back(a.real());
            im.push_back(a.imag());
        }
        n = re.size();
        if (args.dim && *args.dim != n) {
            throw CLI::ValidationError("--input lists " + std::to_string(n) + " amplitudes but --dim is " +
                                       std::to_string(*args.dim));
        }
        check(qid_state_from_amplitudes(n, re.data(), im.data(), &psi.ptr));
    }
    const double alpha = args.alpha.value_or(cloner_alpha(n));
    qid_distribute_report d{};
    check(qid_distribute(psi.ptr, alpha, &d));

    Report r;
    r.command = "distribute";
    r.meta("dim", std::to_string(n));
    r.meta("input", args.input);
    r.set("alpha", d.alpha);
    r.set("beta", d.beta);
    r.set("rho1_fidelity", d.rho1_fidelity);
    r.set("rho2_fidelity", d.rho2_fidelity);
    r.set("rho3_transpose_fidelity", d.rho3_transpose_fidelity);
    r.set("predicted_rho1_fidelity", d.predicted_rho1_fidelity);
    r.set("predicted_rho2_fidelity", d.predicted_rho2_fidelity);
    const double f_gap = std::max(std::abs(d.rho1_fidelity - d.predicted_rho1_fidelity),
                                  std::abs(d.rho2_fidelity - d.predicted_rho2_fidelity));
    r.set("max_state_deviation", d.max_deviation);
    r.set("max_fidelity_deviation", f_gap);
    r.set("rho13_negativity", d.rho3_negativity);
    if (!(d.max_deviation <= kDistributeTol)) {
        r.failures.push_back("simulated outputs differ from the closed form by " + fmt(d.max_deviation));
    }
    if (!(f_gap <= kDistributeTol)) {
        r.failures.push_back("fidelities differ from the closed form by " + fmt(f_gap));
    }
    return finish(r, common);
}

// ---- covariance ----

struct CovarianceArgs {
    std::optional<std::size_t> dim;
    std::optional<std::string> dim_range;
    std::optional<double> alpha;
    std::size_t trials = 10;
    std::uint64_t seed = 1;
};

int run_covariance(const CovarianceArgs &args, const Common &common) {
    const auto [lo, hi] = args.dim_range ? parse_range(*args.dim_range)
                                         : std::pair{args.dim.value_or(3), args.dim.value_or(3)};
    Report r;
    r.command = "covariance";
    r.meta("trials", std::to_string(args.trials));
    r.meta("seed", std::to_string(args.seed));
    r.columns = {"N", "alpha", "pairs_checked", "max_deviation", "max_fidelity_delta", "identity_deviation"};
    for (std::size_t n = lo; n <= hi; ++n) {
        const double alpha = args.alpha.value_or(cloner_alpha(n));
        qid_covariance_report c{};
        check(qid_covariance_scan(n, alpha, args.trials, args.seed, &c));
        r.rows.push_back({static_cast<long long>(n), alpha, static_cast<long long>(c.pairs_checked), c.max_deviation,
                          c.max_fidelity_delta, c.identity_deviation});
        if (!(c.max_deviation <= kCovarianceTol)) {
            r.failures.push_back("N=" + std::to_string(n) + " covariance deviation " + fmt(c.max_deviation));
        }
        if (c.identity_deviation != 0.0) {
            r.failures.push_back("N=" + std::to_string(n) + " identity shift moved the outputs by " +
                                 fmt(c.identity_deviation));
        }
    }
    return finish(r, common);
}

// ---- cv ----

struct CvArgs {
    std::string xi = "0,0.5,1,2";
    std::optional<double> alpha;
    std::size_t grid = 512;
    std::string input = "0,0";
};

struct GridFidelity {
    double fidelity;
    double normalization;
    double beta2_term;
};

// Grid fidelity of one output mode, on a grid sized for that mode's kernel.
GridFidelity grid_fidelity(std::complex<double> z, double xi, double alpha, double beta, int mode,
                           std::size_t points) {
    double sx = 0.0, sp = 0.0;
    check(qid_cv_kernel_spread(xi, alpha, beta, mode, &sx, &sp));
    qid_grid_spec spec{};
    check(qid_grid_default(std::max({sx, sp, std::sqrt(0.5)}), points, &spec));
    WignerHandle in, out, thermal;
    check(qid_wigner_coherent(z.real(), z.imag(), &spec, &in.ptr));
    check(qid_wigner_output(in.ptr, xi, alpha, beta, mode, &out.ptr));
    GridFidelity g{};
    check(qid_wigner_overlap(in.ptr, out.ptr, &g.fidelity));
    check(qid_wigner_normalization(out.ptr, &g.normalization));
    check(qid_wigner_convolve_part(in.ptr, QID_KERNEL_PRODUCT, xi, mode, &thermal.ptr));
    check(qid_wigner_overlap(in.ptr, thermal.ptr, &g.beta2_term));
    g.beta2_term *= beta * beta;
    return g;
}

int run_cv(const CvArgs &args, const Common &common) {
    const auto z = parse_point(args.input);
    Report r;
    r.command = "cv";
    r.meta("xi", args.xi);
    r.meta("alpha", args.alpha ? fmt(*args.alpha) : "symmetric");
    r.meta("grid", std::to_string(args.grid));
    r.meta("input", args.input);
    r.columns = {"xi",        "alpha",       "beta",        "nbar",        "k1_norm_residual",
                 "k2_norm_residual", "k3_norm",   "k3_norm_residual", "f1_grid",     "f2_grid",
                 "f1_analytic", "f2_analytic", "f1_beta2_term", "f1_normalization", "regime"};
    for (const double xi : parse_list(args.xi)) {
        double alpha = 0.0, beta = 0.0;
        if (args.alpha) {
            alpha = *args.alpha;
            check(qid_cv_solve_beta(xi, alpha, &beta));
        } else {
            check(qid_cv_symmetric_weight(xi, &alpha));
            beta = alpha;
        }
        double residual[3];
        double k3_closed = 0.0;
        for (int part = 1; part <= 3; ++part) {
            double quad = 0.0, closed = 0.0;
            check(qid_cv_kernel_norm(static_cast<qid_kernel_part>(part), xi, QID_NORM_QUADRATURE, 1, &quad));
            check(qid_cv_kernel_norm(static_cast<qid_kernel_part>(part), xi, QID_NORM_CLOSED, 1, &closed));
            residual[part - 1] = quad - closed;
            if (part == 3) {
                k3_closed = closed;
            }
        }
        const bool asymptotic = xi > qid_cv_grid_xi_max();
        const GridFidelity g1 = grid_fidelity(z, xi, alpha, beta, 1, args.grid);
        double f1_exact = 0.0, f2_exact = 0.0;
        check(qid_cv_analytic_fidelity(xi, alpha, beta, 1, z.real(), z.imag(), &f1_exact));
        check(qid_cv_analytic_fidelity(xi, alpha, beta, 2, z.real(), z.imag(), &f2_exact));
        const GridFidelity g2 = grid_fidelity(z, xi, alpha, beta, 2, args.grid);
        const double nbar = std::pow(std::sinh(xi), 2);
        r.rows.push_back({xi, alpha, beta, nbar, residual[0], residual[1], k3_closed, residual[2], g1.fidelity,
                          g2.fidelity, f1_exact, f2_exact, g1.beta2_term, g1.normalization,
                          std::string(asymptotic ? "asymptotic" : "grid")});
        const std::string tag = "xi=" + fmt(xi) + ": ";
        for (int part = 0; part < 3; ++part) {
            if (!(std::abs(residual[part]) <= kKernelNormTol)) {
                r.failures.push_back(tag + "K" + std::to_string(part + 1) + " norm residual " + fmt(residual[part]));
            }
        }
        if (!asymptotic && !(std::abs(g1.fidelity - f1_exact) <= kGridAnalyticTol)) {
            r.failures.push_back(tag + "grid F1 misses the exact value by " + fmt(g1.fidelity - f1_exact));
        }
        if (!(std::abs(g2.fidelity - f2_exact) <= kGridAnalyticTol)) {
            r.failures.push_back(tag + "grid F2 misses the exact value by " + fmt(g2.fidelity - f2_exact));
        }
    }
    return finish(r, common);
}

// ---- coherent-clone ----

int run_coherent(const std::string &z_text, const Common &common) {
    const auto z = parse_point(z_text);
    Report r;
    r.command = "coherent-clone";
    r.meta("z", z_text);
    qid_coherent_report c{};
    check(qid_coherent_clone(z.real(), z.imag(), &c));
    r.set("clone_fidelity", c.clone_fidelity[0]);
    r.set("clone_fidelity_second", c.clone_fidelity[1]);
    r.set("anticlone_fidelity", c.anticlone_fidelity);
    for (int j = 0; j < 3; ++j) {
        r.set("output" + std::to_string(j + 1) + "_mean", std::vector<double>{c.mean[j][0], c.mean[j][1]});
        r.set("output" + std::to_string(j + 1) + "_covariance",
              std::vector<double>{c.cov[j][0], c.cov[j][1], c.cov[j][2], c.cov[j][3]});
    }
    double invariance = 0.0;
    for (const auto probe : {std::complex<double>(0.0, 0.0), std::complex<double>(3.0, 4.0)}) {
        qid_coherent_report p{};
        check(qid_coherent_clone(probe.real(), probe.imag(), &p));
        invariance = std::max({invariance, std::abs(p.clone_fidelity[0] - c.clone_fidelity[0]),
                               std::abs(p.clone_fidelity[1] - c.clone_fidelity[1]),
                               std::abs(p.anticlone_fidelity - c.anticlone_fidelity)});
    }
    r.set("displacement_invariance_gap", invariance);
    for (int j = 0; j < 2; ++j) {
        if (!(std::abs(c.clone_fidelity[j] - kCoherentClone) <= kCoherentTol)) {
            r.failures.push_back("clone fidelity " + fmt(c.clone_fidelity[j]) + " != 2/3");
        }
    }
    if (!(std::abs(c.anticlone_fidelity - kCoherentAnticlone) <= kCoherentTol)) {
        r.failures.push_back("anticlone fidelity " + fmt(c.anticlone_fidelity) + " != 1/8");
    }
    if (!(invariance <= kCoherentTol)) {
        r.failures.push_back("fidelities depend on the displacement (gap " + fmt(invariance) + ")");
    }
    return finish(r, common);
}

// ---- classical ----

struct ClassicalArgs {
    std::optional<unsigned> m_in;
    std::optional<unsigned> m_out;
    double overlap = 0.0;
};

int run_classical(const ClassicalArgs &args, const Common &common) {
    std::vector<std::pair<unsigned, unsigned>> cases{{1, 2}, {2, 4}, {3, 3}};
    if (args.m_in || args.m_out) {
        if (!args.m_in || !args.m_out) {
            throw CLI::ValidationError("--m-in and --m-out go together");
        }
        cases = {{*args.m_in, *args.m_out}};
    }
    Report r;
    r.command = "classical";
    r.meta("overlap", fmt(args.overlap));
    r.columns = {"m_in", "m_out", "fidelity", "expected"};
    for (const auto &[m_in, m_out] : cases) {
        double f = 0.0;
        check(qid_classical_fidelity(m_in, m_out, args.overlap, &f));
        const double ratio = static_cast<double>(m_in) / static_cast<double>(m_out);
        const double expected = ratio + (1.0 - ratio) * args.overlap;
        r.rows.push_back({static_cast<long long>(m_in), static_cast<long long>(m_out), f, expected});
        if (f != expected) {
            r.failures.push_back("(" + std::to_string(m_in) + "," + std::to_string(m_out) + ") gives " + fmt(f));
        }
    }
    return finish(r, common);
}

// ---- wigner ----

struct WignerArgs {
    double xi = 1.0;
    std::optional<double> alpha;
    int mode = 1;
    int kernel = 0;
    std::size_t grid = 512;
    std::string input = "0,0";
};

int run_wigner(const WignerArgs &args, const Common &common) {
    const auto z = parse_point(args.input);
    double alpha = 0.0, beta = 0.0;
    if (args.alpha) {
        alpha = *args.alpha;
        check(qid_cv_solve_beta(args.xi, alpha, &beta));
    } else {
        check(qid_cv_symmetric_weight(args.xi, &alpha));
        beta = alpha;
    }
    WignerHandle w;
    std::vector<std::pair<std::string, std::string>> meta{{"schema_version", std::to_string(kSchemaVersion)},
                                                          {"command", "wigner"},
                                                          {"xi", fmt(args.xi)}};
    if (args.kernel != 0) {
        const double width = args.kernel == 2 ? std::sqrt(std::cosh(2.0 * args.xi)) : 1.0;
        qid_grid_spec spec{};
        check(qid_grid_default(width, args.grid, &spec));
        check(qid_wigner_kernel(static_cast<qid_kernel_part>(args.kernel), args.xi, &spec, &w.ptr));
        meta.emplace_back("kernel", std::to_string(args.kernel));
    } else {
        double sx = 0.0, sp = 0.0;
        check(qid_cv_kernel_spread(args.xi, alpha, beta, args.mode, &sx, &sp));
        qid_grid_spec spec{};
        check(qid_grid_default(std::max({sx, sp, std::sqrt(0.5)}), args.grid, &spec));
        WignerHandle in;
        check(qid_wigner_coherent(z.real(), z.imag(), &spec, &in.ptr));
        check(qid_wigner_output(in.ptr, args.xi, alpha, beta, args.mode, &w.ptr));
        meta.insert(meta.end(), {{"alpha", fmt(alpha)},
                                 {"beta", fmt(beta)},
                                 {"mode", std::to_string(args.mode)},
                                 {"input", args.input}});
    }
    double norm = 0.0;
    check(qid_wigner_normalization(w.ptr, &norm));
    meta.emplace_back("normalization", fmt(norm));
    std::vector<const char *> keys, values;
    for (const auto &[k, v] : meta) {
        keys.push_back(k.c_str());
        values.push_back(v.c_str());
    }
    char *text = nullptr;
    check(qid_wigner_serialize(w.ptr, common.format == "json" ? QID_FORMAT_JSON : QID_FORMAT_CSV, keys.data(),
                               values.data(), meta.size(), &text));
    std::string body(text);
    qid_string_free(text);
    emit(body, "wigner", common);
    return 0;
}

void add_common(CLI::App *cmd, Common &common) {
    cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", common.out, "Output file (default: $QID_OUTPUT_DIR/<command>.<format> or stdout)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum information distributor experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qid_version()));

    Common common;

    CloneArgs clone_args;
    auto *clone = app.add_subcommand("clone", "Cloner scaling factor and fidelity: closed form vs simulation");
    clone->add_option("--dim-range", clone_args.dim_range, "Dimensions A:B");
    clone->add_option("--dim", clone_args.dim, "Single dimension")->check(CLI::Range(2, 1 << 20));
    clone->add_option("--seed", clone_args.seed, "Seed for the random inputs");
    add_common(clone, common);

    DistributeArgs dist_args;
    auto *dist = app.add_subcommand("distribute", "Reduced outputs of one distributor run vs the closed form");
    dist->add_option("--dim", dist_args.dim, "Register dimension")->check(CLI::Range(2, 64));
    dist->add_option("--alpha", dist_args.alpha, "Program weight alpha in [0, 1] (default: symmetric cloner)");
    dist->add_option("--input", dist_args.input, "random:<seed> or amplitudes re[:im],...");
    add_common(dist, common);

    CovarianceArgs cov_args;
    auto *cov = app.add_subcommand("covariance", "Shift covariance over all N^2 shifts and random inputs");
    cov->add_option("--dim", cov_args.dim, "Register dimension")->check(CLI::Range(2, 64));
    cov->add_option("--dim-range", cov_args.dim_range, "Dimensions A:B");
    cov->add_option("--alpha", cov_args.alpha, "Program weight alpha (default: symmetric cloner)");
    cov->add_option("--trials", cov_args.trials, "Random inputs per dimension")->check(CLI::PositiveNumber);
    cov->add_option("--seed", cov_args.seed, "Seed for the random inputs");
    add_common(cov, common);

    CvArgs cv_args;
    auto *cv = app.add_subcommand("cv", "Continuous-variable kernel norms and output fidelities");
    cv->add_option("--xi", cv_args.xi, "Comma-separated squeezing values");
    cv->add_option("--alpha", cv_args.alpha, "Program weight alpha (default: alpha = beta)");
    cv->add_option("--grid", cv_args.grid, "Grid points per axis")->check(CLI::Range(16, 8192));
    cv->add_option("--input", cv_args.input, "Coherent input amplitude re,im");
    add_common(cv, common);

    std::string z_text = "0,0";
    auto *coherent = app.add_subcommand("coherent-clone", "Gaussian coherent-state cloner");
    coherent->add_option("--z", z_text, "Coherent input amplitude re,im");
    add_common(coherent, common);

    ClassicalArgs cl_args;
    auto *classical = app.add_subcommand("classical", "Coin-flip classical distributor fidelity");
    classical->add_option("--m-in", cl_args.m_in, "Input copies")->check(CLI::PositiveNumber);
    classical->add_option("--m-out", cl_args.m_out, "Output copies")->check(CLI::PositiveNumber);
    classical->add_option("--overlap", cl_args.overlap, "Mean fidelity of a random guess")->check(CLI::Range(0.0, 1.0));
    add_common(classical, common);

    WignerArgs w_args;
    auto *wigner = app.add_subcommand("wigner", "Output or kernel Wigner function on a grid");
    wigner->add_option("--xi", w_args.xi, "Squeezing");
    wigner->add_option("--alpha", w_args.alpha, "Program weight alpha (default: alpha = beta)");
    wigner->add_option("--mode", w_args.mode, "Output mode")->check(CLI::IsMember({1, 2}));
    wigner->add_option("--kernel", w_args.kernel, "Render kernel part 1, 2 or 3 instead of the output")
        ->check(CLI::IsMember({0, 1, 2, 3}));
    wigner->add_option("--grid", w_args.grid, "Grid points per axis")->check(CLI::Range(16, 8192));
    wigner->add_option("--input", w_args.input, "Coherent input amplitude re,im");
    add_common(wigner, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (clone->parsed()) {
            return run_clone(clone_args, common);
        }
        if (dist->parsed()) {
            return run_distribute(dist_args, common);
        }
        if (cov->parsed()) {
            return run_covariance(cov_args, common);
        }
        if (cv->parsed()) {
            return run_cv(cv_args, common);
        }
        if (coherent->parsed()) {
            return run_coherent(z_text, common);
        }
        if (classical->parsed()) {
            return run_classical(cl_args, common);
        }
        if (wigner->parsed()) {
            return run_wigner(w_args, common);
        }
    } catch (const CLI::ValidationError &e) {
        std::cerr << "qid: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception &e) {
        std::cerr << "qid: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
