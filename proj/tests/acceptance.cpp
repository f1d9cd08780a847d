// Copyright 2026 The qestim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion, INFO lines for context.
// Exit status is nonzero iff a criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "qestim/estimation.hpp"
#include "qestim/random.hpp"
#include "qestim/scenarios.hpp"

using namespace qestim;

namespace {

int failures = 0;

void verdict(int id, bool pass, const std::string &detail) {
    std::printf("%s  [%2d] %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++failures;
    }
}

void info(int id, const std::string &detail) {
    std::printf("INFO  [%2d] %s\n", id, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double identity_residual(const EstimateReport &r) {
    return std::abs(r.estimator_variance + r.noise_sq - r.observable_variance);
}

// ------------------------------------------------------------- 1 and 2

void optimality_and_geometry() {
    const auto t0 = std::chrono::steady_clock::now();
    double eq_gap = 0.0;          // pure states, rank-one elements
    double general_max = 0.0;     // mixed states, general POMs
    double general_min = INFINITY;
    double geo = 0.0;
    std::size_t instances = 0;
    for (const Eigen::Index d : {2, 3, 4, 6}) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            auto rng = random::stream(1000 + static_cast<std::uint64_t>(d), i);
            const HermitianOperator a = random::random_hermitian(d, rng);

            const DensityOperator pure = random::random_pure_state(d, rng);
            const ProbOperatorMeasure rank_one = i % 2 ? random::random_rank_one_pom(d, rng)
                                                       : random::random_projective_pom(d, rng);
            const auto m1 = measurement_moments(pure, rank_one, a);
            const auto f1 = optimal_estimator(m1);
            const auto r1 = analyze_estimator(m1, f1);
            eq_gap = std::max(eq_gap, std::abs(r1.noise_sq - r1.noise_bound_sq));
            geo = std::max(geo, identity_residual(r1));

            const DensityOperator mixed = random::random_density(d, rng);
            const ProbOperatorMeasure general = i % 2 ? random::random_pom(d, rng)
                                                      : random::random_projective_pom(d, rng);
            const auto m2 = measurement_moments(mixed, general, a);
            const auto r2 = analyze_estimator(m2, optimal_estimator(m2));
            general_max = std::max(general_max, r2.noise_sq - r2.noise_bound_sq);
            general_min = std::min(general_min, r2.noise_sq - r2.noise_bound_sq);
            geo = std::max(geo, identity_residual(r2));
            instances += 2;
        }
    }
    const double elapsed = seconds_since(t0);
    verdict(1, eq_gap <= 1e-9 && elapsed <= 60.0,
            fmt("optimality = bound, d in {2,3,4,6} x 1000 pure states with projective and "
                "random rank-one POMs: max |eps^2_opt - bound| = %.3g (tol 1e-9), %.2f s (limit 60 s)",
                eq_gap, elapsed));
    info(1, fmt("mixed states with projective/general POMs: eps^2_opt - bound in [%.3g, %.3g]; "
                "equality needs a pure state and rank-one elements, the inequality holds (>= -1e-9: %s)",
                general_min, general_max, general_min >= -1e-9 ? "yes" : "NO"));
    verdict(2, geo <= 1e-9,
            fmt("geometric identity over the same %zu instances: max |(dA_opt)^2 + eps^2 - (dA)^2| "
                "= %.3g (tol 1e-9)",
                instances, geo));
}

// ------------------------------------------------------------------- 3

void joint_relation() {
    const auto t0 = std::chrono::steady_clock::now();
    double min_slack = INFINITY;
    std::size_t deficient = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        auto rng = random::stream(3000, i);
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 5);
        // Every other state has rank strictly below d.
        const Eigen::Index rank =
            i % 2 ? 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(d - 1)) : 0;
        const DensityOperator rho = random::random_density(d, rng, rank);
        const ProbOperatorMeasure pom = i % 3 == 0   ? random::random_projective_pom(d, rng)
                                        : i % 3 == 1 ? random::random_pom(d, rng)
                                                     : random::random_rank_one_pom(d, rng);
        const HermitianOperator a = random::random_hermitian(d, rng);
        const HermitianOperator b = random::random_hermitian(d, rng);
        const OutcomeEstimator f(random::random_estimator(pom.size(), rng, 2.0));
        const OutcomeEstimator g(random::random_estimator(pom.size(), rng, 2.0));
        min_slack = std::min(min_slack, joint_check(rho, pom, a, b, f, g).slack);
        // The optimal pair is where the relation is tightest.
        const auto opt = joint_check(rho, pom, a, b, optimal_estimator(rho, pom, a),
                                     optimal_estimator(rho, pom, b));
        min_slack = std::min(min_slack, opt.slack);
        deficient += rank > 0 && rank < d;
    }
    const double elapsed = seconds_since(t0);
    verdict(3, min_slack >= -1e-9 && elapsed <= 120.0,
            fmt("joint relation, 10^4 instances (%zu rank-deficient), random and optimal "
                "estimators: min slack = %.3g (tol -1e-9), %.2f s (limit 120 s)",
                deficient, min_slack, elapsed));
}

// ------------------------------------------------------------------- 4

void unbiased_product() {
    const auto r = scenarios::scenario_unbiased_joint(1.0 / std::sqrt(2.0),
                                                      scenarios::qubit_state("0"));
    double min_slack = INFINITY;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = random::stream(4000, i);
        const auto s = scenarios::scenario_unbiased_joint(1.0 / std::sqrt(2.0),
                                                          random::random_density(2, rng));
        min_slack = std::min({min_slack, s.unbiased.slack, s.joint.slack});
    }
    const double lhs_err = std::abs(r.unbiased.lhs - 1.0);
    const double rhs_err = std::abs(r.unbiased.rhs - 1.0);
    verdict(4, lhs_err <= 1e-9 && rhs_err <= 1e-9 && min_slack >= -1e-9,
            fmt("unbiased product at gamma = 1/sqrt2, |0>: eps_x eps_y = %.12f, rhs = %.12f "
                "(tol 1e-9); 100-state sweep min slack = %.3g (tol -1e-9)",
                r.unbiased.lhs, r.unbiased.rhs, min_slack));
}

// ------------------------------------------------------------------- 5

void exact_uncertainty() {
    const auto t0 = std::chrono::steady_clock::now();
    scenarios::MomentumGridConfig g;
    g.n = 1024;
    const double gauss = scenarios::scenario_momentum_grid(g).check.residual;
    scenarios::MomentumGridConfig b;
    b.state = "two-bump";
    b.n = 1024;
    const double bump = scenarios::scenario_momentum_grid(b).check.residual;

    // Fixed extent, doubling resolution.
    auto residuals = [](scenarios::MomentumGridConfig cfg) {
        std::vector<double> out;
        for (std::size_t n : {256, 512, 1024}) {
            cfg.n = n;
            out.push_back(scenarios::scenario_momentum_grid(cfg).check.residual);
        }
        return out;
    };
    const auto rg = residuals(g);
    const auto rb = residuals(b);
    const double order_g = std::min(std::log2(rg[0] / rg[1]), std::log2(rg[1] / rg[2]));
    const double order_b1 = std::log2(rb[0] / rb[1]);
    const double order_b2 = std::log2(rb[1] / rb[2]);
    const double elapsed = seconds_since(t0);
    verdict(5, gauss <= 1e-6 && bump <= 1e-4 && order_g >= 2.0 && elapsed <= 10.0,
            fmt("exact uncertainty at n = 1024: Gaussian residual %.3g (tol 1e-6), two-bump %.3g "
                "(tol 1e-4); Gaussian order over 256->512->1024 = %.2f (>= 2); %.2f s (limit 10 s)",
                gauss, bump, order_g, elapsed));
    info(5, fmt("two-bump residuals %.3g, %.3g, %.3g: orders %.3f, %.3f (second order from below)",
                rb[0], rb[1], rb[2], order_b1, order_b2));
}

// ------------------------------------------------------------------- 6

void energy_estimate() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = scenarios::scenario_energy_grid({});
    const double elapsed = seconds_since(t0);
    verdict(6, r.max_deviation <= 1e-4 && elapsed <= 5.0,
            fmt("oscillator ground state, n = 16384: max |E_opt - hbar w/2| over %zu interior "
                "points = %.3g (tol 1e-4); %.2f s (limit 5 s)",
                r.interior_points, r.max_deviation, elapsed));
}

// ------------------------------------------------------------------- 7

void heterodyne() {
    const auto t0 = std::chrono::steady_clock::now();
    scenarios::HeterodyneConfig cfg;
    cfg.fock_dim = 32;
    cfg.grid_n = 64;
    cfg.state = scenarios::CoherentSpec{{1.0, 0.5}};
    const auto r = scenarios::scenario_heterodyne(cfg);
    const double elapsed = seconds_since(t0);
    const bool pass = std::abs(r.spread_product_standard - 0.5) <= 1e-3 &&
                      std::abs(r.spread_product_optimal - 0.125) <= 1e-3 &&
                      std::abs(r.improvement - 4.0) <= 0.02 &&
                      r.closed_form_deviation <= 10.0 * r.d_alpha && elapsed <= 30.0;
    verdict(7, pass,
            fmt("coherent beta = 1+0.5i on 64x64, fock_dim 32: dX_est dY_est = %.6f, "
                "dX_opt dY_opt = %.6f, ratio %.4f; closed form vs engine %.3g <= 10 d_alpha = "
                "%.3g; %.2f s (limit 30 s)",
                r.spread_product_standard, r.spread_product_optimal, r.improvement,
                r.closed_form_deviation, 10.0 * r.d_alpha, elapsed));
}

// ------------------------------------------------------------------- 8

void epr() {
    const auto t0 = std::chrono::steady_clock::now();
    const scenarios::EprConfig cfg;
    const auto r = scenarios::scenario_epr(cfg);
    const double ratio_err = std::abs(r.ratio - r.ratio_formula) / r.ratio_formula;

    std::vector<double> deviations;
    const double sigmas[] = {0.5, 0.25, 0.125};
    const std::size_t sizes[] = {256, 512, 1024};
    for (int k = 0; k < 3; ++k) {
        scenarios::EprConfig c;
        c.sigma = sigmas[k];
        c.n = sizes[k];
        deviations.push_back(scenarios::scenario_epr(c).naive_deviation);
    }
    const bool shrinking =
        deviations[0] >= 3.5 * deviations[1] && deviations[1] >= 3.5 * deviations[2];
    const double elapsed = seconds_since(t0);
    verdict(8, ratio_err <= 0.01 && r.max_relative_error <= 0.01 && shrinking &&
                   deviations[2] < 0.01 && elapsed <= 60.0,
            fmt("EPR sigma = tau = 0.5 on 256x256: ratio %.8f vs %.8f (rel err %.3g, tol 0.01); "
                "f_opt vs formula max rel err %.3g (tol 0.01); |f_opt - (b - p)| / |b - p| = "
                "%.4f, %.4f, %.4f for sigma = 0.5, 0.25, 0.125; %.2f s (limit 60 s)",
                r.ratio, r.ratio_formula, ratio_err, r.max_relative_error, deviations[0],
                deviations[1], deviations[2], elapsed));
}

// ------------------------------------------------------------------- 9

void brute_force() {
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::uint64_t i = 0; i < 24; ++i) {
        auto rng = random::stream(9000, i);
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 2);
        const DensityOperator rho = random::random_density(d, rng);
        const ProbOperatorMeasure pom =
            i % 3 == 0 ? random::random_projective_pom(d, rng)
                       : random::random_pom(d, rng, static_cast<std::size_t>(4 - 1 - (i % 2)));
        if (pom.size() > 4) {
            continue;
        }
        const HermitianOperator a = random::random_hermitian(d, rng);
        const auto target = optimal_estimator(rho, pom, a);
        const auto elems = oracle::elements(pom);
        double radius = 1.0;
        for (double v : target.values()) {
            radius = std::max(radius, 2.0 * std::abs(v) + 1.0);
        }
        // Coordinate scan of the full noise operator; the functional separates
        // over outcomes, so one pass reaches the global minimum on the grid.
        std::vector<double> f(pom.size(), 0.0);
        for (std::size_t m = 0; m < f.size(); ++m) {
            double best_v = 0.0, best_e = INFINITY;
            const long steps = std::lround(2.0 * radius / 1e-3);
            for (long s = 0; s <= steps; ++s) {
                f[m] = -radius + 1e-3 * static_cast<double>(s);
                const double e = oracle::noise_sq(rho.matrix(), elems, a.matrix(), f);
                if (e < best_e) {
                    best_e = e;
                    best_v = f[m];
                }
            }
            f[m] = best_v;
            worst = std::max(worst, std::abs(best_v - target[m]));
        }
        ++cases;
    }
    verdict(9, worst <= 2e-3 && cases >= 20,
            fmt("grid search (step 1e-3) over %zu instances, d in {2,3}, <= 4 outcomes: max "
                "|f_grid - f_opt| = %.3g (tol 2e-3)",
                cases, worst));
}

// ------------------------------------------------------------------ 10

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void cli_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("qestim_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::string> commands = {
        "sweep joint --trials 2000 --dim 3 --seed 7",
        "sweep geometric --trials 500 --dim 4 --seed 1",
        "sweep bound --trials 500 --dim 2 --seed 2 --format csv",
        "scenario unbiased-joint --seed 5",
    };
    bool identical = true;
    int run = 0;
    std::string detail;
    for (const auto &cmd : commands) {
        std::string outputs[2];
        int codes[2];
        const bool is_sweep = cmd.rfind("sweep", 0) == 0;
        for (int t = 0; t < 2; ++t) {
            const fs::path out = dir / ("run" + std::to_string(run++));
            std::string line = std::string(QESTIM_CLI_PATH) + " " + cmd + " --no-timestamp --out " +
                               out.string();
            if (is_sweep) {
                line += t == 0 ? " --threads 1" : " --threads 8";
            }
            codes[t] = std::system(line.c_str());
            outputs[t] = slurp(out);
        }
        const bool same = codes[0] == 0 && codes[1] == 0 && !outputs[0].empty() &&
                          outputs[0] == outputs[1];
        identical = identical && same;
        detail += (detail.empty() ? "" : "; ") + cmd.substr(0, cmd.find(" --")) +
                  (same ? " identical" : " DIFFERS");
    }
    fs::remove_all(dir);
    verdict(10, identical, "CLI reports with --no-timestamp, 1 vs 8 threads: " + detail);
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::function<void()>> steps = {
        optimality_and_geometry, joint_relation, unbiased_product, exact_uncertainty,
        energy_estimate,         heterodyne,     epr,              brute_force,
        cli_determinism};
    for (const auto &step : steps) {
        try {
            step();
        } catch (const std::exception &e) {
            std::printf("FAIL  [--] exception: %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%s: %d failing criteria, %.1f s total\n", failures ? "FAILED" : "ALL PASS",
                failures, seconds_since(t0));
    return failures ? 1 : 0;
}
