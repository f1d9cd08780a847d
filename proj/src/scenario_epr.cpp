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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qestim/error.hpp"
#include "qestim/scenarios.hpp"

namespace qestim::scenarios {

namespace {

// |ψ| falls to e^{-L²/4Var X} on the edge x = L; 7.6 standard deviations
// puts that at 5e-7, under the 1e-6 aliasing threshold.
constexpr double kExtentInStd = 7.6;
constexpr double kPointsPerWidth = 16.0;
constexpr double kCentralMass = 0.90;

void validate(const EprConfig &cfg) {
    if (!(cfg.sigma > 0.0) || !(cfg.tau > 0.0) || !(cfg.hbar > 0.0)) {
        throw InvalidConfig("epr: sigma, tau and hbar must be positive");
    }
    if (!(cfg.sigma * cfg.tau < cfg.hbar)) {
        throw InvalidConfig("epr: need sigma·tau < hbar");
    }
    if (!std::isfinite(cfg.a) || !std::isfinite(cfg.b)) {
        throw InvalidConfig("epr: offsets must be finite");
    }
}

void require_resolution(const EprConfig &cfg, const Grid1D &grid) {
    // Points across the full width ±σ (resp. ±ħ/τ).
    const double across_sigma = 2.0 * cfg.sigma / grid.dx;
    const double across_tau = 2.0 * cfg.hbar / cfg.tau / grid.dx;
    if (across_sigma < kPointsPerWidth || across_tau < kPointsPerWidth) {
        std::ostringstream os;
        os << "epr: grid spacing " << grid.dx << " resolves ±σ with "
           << across_sigma << " points and ±ħ/τ with " << across_tau
           << " (need " << kPointsPerWidth << "); increase n";
        throw InvalidConfig(os.str());
    }
}

struct MomentumAmplitudes {
    Grid1D p_grid;
    ComplexMatrix amplitudes;  // Ψ(p, p′), Σ|Ψ|² dp² = 1
};

MomentumAmplitudes momentum_amplitudes(const EprConfig &cfg, bool check_resolution) {
    const GridWavefunction2D psi = epr_state(cfg);
    if (check_resolution) {
        require_resolution(cfg, psi.first());
    }
    try {
        const GridWavefunction2D half = epr_momentum_transform(psi);
        const GridWavefunction2D full =
            transform_axis(half, 1, reciprocal_grid(psi.second()), -1);
        return {full.first(), full.amplitudes()};
    } catch (const AliasingError &e) {
        throw InvalidConfig(std::string("epr: ") + e.what());
    }
}

CommutingModel model_from(const MomentumAmplitudes &m) {
    CommutingModel model;
    model.joint = m.amplitudes.cwiseAbs2();
    model.joint /= model.joint.sum();
    model.values = m.p_grid.points();
    return model;
}

} // namespace

Grid1D epr_position_grid(const EprConfig &cfg) {
    validate(cfg);
    if (cfg.n < 8) {
        throw InvalidConfig("epr: need at least 8 points per axis");
    }
    const double var_x =
        (cfg.sigma * cfg.sigma + cfg.hbar * cfg.hbar / (cfg.tau * cfg.tau)) / 4.0;
    const double half = cfg.half_extent > 0.0
                            ? cfg.half_extent
                            : std::abs(cfg.a) / 2.0 + kExtentInStd * std::sqrt(var_x);
    return Grid1D::centered(cfg.n, 2.0 * half / static_cast<double>(cfg.n), cfg.hbar);
}

GridWavefunction2D epr_state(const EprConfig &cfg) {
    const Grid1D grid = epr_position_grid(cfg);
    const auto n = static_cast<Eigen::Index>(grid.n);
    const double s2 = cfg.sigma * cfg.sigma;
    const double t2 = cfg.tau * cfg.tau;
    const double h = cfg.hbar;
    ComplexMatrix amp(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = grid.point(static_cast<std::size_t>(i));
        for (Eigen::Index j = 0; j < n; ++j) {
            const double xp = grid.point(static_cast<std::size_t>(j));
            const double u = x - xp - cfg.a;
            const double v = x + xp;
            const double log_mag = -u * u / (4.0 * s2) - t2 * v * v / (4.0 * h * h);
            amp(i, j) = std::polar(std::exp(log_mag), cfg.b * v / (2.0 * h));
        }
    }
    return GridWavefunction2D(grid, grid, std::move(amp));
}

double epr_formula_estimate(const EprConfig &cfg, double p) {
    const double h2 = cfg.hbar * cfg.hbar;
    const double st = cfg.sigma * cfg.sigma * cfg.tau * cfg.tau;
    return (h2 * (cfg.b - p) + st * p) / (h2 + st);
}

double epr_formula_ratio(const EprConfig &cfg) {
    const double st = cfg.sigma * cfg.sigma * cfg.tau * cfg.tau;
    return 1.0 / std::sqrt(1.0 + st / (cfg.hbar * cfg.hbar));
}

CommutingModel epr_momentum_model(const EprConfig &cfg) {
    return model_from(momentum_amplitudes(cfg, true));
}

EprDenseProblem epr_dense_problem(const EprConfig &cfg) {
    if (cfg.n > 64) {
        throw InvalidConfig("epr_dense_problem: n² dense operators limited to n ≤ 64");
    }
    const MomentumAmplitudes m = momentum_amplitudes(cfg, false);
    const auto n = m.amplitudes.rows();
    const double dp = m.p_grid.dx;

    // Basis |k, k′⟩ at index k·n + k′.
    ComplexVector state(n * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index kp = 0; kp < n; ++kp) {
            state(k * n + kp) = m.amplitudes(k, kp) * dp;
        }
    }
    std::vector<PomOutcome> outcomes;
    std::vector<double> eigen(static_cast<std::size_t>(n * n));
    for (Eigen::Index k = 0; k < n; ++k) {
        ComplexMatrix proj = ComplexMatrix::Zero(n * n, n * n);
        for (Eigen::Index kp = 0; kp < n; ++kp) {
            proj(k * n + kp, k * n + kp) = 1.0;
            eigen[static_cast<std::size_t>(k * n + kp)] =
                m.p_grid.point(static_cast<std::size_t>(kp));
        }
        outcomes.push_back({std::to_string(k), std::move(proj)});
    }
    return {make_pure_state(state), ProbOperatorMeasure(n * n, std::move(outcomes)),
            HermitianOperator::diagonal(eigen)};
}

EprResult scenario_epr(const EprConfig &cfg) {
    const MomentumAmplitudes m = momentum_amplitudes(cfg, true);
    const CommutingModel model = model_from(m);
    const MeasurementMoments mom = measurement_moments(model);

    EprResult r;
    r.momenta = m.p_grid.points();
    r.probabilities = mom.probabilities;
    const OutcomeEstimator best = optimal_estimator(mom);
    r.optimal = best.values();

    std::vector<double> naive(r.momenta.size());
    r.formula.resize(r.momenta.size());
    for (std::size_t k = 0; k < r.momenta.size(); ++k) {
        naive[k] = cfg.b - r.momenta[k];
        r.formula[k] = epr_formula_estimate(cfg, r.momenta[k]);
    }
    r.report_optimal = analyze_estimator(mom, best);
    r.report_naive = analyze_estimator(mom, OutcomeEstimator(naive));
    r.noise_optimal = std::sqrt(r.report_optimal.noise_sq);
    r.noise_naive = std::sqrt(r.report_naive.noise_sq);
    r.ratio = r.noise_optimal / r.noise_naive;
    r.ratio_formula = epr_formula_ratio(cfg);

    const double tail = (1.0 - kCentralMass) / 2.0;
    double cumulative = 0.0;
    bool begun = false;
    for (std::size_t k = 0; k < r.probabilities.size(); ++k) {
        cumulative += r.probabilities[k];
        if (!begun && cumulative >= tail) {
            r.central_begin = k;
            begun = true;
        }
        if (cumulative >= 1.0 - tail) {
            r.central_end = k + 1;
            break;
        }
    }
    double naive_scale = 0.0;
    double naive_gap = 0.0;
    for (std::size_t k = r.central_begin; k < r.central_end; ++k) {
        const double denom = std::max(std::abs(r.formula[k]), cfg.tau);
        r.max_relative_error =
            std::max(r.max_relative_error, std::abs(r.optimal[k] - r.formula[k]) / denom);
        naive_scale = std::max(naive_scale, std::abs(naive[k]));
        naive_gap = std::max(naive_gap, std::abs(r.optimal[k] - naive[k]));
    }
    r.naive_deviation = naive_scale > 0.0 ? naive_gap / naive_scale : naive_gap;
    return r;
}

} // namespace qestim::scenarios
