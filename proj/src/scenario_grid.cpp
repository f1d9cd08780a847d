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

#include "qestim/error.hpp"
#include "qestim/scenarios.hpp"

namespace qestim::scenarios {

GridWavefunction momentum_grid_state(const MomentumGridConfig &cfg) {
    if (!(cfg.sigma > 0.0) || !(cfg.hbar > 0.0)) {
        throw InvalidConfig("momentum-grid: sigma and hbar must be positive");
    }
    const bool two_bump = cfg.state == "two-bump";
    if (!two_bump && cfg.state != "gaussian") {
        throw InvalidConfig("momentum-grid: state must be 'gaussian' or 'two-bump'");
    }
    const double offset = two_bump ? cfg.separation * cfg.sigma / 2.0 : 0.0;
    const double half =
        cfg.half_extent > 0.0 ? cfg.half_extent : offset + 10.0 * cfg.sigma;
    const Grid1D grid =
        Grid1D::centered(cfg.n, 2.0 * half / static_cast<double>(cfg.n), cfg.hbar);

    const double w = 4.0 * cfg.sigma * cfg.sigma;
    std::vector<Complex> amp(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.point(j);
        double r = std::exp(-(x - offset) * (x - offset) / w);
        if (two_bump) {
            r += std::exp(-(x + offset) * (x + offset) / w);
        }
        amp[j] = std::polar(r, cfg.k * x + 0.5 * cfg.chirp * x * x);
    }
    return GridWavefunction(grid, std::move(amp));
}

MomentumGridResult scenario_momentum_grid(const MomentumGridConfig &cfg) {
    const GridWavefunction psi = momentum_grid_state(cfg);
    MomentumGridResult r;
    try {
        r.check = exact_uncertainty_check(psi);
    } catch (const AliasingError &e) {
        throw InvalidConfig(std::string("momentum-grid: ") + e.what());
    }
    r.mean_gap = r.check.estimate_mean - r.check.momentum_mean;
    return r;
}

EnergyGridResult scenario_energy_grid(const EnergyGridConfig &cfg) {
    if (!(cfg.mass > 0.0) || !(cfg.omega > 0.0) || !(cfg.hbar > 0.0)) {
        throw InvalidConfig("energy-grid: mass, omega and hbar must be positive");
    }
    const double length = std::sqrt(cfg.hbar / (cfg.mass * cfg.omega));
    const double half = cfg.half_extent > 0.0 ? cfg.half_extent : 8.0 * length;
    const Grid1D grid =
        Grid1D::centered(cfg.n, 2.0 * half / static_cast<double>(cfg.n), cfg.hbar);

    std::vector<Complex> amp(grid.n);
    std::vector<double> potential(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.point(j);
        amp[j] = std::exp(-x * x / (2.0 * length * length));
        potential[j] = 0.5 * cfg.mass * cfg.omega * cfg.omega * x * x;
    }
    const GridWavefunction psi(grid, std::move(amp));
    const GridField energy = energy_optimal_estimate(psi, potential, cfg.mass);
    const PolarFields polar = polar_decompose(psi);
    const std::vector<double> p = psi.density();

    EnergyGridResult r;
    r.target = cfg.hbar * cfg.omega / 2.0;
    // Interior: two points clear of each support edge, away from the
    // one-sided stencils.
    for (const auto &[b, e] : polar.components) {
        for (std::size_t j = b + 2; j + 2 < e; ++j) {
            r.max_deviation = std::max(r.max_deviation, std::abs(energy.values[j] - r.target));
            ++r.interior_points;
        }
    }
    double weight = 0.0;
    double potential_mean = 0.0;
    for (std::size_t j = 0; j < grid.n; ++j) {
        potential_mean += potential[j] * p[j] * grid.dx;
        if (energy.support[j]) {
            weight += p[j] * grid.dx;
            r.mean_estimate += energy.values[j] * p[j] * grid.dx;
        }
    }
    r.mean_estimate /= weight;
    try {
        r.hamiltonian = momentum_moments(psi).second / (2.0 * cfg.mass) + potential_mean;
    } catch (const AliasingError &e) {
        throw InvalidConfig(std::string("energy-grid: ") + e.what());
    }
    return r;
}

} // namespace qestim::scenarios
