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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qestim/error.hpp"
#include "qestim/grid.hpp"
#include "qestim/scenarios.hpp"

using namespace qestim;

namespace {

GridWavefunction gaussian(std::size_t n, double half, double sigma, double k = 0.0,
                          double center = 0.0, double hbar = 1.0) {
    const Grid1D g = Grid1D::centered(n, 2.0 * half / static_cast<double>(n), hbar);
    std::vector<Complex> amp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = g.point(j) - center;
        amp[j] = std::polar(std::exp(-x * x / (4.0 * sigma * sigma)), k * g.point(j));
    }
    return GridWavefunction(g, amp);
}

// Node-free smooth state ψ = exp(u(x) + i S(x)) with closed-form derivatives.
struct SmoothState {
    double mu, sigma, bump, k, chirp, wiggle;
    double u(double x) const {
        return -(x - mu) * (x - mu) / (4.0 * sigma * sigma) + bump * std::sin(x);
    }
    double du(double x) const { return -(x - mu) / (2.0 * sigma * sigma) + bump * std::cos(x); }
    double s(double x) const { return k * x + 0.5 * chirp * x * x + wiggle * std::sin(1.3 * x); }
    double ds(double x) const { return k + chirp * x + 1.3 * wiggle * std::cos(1.3 * x); }
};

double potential(double x) { return 0.5 * x * x + 0.1 * x * x * x * x; }

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid1D::centered(4, 0.1).validate(), InvalidInput);
    CHECK_THROWS_AS((Grid1D{16, 0.0, -1.0, 1.0}).validate(), InvalidInput);
    CHECK_THROWS_AS((Grid1D{16, 0.0, 0.1, 0.0}).validate(), InvalidInput);
    const Grid1D g = Grid1D::centered(16, 0.5);
    CHECK(g.point(8) == 0.0);
    const Grid1D r = reciprocal_grid(g);
    CHECK(r.dx == doctest::Approx(2.0 * std::numbers::pi / (16 * 0.5)));
    CHECK(r.point(8) == 0.0);
}

TEST_CASE("wavefunctions are normalized on construction") {
    const auto psi = gaussian(128, 8.0, 1.0);
    double norm = 0.0;
    for (double p : psi.density()) {
        norm += p * psi.grid().dx;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(GridWavefunction(Grid1D::centered(8, 1.0), std::vector<Complex>(8)),
                    InvalidInput);
}

TEST_CASE("fast Fourier transform matches a direct O(n²) DFT") {
    for (double hbar : {1.0, 0.37}) {
        for (int sign : {-1, 1}) {
            const Grid1D x = Grid1D::centered(64, 0.23, hbar);
            const Grid1D p = reciprocal_grid(x);
            std::mt19937_64 gen(7);
            std::normal_distribution<double> nd;
            std::vector<Complex> v(x.n);
            for (auto &c : v) {
                c = {nd(gen), nd(gen)};
            }
            const auto fast = fourier_transform(x, v, p, sign);
            const auto slow = oracle::direct_dft(x.points(), v, p.points(), x.dx, hbar, sign);
            double err = 0.0;
            for (std::size_t k = 0; k < fast.size(); ++k) {
                err = std::max(err, std::abs(fast[k] - slow[k]));
            }
            CHECK(err < 1e-12);
        }
    }
}

TEST_CASE("Fourier transform rejects mismatched grids") {
    const Grid1D x = Grid1D::centered(32, 0.2);
    std::vector<Complex> v(32, 1.0);
    CHECK_THROWS_AS(fourier_transform(x, v, x, -1), InvalidInput);
    CHECK_THROWS_AS(fourier_transform(x, v, reciprocal_grid(x), 2), InvalidInput);
}

TEST_CASE("Gaussian momentum moments match the analytic values") {
    const double sigma = 0.8, k = 1.5, hbar = 0.5;
    const auto psi = gaussian(1024, 12.0, sigma, k, 0.0, hbar);
    const auto mm = momentum_moments(psi);
    CHECK(mm.mean == doctest::Approx(hbar * k).epsilon(1e-10));
    const double var = hbar * hbar / (4.0 * sigma * sigma);
    CHECK(mm.second == doctest::Approx(var + hbar * hbar * k * k).epsilon(1e-10));
}

TEST_CASE("insufficient boundary decay is reported as aliasing") {
    const auto wide = gaussian(256, 3.0, 1.5);
    CHECK_THROWS_AS(to_momentum(wide), AliasingError);
}

TEST_CASE("Fisher length of a Gaussian mixture matches quadrature") {
    // p(x) = ½N(−a, s²) + ½N(a, s²), F = ∫ p′²/p.
    const double a = 1.7, s = 0.9;
    auto normal = [&](double x, double c) {
        return std::exp(-(x - c) * (x - c) / (2 * s * s)) / (s * std::sqrt(2 * std::numbers::pi));
    };
    auto density = [&](double x) { return 0.5 * normal(x, -a) + 0.5 * normal(x, a); };
    auto slope = [&](double x) {
        return 0.5 * normal(x, -a) * (-(x + a) / (s * s)) + 0.5 * normal(x, a) * (-(x - a) / (s * s));
    };
    const double fisher = oracle::simpson(
        [&](double x) { return slope(x) * slope(x) / density(x); }, -15.0, 15.0, 20000);

    const Grid1D g = Grid1D::centered(2048, 30.0 / 2048.0);
    std::vector<Complex> amp(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        amp[j] = std::sqrt(density(g.point(j)));
    }
    CHECK(std::abs(fisher_length(GridWavefunction(g, amp)) - 1.0 / std::sqrt(fisher)) <= 1e-4);
}

TEST_CASE("flat density has no Fisher information") {
    const Grid1D g = Grid1D::centered(64, 0.1);
    CHECK_THROWS_AS(fisher_length(GridWavefunction(g, std::vector<Complex>(64, 1.0))),
                    DegenerateDensity);
}

TEST_CASE("exact uncertainty relation on a Gaussian") {
    const auto r = exact_uncertainty_check(gaussian(1024, 10.0, 1.0));
    CHECK(r.residual <= 1e-6);
    CHECK(r.fisher_length == doctest::Approx(1.0).epsilon(1e-6));  // δX = σ for a Gaussian
}

TEST_CASE("plane-wave factor gives a constant optimal momentum estimate") {
    const double k = 2.0, hbar = 0.7;
    const auto psi = gaussian(1024, 12.0, 1.0, k, 0.0, hbar);
    const GridField f = momentum_optimal_estimate(psi);
    const PolarFields polar = polar_decompose(psi);
    for (const auto &[b, e] : polar.components) {
        for (std::size_t j = b; j < e; ++j) {
            CHECK(std::abs(f.values[j] - hbar * k) < 1e-9);
        }
    }
}

TEST_CASE("property: optimal momentum estimate is gauge invariant") {
    const auto psi = scenarios::momentum_grid_state({"two-bump", 1.0, 0.3, 0.2, 4.0, 1.0, 1024, 0.0});
    std::vector<Complex> rotated = psi.amplitudes();
    for (auto &c : rotated) {
        c *= std::polar(1.0, 2.1);
    }
    const GridField a = momentum_optimal_estimate(psi);
    const GridField b = momentum_optimal_estimate(GridWavefunction(psi.grid(), rotated));
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        CHECK(a.support[j] == b.support[j]);
        CHECK(std::abs(a.values[j] - b.values[j]) < 1e-9);
    }
}

TEST_CASE("separated bumps split into support components") {
    const Grid1D g = Grid1D::centered(512, 40.0 / 512);
    std::vector<Complex> amp(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.point(j);
        amp[j] = std::exp(-(x - 8) * (x - 8)) + std::exp(-(x + 8) * (x + 8));
    }
    CHECK(polar_decompose(GridWavefunction(g, amp)).components.size() == 2);
}

TEST_CASE("property: mean optimal energy equals the Hamiltonian expectation") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const SmoothState st{-0.5 + u(gen), 0.6 + 0.5 * u(gen), 0.3 * u(gen),
                             -1.0 + 2.0 * u(gen), 0.4 * u(gen) - 0.2, 0.5 * u(gen)};
        const double mass = 0.7 + 0.6 * u(gen), hbar = 1.0, half = 12.0;

        // Oracle: closed-form derivatives integrated by Simpson's rule.
        auto weight = [&](double x) { return std::exp(2.0 * st.u(x)); };
        const double norm = oracle::simpson(weight, -half, half, 40000);
        const double h_mean =
            oracle::simpson(
                [&](double x) {
                    const double kinetic =
                        hbar * hbar / (2.0 * mass) * (st.du(x) * st.du(x) + st.ds(x) * st.ds(x));
                    return (kinetic + potential(x)) * weight(x);
                },
                -half, half, 40000) /
            norm;

        const Grid1D g = Grid1D::centered(4096, 2.0 * half / 4096.0, hbar);
        std::vector<Complex> amp(g.n);
        std::vector<double> v(g.n);
        for (std::size_t j = 0; j < g.n; ++j) {
            const double x = g.point(j);
            amp[j] = std::polar(std::exp(st.u(x)), st.s(x));
            v[j] = potential(x);
        }
        const GridWavefunction psi(g, amp);
        const GridField e = energy_optimal_estimate(psi, v, mass);
        const auto p = psi.density();
        double mean = 0.0, w = 0.0;
        for (std::size_t j = 0; j < g.n; ++j) {
            if (e.support[j]) {
                mean += e.values[j] * p[j] * g.dx;
                w += p[j] * g.dx;
            }
        }
        CHECK(std::abs(mean / w - h_mean) <= 1e-4);
    }
}

TEST_CASE("two-dimensional transform round trip") {
    const scenarios::EprConfig cfg;
    const GridWavefunction2D psi = scenarios::epr_state(cfg);
    const GridWavefunction2D back =
        inverse_epr_momentum_transform(epr_momentum_transform(psi), psi.first());
    CHECK(max_abs(back.amplitudes() - psi.amplitudes()) <= 1e-8);
    CHECK_THROWS_AS(transform_axis(psi, 2, psi.first(), -1), InvalidInput);
}
