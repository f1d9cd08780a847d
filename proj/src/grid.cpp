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

#include "qestim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "qestim/error.hpp"

namespace qestim {

namespace {

using Component = std::pair<std::size_t, std::size_t>;

double wrap_angle(double a) {
    return std::remainder(a, 2.0 * std::numbers::pi);
}

// First derivative on each support component: central differences inside,
// second-order one-sided at the component ends.
std::vector<double> first_derivative(const std::vector<double> &f, double h,
                                     const std::vector<Component> &components) {
    std::vector<double> d(f.size(), 0.0);
    for (const auto &[b, e] : components) {
        const std::size_t len = e - b;
        if (len < 2) {
            continue;
        }
        if (len == 2) {
            d[b] = d[b + 1] = (f[b + 1] - f[b]) / h;
            continue;
        }
        for (std::size_t j = b + 1; j + 1 < e; ++j) {
            d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
        }
        d[b] = (-3.0 * f[b] + 4.0 * f[b + 1] - f[b + 2]) / (2.0 * h);
        d[e - 1] = (3.0 * f[e - 1] - 4.0 * f[e - 2] + f[e - 3]) / (2.0 * h);
    }
    return d;
}

std::vector<double> second_derivative(const std::vector<double> &f, double h,
                                      const std::vector<Component> &components) {
    std::vector<double> d(f.size(), 0.0);
    const double h2 = h * h;
    for (const auto &[b, e] : components) {
        const std::size_t len = e - b;
        if (len < 3) {
            continue;
        }
        for (std::size_t j = b + 1; j + 1 < e; ++j) {
            d[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / h2;
        }
        if (len >= 4) {
            d[b] = (2.0 * f[b] - 5.0 * f[b + 1] + 4.0 * f[b + 2] - f[b + 3]) / h2;
            d[e - 1] =
                (2.0 * f[e - 1] - 5.0 * f[e - 2] + 4.0 * f[e - 3] - f[e - 4]) / h2;
        } else {
            d[b] = d[b + 1];
            d[e - 1] = d[e - 2];
        }
    }
    return d;
}

void require_decay(std::span<const Complex> edge_a, std::span<const Complex> edge_b,
                   double peak, const char *what) {
    double edge = 0.0;
    for (const auto &v : edge_a) {
        edge = std::max(edge, std::abs(v));
    }
    for (const auto &v : edge_b) {
        edge = std::max(edge, std::abs(v));
    }
    if (edge > kBoundaryDecay * peak) {
        std::ostringstream os;
        os << what << ": |ψ| at the boundary is " << edge / peak
           << " of its peak; enlarge the grid to avoid wraparound";
        throw AliasingError(os.str());
    }
}

void require_reciprocal(const Grid1D &from, const Grid1D &to) {
    const double two_pi_hbar = 2.0 * std::numbers::pi * from.hbar;
    if (from.n != to.n || std::abs(from.hbar - to.hbar) > 1e-14 * from.hbar ||
        std::abs(from.dx * to.dx * static_cast<double>(from.n) - two_pi_hbar) >
            1e-10 * two_pi_hbar) {
        throw InvalidInput("fourier_transform: grids are not reciprocal");
    }
}

// Density-weighted mean and variance over the support.
std::pair<double, double> weighted_moments(const std::vector<double> &values,
                                           const std::vector<double> &density,
                                           const std::vector<bool> &support,
                                           double dx) {
    double w = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!support[j]) {
            continue;
        }
        w += density[j] * dx;
        m1 += density[j] * values[j] * dx;
        m2 += density[j] * values[j] * values[j] * dx;
    }
    m1 /= w;
    m2 /= w;
    return {m1, std::max(0.0, m2 - m1 * m1)};
}

} // namespace

std::vector<double> Grid1D::points() const {
    std::vector<double> xs(n);
    for (std::size_t j = 0; j < n; ++j) {
        xs[j] = point(j);
    }
    return xs;
}

void Grid1D::validate() const {
    if (n < 8 || !(dx > 0.0) || !(hbar > 0.0) || !std::isfinite(x0) ||
        !std::isfinite(dx) || !std::isfinite(hbar)) {
        std::ostringstream os;
        os << "Grid1D: need n ≥ 8, dx > 0, hbar > 0 (got n=" << n
           << ", dx=" << dx << ", hbar=" << hbar << ")";
        throw InvalidInput(os.str());
    }
}

Grid1D Grid1D::centered(std::size_t n, double dx, double hbar) {
    Grid1D g{n, -static_cast<double>(n / 2) * dx, dx, hbar};
    g.validate();
    return g;
}

Grid1D reciprocal_grid(const Grid1D &grid) {
    grid.validate();
    const double dp = 2.0 * std::numbers::pi * grid.hbar /
                      (static_cast<double>(grid.n) * grid.dx);
    return Grid1D::centered(grid.n, dp, grid.hbar);
}

GridWavefunction::GridWavefunction(Grid1D grid, std::vector<Complex> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
    grid_.validate();
    if (amplitudes_.size() != grid_.n) {
        throw InvalidInput("GridWavefunction: amplitude count differs from grid");
    }
    double norm = 0.0;
    for (const auto &a : amplitudes_) {
        norm += std::norm(a);
    }
    norm *= grid_.dx;
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidInput("GridWavefunction: zero or non-finite wavefunction");
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &a : amplitudes_) {
        a *= scale;
    }
}

std::vector<double> GridWavefunction::density() const {
    std::vector<double> p(amplitudes_.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = std::norm(amplitudes_[j]);
    }
    return p;
}

GridWavefunction2D::GridWavefunction2D(Grid1D first, Grid1D second,
                                       ComplexMatrix amplitudes)
    : first_(first), second_(second), amplitudes_(std::move(amplitudes)) {
    first_.validate();
    second_.validate();
    if (amplitudes_.rows() != static_cast<Eigen::Index>(first_.n) ||
        amplitudes_.cols() != static_cast<Eigen::Index>(second_.n)) {
        throw InvalidInput("GridWavefunction2D: amplitude shape differs from grid");
    }
    const double norm = amplitudes_.squaredNorm() * first_.dx * second_.dx;
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidInput("GridWavefunction2D: zero or non-finite wavefunction");
    }
    amplitudes_ /= std::sqrt(norm);
}

PolarFields polar_decompose(const GridWavefunction &psi, double support_fraction) {
    const auto &amp = psi.amplitudes();
    const std::size_t n = amp.size();
    const double hbar = psi.grid().hbar;

    PolarFields out;
    out.amplitude.resize(n);
    out.action.assign(n, 0.0);
    out.support.assign(n, false);
    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out.amplitude[j] = std::abs(amp[j]);
        peak = std::max(peak, out.amplitude[j]);
    }
    const double threshold = support_fraction * peak;
    for (std::size_t j = 0; j < n; ++j) {
        out.support[j] = out.amplitude[j] > threshold;
    }
    for (std::size_t j = 0; j < n;) {
        if (!out.support[j]) {
            ++j;
            continue;
        }
        std::size_t e = j;
        while (e < n && out.support[e]) {
            ++e;
        }
        out.components.emplace_back(j, e);
        j = e;
    }
    if (out.components.empty()) {
        throw InvalidInput("polar_decompose: wavefunction has no support");
    }

    // Unwrap outward from the largest amplitude in each component.
    for (const auto &[b, e] : out.components) {
        std::size_t anchor = b;
        for (std::size_t j = b; j < e; ++j) {
            if (out.amplitude[j] > out.amplitude[anchor]) {
                anchor = j;
            }
        }
        out.action[anchor] = hbar * std::arg(amp[anchor]);
        for (std::size_t j = anchor + 1; j < e; ++j) {
            const double prev = out.action[j - 1] / hbar;
            out.action[j] = hbar * (prev + wrap_angle(std::arg(amp[j]) - prev));
        }
        for (std::size_t j = anchor; j-- > b;) {
            const double next = out.action[j + 1] / hbar;
            out.action[j] = hbar * (next + wrap_angle(std::arg(amp[j]) - next));
        }
    }
    return out;
}

GridField momentum_optimal_estimate(const GridWavefunction &psi) {
    const PolarFields polar = polar_decompose(psi);
    return {first_derivative(polar.action, psi.grid().dx, polar.components),
            polar.support};
}

double fisher_length(const GridWavefunction &psi) {
    const PolarFields polar = polar_decompose(psi);
    const std::vector<double> p = psi.density();
    const std::vector<double> dp = first_derivative(p, psi.grid().dx, polar.components);
    double fisher = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (polar.support[j]) {
            fisher += dp[j] * dp[j] / p[j];
        }
    }
    fisher *= psi.grid().dx;
    // Relative to the scale 1/(grid extent)², anything this small is a flat
    // density up to rounding.
    const double extent = psi.grid().dx * static_cast<double>(psi.grid().n);
    if (!(fisher > 1e-12 / (extent * extent))) {
        throw DegenerateDensity("fisher_length: Fisher information vanishes");
    }
    return 1.0 / std::sqrt(fisher);
}

ExactUncertaintyReport exact_uncertainty_check(const GridWavefunction &psi,
                                               double path_tolerance) {
    const double hbar = psi.grid().hbar;
    ExactUncertaintyReport r;
    r.fisher_length = fisher_length(psi);
    const double fisher = 1.0 / (r.fisher_length * r.fisher_length);
    const double noise_sq = hbar * hbar * fisher / 4.0;
    r.noise = std::sqrt(noise_sq);

    const MomentumMoments mm = momentum_moments(psi);
    r.momentum_mean = mm.mean;
    r.momentum_variance = std::max(0.0, mm.second - mm.mean * mm.mean);

    const GridField estimate = momentum_optimal_estimate(psi);
    std::tie(r.estimate_mean, r.estimate_variance) = weighted_moments(
        estimate.values, psi.density(), estimate.support, psi.grid().dx);

    const double noise_sq_cross = r.momentum_variance - r.estimate_variance;
    if (std::abs(noise_sq_cross - noise_sq) > path_tolerance * noise_sq) {
        std::ostringstream os;
        os << "exact_uncertainty_check: ħ²F/4 = " << noise_sq
           << " but Var(P) − Var(P_opt) = " << noise_sq_cross;
        throw Error(os.str());
    }
    r.noise_cross = std::sqrt(std::max(0.0, noise_sq_cross));
    r.product = r.fisher_length * r.noise;
    r.product_cross = r.fisher_length * r.noise_cross;
    r.hbar_half = hbar / 2.0;
    r.residual = std::max(std::abs(r.product - r.hbar_half),
                          std::abs(r.product_cross - r.hbar_half));
    return r;
}

GridField energy_optimal_estimate(const GridWavefunction &psi,
                                  std::span<const double> potential,
                                  double mass) {
    if (potential.size() != psi.grid().n) {
        throw InvalidInput("energy_optimal_estimate: potential length differs "
                           "from grid");
    }
    if (!(mass > 0.0)) {
        throw InvalidInput("energy_optimal_estimate: mass must be positive");
    }
    const double hbar = psi.grid().hbar;
    const double h = psi.grid().dx;
    const PolarFields polar = polar_decompose(psi);
    const std::vector<double> grad_s = first_derivative(polar.action, h, polar.components);
    const std::vector<double> lap_r =
        second_derivative(polar.amplitude, h, polar.components);

    GridField out{std::vector<double>(psi.grid().n, 0.0), polar.support};
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        if (!polar.support[j]) {
            continue;
        }
        if (!std::isfinite(potential[j])) {
            throw InvalidInput("energy_optimal_estimate: non-finite potential "
                               "on the support");
        }
        const double quantum =
            -hbar * hbar * lap_r[j] / (2.0 * mass * polar.amplitude[j]);
        out.values[j] = grad_s[j] * grad_s[j] / (2.0 * mass) + potential[j] + quantum;
    }
    return out;
}

std::vector<Complex> fourier_transform(const Grid1D &from,
                                       std::span<const Complex> values,
                                       const Grid1D &to, int sign) {
    if (sign != 1 && sign != -1) {
        throw InvalidInput("fourier_transform: sign must be ±1");
    }
    if (values.size() != from.n) {
        throw InvalidInput("fourier_transform: value count differs from grid");
    }
    require_reciprocal(from, to);
    const std::size_t n = from.n;
    const double hbar = from.hbar;
    const double s = static_cast<double>(sign);

    // e^{s·i·y_k·z_j/ħ} = e^{s·i·y_k·z0/ħ} · e^{s·i·y0·j·dz/ħ} · e^{s·2πi·jk/n}
    std::vector<Complex> in(n);
    for (std::size_t j = 0; j < n; ++j) {
        in[j] = values[j] * std::polar(1.0, s * to.x0 * static_cast<double>(j) *
                                                from.dx / hbar);
    }
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<Complex> out(n);
    if (sign < 0) {
        fft.fwd(out, in);
    } else {
        fft.inv(out, in);
    }
    const double scale = from.dx / std::sqrt(2.0 * std::numbers::pi * hbar);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] *= scale * std::polar(1.0, s * to.point(k) * from.x0 / hbar);
    }
    return out;
}

GridWavefunction to_momentum(const GridWavefunction &psi) {
    const auto &amp = psi.amplitudes();
    double peak = 0.0;
    for (const auto &a : amp) {
        peak = std::max(peak, std::abs(a));
    }
    const std::span<const Complex> all(amp);
    require_decay(all.first(1), all.last(1), peak, "to_momentum");
    const Grid1D p_grid = reciprocal_grid(psi.grid());
    return GridWavefunction(p_grid, fourier_transform(psi.grid(), amp, p_grid, -1));
}

MomentumMoments momentum_moments(const GridWavefunction &psi) {
    const GridWavefunction phi = to_momentum(psi);
    MomentumMoments mm;
    const auto &amp = phi.amplitudes();
    for (std::size_t k = 0; k < amp.size(); ++k) {
        const double p = phi.grid().point(k);
        const double w = std::norm(amp[k]) * phi.grid().dx;
        mm.mean += p * w;
        mm.second += p * p * w;
    }
    return mm;
}

GridWavefunction2D transform_axis(const GridWavefunction2D &psi, int axis,
                                  const Grid1D &target, int sign) {
    if (axis != 0 && axis != 1) {
        throw InvalidInput("transform_axis: axis must be 0 or 1");
    }
    const ComplexMatrix &amp = psi.amplitudes();
    const Grid1D &from = axis == 0 ? psi.first() : psi.second();
    require_reciprocal(from, target);

    // Boundary decay along the transformed coordinate.
    const double peak = amp.cwiseAbs().maxCoeff();
    const Eigen::Index last = (axis == 0 ? amp.rows() : amp.cols()) - 1;
    const double edge =
        axis == 0 ? std::max(amp.row(0).cwiseAbs().maxCoeff(),
                             amp.row(last).cwiseAbs().maxCoeff())
                  : std::max(amp.col(0).cwiseAbs().maxCoeff(),
                             amp.col(last).cwiseAbs().maxCoeff());
    if (edge > kBoundaryDecay * peak) {
        std::ostringstream os;
        os << "transform_axis: |ψ| at the boundary is " << edge / peak
           << " of its peak; enlarge the grid to avoid wraparound";
        throw AliasingError(os.str());
    }

    ComplexMatrix out(amp.rows(), amp.cols());
    if (axis == 0) {
        std::vector<Complex> line(static_cast<std::size_t>(amp.rows()));
        for (Eigen::Index c = 0; c < amp.cols(); ++c) {
            Eigen::Map<ComplexVector>(line.data(), amp.rows()) = amp.col(c);
            const auto t = fourier_transform(from, line, target, sign);
            out.col(c) = Eigen::Map<const ComplexVector>(t.data(), amp.rows());
        }
        return GridWavefunction2D(target, psi.second(), std::move(out));
    }
    std::vector<Complex> line(static_cast<std::size_t>(amp.cols()));
    for (Eigen::Index r = 0; r < amp.rows(); ++r) {
        Eigen::Map<ComplexVector>(line.data(), amp.cols()) = amp.row(r).transpose();
        const auto t = fourier_transform(from, line, target, sign);
        out.row(r) = Eigen::Map<const ComplexVector>(t.data(), amp.cols()).transpose();
    }
    return GridWavefunction2D(psi.first(), target, std::move(out));
}

GridWavefunction2D epr_momentum_transform(const GridWavefunction2D &psi) {
    return transform_axis(psi, 0, reciprocal_grid(psi.first()), -1);
}

GridWavefunction2D inverse_epr_momentum_transform(const GridWavefunction2D &psi,
                                                  const Grid1D &position_grid) {
    return transform_axis(psi, 0, position_grid, +1);
}

} // namespace qestim
