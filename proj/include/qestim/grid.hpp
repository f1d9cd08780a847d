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

/**
 * @file
 * Wavefunctions sampled on uniform grids.
 *
 * Writing ψ = R e^{iS/ħ}, the best estimate of momentum from a position
 * reading x is ∂S/∂x, and its noise satisfies δX·ε(P_opt) = ħ/2 where δX is
 * the Fisher length of |ψ|². The best energy estimate adds the quantum
 * potential −ħ²R''/(2mR) to the classical energy.
 *
 * Derivatives are second-order finite differences restricted to the support
 * (points with R above a fraction of max R); integrals use the rectangle
 * rule. Momentum-space quantities go through a unitary discrete Fourier
 * transform with ψ̃(p) = (2πħ)^{-1/2} ∫ ψ(x) e^{-ipx/ħ} dx.
 */

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qestim/operators.hpp"

namespace qestim {

struct Grid1D {
    std::size_t n = 0;
    double x0 = 0.0;
    double dx = 0.0;
    double hbar = 1.0;

    [[nodiscard]] double point(std::size_t j) const {
        return x0 + static_cast<double>(j) * dx;
    }
    [[nodiscard]] std::vector<double> points() const;

    /// Throws InvalidInput unless n ≥ 8, dx > 0 and hbar > 0.
    void validate() const;

    /// n points with spacing dx and x_{n/2} = 0.
    static Grid1D centered(std::size_t n, double dx, double hbar = 1.0);
};

/// Conjugate grid: same n, dp = 2πħ/(n·dx), centred on zero.
Grid1D reciprocal_grid(const Grid1D &grid);

class GridWavefunction {
  public:
    /// Normalizes so that Σ|ψ_j|² dx = 1.
    GridWavefunction(Grid1D grid, std::vector<Complex> amplitudes);

    [[nodiscard]] const Grid1D &grid() const { return grid_; }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const {
        return amplitudes_;
    }
    [[nodiscard]] std::vector<double> density() const;

  private:
    Grid1D grid_;
    std::vector<Complex> amplitudes_;
};

/// ψ(x, x′) on a product grid; rows index the first coordinate.
class GridWavefunction2D {
  public:
    GridWavefunction2D(Grid1D first, Grid1D second, ComplexMatrix amplitudes);

    [[nodiscard]] const Grid1D &first() const { return first_; }
    [[nodiscard]] const Grid1D &second() const { return second_; }
    [[nodiscard]] const ComplexMatrix &amplitudes() const { return amplitudes_; }

  private:
    Grid1D first_;
    Grid1D second_;
    ComplexMatrix amplitudes_;
};

struct PolarFields {
    std::vector<double> amplitude;  ///< R
    std::vector<double> action;     ///< S, unwrapped per support component
    std::vector<bool> support;
    /// Half-open index ranges of the connected support components.
    std::vector<std::pair<std::size_t, std::size_t>> components;
};

/// Values on the grid; entries off the support are zero.
struct GridField {
    std::vector<double> values;
    std::vector<bool> support;
};

inline constexpr double kSupportFraction = 1e-8;

PolarFields polar_decompose(const GridWavefunction &psi,
                            double support_fraction = kSupportFraction);

/// P_opt(x) = ∂S/∂x.
GridField momentum_optimal_estimate(const GridWavefunction &psi);

/// F^{-1/2} with F = Σ p′²/p dx over the support.
double fisher_length(const GridWavefunction &psi);

struct ExactUncertaintyReport {
    double fisher_length = 0.0;
    double noise = 0.0;             ///< ε(P_opt) = ħ√F / 2
    double noise_cross = 0.0;       ///< √(Var P − Var_p P_opt)
    double product = 0.0;           ///< δX·ε(P_opt)
    double product_cross = 0.0;     ///< δX·noise_cross
    double hbar_half = 0.0;
    double residual = 0.0;          ///< max |product − ħ/2| over both paths
    double momentum_mean = 0.0;     ///< ⟨P⟩ in momentum space
    double momentum_variance = 0.0;
    double estimate_mean = 0.0;     ///< Σ p P_opt dx
    double estimate_variance = 0.0;
};

/// Throws Error when the two noise paths disagree by more than
/// `path_tolerance` relative to ε².
ExactUncertaintyReport exact_uncertainty_check(const GridWavefunction &psi,
                                               double path_tolerance = 1e-3);

/// E_opt(x) = (∂S)²/(2m) + V + Q with Q = −ħ²R''/(2mR).
GridField energy_optimal_estimate(const GridWavefunction &psi,
                                  std::span<const double> potential,
                                  double mass);

/// Transform between reciprocal grids; sign −1 is position → momentum.
/// No decay check.
std::vector<Complex> fourier_transform(const Grid1D &from,
                                       std::span<const Complex> values,
                                       const Grid1D &to, int sign);

inline constexpr double kBoundaryDecay = 1e-6;

/// Momentum representation on reciprocal_grid(ψ.grid()). Throws
/// AliasingError if ψ has not decayed at the boundary.
GridWavefunction to_momentum(const GridWavefunction &psi);

struct MomentumMoments {
    double mean = 0.0;
    double second = 0.0;
};
MomentumMoments momentum_moments(const GridWavefunction &psi);

/// Transforms the first coordinate to momentum: ψ(x, x′) → ψ̃(p, x′).
GridWavefunction2D epr_momentum_transform(const GridWavefunction2D &psi);

/// Undoes epr_momentum_transform given the original position grid.
GridWavefunction2D inverse_epr_momentum_transform(const GridWavefunction2D &psi,
                                                  const Grid1D &position_grid);

/// Transforms one coordinate (0 or 1) onto `target` with the given sign.
GridWavefunction2D transform_axis(const GridWavefunction2D &psi, int axis,
                                  const Grid1D &target, int sign);

} // namespace qestim
