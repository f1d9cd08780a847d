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
 * Worked estimation problems, each self-contained and deterministic given
 * its configuration:
 *
 *  - qubit: optimal estimate of a Pauli observable from a basis measurement;
 *  - unbiased joint: the 4-outcome qubit POM ¼(I + γ(s₁σ_x + s₂σ_y)) with
 *    unbiased estimates of σ_x and σ_y;
 *  - heterodyne: joint estimates of the quadratures X = (a + a†)/2 and
 *    Y = (a − a†)/2i from a gridded coherent-state POM;
 *  - EPR: estimating P′ of mode 2 from a momentum reading p on mode 1 of an
 *    approximate EPR state;
 *  - momentum grid / energy grid: the continuum estimates of grid.hpp on
 *    standard test states.
 */

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qestim/estimation.hpp"
#include "qestim/grid.hpp"
#include "qestim/operators.hpp"

namespace qestim::scenarios {

// ---------------------------------------------------------------- qubit

/// "0", "1", "+x", "-x", "+y", "-y".
DensityOperator qubit_state(const std::string &name);
/// "sx", "sy", "sz".
HermitianOperator qubit_observable(const std::string &name);
/// "x", "y", "z": projective measurement in that Pauli eigenbasis, "+"
/// outcome first.
ProbOperatorMeasure qubit_basis(const std::string &name);

struct QubitResult {
    std::vector<double> probabilities;
    OutcomeEstimator optimal;
    EstimateReport report;
};

QubitResult scenario_qubit(const DensityOperator &rho, const HermitianOperator &a,
                           const ProbOperatorMeasure &pom);
QubitResult scenario_qubit(const std::string &state, const std::string &observable,
                           const std::string &basis);

// ------------------------------------------------------- unbiased joint

/// Outcomes ordered (s₁, s₂) = (+,+), (+,−), (−,+), (−,−).
ProbOperatorMeasure four_outcome_pom(double gamma);

struct UnbiasedJointResult {
    double gamma = 0.0;
    double defect_x = 0.0;
    double defect_y = 0.0;
    EstimateReport report_x;
    EstimateReport report_y;
    JointReport unbiased;
    JointReport joint;
    double closed_form_noise_sq = 0.0;  ///< 1/γ² − 1
};

UnbiasedJointResult scenario_unbiased_joint(double gamma, const DensityOperator &rho);

// ----------------------------------------------------------- heterodyne

struct CoherentSpec {
    Complex beta{0.0, 0.0};
};
struct SqueezedSpec {
    double r = 0.0;
    double phi = 0.0;
};
struct FockSpec {
    std::size_t n = 0;
};
struct CustomSpec {
    std::vector<Complex> amplitudes;
};
using HeterodyneState = std::variant<CoherentSpec, SqueezedSpec, FockSpec, CustomSpec>;

struct HeterodyneConfig {
    std::size_t fock_dim = 32;
    double grid_radius = 0.0;  ///< 0 selects max(|⟨a⟩| + 5, √K + 3), K the occupied levels
    std::size_t grid_n = 64;
    HeterodyneState state = CoherentSpec{};
};

/// ⟨n|α⟩ = e^{-|α|²/2} αⁿ/√(n!) for n < dim.
ComplexVector coherent_amplitudes(Complex alpha, std::size_t dim);

/// Fock amplitudes of the configured state, normalized on the truncated
/// space. Throws InvalidConfig if truncation discards more than 1e-8 of the
/// norm.
ComplexVector heterodyne_state_amplitudes(const HeterodyneState &state,
                                          std::size_t dim);

struct HeterodyneResult {
    double grid_radius = 0.0;
    double d_alpha = 0.0;
    std::size_t outcomes = 0;
    std::size_t occupied_dim = 0;
    double truncation_defect = 0.0;  ///< ‖T − I‖_max on the occupied block

    EstimateReport x_standard;
    EstimateReport y_standard;
    EstimateReport x_optimal;
    EstimateReport y_optimal;
    JointReport joint_standard;
    JointReport joint_optimal;

    double spread_product_standard = 0.0;  ///< ΔX_est·ΔY_est
    double spread_product_optimal = 0.0;   ///< ΔX_opt·ΔY_opt
    double improvement = 0.0;              ///< ratio of the two products

    /// max |engine f_opt − (α + ¼∇ln Q)| over points with Q ≥ 1e-6 max Q.
    /// Max |closed form − engine| over points with Q ≥ 1e-6 max Q.
    double closed_form_deviation = 0.0;
    std::size_t compared_points = 0;
    /// Same, skipping points whose difference stencil touches a zero of Q.
    double closed_form_deviation_smooth = 0.0;
    /// Plaquettes of the α grid enclosing a zero of ⟨α|ψ⟩.
    std::size_t husimi_zeros = 0;
};

HeterodyneResult scenario_heterodyne(const HeterodyneConfig &cfg);

// ------------------------------------------------------------------ EPR

struct EprConfig {
    double sigma = 0.5;
    double tau = 0.5;
    double a = 0.0;
    double b = 0.0;
    double hbar = 1.0;
    std::size_t n = 256;       ///< points per axis
    double half_extent = 0.0;  ///< 0 picks an extent where ψ has decayed
};

/// Resolved position grid for the configuration (both axes share it).
Grid1D epr_position_grid(const EprConfig &cfg);

/// ψ(x, x′) ∝ exp[−(x−x′−a)²/4σ² − τ²(x+x′)²/4ħ²] e^{ib(x+x′)/2ħ}.
GridWavefunction2D epr_state(const EprConfig &cfg);

/// P′_opt(p) = [ħ²(b−p) + σ²τ²p] / (ħ² + σ²τ²).
double epr_formula_estimate(const EprConfig &cfg, double p);
/// (1 + σ²τ²/ħ²)^{-1/2}.
double epr_formula_ratio(const EprConfig &cfg);

/// Joint weights of (p, p′) on the momentum grids: outcomes are the bins of
/// mode-1 momentum, basis values the mode-2 momenta.
CommutingModel epr_momentum_model(const EprConfig &cfg);

struct EprDenseProblem {
    DensityOperator rho;
    ProbOperatorMeasure pom;
    HermitianOperator observable;
};

/// The same problem as dense operators on the full n²-dimensional
/// momentum basis; only practical for small n.
EprDenseProblem epr_dense_problem(const EprConfig &cfg);

struct EprResult {
    std::vector<double> momenta;        ///< p per outcome
    std::vector<double> probabilities;  ///< marginal of p
    std::vector<double> optimal;        ///< engine P′_opt(p)
    std::vector<double> formula;        ///< closed-form P′_opt(p)
    std::size_t central_begin = 0;      ///< central 90% of the p mass
    std::size_t central_end = 0;        ///< (half-open)

    EstimateReport report_optimal;
    EstimateReport report_naive;        ///< P′_est = b − p
    double noise_optimal = 0.0;
    double noise_naive = 0.0;
    double ratio = 0.0;
    double ratio_formula = 0.0;

    /// max over the central region of |engine − formula| / max(|formula|, τ).
    double max_relative_error = 0.0;
    /// max over the central region of |engine − (b−p)| / max|b−p|.
    double naive_deviation = 0.0;
};

EprResult scenario_epr(const EprConfig &cfg);

// -------------------------------------------------------- grid examples

struct MomentumGridConfig {
    std::string state = "gaussian";  ///< gaussian | two-bump
    double sigma = 1.0;
    double k = 0.0;           ///< plane-wave factor e^{ikx}
    double chirp = 0.0;       ///< phase S = ħ·chirp·x²/2
    double separation = 4.0;  ///< bump separation in units of sigma
    double hbar = 1.0;
    std::size_t n = 1024;
    double half_extent = 0.0;  ///< 0 picks 10σ beyond the outermost bump
};

GridWavefunction momentum_grid_state(const MomentumGridConfig &cfg);

struct MomentumGridResult {
    ExactUncertaintyReport check;
    double mean_gap = 0.0;  ///< ⟨P_opt⟩ − ⟨P⟩
};

MomentumGridResult scenario_momentum_grid(const MomentumGridConfig &cfg);

struct EnergyGridConfig {
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    std::size_t n = 16384;
    double half_extent = 0.0;  ///< 0 picks 8 oscillator lengths
};

struct EnergyGridResult {
    double target = 0.0;          ///< ħω/2
    double max_deviation = 0.0;   ///< over interior support points
    std::size_t interior_points = 0;
    double mean_estimate = 0.0;   ///< ⟨E_opt⟩ under |ψ|²
    double hamiltonian = 0.0;     ///< ⟨ψ|H|ψ⟩, kinetic term in momentum space
};

EnergyGridResult scenario_energy_grid(const EnergyGridConfig &cfg);

} // namespace qestim::scenarios
