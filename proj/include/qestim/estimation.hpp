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
 * Estimating an observable A from the outcomes of a measurement M.
 *
 * An estimator f assigns a real value f(m) to each outcome. Its noise is
 *
 *     ε(A_f)² = Σ_m f(m)² p_m − Σ_m f(m) s_m + tr[ρA²],
 *
 * with p_m = tr[ρM_m] and s_m = tr[ρ(AM_m + M_mA)]. For a projective
 * measurement on a pure state this is ⟨(f(M) − A)²⟩. The minimizing
 * estimator is f_opt(m) = s_m / (2p_m), and every estimator obeys
 *
 *     ε(A_f)² ≥ Σ_m |tr[ρ(AM_m − M_mA)]|² / (4p_m).
 *
 * The bound is attained by f_opt whenever ρ is pure and every M_m has
 * rank one; for mixed states or higher-rank elements f_opt can sit strictly
 * above it. In all cases (ΔA_opt)² + ε(A_opt)² = (ΔA)².
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qestim/operators.hpp"

namespace qestim {

struct EngineOptions {
    /// Outcomes with p_m at or below this are "dead": f_opt(m) = 0 and they
    /// drop out of the noise bound.
    double dead_outcome_threshold = 1e-12;
};

/// Outcome-indexed real estimates f(m).
class OutcomeEstimator {
  public:
    OutcomeEstimator() = default;
    explicit OutcomeEstimator(std::vector<double> values);

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t m) const { return values_[m]; }
    [[nodiscard]] const std::vector<double> &values() const { return values_; }

  private:
    std::vector<double> values_;
};

/// Everything the estimation formulas need from (ρ, M, A).
struct MeasurementMoments {
    std::vector<double> probabilities;  ///< p_m
    std::vector<double> signal;         ///< s_m = tr[ρ(AM_m + M_mA)]
    std::vector<double> asymmetry;      ///< |tr[ρ(AM_m − M_mA)]|
    double mean = 0.0;                  ///< tr[ρA]
    double second_moment = 0.0;         ///< tr[ρA²]

    [[nodiscard]] std::size_t size() const { return probabilities.size(); }
};

struct EstimateReport {
    double noise_sq = 0.0;
    double noise_bound_sq = 0.0;
    double estimator_mean = 0.0;
    double estimator_variance = 0.0;
    double observable_variance = 0.0;
    bool is_optimal = false;
};

struct JointReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
};

/// A measurement and observable that are diagonal in one common basis
/// {|k⟩}: M_m = Σ_k μ_m(k)|k⟩⟨k| and A = Σ_k a_k|k⟩⟨k|. Only the joint
/// weights P(m, k) = μ_m(k)⟨k|ρ|k⟩ enter, so very large bases stay cheap.
/// All commutators vanish and the noise bound is identically zero.
struct CommutingModel {
    Eigen::MatrixXd joint;          ///< rows: outcomes m, cols: basis index k
    std::vector<double> values;     ///< eigenvalues a_k of A
};

std::vector<double> outcome_probabilities(const DensityOperator &rho,
                                          const ProbOperatorMeasure &pom);

/// s_m = tr[ρ(AM_m + M_mA)].
std::vector<double> signal_overlap(const DensityOperator &rho,
                                   const ProbOperatorMeasure &pom,
                                   const HermitianOperator &a);

/// |c_m| with c_m = tr[ρ(AM_m − M_mA)].
std::vector<double> asym_overlap(const DensityOperator &rho,
                                 const ProbOperatorMeasure &pom,
                                 const HermitianOperator &a);

MeasurementMoments measurement_moments(const DensityOperator &rho,
                                       const ProbOperatorMeasure &pom,
                                       const HermitianOperator &a);
MeasurementMoments measurement_moments(const CommutingModel &model);

double noise_sq(const MeasurementMoments &mom, const OutcomeEstimator &f);
double noise_sq(const DensityOperator &rho, const ProbOperatorMeasure &pom,
                const HermitianOperator &a, const OutcomeEstimator &f);

OutcomeEstimator optimal_estimator(const MeasurementMoments &mom,
                                   const EngineOptions &opts = {});
OutcomeEstimator optimal_estimator(const DensityOperator &rho,
                                   const ProbOperatorMeasure &pom,
                                   const HermitianOperator &a,
                                   const EngineOptions &opts = {});

double noise_lower_bound_sq(const MeasurementMoments &mom,
                            const EngineOptions &opts = {});
double noise_lower_bound_sq(const DensityOperator &rho,
                            const ProbOperatorMeasure &pom,
                            const HermitianOperator &a,
                            const EngineOptions &opts = {});

EstimateReport analyze_estimator(const MeasurementMoments &mom,
                                 const OutcomeEstimator &f,
                                 const EngineOptions &opts = {});
EstimateReport analyze_estimator(const DensityOperator &rho,
                                 const ProbOperatorMeasure &pom,
                                 const HermitianOperator &a,
                                 const OutcomeEstimator &f,
                                 const EngineOptions &opts = {});

/// Left side ΔA_f ε(B_g) + ε(A_f) ΔB_g + ε(A_f) ε(B_g) of the joint
/// measurement relation against ½|⟨[A,B]⟩|.
JointReport joint_check(const EstimateReport &report_a,
                        const EstimateReport &report_b, double commutator_rhs);
JointReport joint_check(const DensityOperator &rho,
                        const ProbOperatorMeasure &pom,
                        const HermitianOperator &a, const HermitianOperator &b,
                        const OutcomeEstimator &f, const OutcomeEstimator &g,
                        const EngineOptions &opts = {});

/// ‖Σ_m f(m)M_m − A‖_max; zero iff f(M) is unbiased for A on every state.
double unbiasedness_defect(const ProbOperatorMeasure &pom,
                           const OutcomeEstimator &f,
                           const HermitianOperator &a);

inline constexpr double kUnbiasedTol = 1e-9;

/// ε(A_f)·ε(B_g) against ½|⟨[A,B]⟩|. Throws PreconditionViolation unless
/// both estimators are unbiased within kUnbiasedTol.
JointReport unbiased_product_check(const DensityOperator &rho,
                                   const ProbOperatorMeasure &pom,
                                   const HermitianOperator &a,
                                   const HermitianOperator &b,
                                   const OutcomeEstimator &f,
                                   const OutcomeEstimator &g,
                                   const EngineOptions &opts = {});

} // namespace qestim
