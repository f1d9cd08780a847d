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

#include "qestim/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qestim/error.hpp"

namespace qestim {

namespace {

constexpr double kIdentityTol = 1e-9;

void require_dims(const DensityOperator &rho, const ProbOperatorMeasure &pom,
                  const HermitianOperator &a, const char *what) {
    if (rho.dim() != pom.dim() || rho.dim() != a.dim()) {
        std::ostringstream os;
        os << what << ": dimension mismatch (state " << rho.dim() << ", POM "
           << pom.dim() << ", observable " << a.dim() << ")";
        throw InvalidInput(os.str());
    }
}

void require_length(const MeasurementMoments &mom, const OutcomeEstimator &f,
                    const char *what) {
    if (f.size() != mom.size()) {
        std::ostringstream os;
        os << what << ": estimator has " << f.size() << " values for "
           << mom.size() << " outcomes";
        throw InvalidInput(os.str());
    }
}

// Tolerances below are absolute for O(1) observables and scale with the
// observable's second moment otherwise.
double scale_of(const MeasurementMoments &mom) {
    return std::max(1.0, mom.second_moment);
}

double clamp_probability(double p) {
    if (p < -1e-9) {
        throw Error("outcome probability " + std::to_string(p) +
                    " is negative beyond rounding");
    }
    return std::max(0.0, p);
}

double raw_noise_sq(const MeasurementMoments &mom, const OutcomeEstimator &f) {
    double quad = 0.0;
    double cross = 0.0;
    for (std::size_t m = 0; m < mom.size(); ++m) {
        quad += f[m] * f[m] * mom.probabilities[m];
        cross += f[m] * mom.signal[m];
    }
    return quad - cross + mom.second_moment;
}

} // namespace

OutcomeEstimator::OutcomeEstimator(std::vector<double> values)
    : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw InvalidInput("OutcomeEstimator: non-finite value");
        }
    }
}

std::vector<double> outcome_probabilities(const DensityOperator &rho,
                                          const ProbOperatorMeasure &pom) {
    if (rho.dim() != pom.dim()) {
        throw InvalidInput("outcome_probabilities: dimension mismatch");
    }
    std::vector<double> p(pom.size());
    double total = 0.0;
    for (std::size_t m = 0; m < pom.size(); ++m) {
        p[m] = clamp_probability(trace_of_product(rho.matrix(), pom.op(m)).real());
        total += p[m];
    }
    const double allowed =
        static_cast<double>(pom.dim()) * pom.completeness_defect() + 1e-9;
    if (std::abs(total - 1.0) > allowed) {
        throw Error("outcome_probabilities: probabilities sum to " +
                    std::to_string(total));
    }
    return p;
}

MeasurementMoments measurement_moments(const DensityOperator &rho,
                                       const ProbOperatorMeasure &pom,
                                       const HermitianOperator &a) {
    require_dims(rho, pom, a, "measurement_moments");
    const ComplexMatrix rho_a = rho.matrix() * a.matrix();
    const ComplexMatrix a_rho = a.matrix() * rho.matrix();
    const double tol = 1e-10 * std::max(1.0, max_abs(a.matrix()));

    MeasurementMoments mom;
    mom.probabilities = outcome_probabilities(rho, pom);
    mom.signal.resize(pom.size());
    mom.asymmetry.resize(pom.size());
    for (std::size_t m = 0; m < pom.size(); ++m) {
        const Complex am = trace_of_product(rho_a, pom.op(m));  // tr[ρAM_m]
        const Complex ma = trace_of_product(a_rho, pom.op(m));  // tr[ρM_mA]
        const Complex s = am + ma;
        const Complex c = am - ma;
        if (std::abs(s.imag()) > tol || std::abs(c.real()) > tol) {
            throw Error("measurement_moments: overlap phases inconsistent with "
                        "Hermitian inputs at outcome '" + pom.label(m) + "'");
        }
        mom.signal[m] = s.real();
        mom.asymmetry[m] = std::abs(c.imag());
    }
    mom.mean = trace_of_product(rho.matrix(), a.matrix()).real();
    mom.second_moment = trace_of_product(rho_a, a.matrix()).real();
    return mom;
}

MeasurementMoments measurement_moments(const CommutingModel &model) {
    const auto rows = model.joint.rows();
    const auto cols = model.joint.cols();
    if (rows == 0 || cols != static_cast<Eigen::Index>(model.values.size())) {
        throw InvalidInput("CommutingModel: joint weights and eigenvalues disagree");
    }
    if (!model.joint.allFinite() || model.joint.minCoeff() < -1e-12) {
        throw InvalidInput("CommutingModel: joint weights must be finite and "
                           "non-negative");
    }
    const double total = model.joint.sum();
    if (std::abs(total - 1.0) > 1e-8) {
        throw InvalidInput("CommutingModel: joint weights sum to " +
                           std::to_string(total));
    }
    const Eigen::Map<const Eigen::VectorXd> a(model.values.data(), cols);

    MeasurementMoments mom;
    mom.probabilities.resize(static_cast<std::size_t>(rows));
    mom.signal.resize(static_cast<std::size_t>(rows));
    mom.asymmetry.assign(static_cast<std::size_t>(rows), 0.0);
    for (Eigen::Index m = 0; m < rows; ++m) {
        const auto row = model.joint.row(m).cwiseMax(0.0);
        mom.probabilities[static_cast<std::size_t>(m)] = row.sum();
        mom.signal[static_cast<std::size_t>(m)] = 2.0 * row.dot(a.transpose());
    }
    const Eigen::VectorXd marginal = model.joint.cwiseMax(0.0).colwise().sum();
    mom.mean = marginal.dot(a);
    mom.second_moment = marginal.dot(a.cwiseProduct(a));
    return mom;
}

std::vector<double> signal_overlap(const DensityOperator &rho,
                                   const ProbOperatorMeasure &pom,
                                   const HermitianOperator &a) {
    return measurement_moments(rho, pom, a).signal;
}

std::vector<double> asym_overlap(const DensityOperator &rho,
                                 const ProbOperatorMeasure &pom,
                                 const HermitianOperator &a) {
    return measurement_moments(rho, pom, a).asymmetry;
}

double noise_lower_bound_sq(const MeasurementMoments &mom,
                            const EngineOptions &opts) {
    double bound = 0.0;
    for (std::size_t m = 0; m < mom.size(); ++m) {
        const double p = mom.probabilities[m];
        if (p > opts.dead_outcome_threshold) {
            bound += mom.asymmetry[m] * mom.asymmetry[m] / (4.0 * p);
        }
    }
    return bound;
}

double noise_lower_bound_sq(const DensityOperator &rho,
                            const ProbOperatorMeasure &pom,
                            const HermitianOperator &a,
                            const EngineOptions &opts) {
    return noise_lower_bound_sq(measurement_moments(rho, pom, a), opts);
}

double noise_sq(const MeasurementMoments &mom, const OutcomeEstimator &f) {
    require_length(mom, f, "noise_sq");
    const double value = raw_noise_sq(mom, f);
    const double bound = noise_lower_bound_sq(mom);
    if (value < bound - kIdentityTol * scale_of(mom)) {
        std::ostringstream os;
        os << "noise_sq: " << value << " falls below the lower bound " << bound;
        throw Error(os.str());
    }
    return std::max(0.0, value);
}

double noise_sq(const DensityOperator &rho, const ProbOperatorMeasure &pom,
                const HermitianOperator &a, const OutcomeEstimator &f) {
    return noise_sq(measurement_moments(rho, pom, a), f);
}

OutcomeEstimator optimal_estimator(const MeasurementMoments &mom,
                                   const EngineOptions &opts) {
    std::vector<double> f(mom.size(), 0.0);
    for (std::size_t m = 0; m < mom.size(); ++m) {
        const double p = mom.probabilities[m];
        if (p > opts.dead_outcome_threshold) {
            f[m] = mom.signal[m] / (2.0 * p);
        }
    }
    return OutcomeEstimator(std::move(f));
}

OutcomeEstimator optimal_estimator(const DensityOperator &rho,
                                   const ProbOperatorMeasure &pom,
                                   const HermitianOperator &a,
                                   const EngineOptions &opts) {
    return optimal_estimator(measurement_moments(rho, pom, a), opts);
}

EstimateReport analyze_estimator(const MeasurementMoments &mom,
                                 const OutcomeEstimator &f,
                                 const EngineOptions &opts) {
    require_length(mom, f, "analyze_estimator");
    EstimateReport r;
    r.noise_sq = noise_sq(mom, f);
    r.noise_bound_sq = noise_lower_bound_sq(mom, opts);

    double first = 0.0;
    double second = 0.0;
    for (std::size_t m = 0; m < mom.size(); ++m) {
        first += f[m] * mom.probabilities[m];
        second += f[m] * f[m] * mom.probabilities[m];
    }
    r.estimator_mean = first;
    r.estimator_variance = std::max(0.0, second - first * first);
    r.observable_variance =
        std::max(0.0, mom.second_moment - mom.mean * mom.mean);

    const OutcomeEstimator best = optimal_estimator(mom, opts);
    r.is_optimal = true;
    for (std::size_t m = 0; m < mom.size(); ++m) {
        if (mom.probabilities[m] > opts.dead_outcome_threshold &&
            std::abs(f[m] - best[m]) > kIdentityTol * std::max(1.0, std::abs(best[m]))) {
            r.is_optimal = false;
            break;
        }
    }
    if (r.is_optimal) {
        const double residual =
            r.estimator_variance + r.noise_sq - r.observable_variance;
        if (std::abs(residual) > kIdentityTol * scale_of(mom)) {
            std::ostringstream os;
            os << "analyze_estimator: spread/noise split of the optimal "
                  "estimate is off by "
               << residual;
            throw Error(os.str());
        }
    }
    return r;
}

EstimateReport analyze_estimator(const DensityOperator &rho,
                                 const ProbOperatorMeasure &pom,
                                 const HermitianOperator &a,
                                 const OutcomeEstimator &f,
                                 const EngineOptions &opts) {
    return analyze_estimator(measurement_moments(rho, pom, a), f, opts);
}

JointReport joint_check(const EstimateReport &report_a,
                        const EstimateReport &report_b, double commutator_rhs) {
    const double spread_a = std::sqrt(report_a.estimator_variance);
    const double spread_b = std::sqrt(report_b.estimator_variance);
    const double noise_a = std::sqrt(report_a.noise_sq);
    const double noise_b = std::sqrt(report_b.noise_sq);
    JointReport j;
    j.lhs = spread_a * noise_b + noise_a * spread_b + noise_a * noise_b;
    j.rhs = commutator_rhs;
    j.slack = j.lhs - j.rhs;
    return j;
}

JointReport joint_check(const DensityOperator &rho,
                        const ProbOperatorMeasure &pom,
                        const HermitianOperator &a, const HermitianOperator &b,
                        const OutcomeEstimator &f, const OutcomeEstimator &g,
                        const EngineOptions &opts) {
    const EstimateReport ra = analyze_estimator(rho, pom, a, f, opts);
    const EstimateReport rb = analyze_estimator(rho, pom, b, g, opts);
    return joint_check(ra, rb, commutator_bound(rho, a, b));
}

double unbiasedness_defect(const ProbOperatorMeasure &pom,
                           const OutcomeEstimator &f,
                           const HermitianOperator &a) {
    if (pom.dim() != a.dim()) {
        throw InvalidInput("unbiasedness_defect: dimension mismatch");
    }
    if (f.size() != pom.size()) {
        throw InvalidInput("unbiasedness_defect: estimator length mismatch");
    }
    ComplexMatrix diff = -a.matrix();
    for (std::size_t m = 0; m < pom.size(); ++m) {
        diff += f[m] * pom.op(m);
    }
    return max_abs(diff);
}

JointReport unbiased_product_check(const DensityOperator &rho,
                                   const ProbOperatorMeasure &pom,
                                   const HermitianOperator &a,
                                   const HermitianOperator &b,
                                   const OutcomeEstimator &f,
                                   const OutcomeEstimator &g,
                                   const EngineOptions &opts) {
    const double defect_f = unbiasedness_defect(pom, f, a);
    const double defect_g = unbiasedness_defect(pom, g, b);
    if (defect_f > kUnbiasedTol || defect_g > kUnbiasedTol) {
        std::ostringstream os;
        os << "unbiased_product_check: estimators are biased (defects "
           << defect_f << ", " << defect_g << ")";
        throw PreconditionViolation(os.str());
    }
    const EstimateReport ra = analyze_estimator(rho, pom, a, f, opts);
    const EstimateReport rb = analyze_estimator(rho, pom, b, g, opts);
    JointReport j;
    j.lhs = std::sqrt(ra.noise_sq) * std::sqrt(rb.noise_sq);
    j.rhs = commutator_bound(rho, a, b);
    j.slack = j.lhs - j.rhs;
    return j;
}

} // namespace qestim
