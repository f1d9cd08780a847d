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

#include <cmath>
#include <numbers>

#include "qestim/error.hpp"
#include "qestim/scenarios.hpp"

namespace qestim::scenarios {

namespace {

ComplexVector qubit(Complex a, Complex b) {
    ComplexVector v(2);
    v << a, b;
    return v;
}

// "+" eigenvector first.
std::pair<ComplexVector, ComplexVector> pauli_eigenbasis(const std::string &axis) {
    const double s = 1.0 / std::numbers::sqrt2;
    const Complex i(0.0, 1.0);
    if (axis == "x") {
        return {qubit(s, s), qubit(s, -s)};
    }
    if (axis == "y") {
        return {qubit(s, s * i), qubit(s, -s * i)};
    }
    if (axis == "z") {
        return {qubit(1.0, 0.0), qubit(0.0, 1.0)};
    }
    throw InvalidInput("unknown qubit axis '" + axis + "' (expected x, y or z)");
}

} // namespace

DensityOperator qubit_state(const std::string &name) {
    if (name == "0") {
        return make_pure_state(qubit(1.0, 0.0));
    }
    if (name == "1") {
        return make_pure_state(qubit(0.0, 1.0));
    }
    if (name.size() == 2 && (name[0] == '+' || name[0] == '-')) {
        const auto [plus, minus] = pauli_eigenbasis(name.substr(1));
        return make_pure_state(name[0] == '+' ? plus : minus);
    }
    throw InvalidInput("unknown qubit state '" + name +
                       "' (expected 0, 1, +x, -x, +y, -y)");
}

HermitianOperator qubit_observable(const std::string &name) {
    if (name == "sx") {
        return pauli_x();
    }
    if (name == "sy") {
        return pauli_y();
    }
    if (name == "sz") {
        return pauli_z();
    }
    throw InvalidInput("unknown qubit observable '" + name +
                       "' (expected sx, sy or sz)");
}

ProbOperatorMeasure qubit_basis(const std::string &name) {
    const auto [plus, minus] = pauli_eigenbasis(name);
    return projective_pom({plus, minus}, {"+" + name, "-" + name});
}

QubitResult scenario_qubit(const DensityOperator &rho, const HermitianOperator &a,
                           const ProbOperatorMeasure &pom) {
    const MeasurementMoments mom = measurement_moments(rho, pom, a);
    QubitResult r;
    r.probabilities = mom.probabilities;
    r.optimal = optimal_estimator(mom);
    r.report = analyze_estimator(mom, r.optimal);
    return r;
}

QubitResult scenario_qubit(const std::string &state, const std::string &observable,
                           const std::string &basis) {
    return scenario_qubit(qubit_state(state), qubit_observable(observable),
                          qubit_basis(basis));
}

ProbOperatorMeasure four_outcome_pom(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0 / std::numbers::sqrt2 + 1e-15) {
        throw InvalidInput("four_outcome_pom: gamma must lie in (0, 1/√2]");
    }
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix sx = pauli_x().matrix();
    const ComplexMatrix sy = pauli_y().matrix();
    std::vector<PomOutcome> outcomes;
    for (int s1 : {1, -1}) {
        for (int s2 : {1, -1}) {
            const std::string label = std::string(s1 > 0 ? "+" : "-") +
                                      std::string(s2 > 0 ? "+" : "-");
            outcomes.push_back({label, 0.25 * (id + gamma * (s1 * sx + s2 * sy))});
        }
    }
    return ProbOperatorMeasure(2, std::move(outcomes));
}

UnbiasedJointResult scenario_unbiased_joint(double gamma, const DensityOperator &rho) {
    if (rho.dim() != 2) {
        throw InvalidInput("scenario_unbiased_joint: state must be a qubit");
    }
    const ProbOperatorMeasure pom = four_outcome_pom(gamma);
    // f(s₁, s₂) = s₁/γ, g(s₁, s₂) = s₂/γ in the outcome order of the POM.
    const OutcomeEstimator f({1.0 / gamma, 1.0 / gamma, -1.0 / gamma, -1.0 / gamma});
    const OutcomeEstimator g({1.0 / gamma, -1.0 / gamma, 1.0 / gamma, -1.0 / gamma});
    const HermitianOperator sx = pauli_x();
    const HermitianOperator sy = pauli_y();

    UnbiasedJointResult r;
    r.gamma = gamma;
    r.defect_x = unbiasedness_defect(pom, f, sx);
    r.defect_y = unbiasedness_defect(pom, g, sy);
    r.report_x = analyze_estimator(rho, pom, sx, f);
    r.report_y = analyze_estimator(rho, pom, sy, g);
    r.unbiased = unbiased_product_check(rho, pom, sx, sy, f, g);
    r.joint = joint_check(r.report_x, r.report_y, commutator_bound(rho, sx, sy));
    r.closed_form_noise_sq = 1.0 / (gamma * gamma) - 1.0;
    return r;
}

} // namespace qestim::scenarios
