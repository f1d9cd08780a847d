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
 * Validated quantum objects on a finite-dimensional Hilbert space: observables,
 * density operators and probability operator measures, plus the moment
 * primitives (expectation, variance, commutator bound) built on them.
 *
 * All matrices are dense. Objects are immutable once constructed.
 */

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qestim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-10;

/// Largest absolute entry of a matrix (0 for an empty matrix).
double max_abs(const ComplexMatrix &m);

/// tr[XY] in O(d^2) without forming the product.
Complex trace_of_product(const ComplexMatrix &x, const ComplexMatrix &y);

class HermitianOperator {
  public:
    /// Rejects input with ‖m − m†‖_max above `tol`, then stores (m + m†)/2.
    explicit HermitianOperator(const ComplexMatrix &m,
                               double tol = kHermiticityTol);

    static HermitianOperator identity(Eigen::Index dim);
    static HermitianOperator diagonal(const std::vector<double> &values);

    [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const { return matrix_; }

    /// A + c·I.
    [[nodiscard]] HermitianOperator shifted(double c) const;

    friend HermitianOperator operator+(const HermitianOperator &a,
                                       const HermitianOperator &b);
    friend HermitianOperator operator*(double alpha,
                                       const HermitianOperator &a);

  private:
    struct Trusted {};
    HermitianOperator(ComplexMatrix m, Trusted) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

class DensityOperator {
  public:
    /// Validates hermiticity, unit trace and positivity (smallest
    /// eigenvalue ≥ −1e-10).
    explicit DensityOperator(const ComplexMatrix &m);

    [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const { return matrix_; }

    static DensityOperator maximally_mixed(Eigen::Index dim);

  private:
    ComplexMatrix matrix_;
};

struct PomOutcome {
    std::string label;
    ComplexMatrix op;
};

/// Ordered outcomes {M_m}, each positive, summing to the identity.
class ProbOperatorMeasure {
  public:
    ProbOperatorMeasure(Eigen::Index dim, std::vector<PomOutcome> outcomes,
                        double completeness_tol = kCompletenessTol);

    [[nodiscard]] Eigen::Index dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return outcomes_.size(); }
    [[nodiscard]] const std::vector<PomOutcome> &outcomes() const {
        return outcomes_;
    }
    [[nodiscard]] const ComplexMatrix &op(std::size_t m) const {
        return outcomes_[m].op;
    }
    [[nodiscard]] const std::string &label(std::size_t m) const {
        return outcomes_[m].label;
    }

    /// ‖Σ_m M_m − I‖_max.
    [[nodiscard]] double completeness_defect() const;

  private:
    Eigen::Index dim_;
    std::vector<PomOutcome> outcomes_;
};

/// Normalized |ψ⟩⟨ψ|.
DensityOperator make_pure_state(const ComplexVector &amplitudes);

/// Rank-one projectors onto an orthonormal basis. Labels default to the
/// basis index.
ProbOperatorMeasure projective_pom(const std::vector<ComplexVector> &basis,
                                   std::vector<std::string> labels = {});

double expectation(const DensityOperator &rho, const HermitianOperator &a);
double variance(const DensityOperator &rho, const HermitianOperator &a);

/// ½|tr[ρ(AB − BA)]|.
double commutator_bound(const DensityOperator &rho, const HermitianOperator &a,
                        const HermitianOperator &b);

HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();

} // namespace qestim
