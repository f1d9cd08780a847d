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

#include "qestim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qestim/error.hpp"

namespace qestim {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << m.rows()
           << "x" << m.cols();
        throw InvalidInput(os.str());
    }
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char *what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw InvalidInput(os.str());
    }
}

ComplexMatrix checked_hermitian_part(const ComplexMatrix &m, double tol,
                                     const char *what) {
    require_square(m, what);
    if (!m.allFinite()) {
        throw InvalidInput(std::string(what) + ": non-finite entries");
    }
    const double asym = max_abs(m - m.adjoint());
    if (asym > tol) {
        std::ostringstream os;
        os << what << ": not Hermitian (‖M − M†‖_max = " << asym << ")";
        throw InvalidInput(os.str());
    }
    return 0.5 * (m + m.adjoint());
}

double smallest_eigenvalue(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Complex trace_of_product(const ComplexMatrix &x, const ComplexMatrix &y) {
    // tr[XY] = Σ_jk X_jk Y_kj
    return x.transpose().cwiseProduct(y).sum();
}

HermitianOperator::HermitianOperator(const ComplexMatrix &m, double tol)
    : matrix_(checked_hermitian_part(m, tol, "HermitianOperator")) {}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
    return HermitianOperator(ComplexMatrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double> &values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                          static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    }
    return HermitianOperator(m);
}

HermitianOperator HermitianOperator::shifted(double c) const {
    ComplexMatrix m = matrix_;
    m.diagonal().array() += c;
    return HermitianOperator(std::move(m), Trusted{});
}

HermitianOperator operator+(const HermitianOperator &a,
                            const HermitianOperator &b) {
    require_same_dim(a.dim(), b.dim(), "HermitianOperator sum");
    return HermitianOperator(a.matrix_ + b.matrix_, HermitianOperator::Trusted{});
}

HermitianOperator operator*(double alpha, const HermitianOperator &a) {
    return HermitianOperator(alpha * a.matrix_, HermitianOperator::Trusted{});
}

DensityOperator::DensityOperator(const ComplexMatrix &m)
    : matrix_(checked_hermitian_part(m, kHermiticityTol, "DensityOperator")) {
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "DensityOperator: trace " << tr << " differs from 1";
        throw InvalidInput(os.str());
    }
    const double lmin = smallest_eigenvalue(matrix_);
    if (lmin < -kPositivityTol) {
        std::ostringstream os;
        os << "DensityOperator: negative eigenvalue " << lmin;
        throw InvalidInput(os.str());
    }
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
    return DensityOperator(ComplexMatrix::Identity(dim, dim) /
                           static_cast<double>(dim));
}

ProbOperatorMeasure::ProbOperatorMeasure(Eigen::Index dim,
                                         std::vector<PomOutcome> outcomes,
                                         double completeness_tol)
    : dim_(dim), outcomes_(std::move(outcomes)) {
    if (dim_ <= 0 || outcomes_.empty()) {
        throw InvalidInput("ProbOperatorMeasure: empty measurement");
    }
    for (auto &outcome : outcomes_) {
        require_same_dim(outcome.op.rows(), dim_, "ProbOperatorMeasure element");
        outcome.op = checked_hermitian_part(outcome.op, kHermiticityTol,
                                            "ProbOperatorMeasure element");
        const double lmin = smallest_eigenvalue(outcome.op);
        if (lmin < -kPositivityTol) {
            std::ostringstream os;
            os << "ProbOperatorMeasure: element '" << outcome.label
               << "' has negative eigenvalue " << lmin;
            throw InvalidInput(os.str());
        }
    }
    const double defect = completeness_defect();
    if (defect > completeness_tol) {
        std::ostringstream os;
        os << "ProbOperatorMeasure: elements do not sum to identity "
              "(‖ΣM − I‖_max = "
           << defect << ")";
        throw InvalidInput(os.str());
    }
}

double ProbOperatorMeasure::completeness_defect() const {
    ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
    for (const auto &outcome : outcomes_) {
        total += outcome.op;
    }
    total.diagonal().array() -= 1.0;
    return max_abs(total);
}

DensityOperator make_pure_state(const ComplexVector &amplitudes) {
    const double norm = amplitudes.norm();
    if (amplitudes.size() == 0 || !(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidInput("make_pure_state: zero or non-finite state vector");
    }
    const ComplexVector psi = amplitudes / norm;
    return DensityOperator(psi * psi.adjoint());
}

ProbOperatorMeasure projective_pom(const std::vector<ComplexVector> &basis,
                                   std::vector<std::string> labels) {
    const auto d = static_cast<Eigen::Index>(basis.size());
    if (d == 0) {
        throw InvalidInput("projective_pom: empty basis");
    }
    if (!labels.empty() && labels.size() != basis.size()) {
        throw InvalidInput("projective_pom: label count differs from basis size");
    }
    ComplexMatrix gram(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (basis[static_cast<std::size_t>(i)].size() != d) {
            throw InvalidInput("projective_pom: basis vectors must span the space");
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            gram(i, j) = basis[static_cast<std::size_t>(i)].dot(
                basis[static_cast<std::size_t>(j)]);
        }
    }
    const double off = max_abs(gram - ComplexMatrix::Identity(d, d));
    if (off > 1e-10) {
        std::ostringstream os;
        os << "projective_pom: basis not orthonormal (‖G − I‖_max = " << off
           << ")";
        throw InvalidInput(os.str());
    }
    std::vector<PomOutcome> outcomes;
    outcomes.reserve(basis.size());
    for (std::size_t m = 0; m < basis.size(); ++m) {
        outcomes.push_back({labels.empty() ? std::to_string(m) : labels[m],
                            basis[m] * basis[m].adjoint()});
    }
    return ProbOperatorMeasure(d, std::move(outcomes));
}

double expectation(const DensityOperator &rho, const HermitianOperator &a) {
    require_same_dim(rho.dim(), a.dim(), "expectation");
    const Complex value = trace_of_product(rho.matrix(), a.matrix());
    if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real()))) {
        throw Error("expectation: tr[ρA] has an imaginary part " +
                    std::to_string(value.imag()));
    }
    return value.real();
}

double variance(const DensityOperator &rho, const HermitianOperator &a) {
    require_same_dim(rho.dim(), a.dim(), "variance");
    const double mean = expectation(rho, a);
    const double second =
        trace_of_product(rho.matrix(), a.matrix() * a.matrix()).real();
    return std::max(0.0, second - mean * mean);
}

double commutator_bound(const DensityOperator &rho, const HermitianOperator &a,
                        const HermitianOperator &b) {
    require_same_dim(rho.dim(), a.dim(), "commutator_bound");
    require_same_dim(a.dim(), b.dim(), "commutator_bound");
    // tr[ρBA] = conj(tr[ρAB]) for Hermitian inputs; computing both keeps the
    // result exactly symmetric under A ↔ B.
    const Complex ab = trace_of_product(rho.matrix(), a.matrix() * b.matrix());
    const Complex ba = trace_of_product(rho.matrix(), b.matrix() * a.matrix());
    return 0.5 * std::abs(ab - ba);
}

HermitianOperator pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return HermitianOperator(m);
}

HermitianOperator pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return HermitianOperator(m);
}

HermitianOperator pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return HermitianOperator(m);
}

} // namespace qestim
