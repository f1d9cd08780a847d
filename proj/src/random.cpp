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

#include "qestim/random.hpp"

#include <cmath>
#include <string>

#include "qestim/error.hpp"

namespace qestim::random {

namespace {

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Engine &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

struct WeightedProjectors {
    std::vector<ComplexVector> vectors;
    std::vector<double> weights;
    ComplexMatrix deficit;
};

WeightedProjectors draw_weighted_projectors(Eigen::Index dim, Engine &rng,
                                            std::size_t projectors) {
    if (projectors == 0) {
        projectors = std::uniform_int_distribution<std::size_t>(
            1, 2 * static_cast<std::size_t>(dim))(rng);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        WeightedProjectors out;
        out.deficit = ComplexMatrix::Identity(dim, dim);
        for (std::size_t k = 0; k < projectors; ++k) {
            ComplexVector v = haar_vector(dim, rng);
            const double w = 2.0 * unit(rng) / static_cast<double>(projectors);
            out.deficit -= w * (v * v.adjoint());
            out.vectors.push_back(std::move(v));
            out.weights.push_back(w);
        }
        out.deficit = 0.5 * (out.deficit + out.deficit.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out.deficit,
                                                        Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() >= 1e-12) {
            return out;
        }
    }
    throw Error("random_pom: could not draw a positive deficit");
}

} // namespace

Engine stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Engine(seq);
}

ComplexMatrix haar_unitary(Eigen::Index dim, Engine &rng) {
    const ComplexMatrix z = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0 ? d / mag : Complex(1.0));
    }
    return q;
}

ComplexVector haar_vector(Eigen::Index dim, Engine &rng) {
    ComplexVector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

HermitianOperator random_hermitian(Eigen::Index dim, Engine &rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    return HermitianOperator(0.5 * (g + g.adjoint()));
}

DensityOperator random_pure_state(Eigen::Index dim, Engine &rng) {
    return make_pure_state(haar_vector(dim, rng));
}

DensityOperator random_density(Eigen::Index dim, Engine &rng,
                               Eigen::Index rank) {
    if (rank <= 0) {
        rank = std::uniform_int_distribution<Eigen::Index>(1, dim)(rng);
    }
    const ComplexMatrix u = haar_unitary(dim, rng);
    std::exponential_distribution<double> expo(1.0);
    Eigen::VectorXd w(rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
        w(k) = expo(rng);
    }
    w /= w.sum();
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < rank; ++k) {
        rho += w(k) * (u.col(k) * u.col(k).adjoint());
    }
    rho /= rho.trace().real();
    return DensityOperator(0.5 * (rho + rho.adjoint()));
}

ProbOperatorMeasure random_projective_pom(Eigen::Index dim, Engine &rng) {
    const ComplexMatrix u = haar_unitary(dim, rng);
    std::vector<ComplexVector> basis;
    for (Eigen::Index j = 0; j < dim; ++j) {
        basis.emplace_back(u.col(j));
    }
    return projective_pom(basis);
}

ProbOperatorMeasure random_pom(Eigen::Index dim, Engine &rng,
                               std::size_t projectors) {
    WeightedProjectors wp = draw_weighted_projectors(dim, rng, projectors);
    std::vector<PomOutcome> outcomes;
    for (std::size_t k = 0; k < wp.vectors.size(); ++k) {
        outcomes.push_back({std::to_string(k),
                            wp.weights[k] * (wp.vectors[k] * wp.vectors[k].adjoint())});
    }
    outcomes.push_back({"deficit", std::move(wp.deficit)});
    return ProbOperatorMeasure(dim, std::move(outcomes));
}

ProbOperatorMeasure random_rank_one_pom(Eigen::Index dim, Engine &rng,
                                        std::size_t projectors) {
    WeightedProjectors wp = draw_weighted_projectors(dim, rng, projectors);
    std::vector<PomOutcome> outcomes;
    for (std::size_t k = 0; k < wp.vectors.size(); ++k) {
        outcomes.push_back({std::to_string(k),
                            wp.weights[k] * (wp.vectors[k] * wp.vectors[k].adjoint())});
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(wp.deficit);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const ComplexVector e = es.eigenvectors().col(j);
        outcomes.push_back({"deficit" + std::to_string(j),
                            es.eigenvalues()(j) * (e * e.adjoint())});
    }
    return ProbOperatorMeasure(dim, std::move(outcomes));
}

std::vector<double> random_estimator(std::size_t outcomes, Engine &rng,
                                     double scale) {
    std::normal_distribution<double> normal(0.0, scale);
    std::vector<double> f(outcomes);
    for (auto &v : f) {
        v = normal(rng);
    }
    return f;
}

} // namespace qestim::random
