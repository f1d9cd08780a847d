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

#include <Eigen/Eigenvalues>

#include "qestim/random.hpp"

using namespace qestim;

TEST_CASE("streams depend only on (seed, index)") {
    auto a = random::stream(5, 17);
    auto b = random::stream(5, 17);
    auto c = random::stream(5, 18);
    auto d = random::stream(6, 17);
    const auto va = a();
    CHECK(va == b());
    CHECK(va != c());
    CHECK(va != d());
}

TEST_CASE("Haar unitaries are unitary and uniform on average") {
    const Eigen::Index dim = 4;
    double mean_sq = 0.0;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
        auto rng = random::stream(1, static_cast<std::uint64_t>(i));
        const ComplexMatrix u = random::haar_unitary(dim, rng);
        if (i < 50) {
            CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(dim, dim)) < 1e-12);
        }
        mean_sq += std::norm(u(0, 0));
    }
    // E|U_00|² = 1/d; the sample standard error here is about 0.003.
    CHECK(mean_sq / draws == doctest::Approx(0.25).epsilon(0.06));
}

TEST_CASE("random states are valid density operators of the requested rank") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = random::stream(2, i);
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 6);
        const Eigen::Index rank = 1 + static_cast<Eigen::Index>(i % static_cast<std::uint64_t>(d));
        const DensityOperator rho = random::random_density(d, rng, rank);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
        const auto ev = es.eigenvalues();
        CHECK(ev.minCoeff() > -1e-12);
        CHECK(std::abs(ev.sum() - 1.0) < 1e-12);
        const auto positive = (ev.array() > 1e-10).count();
        CHECK(positive == rank);
    }
}

TEST_CASE("random POMs are complete and positive") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = random::stream(3, i);
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 6);
        const auto general = random::random_pom(d, rng);
        const auto rank_one = random::random_rank_one_pom(d, rng);
        const auto projective = random::random_projective_pom(d, rng);
        CHECK(general.completeness_defect() < 1e-10);
        CHECK(rank_one.completeness_defect() < 1e-10);
        CHECK(projective.size() == static_cast<std::size_t>(d));
        for (std::size_t m = 0; m < rank_one.size(); ++m) {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rank_one.op(m));
            CHECK((es.eigenvalues().array() > 1e-10).count() <= 1);
        }
    }
}
