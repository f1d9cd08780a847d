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

#include <cmath>

#include "qestim/error.hpp"
#include "qestim/operators.hpp"
#include "qestim/random.hpp"

using namespace qestim;

namespace {

const Complex kI{0.0, 1.0};

ComplexVector ket(std::initializer_list<Complex> v) {
    ComplexVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index k = 0;
    for (const auto &c : v) {
        out(k++) = c;
    }
    return out;
}

} // namespace

TEST_CASE("hermitian operator rejects non-hermitian input") {
    ComplexMatrix m(2, 2);
    m << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(HermitianOperator{m}, InvalidInput);
    m(1, 0) = 1.0;
    CHECK_NOTHROW(HermitianOperator{m});
}

TEST_CASE("hermitian operator tolerates rounding and symmetrizes") {
    ComplexMatrix m = pauli_y().matrix();
    m(0, 1) += 1e-14;
    const HermitianOperator h(m);
    CHECK(max_abs(h.matrix() - h.matrix().adjoint()) == 0.0);
}

TEST_CASE("density operator validation") {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator{m}, InvalidInput);  // trace 2
    ComplexMatrix neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityOperator{neg}, InvalidInput);
    CHECK_NOTHROW(DensityOperator::maximally_mixed(3));
    CHECK_THROWS_AS(make_pure_state(ComplexVector::Zero(2)), InvalidInput);
}

TEST_CASE("pure state is normalized projector") {
    const DensityOperator rho = make_pure_state(ket({3.0, 4.0 * kI}));
    CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) < 1e-15);
    CHECK(max_abs(rho.matrix() * rho.matrix() - rho.matrix()) < 1e-15);
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(9.0 / 25.0));
}

TEST_CASE("POM validation: completeness and positivity") {
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    CHECK_NOTHROW(ProbOperatorMeasure(2, {{"a", half}, {"b", half}}));
    CHECK_THROWS_AS(ProbOperatorMeasure(2, {{"a", half}}), InvalidInput);
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = -0.1;
    ComplexMatrix rest = ComplexMatrix::Identity(2, 2) - neg;
    CHECK_THROWS_AS(ProbOperatorMeasure(2, {{"a", neg}, {"b", rest}}), InvalidInput);
    CHECK_THROWS_AS(ProbOperatorMeasure(2, {}), InvalidInput);
}

TEST_CASE("projective POM needs an orthonormal spanning basis") {
    CHECK_NOTHROW(projective_pom({ket({1.0, 0.0}), ket({0.0, 1.0})}));
    CHECK_THROWS_AS(projective_pom({ket({1.0, 0.0}), ket({1.0, 1.0})}), InvalidInput);
    CHECK_THROWS_AS(projective_pom({ket({1.0, 0.0})}), InvalidInput);
    const auto pom = projective_pom({ket({1.0, 0.0}), ket({0.0, 1.0})}, {"up", "down"});
    CHECK(pom.label(1) == "down");
}

TEST_CASE("expectation and variance of Pauli operators") {
    const DensityOperator up = make_pure_state(ket({1.0, 0.0}));
    CHECK(expectation(up, pauli_z()) == doctest::Approx(1.0));
    CHECK(variance(up, pauli_z()) == doctest::Approx(0.0));
    CHECK(variance(up, pauli_x()) == doctest::Approx(1.0));
    const DensityOperator plus_y = make_pure_state(ket({1.0, kI}));
    CHECK(expectation(plus_y, pauli_y()) == doctest::Approx(1.0));
}

TEST_CASE("commutator bound: [sx, sy] = 2i sz") {
    const DensityOperator up = make_pure_state(ket({1.0, 0.0}));
    CHECK(commutator_bound(up, pauli_x(), pauli_y()) == doctest::Approx(1.0));
    const DensityOperator plus_x = make_pure_state(ket({1.0, 1.0}));
    CHECK(commutator_bound(plus_x, pauli_x(), pauli_y()) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("property: commutator bound is symmetric and matches the oracle") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = random::stream(11, i);
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 5);
        const DensityOperator rho = random::random_density(d, rng);
        const HermitianOperator a = random::random_hermitian(d, rng);
        const HermitianOperator b = random::random_hermitian(d, rng);
        const ComplexMatrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
        const double oracle = 0.5 * std::abs((rho.matrix() * comm).trace());
        CHECK(commutator_bound(rho, a, b) == commutator_bound(rho, b, a));
        CHECK(std::abs(commutator_bound(rho, a, b) - oracle) < 1e-12 * (1.0 + oracle));
    }
}

TEST_CASE("property: expectation is linear and variance shift invariant") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = random::stream(12, i);
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 6);
        const DensityOperator rho = random::random_density(d, rng);
        const HermitianOperator a = random::random_hermitian(d, rng);
        const HermitianOperator b = random::random_hermitian(d, rng);
        const double lhs = expectation(rho, 2.5 * a + (-1.5) * b);
        const double rhs = 2.5 * expectation(rho, a) - 1.5 * expectation(rho, b);
        CHECK(std::abs(lhs - rhs) < 1e-11);
        CHECK(std::abs(variance(rho, a.shifted(3.7)) - variance(rho, a)) < 1e-10);
        CHECK(variance(rho, a) >= 0.0);
    }
}

TEST_CASE("trace_of_product agrees with the full product") {
    auto rng = random::stream(13, 0);
    const HermitianOperator a = random::random_hermitian(5, rng);
    const HermitianOperator b = random::random_hermitian(5, rng);
    CHECK(std::abs(trace_of_product(a.matrix(), b.matrix()) -
                   (a.matrix() * b.matrix()).trace()) < 1e-12);
}
