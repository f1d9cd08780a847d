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

// Seeded generators for random states, observables and measurements.

#pragma once

#include <cstdint>
#include <random>

#include "qestim/operators.hpp"

namespace qestim::random {

using Engine = std::mt19937_64;

/// Independent stream for trial `index` of a run seeded with `seed`; the
/// stream depends only on the pair, never on scheduling.
Engine stream(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
ComplexMatrix haar_unitary(Eigen::Index dim, Engine &rng);

ComplexVector haar_vector(Eigen::Index dim, Engine &rng);

/// Hermitian matrix with i.i.d. Gaussian entries (GUE-like).
HermitianOperator random_hermitian(Eigen::Index dim, Engine &rng);

DensityOperator random_pure_state(Eigen::Index dim, Engine &rng);

/// Random mixture of `rank` Haar-random pure states with Dirichlet-like
/// weights; rank 0 picks a rank uniformly from 1..dim.
DensityOperator random_density(Eigen::Index dim, Engine &rng,
                               Eigen::Index rank = 0);

/// Projective measurement onto a Haar-random orthonormal basis.
ProbOperatorMeasure random_projective_pom(Eigen::Index dim, Engine &rng);

/// k weighted Haar-random pure projectors plus the deficit I − Σ. Draws that
/// leave a non-positive deficit are rejected and redrawn.
ProbOperatorMeasure random_pom(Eigen::Index dim, Engine &rng,
                               std::size_t projectors = 0);

/// As random_pom, with the deficit split along its eigenvectors so every
/// element has rank one.
ProbOperatorMeasure random_rank_one_pom(Eigen::Index dim, Engine &rng,
                                        std::size_t projectors = 0);

std::vector<double> random_estimator(std::size_t outcomes, Engine &rng,
                                     double scale = 1.0);

} // namespace qestim::random
