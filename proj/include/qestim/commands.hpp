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
 * Runners behind the `qestim` command line. Each returns a RunReport whose
 * checks decide the exit status; none of them print or touch the clock.
 */

#pragma once

#include <cstdint>
#include <string>

#include "qestim/report.hpp"
#include "qestim/scenarios.hpp"

namespace qestim::commands {

inline constexpr const char *kVersion = "0.1.0";

/// Parses "a+bi", "a-bi", "a", "bi", "-i" (also with 'j'). Throws InvalidInput.
Complex parse_complex(const std::string &text);

/// Parses a comma-separated list of complex numbers.
std::vector<Complex> parse_complex_list(const std::string &text);

// Relative tolerance for identities the engine evaluates in closed form.
inline constexpr double kIdentityTol = 1e-9;

report::RunReport run_qubit(const std::string &state, const std::string &observable,
                            const std::string &basis);

struct UnbiasedJointOptions {
    double gamma = 0.70710678118654752;
    std::string state = "0";
    std::size_t trials = 100;  ///< random qubit states in the sweep
    std::uint64_t seed = 1;
};

report::RunReport run_unbiased_joint(const UnbiasedJointOptions &opts);

report::RunReport run_heterodyne(const scenarios::HeterodyneConfig &cfg);

report::RunReport run_epr(const scenarios::EprConfig &cfg);

report::RunReport run_momentum_grid(const scenarios::MomentumGridConfig &cfg);

report::RunReport run_energy_grid(const scenarios::EnergyGridConfig &cfg);

struct SweepOptions {
    std::string kind;  ///< joint | geometric | bound
    std::size_t trials = 1000;
    int dim = 2;
    std::uint64_t seed = 1;
    unsigned threads = 1;  ///< affects speed only, never the report
};

/// Randomized invariant sweep. Trial i draws from random::stream(seed, i).
report::RunReport run_sweep(const SweepOptions &opts);

} // namespace qestim::commands
