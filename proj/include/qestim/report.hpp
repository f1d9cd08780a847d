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
 * Machine-readable run reports.
 *
 * JSON layout (keys in this order):
 *
 *     { "version", "seed", ["timestamp"], "config", "results", "checks" }
 *
 * `results` maps record names to objects of numbers or number arrays;
 * `checks` is a list of {name, pass, observed, comparison, threshold}.
 * Floating-point numbers are written with 17 significant digits.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qestim::report {

using Json = nlohmann::ordered_json;

struct Check {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    std::string comparison;  ///< "<=" or ">="
    double threshold = 0.0;

    /// Passes iff observed ≤ threshold.
    static Check at_most(std::string name, double observed, double threshold);
    /// Passes iff observed ≥ threshold.
    static Check at_least(std::string name, double observed, double threshold);
};

struct RunReport {
    std::string version;
    std::uint64_t seed = 0;
    std::optional<std::string> timestamp;
    Json config = Json::object();
    Json results = Json::object();
    std::vector<Check> checks;

    [[nodiscard]] bool all_pass() const;
    void add(Check check) { checks.push_back(std::move(check)); }
};

/// Current UTC time as ISO 8601.
std::string utc_timestamp();

std::string to_json(const RunReport &report);

/// One row per scalar: section,name,value,comparison,threshold,pass.
std::string to_csv(const RunReport &report);

} // namespace qestim::report
