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

#include "qestim/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace qestim::report {

namespace {

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string &s) { return Json(s).dump(); }

void write_json(std::ostringstream &os, const Json &j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << (first ? "" : ",\n") << pad << quoted(it.key()) << ": ";
            write_json(os, it.value(), indent + 2);
            first = false;
        }
        os << "\n" << close << "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        const bool flat = std::all_of(j.begin(), j.end(),
                                      [](const Json &e) { return e.is_primitive(); });
        if (flat) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << (i ? ", " : "");
                write_json(os, j[i], indent + 2);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << (i ? ",\n" : "") << pad;
            write_json(os, j[i], indent + 2);
        }
        os << "\n" << close << "]";
        return;
    }
    case Json::value_t::number_float:
        os << format_number(j.get<double>());
        return;
    default:
        os << j.dump();
        return;
    }
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string scalar_text(const Json &j) {
    if (j.is_number_float()) {
        return format_number(j.get<double>());
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    return j.dump();
}

void flatten(const Json &j, const std::string &prefix, const std::string &section,
             std::ostringstream &os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                    section, os);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", section, os);
        }
    } else {
        os << section << "," << csv_field(prefix) << "," << csv_field(scalar_text(j))
           << ",,,\n";
    }
}

} // namespace

Check Check::at_most(std::string name, double observed, double threshold) {
    return {std::move(name), observed <= threshold, observed, "<=", threshold};
}

Check Check::at_least(std::string name, double observed, double threshold) {
    return {std::move(name), observed >= threshold, observed, ">=", threshold};
}

bool RunReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check &c) { return c.pass; });
}

std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string to_json(const RunReport &report) {
    Json top = Json::object();
    top["version"] = report.version;
    top["seed"] = report.seed;
    if (report.timestamp) {
        top["timestamp"] = *report.timestamp;
    }
    top["config"] = report.config;
    top["results"] = report.results;
    Json checks = Json::array();
    for (const auto &c : report.checks) {
        Json entry = Json::object();
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["observed"] = c.observed;
        entry["comparison"] = c.comparison;
        entry["threshold"] = c.threshold;
        checks.push_back(std::move(entry));
    }
    top["checks"] = std::move(checks);

    std::ostringstream os;
    write_json(os, top, 0);
    os << "\n";
    return os.str();
}

std::string to_csv(const RunReport &report) {
    std::ostringstream os;
    os << "section,name,value,comparison,threshold,pass\n";
    os << "meta,version," << csv_field(report.version) << ",,,\n";
    os << "meta,seed," << report.seed << ",,,\n";
    if (report.timestamp) {
        os << "meta,timestamp," << *report.timestamp << ",,,\n";
    }
    flatten(report.config, "", "config", os);
    flatten(report.results, "", "result", os);
    for (const auto &c : report.checks) {
        os << "check," << csv_field(c.name) << "," << format_number(c.observed) << ","
           << c.comparison << "," << format_number(c.threshold) << ","
           << (c.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

} // namespace qestim::report
