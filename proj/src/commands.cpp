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

#include "qestim/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <type_traits>
#include <variant>

#include "qestim/error.hpp"
#include "qestim/random.hpp"

namespace qestim::commands {

using report::Check;
using report::Json;
using report::RunReport;

namespace {

// Grid scenarios compare against continuum values.
constexpr double kGridTol = 1e-3;

double parse_real(const std::string &text, const std::string &whole) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
        throw InvalidInput("cannot parse complex number '" + whole + "'");
    }
    return v;
}

RunReport new_report(std::uint64_t seed) {
    RunReport r;
    r.version = kVersion;
    r.seed = seed;
    return r;
}

Json estimate_json(const EstimateReport &e) {
    Json j = Json::object();
    j["noise_sq"] = e.noise_sq;
    j["noise_bound_sq"] = e.noise_bound_sq;
    j["estimator_mean"] = e.estimator_mean;
    j["estimator_variance"] = e.estimator_variance;
    j["observable_variance"] = e.observable_variance;
    j["is_optimal"] = e.is_optimal;
    return j;
}

Json joint_json(const JointReport &r) {
    Json j = Json::object();
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["slack"] = r.slack;
    return j;
}

double identity_residual(const EstimateReport &e) {
    return std::abs(e.estimator_variance + e.noise_sq - e.observable_variance);
}

double scale_of(double v) { return std::max(1.0, std::abs(v)); }

// ------------------------------------------------------------ sweeps

struct TrialOutcome {
    double primary = 0.0;    // value the gating check reduces
    double secondary = 0.0;  // optional second gated value
    double info = 0.0;       // informational
};

template <class Fn>
std::vector<TrialOutcome> run_trials(std::size_t trials, unsigned threads, Fn trial) {
    std::vector<TrialOutcome> out(trials);
    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (std::size_t i = next++; i < trials; i = next++) {
            try {
                out[i] = trial(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(failure_lock);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = trials;
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

struct Extreme {
    double value = 0.0;
    std::size_t trial = 0;
};

// Reductions run in trial order so the report does not depend on threads.
template <class Get>
Extreme minimum(const std::vector<TrialOutcome> &v, Get get) {
    Extreme e{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (get(v[i]) < e.value) {
            e = {get(v[i]), i};
        }
    }
    return e;
}

template <class Get>
Extreme maximum(const std::vector<TrialOutcome> &v, Get get) {
    Extreme e{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (get(v[i]) > e.value) {
            e = {get(v[i]), i};
        }
    }
    return e;
}

ProbOperatorMeasure sweep_pom(std::size_t trial, Eigen::Index dim, random::Engine &rng) {
    switch (trial % 3) {
    case 0:
        return random::random_projective_pom(dim, rng);
    case 1:
        return random::random_pom(dim, rng);
    default:
        return random::random_rank_one_pom(dim, rng);
    }
}

void sweep_joint(const SweepOptions &o, RunReport &r) {
    const auto d = static_cast<Eigen::Index>(o.dim);
    const auto out = run_trials(o.trials, o.threads, [&](std::size_t i) {
        auto rng = random::stream(o.seed, i);
        const DensityOperator rho = random::random_density(d, rng);
        const ProbOperatorMeasure pom = sweep_pom(i, d, rng);
        const HermitianOperator a = random::random_hermitian(d, rng);
        const HermitianOperator b = random::random_hermitian(d, rng);
        // Every fourth trial uses the optimal pair, where the relation is tightest.
        const bool optimal = i % 4 == 3;
        const OutcomeEstimator f =
            optimal ? optimal_estimator(rho, pom, a)
                    : OutcomeEstimator(random::random_estimator(pom.size(), rng, 2.0));
        const OutcomeEstimator g =
            optimal ? optimal_estimator(rho, pom, b)
                    : OutcomeEstimator(random::random_estimator(pom.size(), rng, 2.0));
        const JointReport j = joint_check(rho, pom, a, b, f, g);
        return TrialOutcome{j.slack / scale_of(j.lhs), j.slack,
                            j.lhs > 0.0 ? j.rhs / j.lhs : 0.0};
    });
    const Extreme rel = minimum(out, [](const TrialOutcome &t) { return t.primary; });
    const Extreme abs = minimum(out, [](const TrialOutcome &t) { return t.secondary; });
    const Extreme tight = maximum(out, [](const TrialOutcome &t) { return t.info; });
    Json res = Json::object();
    res["min_relative_slack"] = rel.value;
    res["worst_trial"] = rel.trial;
    res["min_slack"] = abs.value;
    res["max_rhs_over_lhs"] = tight.value;
    r.results["joint"] = std::move(res);
    r.add(Check::at_least("joint_relative_slack", rel.value, -kIdentityTol));
}

void sweep_geometric(const SweepOptions &o, RunReport &r) {
    const auto d = static_cast<Eigen::Index>(o.dim);
    const auto out = run_trials(o.trials, o.threads, [&](std::size_t i) {
        auto rng = random::stream(o.seed, i);
        const DensityOperator rho = random::random_density(d, rng);
        const ProbOperatorMeasure pom = sweep_pom(i, d, rng);
        const HermitianOperator a = random::random_hermitian(d, rng);
        const MeasurementMoments mom = measurement_moments(rho, pom, a);
        const EstimateReport e = analyze_estimator(mom, optimal_estimator(mom));
        return TrialOutcome{identity_residual(e) / scale_of(e.observable_variance),
                            identity_residual(e), e.noise_sq};
    });
    const Extreme rel = maximum(out, [](const TrialOutcome &t) { return t.primary; });
    const Extreme abs = maximum(out, [](const TrialOutcome &t) { return t.secondary; });
    Json res = Json::object();
    res["max_relative_residual"] = rel.value;
    res["worst_trial"] = rel.trial;
    res["max_residual"] = abs.value;
    r.results["geometric"] = std::move(res);
    r.add(Check::at_most("geometric_identity_residual", rel.value, kIdentityTol));
}

// Equality of optimal noise and bound needs a pure state and rank-one
// elements; on mixed states or higher-rank elements only ε² ≥ bound holds.
void sweep_bound(const SweepOptions &o, RunReport &r) {
    const auto d = static_cast<Eigen::Index>(o.dim);
    const auto out = run_trials(o.trials, o.threads, [&](std::size_t i) {
        auto rng = random::stream(o.seed, i);
        const HermitianOperator a = random::random_hermitian(d, rng);

        const DensityOperator pure = random::random_pure_state(d, rng);
        const ProbOperatorMeasure rank_one = i % 2 == 0
                                                 ? random::random_projective_pom(d, rng)
                                                 : random::random_rank_one_pom(d, rng);
        const MeasurementMoments m1 = measurement_moments(pure, rank_one, a);
        const double eq_gap = std::abs(noise_sq(m1, optimal_estimator(m1)) -
                                       noise_lower_bound_sq(m1)) /
                              scale_of(m1.second_moment);

        const DensityOperator mixed = random::random_density(d, rng);
        const ProbOperatorMeasure general = random::random_pom(d, rng);
        const MeasurementMoments m2 = measurement_moments(mixed, general, a);
        const double ineq_gap =
            (noise_sq(m2, optimal_estimator(m2)) - noise_lower_bound_sq(m2)) /
            scale_of(m2.second_moment);
        return TrialOutcome{eq_gap, ineq_gap, ineq_gap};
    });
    const Extreme eq = maximum(out, [](const TrialOutcome &t) { return t.primary; });
    const Extreme low = minimum(out, [](const TrialOutcome &t) { return t.secondary; });
    const Extreme high = maximum(out, [](const TrialOutcome &t) { return t.info; });
    Json res = Json::object();
    res["max_equality_gap"] = eq.value;
    res["equality_worst_trial"] = eq.trial;
    res["min_general_gap"] = low.value;
    res["general_worst_trial"] = low.trial;
    res["max_general_gap"] = high.value;
    r.results["bound"] = std::move(res);
    r.add(Check::at_most("bound_equality_pure_rank_one", eq.value, kIdentityTol));
    r.add(Check::at_least("bound_inequality_general", low.value, -kIdentityTol));
}

Json heterodyne_state_json(const scenarios::HeterodyneState &state) {
    Json j = Json::object();
    std::visit(
        [&](const auto &spec) {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, scenarios::CoherentSpec>) {
                j["kind"] = "coherent";
                j["beta"] = {spec.beta.real(), spec.beta.imag()};
            } else if constexpr (std::is_same_v<T, scenarios::SqueezedSpec>) {
                j["kind"] = "squeezed";
                j["r"] = spec.r;
                j["phi"] = spec.phi;
            } else if constexpr (std::is_same_v<T, scenarios::FockSpec>) {
                j["kind"] = "fock";
                j["n"] = spec.n;
            } else {
                j["kind"] = "custom";
                Json amps = Json::array();
                for (const auto &c : spec.amplitudes) {
                    amps.push_back({c.real(), c.imag()});
                }
                j["amplitudes"] = std::move(amps);
            }
        },
        state);
    return j;
}

} // namespace

Complex parse_complex(const std::string &raw) {
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            text += c;
        }
    }
    if (text.empty()) {
        throw InvalidInput("cannot parse complex number '" + raw + "'");
    }
    const char last = text.back();
    if (last != 'i' && last != 'j') {
        return {parse_real(text, raw), 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not leading and not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    if (im.empty() || im == "+" || im == "-") {
        im += "1";
    }
    return {re.empty() ? 0.0 : parse_real(re, raw), parse_real(im, raw)};
}

std::vector<Complex> parse_complex_list(const std::string &text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_complex(item));
    }
    if (out.empty()) {
        throw InvalidInput("empty complex list");
    }
    return out;
}

RunReport run_qubit(const std::string &state, const std::string &observable,
                    const std::string &basis) {
    RunReport r = new_report(0);
    r.config["scenario"] = "qubit";
    r.config["state"] = state;
    r.config["observable"] = observable;
    r.config["basis"] = basis;

    const auto res = scenarios::scenario_qubit(state, observable, basis);
    Json out = estimate_json(res.report);
    out["probabilities"] = res.probabilities;
    out["optimal_estimator"] = res.optimal.values();
    r.results["qubit"] = std::move(out);

    const EstimateReport &e = res.report;
    // Named states are pure and the bases projective, so the bound is attained
    // unless some outcome never occurs.
    const bool all_live = std::all_of(res.probabilities.begin(), res.probabilities.end(),
                                      [](double p) { return p > EngineOptions{}.dead_outcome_threshold; });
    if (all_live) {
        r.add(Check::at_most("bound_equality", std::abs(e.noise_sq - e.noise_bound_sq),
                             kIdentityTol));
    } else {
        r.add(Check::at_least("bound_inequality", e.noise_sq - e.noise_bound_sq,
                              -kIdentityTol));
    }
    r.add(Check::at_most("geometric_identity", identity_residual(e), kIdentityTol));
    return r;
}

RunReport run_unbiased_joint(const UnbiasedJointOptions &o) {
    RunReport r = new_report(o.seed);
    r.config["scenario"] = "unbiased-joint";
    r.config["gamma"] = o.gamma;
    r.config["state"] = o.state;
    r.config["trials"] = o.trials;

    const auto res = scenarios::scenario_unbiased_joint(o.gamma, scenarios::qubit_state(o.state));
    Json out = Json::object();
    out["defect_x"] = res.defect_x;
    out["defect_y"] = res.defect_y;
    out["noise_sq_x"] = res.report_x.noise_sq;
    out["noise_sq_y"] = res.report_y.noise_sq;
    out["closed_form_noise_sq"] = res.closed_form_noise_sq;
    out["unbiased_product"] = joint_json(res.unbiased);
    out["joint"] = joint_json(res.joint);
    r.results["state"] = std::move(out);

    double min_unbiased = std::numeric_limits<double>::infinity();
    double min_joint = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < o.trials; ++i) {
        auto rng = random::stream(o.seed, i);
        const auto s = scenarios::scenario_unbiased_joint(o.gamma, random::random_density(2, rng));
        min_unbiased = std::min(min_unbiased, s.unbiased.slack);
        min_joint = std::min(min_joint, s.joint.slack);
    }
    Json sweep = Json::object();
    sweep["min_unbiased_slack"] = min_unbiased;
    sweep["min_joint_slack"] = min_joint;
    r.results["sweep"] = std::move(sweep);

    r.add(Check::at_most("unbiased_defect", std::max(res.defect_x, res.defect_y),
                         kIdentityTol));
    r.add(Check::at_most("closed_form_noise",
                         std::max(std::abs(res.report_x.noise_sq - res.closed_form_noise_sq),
                                  std::abs(res.report_y.noise_sq - res.closed_form_noise_sq)),
                         kIdentityTol));
    r.add(Check::at_least("unbiased_product_slack", res.unbiased.slack, -kIdentityTol));
    r.add(Check::at_least("joint_slack", res.joint.slack, -kIdentityTol));
    if (o.trials > 0) {
        r.add(Check::at_least("sweep_unbiased_product_slack", min_unbiased, -kIdentityTol));
        r.add(Check::at_least("sweep_joint_slack", min_joint, -kIdentityTol));
    }
    return r;
}

RunReport run_heterodyne(const scenarios::HeterodyneConfig &cfg) {
    RunReport r = new_report(0);
    r.config["scenario"] = "heterodyne";
    r.config["state"] = heterodyne_state_json(cfg.state);
    r.config["fock_dim"] = cfg.fock_dim;
    r.config["grid_n"] = cfg.grid_n;
    r.config["grid_radius"] = cfg.grid_radius;

    const auto res = scenarios::scenario_heterodyne(cfg);
    Json grid = Json::object();
    grid["grid_radius"] = res.grid_radius;
    grid["d_alpha"] = res.d_alpha;
    grid["outcomes"] = res.outcomes;
    grid["occupied_dim"] = res.occupied_dim;
    grid["truncation_defect"] = res.truncation_defect;
    r.results["grid"] = std::move(grid);
    r.results["x_standard"] = estimate_json(res.x_standard);
    r.results["y_standard"] = estimate_json(res.y_standard);
    r.results["x_optimal"] = estimate_json(res.x_optimal);
    r.results["y_optimal"] = estimate_json(res.y_optimal);
    Json products = Json::object();
    products["spread_product_standard"] = res.spread_product_standard;
    products["spread_product_optimal"] = res.spread_product_optimal;
    products["improvement"] = res.improvement;
    products["standard_bound"] = 0.5;
    products["optimal_bound"] = 0.125;
    products["joint_standard"] = joint_json(res.joint_standard);
    products["joint_optimal"] = joint_json(res.joint_optimal);
    products["closed_form_deviation"] = res.closed_form_deviation;
    products["compared_points"] = res.compared_points;
    products["closed_form_deviation_smooth"] = res.closed_form_deviation_smooth;
    products["husimi_zeros"] = res.husimi_zeros;
    r.results["products"] = std::move(products);

    r.add(Check::at_least("standard_product_bound", res.spread_product_standard,
                          0.5 - kGridTol));
    r.add(Check::at_least("optimal_product_bound", res.spread_product_optimal,
                          0.125 - kGridTol));
    r.add(Check::at_most("geometric_identity_x", identity_residual(res.x_optimal), kGridTol));
    r.add(Check::at_most("geometric_identity_y", identity_residual(res.y_optimal), kGridTol));
    r.add(Check::at_least("joint_slack_standard", res.joint_standard.slack, -kIdentityTol));
    r.add(Check::at_least("joint_slack_optimal", res.joint_optimal.slack, -kIdentityTol));
    r.add(Check::at_most("closed_form_agreement", res.closed_form_deviation,
                         10.0 * res.d_alpha));
    r.add(Check::at_most("closed_form_agreement_away_from_zeros",
                         res.closed_form_deviation_smooth, 10.0 * res.d_alpha));
    if (std::holds_alternative<scenarios::CoherentSpec>(cfg.state)) {
        // Coherent states saturate both products.
        r.add(Check::at_most("coherent_standard_product",
                             std::abs(res.spread_product_standard - 0.5), kGridTol));
        r.add(Check::at_most("coherent_optimal_product",
                             std::abs(res.spread_product_optimal - 0.125), kGridTol));
        r.add(Check::at_most("coherent_improvement", std::abs(res.improvement - 4.0), 0.02));
    }
    return r;
}

RunReport run_epr(const scenarios::EprConfig &cfg) {
    RunReport r = new_report(0);
    r.config["scenario"] = "epr";
    r.config["sigma"] = cfg.sigma;
    r.config["tau"] = cfg.tau;
    r.config["a"] = cfg.a;
    r.config["b"] = cfg.b;
    r.config["hbar"] = cfg.hbar;
    r.config["n"] = cfg.n;
    r.config["half_extent"] = cfg.half_extent;

    const auto res = scenarios::scenario_epr(cfg);
    Json summary = Json::object();
    summary["noise_optimal"] = res.noise_optimal;
    summary["noise_naive"] = res.noise_naive;
    summary["ratio"] = res.ratio;
    summary["ratio_formula"] = res.ratio_formula;
    summary["max_relative_error"] = res.max_relative_error;
    summary["naive_deviation"] = res.naive_deviation;
    summary["central_begin"] = res.central_begin;
    summary["central_end"] = res.central_end;
    r.results["summary"] = std::move(summary);
    r.results["optimal"] = estimate_json(res.report_optimal);
    r.results["naive"] = estimate_json(res.report_naive);
    Json table = Json::object();
    table["p"] = res.momenta;
    table["probability"] = res.probabilities;
    table["estimate"] = res.optimal;
    table["formula"] = res.formula;
    r.results["table"] = std::move(table);

    r.add(Check::at_most("ratio_vs_formula",
                         std::abs(res.ratio - res.ratio_formula) / res.ratio_formula, 0.01));
    r.add(Check::at_most("estimate_vs_formula", res.max_relative_error, 0.01));
    r.add(Check::at_most("ratio_not_above_one", res.ratio, 1.0 + kIdentityTol));
    r.add(Check::at_most("geometric_identity", identity_residual(res.report_optimal),
                         kIdentityTol * scale_of(res.report_optimal.observable_variance)));
    return r;
}

RunReport run_momentum_grid(const scenarios::MomentumGridConfig &cfg) {
    RunReport r = new_report(0);
    r.config["scenario"] = "momentum-grid";
    r.config["state"] = cfg.state;
    r.config["sigma"] = cfg.sigma;
    r.config["k"] = cfg.k;
    r.config["chirp"] = cfg.chirp;
    r.config["separation"] = cfg.separation;
    r.config["hbar"] = cfg.hbar;
    r.config["n"] = cfg.n;
    r.config["half_extent"] = cfg.half_extent;

    const auto res = scenarios::scenario_momentum_grid(cfg);
    const auto &c = res.check;
    Json out = Json::object();
    out["fisher_length"] = c.fisher_length;
    out["noise"] = c.noise;
    out["noise_cross"] = c.noise_cross;
    out["product"] = c.product;
    out["product_cross"] = c.product_cross;
    out["hbar_half"] = c.hbar_half;
    out["residual"] = c.residual;
    out["momentum_mean"] = c.momentum_mean;
    out["momentum_variance"] = c.momentum_variance;
    out["estimate_mean"] = c.estimate_mean;
    out["estimate_variance"] = c.estimate_variance;
    out["mean_gap"] = res.mean_gap;
    r.results["exact_uncertainty"] = std::move(out);

    // Smooth Gaussians converge spectrally fast; other shapes at second order.
    const double tol = cfg.state == "gaussian" ? 1e-6 : 1e-4;
    r.add(Check::at_most("exact_uncertainty_residual", c.residual, tol));
    r.add(Check::at_most("estimate_mean_gap", std::abs(res.mean_gap), 1e-5));
    return r;
}

RunReport run_energy_grid(const scenarios::EnergyGridConfig &cfg) {
    RunReport r = new_report(0);
    r.config["scenario"] = "energy-grid";
    r.config["mass"] = cfg.mass;
    r.config["omega"] = cfg.omega;
    r.config["hbar"] = cfg.hbar;
    r.config["n"] = cfg.n;
    r.config["half_extent"] = cfg.half_extent;

    const auto res = scenarios::scenario_energy_grid(cfg);
    Json out = Json::object();
    out["target"] = res.target;
    out["max_deviation"] = res.max_deviation;
    out["interior_points"] = res.interior_points;
    out["mean_estimate"] = res.mean_estimate;
    out["hamiltonian"] = res.hamiltonian;
    r.results["energy"] = std::move(out);

    r.add(Check::at_most("constant_energy_estimate", res.max_deviation, 1e-4));
    r.add(Check::at_most("mean_matches_hamiltonian",
                         std::abs(res.mean_estimate - res.hamiltonian), 1e-4));
    return r;
}

RunReport run_sweep(const SweepOptions &o) {
    if (o.kind != "joint" && o.kind != "geometric" && o.kind != "bound") {
        throw InvalidConfig("sweep kind must be joint, geometric or bound");
    }
    if (o.trials < 1) {
        throw InvalidConfig("sweep needs at least one trial");
    }
    if (o.dim < 2 || o.dim > 16) {
        throw InvalidConfig("sweep dimension must lie in [2, 16]");
    }
    RunReport r = new_report(o.seed);
    r.config["command"] = "sweep";
    r.config["kind"] = o.kind;
    r.config["trials"] = o.trials;
    r.config["dim"] = o.dim;
    if (o.kind == "joint") {
        sweep_joint(o, r);
    } else if (o.kind == "geometric") {
        sweep_geometric(o, r);
    } else {
        sweep_bound(o, r);
    }
    return r;
}

} // namespace qestim::commands
