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

// qestim: run estimation scenarios and randomized invariant sweeps.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or config error.

#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qestim/commands.hpp"
#include "qestim/error.hpp"

namespace {

using namespace qestim;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct OutputOptions {
    std::string format = "json";
    std::string out;
    bool no_timestamp = false;
};

void add_output_flags(CLI::App *cmd, OutputOptions &o) {
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Write the report to PATH instead of stdout");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field");
}

int emit(report::RunReport rep, const OutputOptions &o) {
    if (!o.no_timestamp) {
        rep.timestamp = report::utc_timestamp();
    }
    const std::string text = o.format == "csv" ? report::to_csv(rep) : report::to_json(rep);
    if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!(file << text)) {
            std::cerr << "qestim: cannot write " << o.out << "\n";
            return kExitUsage;
        }
    }
    for (const auto &c : rep.checks) {
        if (!c.pass) {
            std::cerr << "qestim: check failed: " << c.name << " observed " << c.observed
                      << " " << c.comparison << " " << c.threshold << " does not hold\n";
        }
    }
    return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Optimal estimation of quantum observables from measurement data"};
    app.set_version_flag("--version", std::string(commands::kVersion));
    app.require_subcommand(1);

    OutputOptions out;
    std::function<report::RunReport()> job;

    CLI::App *scenario = app.add_subcommand("scenario", "Run a worked scenario");
    scenario->require_subcommand(1);

    // qubit
    std::string q_state = "0", q_obs = "sz", q_basis = "x";
    auto *qubit = scenario->add_subcommand("qubit", "Single qubit, two-outcome basis");
    qubit->add_option("--state", q_state, "0, 1, +x, -x, +y, -y")->capture_default_str();
    qubit->add_option("--observable", q_obs, "sx, sy or sz")->capture_default_str();
    qubit->add_option("--basis", q_basis, "Measurement basis x, y or z")->capture_default_str();
    add_output_flags(qubit, out);
    qubit->callback([&] { job = [&] { return commands::run_qubit(q_state, q_obs, q_basis); }; });

    // unbiased-joint
    commands::UnbiasedJointOptions uj;
    auto *unbiased = scenario->add_subcommand("unbiased-joint",
                                              "Four-outcome qubit POM estimating sx and sy");
    unbiased->add_option("--gamma", uj.gamma, "POM strength in (0, 1/sqrt 2]")
        ->capture_default_str();
    unbiased->add_option("--state", uj.state, "Qubit state")->capture_default_str();
    unbiased->add_option("--trials", uj.trials, "Random states in the sweep")
        ->capture_default_str();
    unbiased->add_option("--seed", uj.seed, "Sweep seed")->capture_default_str();
    add_output_flags(unbiased, out);
    unbiased->callback([&] { job = [&] { return commands::run_unbiased_joint(uj); }; });

    // heterodyne
    scenarios::HeterodyneConfig het;
    std::string h_state = "coherent", h_beta = "0", h_amps;
    double h_r = 0.0, h_phi = 0.0;
    std::size_t h_level = 0;
    auto *hetero = scenario->add_subcommand("heterodyne", "Joint quadrature estimation");
    hetero->add_option("--state", h_state, "coherent, squeezed, fock or custom")
        ->check(CLI::IsMember({"coherent", "squeezed", "fock", "custom"}))
        ->capture_default_str();
    hetero->add_option("--beta", h_beta, "Coherent amplitude a+bi")->capture_default_str();
    hetero->add_option("--r", h_r, "Squeezing parameter")->capture_default_str();
    hetero->add_option("--phi", h_phi, "Squeezing angle")->capture_default_str();
    hetero->add_option("--n", h_level, "Fock level")->capture_default_str();
    hetero->add_option("--amplitudes", h_amps, "Custom Fock amplitudes, comma separated");
    hetero->add_option("--fock-dim", het.fock_dim, "Fock truncation")->capture_default_str();
    hetero->add_option("--grid-n", het.grid_n, "Points per alpha axis")->capture_default_str();
    hetero->add_option("--radius", het.grid_radius, "Alpha grid half-width (0 = auto)")
        ->capture_default_str();
    add_output_flags(hetero, out);
    hetero->callback([&] {
        job = [&] {
            if (h_state == "coherent") {
                het.state = scenarios::CoherentSpec{commands::parse_complex(h_beta)};
            } else if (h_state == "squeezed") {
                het.state = scenarios::SqueezedSpec{h_r, h_phi};
            } else if (h_state == "fock") {
                het.state = scenarios::FockSpec{h_level};
            } else {
                het.state = scenarios::CustomSpec{commands::parse_complex_list(h_amps)};
            }
            return commands::run_heterodyne(het);
        };
    });

    // epr
    scenarios::EprConfig epr;
    auto *epr_cmd = scenario->add_subcommand("epr", "Approximate EPR state, remote momentum");
    epr_cmd->add_option("--sigma", epr.sigma, "Width of x - x'")->capture_default_str();
    epr_cmd->add_option("--tau", epr.tau, "Width of p + p'")->capture_default_str();
    epr_cmd->add_option("--a", epr.a, "Mean of x - x'")->capture_default_str();
    epr_cmd->add_option("--b", epr.b, "Mean of p + p'")->capture_default_str();
    epr_cmd->add_option("--hbar", epr.hbar)->capture_default_str();
    epr_cmd->add_option("--n", epr.n, "Points per axis")->capture_default_str();
    epr_cmd->add_option("--extent", epr.half_extent, "Grid half-width (0 = auto)")
        ->capture_default_str();
    add_output_flags(epr_cmd, out);
    epr_cmd->callback([&] { job = [&] { return commands::run_epr(epr); }; });

    // momentum-grid
    scenarios::MomentumGridConfig mg;
    auto *mom = scenario->add_subcommand("momentum-grid",
                                         "Optimal momentum estimate from position data");
    mom->add_option("--state", mg.state, "gaussian or two-bump")
        ->check(CLI::IsMember({"gaussian", "two-bump"}))
        ->capture_default_str();
    mom->add_option("--sigma", mg.sigma)->capture_default_str();
    mom->add_option("--k", mg.k, "Plane-wave number")->capture_default_str();
    mom->add_option("--chirp", mg.chirp)->capture_default_str();
    mom->add_option("--separation", mg.separation, "Bump separation in sigma")
        ->capture_default_str();
    mom->add_option("--hbar", mg.hbar)->capture_default_str();
    mom->add_option("--n", mg.n, "Grid points")->capture_default_str();
    mom->add_option("--extent", mg.half_extent, "Grid half-width (0 = auto)")
        ->capture_default_str();
    add_output_flags(mom, out);
    mom->callback([&] { job = [&] { return commands::run_momentum_grid(mg); }; });

    // energy-grid
    scenarios::EnergyGridConfig eg;
    auto *energy = scenario->add_subcommand("energy-grid",
                                            "Optimal energy estimate, oscillator ground state");
    energy->add_option("--mass", eg.mass)->capture_default_str();
    energy->add_option("--omega", eg.omega)->capture_default_str();
    energy->add_option("--hbar", eg.hbar)->capture_default_str();
    energy->add_option("--n", eg.n, "Grid points")->capture_default_str();
    energy->add_option("--extent", eg.half_extent, "Grid half-width (0 = auto)")
        ->capture_default_str();
    add_output_flags(energy, out);
    energy->callback([&] { job = [&] { return commands::run_energy_grid(eg); }; });

    // sweep
    commands::SweepOptions sw;
    sw.threads = std::max(1u, std::thread::hardware_concurrency());
    auto *sweep = app.add_subcommand("sweep", "Randomized invariant sweep");
    sweep->add_option("kind", sw.kind, "joint, geometric or bound")
        ->required()
        ->check(CLI::IsMember({"joint", "geometric", "bound"}));
    sweep->add_option("--trials", sw.trials)->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--dim", sw.dim)->check(CLI::Range(2, 16))->capture_default_str();
    sweep->add_option("--seed", sw.seed)->capture_default_str();
    sweep->add_option("--threads", sw.threads, "Worker threads (output is unaffected)")
        ->check(CLI::PositiveNumber);
    add_output_flags(sweep, out);
    sweep->callback([&] { job = [&] { return commands::run_sweep(sw); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return emit(job(), out);
    } catch (const InvalidConfig &e) {
        std::cerr << "qestim: invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidInput &e) {
        std::cerr << "qestim: invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "qestim: error: " << e.what() << "\n";
        return kExitUsage;
    }
}
