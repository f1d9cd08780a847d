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

// Heterodyne detection on a truncated Fock space. The outcome α = α₁ + iα₂
// runs over a square grid, with POM elements (dα₁dα₂/π)|α⟩⟨α| renormalized
// by T^{-1/2} where T is their (nearly identity) sum.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qestim/error.hpp"
#include "qestim/scenarios.hpp"

namespace qestim::scenarios {

namespace {

constexpr double kTruncationNormLoss = 1e-8;
constexpr double kBlockDefectTol = 1e-3;
constexpr double kOccupiedMass = 1.0 - 1e-10;
constexpr double kQFloor = 1e-300;
constexpr double kCompareFraction = 1e-6;

ComplexMatrix lowering_operator(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ComplexVector squeezed_vacuum(double r, double phi, std::size_t dim) {
    ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    if (r == 0.0) {
        c(0) = 1.0;
        return c;
    }
    const double t = std::tanh(std::abs(r));
    const double sign = r < 0.0 ? -1.0 : 1.0;
    for (std::size_t m = 0; 2 * m < dim; ++m) {
        const double md = static_cast<double>(m);
        const double log_mag = md * std::log(t) + 0.5 * std::lgamma(2.0 * md + 1.0) -
                               md * std::numbers::ln2 - std::lgamma(md + 1.0) -
                               0.5 * std::log(std::cosh(r));
        // (−e^{iφ} tanh r)^m
        const Complex phase = std::pow(Complex(-sign * std::cos(phi), -sign * std::sin(phi)),
                                       static_cast<int>(m));
        c(static_cast<Eigen::Index>(2 * m)) = std::exp(log_mag) * phase;
    }
    return c;
}

// Central differences along one grid axis; one-sided at the ends.
double axis_derivative(const Eigen::MatrixXd &f, Eigen::Index i, Eigen::Index j,
                       bool along_rows, double h) {
    const Eigen::Index n = along_rows ? f.rows() : f.cols();
    const Eigen::Index k = along_rows ? i : j;
    auto at = [&](Eigen::Index q) { return along_rows ? f(q, j) : f(i, q); };
    if (k == 0) {
        return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
    }
    if (k == n - 1) {
        return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
    }
    return (at(k + 1) - at(k - 1)) / (2.0 * h);
}

} // namespace

ComplexVector coherent_amplitudes(Complex alpha, std::size_t dim) {
    ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        c(0) = 1.0;
        return c;
    }
    const double phase = std::arg(alpha);
    for (std::size_t n = 0; n < dim; ++n) {
        const double nd = static_cast<double>(n);
        const double log_mag =
            -0.5 * mag * mag + nd * std::log(mag) - 0.5 * std::lgamma(nd + 1.0);
        c(static_cast<Eigen::Index>(n)) = std::polar(std::exp(log_mag), nd * phase);
    }
    return c;
}

ComplexVector heterodyne_state_amplitudes(const HeterodyneState &state,
                                          std::size_t dim) {
    if (dim < 2) {
        throw InvalidConfig("heterodyne: fock_dim must be at least 2");
    }
    ComplexVector c;
    double expected_norm = 1.0;
    if (const auto *coh = std::get_if<CoherentSpec>(&state)) {
        c = coherent_amplitudes(coh->beta, dim);
    } else if (const auto *sq = std::get_if<SqueezedSpec>(&state)) {
        c = squeezed_vacuum(sq->r, sq->phi, dim);
    } else if (const auto *fock = std::get_if<FockSpec>(&state)) {
        if (fock->n >= dim) {
            throw InvalidConfig("heterodyne: Fock level exceeds the truncation");
        }
        c = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
        c(static_cast<Eigen::Index>(fock->n)) = 1.0;
    } else {
        const auto &amps = std::get<CustomSpec>(state).amplitudes;
        if (amps.empty() || amps.size() > dim) {
            throw InvalidConfig("heterodyne: custom amplitudes must be non-empty "
                                "and fit in fock_dim");
        }
        c = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
        for (std::size_t n = 0; n < amps.size(); ++n) {
            c(static_cast<Eigen::Index>(n)) = amps[n];
        }
        expected_norm = c.squaredNorm();
        if (!(expected_norm > 0.0)) {
            throw InvalidConfig("heterodyne: custom amplitudes are zero");
        }
    }
    const double kept = c.squaredNorm() / expected_norm;
    if (kept < 1.0 - kTruncationNormLoss) {
        std::ostringstream os;
        os << "heterodyne: fock_dim " << dim << " keeps only " << kept
           << " of the state norm";
        throw InvalidConfig(os.str());
    }
    return c / c.norm();
}

HeterodyneResult scenario_heterodyne(const HeterodyneConfig &cfg) {
    const std::size_t dim = cfg.fock_dim;
    const ComplexVector psi = heterodyne_state_amplitudes(cfg.state, dim);
    const DensityOperator rho = make_pure_state(psi);
    const auto d = static_cast<Eigen::Index>(dim);

    const ComplexMatrix a = lowering_operator(dim);
    const HermitianOperator x_quad(0.5 * (a + a.adjoint()));
    const HermitianOperator y_quad(Complex(0.0, -0.5) * (a - a.adjoint()));
    const Complex mean_a = psi.dot(a * psi);

    if (cfg.grid_n < 8) {
        throw InvalidConfig("heterodyne: grid_n must be at least 8");
    }
    std::size_t occupied = 0;
    {
        double mass = 0.0;
        while (occupied < dim && mass < kOccupiedMass) {
            mass += std::norm(psi(static_cast<Eigen::Index>(occupied)));
            ++occupied;
        }
        occupied = std::max<std::size_t>(occupied, 1);
    }
    const double min_radius = std::abs(mean_a) + 5.0;
    // |α⟩ reaches Fock level K near |α| ≈ √K, so spread states need more room.
    const double radius =
        cfg.grid_radius > 0.0
            ? cfg.grid_radius
            : std::max(min_radius, std::sqrt(static_cast<double>(occupied)) + 3.0);
    if (radius < min_radius - 1e-12) {
        std::ostringstream os;
        os << "heterodyne: grid_radius " << radius << " below |⟨a⟩| + 5 = "
           << min_radius;
        throw InvalidConfig(os.str());
    }
    const std::size_t n = cfg.grid_n;
    const double step = 2.0 * radius / static_cast<double>(n - 1);
    const double cell = step * step / std::numbers::pi;
    auto coord = [&](std::size_t k) { return -radius + static_cast<double>(k) * step; };

    // Coherent-state columns, outcome index m = i·n + j for α = α₁(i) + iα₂(j).
    const auto outcomes = static_cast<Eigen::Index>(n * n);
    ComplexMatrix coherent(d, outcomes);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            coherent.col(static_cast<Eigen::Index>(i * n + j)) =
                coherent_amplitudes(Complex(coord(i), coord(j)), dim);
        }
    }
    const ComplexMatrix total = cell * coherent * coherent.adjoint();

    HeterodyneResult r;
    r.grid_radius = radius;
    r.d_alpha = step;
    r.outcomes = n * n;
    r.occupied_dim = occupied;
    const auto occ = static_cast<Eigen::Index>(r.occupied_dim);
    r.truncation_defect =
        max_abs(total.topLeftCorner(occ, occ) - ComplexMatrix::Identity(occ, occ));
    if (r.truncation_defect > kBlockDefectTol) {
        std::ostringstream os;
        os << "heterodyne: gridded coherent-state POM misses the identity by "
           << r.truncation_defect << " on the occupied Fock block";
        throw InvalidConfig(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (total + total.adjoint()));
    if (es.eigenvalues().minCoeff() <= 1e-8) {
        throw InvalidConfig("heterodyne: gridded POM sum is singular; enlarge "
                            "grid_radius or grid_n");
    }
    const ComplexMatrix inv_sqrt =
        es.eigenvectors() *
        es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().adjoint();

    std::vector<PomOutcome> elements;
    elements.reserve(n * n);
    std::vector<double> alpha1(n * n);
    std::vector<double> alpha2(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t m = i * n + j;
            const ComplexVector v =
                std::sqrt(cell) * (inv_sqrt * coherent.col(static_cast<Eigen::Index>(m)));
            std::ostringstream label;
            label.precision(6);
            label << coord(i) << (coord(j) < 0 ? "" : "+") << coord(j) << "i";
            elements.push_back({label.str(), v * v.adjoint()});
            alpha1[m] = coord(i);
            alpha2[m] = coord(j);
        }
    }
    const ProbOperatorMeasure pom(d, std::move(elements));

    const MeasurementMoments mom_x = measurement_moments(rho, pom, x_quad);
    const MeasurementMoments mom_y = measurement_moments(rho, pom, y_quad);
    const OutcomeEstimator std_x(alpha1);
    const OutcomeEstimator std_y(alpha2);
    const OutcomeEstimator opt_x = optimal_estimator(mom_x);
    const OutcomeEstimator opt_y = optimal_estimator(mom_y);

    r.x_standard = analyze_estimator(mom_x, std_x);
    r.y_standard = analyze_estimator(mom_y, std_y);
    r.x_optimal = analyze_estimator(mom_x, opt_x);
    r.y_optimal = analyze_estimator(mom_y, opt_y);
    const double rhs = commutator_bound(rho, x_quad, y_quad);
    r.joint_standard = joint_check(r.x_standard, r.y_standard, rhs);
    r.joint_optimal = joint_check(r.x_optimal, r.y_optimal, rhs);
    r.spread_product_standard =
        std::sqrt(r.x_standard.estimator_variance * r.y_standard.estimator_variance);
    r.spread_product_optimal =
        std::sqrt(r.x_optimal.estimator_variance * r.y_optimal.estimator_variance);
    r.improvement = r.spread_product_standard / r.spread_product_optimal;

    // Closed form α + ¼∇ ln Q from the unrenormalized Husimi function.
    const ComplexVector overlaps = coherent.adjoint() * psi;  // ⟨α|ψ⟩
    Eigen::MatrixXd q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::MatrixXd log_q(q.rows(), q.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            q(ii, jj) = std::norm(overlaps(static_cast<Eigen::Index>(i * n + j))) /
                        std::numbers::pi;
            log_q(ii, jj) = std::log(std::max(q(ii, jj), kQFloor));
        }
    }
    // Zeros of ⟨α|ψ⟩ show up as phase windings around grid plaquettes. Points
    // whose stencil touches such a plaquette are tracked separately because
    // ln Q is singular there.
    const double q_cut = kCompareFraction * q.maxCoeff();
    const auto side = static_cast<Eigen::Index>(n);
    auto phase_at = [&](Eigen::Index i, Eigen::Index j) {
        return std::arg(overlaps(i * side + j));
    };
    auto wrap = [](double x) { return std::remainder(x, 2.0 * std::numbers::pi); };
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> near_zero =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(side, side, false);
    for (Eigen::Index i = 0; i + 1 < side; ++i) {
        for (Eigen::Index j = 0; j + 1 < side; ++j) {
            const double a0 = phase_at(i, j), a1 = phase_at(i + 1, j);
            const double a2 = phase_at(i + 1, j + 1), a3 = phase_at(i, j + 1);
            const double winding = wrap(a1 - a0) + wrap(a2 - a1) + wrap(a3 - a2) + wrap(a0 - a3);
            const double q_top = std::max({q(i, j), q(i + 1, j), q(i + 1, j + 1), q(i, j + 1)});
            if (std::abs(winding) < std::numbers::pi || q_top < q_cut) {
                continue;
            }
            ++r.husimi_zeros;
            for (Eigen::Index u = std::max<Eigen::Index>(i - 1, 0);
                 u <= std::min<Eigen::Index>(i + 2, side - 1); ++u) {
                for (Eigen::Index v = std::max<Eigen::Index>(j - 1, 0);
                     v <= std::min<Eigen::Index>(j + 2, side - 1); ++v) {
                    near_zero(u, v) = true;
                }
            }
        }
    }

    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            if (q(i, j) < q_cut) {
                continue;
            }
            const auto m = static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j);
            const double cf_x = alpha1[m] + 0.25 * axis_derivative(log_q, i, j, true, step);
            const double cf_y = alpha2[m] + 0.25 * axis_derivative(log_q, i, j, false, step);
            const double dev = std::max(std::abs(cf_x - opt_x[m]), std::abs(cf_y - opt_y[m]));
            r.closed_form_deviation = std::max(r.closed_form_deviation, dev);
            ++r.compared_points;
            if (!near_zero(i, j)) {
                r.closed_form_deviation_smooth = std::max(r.closed_form_deviation_smooth, dev);
            }
        }
    }
    return r;
}

} // namespace qestim::scenarios
