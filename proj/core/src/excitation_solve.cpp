// Copyright 2026 The esvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "esvqe/excitation_solve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "esvqe/error.hpp"

namespace esvqe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGridPoints = 10000;

struct Candidate {
    double theta;
    double drop; // E(0) - E(theta); larger is better
};

// Newton iterations on E'(theta) = 0, kept only if they do not raise the energy.
double polish(const TrigLandscape &l, double theta) {
    double best = theta;
    double best_drop = l.drop(theta);
    double t = theta;
    for (int it = 0; it < 8; ++it) {
        const double d2 = l.second_derivative(t);
        if (d2 <= 0.0) break;
        const double step = l.derivative(t) / d2;
        t -= step;
        const double drop = l.drop(t);
        if (drop > best_drop) {
            best = t;
            best_drop = drop;
        }
        if (std::abs(step) < 1e-15) break;
    }
    return best;
}

// Real parts of the roots of c[0] t^4 + ... + c[4], leading zeros trimmed.
std::vector<double> quartic_roots(std::array<double, 5> c) {
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return {};
    std::size_t lead = 0;
    while (lead < 5 && std::abs(c[lead]) <= 1e-14 * scale) ++lead;
    const int degree = 4 - static_cast<int>(lead);
    if (degree <= 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int j = 0; j < degree; ++j) {
        companion(0, j) = -c[lead + 1 + j] / c[lead];
    }
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<double> roots;
    for (int i = 0; i < degree; ++i) {
        roots.push_back(solver.eigenvalues()[i].real());
    }
    return roots;
}

} // namespace

double TrigLandscape::operator()(double theta) const {
    return A + B * std::cos(theta) + C * std::sin(theta) + D * std::cos(2 * theta) +
           F * std::sin(2 * theta);
}

double TrigLandscape::drop(double theta) const {
    return B * (1.0 - std::cos(theta)) - C * std::sin(theta) + D * (1.0 - std::cos(2 * theta)) -
           F * std::sin(2 * theta);
}

double TrigLandscape::derivative(double theta) const {
    return -B * std::sin(theta) + C * std::cos(theta) - 2 * D * std::sin(2 * theta) +
           2 * F * std::cos(2 * theta);
}

double TrigLandscape::second_derivative(double theta) const {
    return -B * std::cos(theta) - C * std::sin(theta) - 4 * D * std::cos(2 * theta) -
           4 * F * std::sin(2 * theta);
}

double canonical_angle(double theta) {
    double t = std::fmod(theta + kPi, 2 * kPi);
    if (t < 0) t += 2 * kPi;
    t -= kPi;
    return t >= kPi ? t - 2 * kPi : t;
}

TrigLandscape reconstruct_landscape(const std::function<double(double)> &energy,
                                    std::optional<double> energy_at_anchor, double anchor) {
    std::array<double, 5> e{};
    for (int k = 0; k < 5; ++k) {
        e[k] = (k == 0 && energy_at_anchor) ? *energy_at_anchor
                                            : energy(anchor + 2 * kPi * k / 5.0);
    }
    // Fourier inversion relative to the anchor, then a shift back to theta = 0.
    TrigLandscape rel;
    for (int k = 0; k < 5; ++k) {
        const double phi = 2 * kPi * k / 5.0;
        rel.A += e[k] / 5.0;
        rel.B += 0.4 * e[k] * std::cos(phi);
        rel.C += 0.4 * e[k] * std::sin(phi);
        rel.D += 0.4 * e[k] * std::cos(2 * phi);
        rel.F += 0.4 * e[k] * std::sin(2 * phi);
    }
    if (anchor == 0.0) return rel;
    const double c1 = std::cos(anchor), s1 = std::sin(anchor);
    const double c2 = std::cos(2 * anchor), s2 = std::sin(2 * anchor);
    TrigLandscape l;
    l.A = rel.A;
    l.B = rel.B * c1 - rel.C * s1;
    l.C = rel.B * s1 + rel.C * c1;
    l.D = rel.D * c2 - rel.F * s2;
    l.F = rel.D * s2 + rel.F * c2;
    return l;
}

TrigLandscape reconstruct_landscape(const StateVector &state_before, const Generator &g,
                                    const PauliOperator &h, std::optional<double> e_at_zero,
                                    Phase phase) {
    if (g.n_qubits() != state_before.n_qubits()) {
        throw SizeMismatchError("generator and state qubit counts differ");
    }
    StateVector scratch = state_before;
    auto energy = [&](double theta) {
        std::copy(state_before.amplitudes().begin(), state_before.amplitudes().end(),
                  scratch.amplitudes().begin());
        apply_generator_exponential_inplace(scratch, g.op, theta);
        return expectation(scratch, h, phase);
    };
    return reconstruct_landscape(energy, e_at_zero, 0.0);
}

LandscapeMinimum minimize_landscape(const TrigLandscape &l) {
    std::vector<double> thetas{0.0, kPi};
    const std::array<double, 5> poly{-l.C + 2 * l.F, -2 * l.B + 8 * l.D, -12 * l.F,
                                     -2 * l.B - 8 * l.D, l.C + 2 * l.F};
    for (double t : quartic_roots(poly)) {
        thetas.push_back(polish(l, 2.0 * std::atan(t)));
    }

    // Grid backstop, stepping e^{i theta} by complex rotation.
    const double step = 2 * kPi / kGridPoints;
    const Complex rot(std::cos(step), std::sin(step));
    Complex z(-1.0, 0.0);
    double grid_best = -kPi;
    double grid_drop = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kGridPoints; ++k) {
        const Complex z2 = z * z;
        const double drop =
            l.B * (1 - z.real()) - l.C * z.imag() + l.D * (1 - z2.real()) - l.F * z2.imag();
        if (drop > grid_drop) {
            grid_drop = drop;
            grid_best = -kPi + k * step;
        }
        z *= rot;
    }
    thetas.push_back(polish(l, grid_best));

    const double tol = 1e-14 * (1.0 + std::abs(l.B) + std::abs(l.C) + std::abs(l.D) +
                                std::abs(l.F));
    std::vector<Candidate> candidates;
    for (double t : thetas) {
        const double c = canonical_angle(t);
        candidates.push_back({c, l.drop(c)});
    }
    double best_drop = -std::numeric_limits<double>::infinity();
    for (const auto &c : candidates) best_drop = std::max(best_drop, c.drop);
    const Candidate *winner = nullptr;
    for (const auto &c : candidates) {
        if (c.drop < best_drop - tol) continue;
        if (winner == nullptr) {
            winner = &c;
            continue;
        }
        const double a = std::abs(c.theta), b = std::abs(winner->theta);
        if (a < b - 1e-12 || (std::abs(a - b) <= 1e-12 && c.theta > winner->theta)) {
            winner = &c;
        }
    }
    return {winner->theta, l(winner->theta)};
}

double landscape_derivative_at_zero(const TrigLandscape &l) { return l.C + 2 * l.F; }

StateVector prepare_ansatz_state(const StateVector &reference,
                                 const std::vector<AnsatzElement> &ansatz) {
    StateVector s = reference;
    for (const auto &e : ansatz) {
        if (e.generator->n_qubits() != s.n_qubits()) {
            throw SizeMismatchError("ansatz generator and state qubit counts differ");
        }
        apply_generator_exponential_inplace(s, e.generator->op, e.theta);
    }
    return s;
}

SweepResult sweep_optimize(std::vector<AnsatzElement> ansatz, const PauliOperator &h,
                           const StateVector &reference, const SweepOptions &options,
                           std::optional<double> known_energy, Trace *trace,
                           const std::string &stage) {
    SweepResult result;
    const EvalCounter &counter = reference.counter();
    double energy = known_energy
                        ? *known_energy
                        : expectation(prepare_ansatz_state(reference, ansatz), h,
                                      Phase::Optimization);
    if (trace) trace->record(counter, energy, Phase::Optimization, stage, ansatz.size());
    if (ansatz.empty()) {
        result.energy = energy;
        result.converged = true;
        return result;
    }

    StateVector prefix = reference;
    StateVector scratch = reference;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        const double sweep_start = energy;
        std::copy(reference.amplitudes().begin(), reference.amplitudes().end(),
                  prefix.amplitudes().begin());
        for (std::size_t j = 0; j < ansatz.size(); ++j) {
            const auto &g = ansatz[j].generator->op;
            auto trial = [&](double theta) {
                std::copy(prefix.amplitudes().begin(), prefix.amplitudes().end(),
                          scratch.amplitudes().begin());
                apply_generator_exponential_inplace(scratch, g, theta);
                for (std::size_t k = j + 1; k < ansatz.size(); ++k) {
                    apply_generator_exponential_inplace(scratch, ansatz[k].generator->op,
                                                        ansatz[k].theta);
                }
                return expectation(scratch, h, Phase::Optimization);
            };
            const TrigLandscape l = reconstruct_landscape(trial, energy, ansatz[j].theta);
            const LandscapeMinimum m = minimize_landscape(l);
            if (m.energy < energy) {
                ansatz[j].theta = m.theta;
                energy = m.energy;
            }
            result.update_energies.push_back(energy);
            if (trace) trace->record(counter, energy, Phase::Optimization, stage, ansatz.size());
            apply_generator_exponential_inplace(prefix, g, ansatz[j].theta);
        }
        result.sweeps = sweep + 1;
        if (sweep_start - energy < options.eps_conv) {
            result.converged = true;
            break;
        }
    }
    result.ansatz = std::move(ansatz);
    result.energy = energy;
    return result;
}

} // namespace esvqe
