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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "esvqe/pools.hpp"
#include "esvqe/simulator.hpp"
#include "esvqe/trace.hpp"

namespace esvqe {

/// E(theta) = A + B cos theta + C sin theta + D cos 2theta + F sin 2theta.
struct TrigLandscape {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
    double F = 0.0;

    [[nodiscard]] double operator()(double theta) const;
    /// E(0) - E(theta), evaluated without the constant term.
    [[nodiscard]] double drop(double theta) const;
    [[nodiscard]] double derivative(double theta) const;
    [[nodiscard]] double second_derivative(double theta) const;
};

/// Maps an angle into [-pi, pi).
double canonical_angle(double theta);

/**
 * Fits a landscape from E(anchor + 2 pi k / 5), k = 0..4.
 *
 * `energy` is called for each new angle. When `energy_at_anchor` is given
 * only the four other points are evaluated.
 */
TrigLandscape reconstruct_landscape(const std::function<double(double)> &energy,
                                    std::optional<double> energy_at_anchor = std::nullopt,
                                    double anchor = 0.0);

/// Landscape of <s| e^{i theta G} H e^{-i theta G} |s>, charged to `phase` on s's counter.
TrigLandscape reconstruct_landscape(const StateVector &state_before, const Generator &g,
                                    const PauliOperator &h,
                                    std::optional<double> e_at_zero = std::nullopt,
                                    Phase phase = Phase::Selection);

struct LandscapeMinimum {
    double theta = 0.0;
    double energy = 0.0;
};

/**
 * Global minimum over one period.
 *
 * Candidates are the stationary points from the tan(theta/2) quartic, 0 and
 * pi, and the best point of a 10^4-point grid, each Newton-polished. Ties
 * within a relative 1e-14 go to the smallest |theta|, then the positive one.
 */
LandscapeMinimum minimize_landscape(const TrigLandscape &l);

/// dE/dtheta at theta = 0, i.e. C + 2F.
double landscape_derivative_at_zero(const TrigLandscape &l);

struct AnsatzElement {
    GeneratorPtr generator;
    double theta = 0.0;
};

/// Applies the ansatz in order to a copy of `reference`.
StateVector prepare_ansatz_state(const StateVector &reference,
                                 const std::vector<AnsatzElement> &ansatz);

struct SweepOptions {
    double eps_conv = 1e-8;
    int max_sweeps = 100;
};

struct SweepResult {
    std::vector<AnsatzElement> ansatz;
    double energy = 0.0;
    int sweeps = 0;
    bool converged = false;
    /// Energy after each accepted or rejected parameter update, in order.
    std::vector<double> update_energies;
};

/**
 * Coordinate descent: every parameter in ansatz order is set to the global
 * optimum of its landscape, four evaluations per update. Stops when one
 * sweep lowers the energy by less than eps_conv or after max_sweeps.
 *
 * `known_energy` is the current energy of the ansatz state if the caller
 * already has it; otherwise one evaluation is spent on it. Evaluations are
 * charged to Phase::Optimization on the reference's counter.
 */
SweepResult sweep_optimize(std::vector<AnsatzElement> ansatz, const PauliOperator &h,
                           const StateVector &reference, const SweepOptions &options = {},
                           std::optional<double> known_energy = std::nullopt,
                           Trace *trace = nullptr, const std::string &stage = "optimization");

} // namespace esvqe
