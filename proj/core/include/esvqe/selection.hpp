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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esvqe/excitation_solve.hpp"
#include "esvqe/integrals.hpp"
#include "esvqe/pools.hpp"
#include "esvqe/simulator.hpp"
#include "esvqe/trace.hpp"

namespace esvqe {

enum class Stage { ClassicalDoubles, QuantumDoubles, Singles, Triples, Screening };
const char *to_string(Stage stage);

struct SelectionRecord {
    std::size_t pool_index = 0;
    GeneratorPtr generator;
    double delta_e = 0.0;
    double theta = 0.0;
    bool selected = false;
    Stage stage = Stage::QuantumDoubles;
    int round = 0;
};

/// Hamiltonian plus reference determinant; integrals enable classical preselection.
struct Problem {
    std::size_t n_qubits = 0;
    Occupation reference;
    PauliOperator hamiltonian;
    std::optional<SpinOrbitalHamiltonian> integrals;
};

Problem make_problem(const MolecularIntegrals &mi);
Problem make_problem(const PauliSum &h, Occupation reference,
                     std::optional<SpinOrbitalHamiltonian> integrals = std::nullopt);

/// Worker count for pool sweeps: ESVQE_THREADS if set, else the hardware count.
std::size_t worker_threads();

struct Candidate {
    std::size_t pool_index;
    GeneratorPtr generator;
};

std::vector<Candidate> all_candidates(const Pool &pool);

struct SortResult {
    double e_ref = 0.0;
    /// Sorted by delta_e descending; drops within 1e-12 Ha tie and keep pool order.
    std::vector<SelectionRecord> records;
};

/**
 * Ranks candidates by their optimal single-operator energy drop against
 * `state`. E_ref is evaluated once unless supplied, then four evaluations
 * per candidate, all charged to Phase::Selection.
 */
SortResult energy_sort(std::span<const Candidate> candidates, const StateVector &state,
                       const PauliOperator &h, double eps_a,
                       std::optional<double> e_ref = std::nullopt,
                       Stage stage = Stage::QuantumDoubles);
SortResult energy_sort(const Pool &pool, const StateVector &state, const PauliOperator &h,
                       double eps_a, std::optional<double> e_ref = std::nullopt);

struct BuildOptions {
    double eps_a = 1e-13;
    SweepOptions sweep;
    int max_screening_rounds = 3;
    /// Use closed-form preselection for fermionic doubles when integrals are known.
    bool classical_doubles = true;
    /// Adaptive method only.
    std::size_t max_ops = std::numeric_limits<std::size_t>::max();
};

/// How one OVP-CEO quadruple was resolved by the pair procedure.
struct PairDecision {
    std::vector<std::size_t> quadruple;
    std::size_t chosen_index = 0;
    double theta = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    bool chose_plus = true;
};

struct BuildResult {
    std::vector<AnsatzElement> ansatz;
    double energy = 0.0;
    std::vector<SelectionRecord> records;
    std::vector<PairDecision> pairs;
    Trace trace;
    int screening_rounds = 0;
    /// False when the round cap was hit with operators still above eps_a.
    bool screening_clean = true;
    bool sweeps_converged = true;
    std::uint64_t selection_evals = 0;
    std::uint64_t optimization_evals = 0;
};

/// Staged single-sweep selection (doubles, singles, triples), sweeps, then screening.
BuildResult build_ansatz_energy_sorting(const Pool &pool, const Problem &problem,
                                        const BuildOptions &options = {});
/// One operator per round, the best of a full-pool sort, each followed by sweeps.
BuildResult build_ansatz_adaptive(const Pool &pool, const Problem &problem,
                                  const BuildOptions &options = {});
/// The whole pool at theta = 0, then sweeps.
BuildResult build_ansatz_fixed(const Pool &pool, const Problem &problem,
                               const BuildOptions &options = {});
/// Pair procedure over an OVP-CEO +/- pool, ordered by the + operators' impact on the reference.
BuildResult build_ansatz_ovp_ceo_paired(const Pool &pool, const Problem &problem,
                                        const BuildOptions &options = {});

/**
 * For each quadruple in order, reconstructs both variants against `state`,
 * appends the one with the larger drop (+ unless - wins by more than 1e-12)
 * at its optimal angle and advances `state`.
 */
std::vector<PairDecision> select_ovp_ceo_pair(const Pool &pool,
                                              std::span<const std::vector<std::size_t>> quadruples,
                                              StateVector &state, const PauliOperator &h,
                                              std::vector<AnsatzElement> &ansatz,
                                              Trace *trace = nullptr);

} // namespace esvqe
