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

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "esvqe/occupation.hpp"
#include "esvqe/pauli.hpp"

namespace esvqe {

/// Which part of an algorithm an expectation evaluation is charged to.
enum class Phase { Selection = 0, Optimization = 1 };

const char *to_string(Phase phase);

/// Thread-safe tally of Hamiltonian expectation evaluations per phase.
class EvalCounter {
  public:
    void add(Phase phase) { counts_[static_cast<int>(phase)].fetch_add(1); }
    [[nodiscard]] std::uint64_t count(Phase phase) const {
        return counts_[static_cast<int>(phase)].load();
    }
    [[nodiscard]] std::uint64_t total() const { return count(Phase::Selection) + count(Phase::Optimization); }

  private:
    std::array<std::atomic<std::uint64_t>, 2> counts_{};
};

/**
 * Dense 2^n-amplitude state with a handle to an evaluation counter.
 *
 * Copies share the counter: a cloned state used for a trial evaluation is
 * charged to the same ledger as the state it was cloned from. Call
 * reset_counter() to detach.
 */
class StateVector {
  public:
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() { return amps_; }
    Complex &operator[](std::size_t i) { return amps_[i]; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] EvalCounter &counter() const { return *counter_; }
    [[nodiscard]] const std::shared_ptr<EvalCounter> &counter_handle() const { return counter_; }
    void reset_counter() { counter_ = std::make_shared<EvalCounter>(); }
    void share_counter(std::shared_ptr<EvalCounter> counter) { counter_ = std::move(counter); }

    [[nodiscard]] double norm() const;
    [[nodiscard]] Complex inner(const StateVector &other) const;

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amps_;
    std::shared_ptr<EvalCounter> counter_;
};

/**
 * A PauliSum laid out for state-vector kernels.
 *
 * Terms sharing an X-mask map |i> to |i ^ x> with an i-dependent diagonal
 * weight; each group is applied in one pass. For large operators
 * (Hamiltonians) that weight is precomputed per group when it fits in the
 * memory budget.
 */
class PauliOperator {
  public:
    /// Default memory budget for precomputed group diagonals.
    static constexpr std::size_t kDefaultDiagonalBudget = std::size_t{512} << 20;

    PauliOperator() = default;
    explicit PauliOperator(const PauliSum &sum,
                           std::size_t diagonal_budget_bytes = kDefaultDiagonalBudget);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] bool is_hermitian() const { return hermitian_; }
    [[nodiscard]] std::size_t term_count() const { return term_count_; }
    [[nodiscard]] std::size_t group_count() const { return groups_.size(); }
    [[nodiscard]] const PauliSum &sum() const { return sum_; }

    /// out = Op |in>; `out` is overwritten and must not alias `in`.
    void apply(std::span<const Complex> in, std::span<Complex> out) const;
    /// <in|Op|in>, with no counting.
    [[nodiscard]] Complex braket(std::span<const Complex> in) const;
    /// Re <in|Op|in> for a Hermitian operator, visiting each pair (i, i^x) once.
    [[nodiscard]] double hermitian_braket(std::span<const Complex> in) const;

  private:
    struct Group {
        [[nodiscard]] Complex weight_at(std::uint64_t i) const;

        std::uint64_t x = 0;
        std::vector<std::uint64_t> z;
        std::vector<Complex> weight; // coefficient times i^{|x&z|}
        std::vector<Complex> diagonal; // optional, indexed by source basis state
    };

    std::size_t n_qubits_ = 0;
    std::size_t term_count_ = 0;
    bool hermitian_ = true;
    PauliSum sum_;
    std::vector<Group> groups_;
};

StateVector prepare_basis_state(std::size_t n_qubits, Occupation occupation);

/**
 * exp(-i theta G)|s> for a generator with G^3 = G, computed as
 * (I + (cos theta - 1) G^2 - i sin theta G)|s> from two sparse passes.
 */
void apply_generator_exponential_inplace(StateVector &s, const PauliOperator &g, double theta);
StateVector apply_generator_exponential(const StateVector &s, const PauliOperator &g,
                                        double theta);

/// <s|h|s>; charges one evaluation to `phase`. PreconditionError if h is not Hermitian.
double expectation(const StateVector &s, const PauliOperator &h, Phase phase);

/// exp(-i theta P)|s> = cos theta |s> - i sin theta P|s> for a phase-free string P.
StateVector apply_pauli_rotation(const StateVector &s, const PauliString &p, double theta);

} // namespace esvqe
