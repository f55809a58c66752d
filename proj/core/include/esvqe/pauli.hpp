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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace esvqe {

using Complex = std::complex<double>;

/// Largest qubit count supported by the bitmask representation.
inline constexpr std::size_t kMaxQubits = 63;

/// Coefficients with magnitude below this are dropped by PauliSum::simplify.
inline constexpr double kPruneThreshold = 1e-14;

/// Largest register matrix_of() will materialize.
inline constexpr std::size_t kMaxDenseQubits = 14;

/**
 * A Pauli string with a phase in {1, i, -1, -i}.
 *
 * Qubit k carries X when only bit k of the x-mask is set, Z when only the
 * z-mask bit is set, Y when both are set and I otherwise. Qubit 0 is the
 * least significant bit of a computational-basis index.
 */
class PauliString {
  public:
    PauliString() = default;
    PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                int phase = 0);

    /// Builds a string from a label like "XIZY" where character k acts on qubit k.
    static PauliString from_label(std::string_view label);
    static PauliString identity(std::size_t n_qubits) { return {n_qubits, 0, 0}; }
    /// Single-qubit Pauli ('I', 'X', 'Y' or 'Z') on `qubit`.
    static PauliString single(std::size_t n_qubits, std::size_t qubit, char pauli);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::uint64_t x_mask() const { return x_; }
    [[nodiscard]] std::uint64_t z_mask() const { return z_; }
    /// Exponent k of the phase i^k, in [0, 4).
    [[nodiscard]] int phase() const { return phase_; }
    [[nodiscard]] Complex phase_factor() const;
    [[nodiscard]] char op_at(std::size_t qubit) const;
    /// Number of qubits acted on non-trivially.
    [[nodiscard]] int weight() const;

    [[nodiscard]] std::string label() const;

    friend PauliString operator*(const PauliString &a, const PauliString &b);
    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::size_t n_qubits_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

/**
 * Sparse complex-weighted sum of phase-free Pauli strings.
 *
 * Terms are keyed by (x_mask, z_mask) and kept in a sorted map so iteration
 * order, and therefore every derived floating-point result, is deterministic.
 */
class PauliSum {
  public:
    using Key = std::pair<std::uint64_t, std::uint64_t>;
    using TermMap = std::map<Key, Complex>;

    PauliSum() = default;
    explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}

    static PauliSum identity(std::size_t n_qubits, Complex coefficient = 1.0);
    static PauliSum from_string(const PauliString &p, Complex coefficient = 1.0);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] const TermMap &terms() const { return terms_; }
    [[nodiscard]] Complex coefficient(std::uint64_t x_mask, std::uint64_t z_mask) const;
    [[nodiscard]] Complex coefficient(const PauliString &p) const;

    void add_term(std::uint64_t x_mask, std::uint64_t z_mask, Complex coefficient);
    void add(const PauliString &p, Complex coefficient = 1.0);

    PauliSum &operator+=(const PauliSum &other);
    PauliSum &operator-=(const PauliSum &other);
    PauliSum &operator*=(Complex scalar);

    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum &b) { return a -= b; }
    friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
    friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
    friend PauliSum operator*(const PauliSum &a, const PauliSum &b);

    [[nodiscard]] PauliSum adjoint() const;
    /// Drops terms with |c| < tol.
    void simplify(double tol = kPruneThreshold);
    [[nodiscard]] PauliSum simplified(double tol = kPruneThreshold) const;

    /// True iff every coefficient is real to within `tol`.
    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const;
    /// Largest |c| over all terms after subtracting `other` term by term.
    [[nodiscard]] double max_abs_difference(const PauliSum &other) const;

    /// Debug rendering, one "c · X0 Z2 Y3" item per term joined by " + ".
    [[nodiscard]] std::string to_string() const;

  private:
    std::size_t n_qubits_ = 0;
    TermMap terms_;
};

enum class Ladder { Create, Annihilate };

/// One fermionic ladder operator a_p or a_p^dagger on spin orbital `mode`.
struct LadderOp {
    Ladder type;
    std::size_t mode;
};

inline LadderOp create(std::size_t mode) { return {Ladder::Create, mode}; }
inline LadderOp annihilate(std::size_t mode) { return {Ladder::Annihilate, mode}; }

/**
 * Jordan-Wigner image of the operator product ops[0] * ops[1] * ... on
 * `n_qubits` modes, with a_p = Z_0...Z_{p-1} (X_p + iY_p)/2.
 *
 * Throws IndexError when a mode is >= n_qubits.
 */
PauliSum jordan_wigner(std::span<const LadderOp> ops, std::size_t n_qubits);

/// Qubit (parity-free) ladder operator Q_p = (X_p + iY_p)/2 or its adjoint.
PauliSum qubit_ladder(LadderOp op, std::size_t n_qubits);

/// Dense matrix in the qubit-0-least-significant basis; refused above kMaxDenseQubits.
Eigen::MatrixXcd matrix_of(const PauliSum &sum);

} // namespace esvqe
