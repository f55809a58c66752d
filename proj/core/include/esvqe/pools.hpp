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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "esvqe/occupation.hpp"
#include "esvqe/pauli.hpp"
#include "esvqe/simulator.hpp"

namespace esvqe {

enum class GeneratorKind {
    FermionicSingle,
    FermionicDouble,
    FermionicTriple,
    QubitSingle,
    QubitDouble,
    OvpCeoPlus,
    OvpCeoMinus,
};

const char *to_string(GeneratorKind kind);
/// Number of electrons moved: 1, 2 or 3.
int excitation_order(GeneratorKind kind);

/**
 * One pool element: a Hermitian, traceless generator with G^3 = G.
 *
 * `orbitals` lists occupied indices then virtual indices as seen from the
 * pool's reference, each block ascending. For OVP-CEO it is the quadruple
 * (alpha1, beta1, alpha2, beta2).
 */
struct Generator {
    GeneratorKind kind;
    std::vector<std::size_t> orbitals;
    PauliSum pauli;
    PauliOperator op;
    int cnot_count = 0;
    int depth = 0;

    [[nodiscard]] std::size_t n_qubits() const { return pauli.n_qubits(); }
    /// Human-readable id such as "FD(0,1->2,3)".
    [[nodiscard]] std::string label() const;
};

using GeneratorPtr = std::shared_ptr<const Generator>;

/// Ordered, immutable collection of generators over one reference state.
struct Pool {
    std::size_t n_qubits = 0;
    Occupation reference;
    std::vector<GeneratorPtr> generators;

    [[nodiscard]] std::size_t size() const { return generators.size(); }
    [[nodiscard]] bool empty() const { return generators.empty(); }
    /// Generators whose excitation order is `order`, in pool order.
    [[nodiscard]] std::vector<GeneratorPtr> of_order(int order) const;
    [[nodiscard]] std::vector<GeneratorPtr> of_kind(GeneratorKind kind) const;
};

/// i(a+_v1 ... a+_vN a_oN ... a_o1 - h.c.) under Jordan-Wigner.
GeneratorPtr fermionic_excitation(std::size_t n_qubits, std::span<const std::size_t> occupied,
                                  std::span<const std::size_t> virtuals);
/// i(Q+_q Q_p - h.c.), no parity string.
GeneratorPtr qubit_single(std::size_t n_qubits, std::size_t p, std::size_t q);
/// i(Q+_r Q+_s Q_q Q_p - h.c.) for orbitals (p, q, r, s); 8 terms of weight 1/8.
GeneratorPtr qe_double(std::size_t n_qubits, std::span<const std::size_t> orbitals);
/// QE(a1 b1 -> a2 b2) +/- QE(a2 b1 -> a1 b2) for the quadruple (a1, b1, a2, b2).
GeneratorPtr ovp_ceo(std::size_t n_qubits, std::span<const std::size_t> quadruple, bool plus);

/// Occupied-to-virtual index tuples that preserve S_z in the interleaved ordering.
std::vector<std::vector<std::size_t>> enumerate_excitations(std::size_t n_so, Occupation occ,
                                                            int order);

/// UCCSD: all S_z-preserving doubles, then singles, each block lexicographic.
Pool build_uccsd_pool(std::size_t n_so, Occupation occ);
/// Qubit-excitation pool: QE doubles then qubit singles.
Pool build_qe_pool(std::size_t n_so, Occupation occ);

enum class OvpCeoVariant { PlusOnly, PlusAndMinus };
/// OVP-CEO pool: per double, the + (and - ) operator; then qubit singles.
Pool build_ovp_ceo_pool(std::size_t n_so, Occupation occ, OvpCeoVariant variant);
/// OVP-CEO quadruple for a double (p, q -> r, s): alpha2 shares the spin of p.
std::vector<std::size_t> ovp_ceo_quadruple(std::span<const std::size_t> double_orbitals);

/// Appends every S_z-preserving fermionic triple to a copy of `pool`.
Pool extend_with_triples(const Pool &pool);

} // namespace esvqe
