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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "esvqe/occupation.hpp"
#include "esvqe/pauli.hpp"

namespace esvqe {

/**
 * Spatial-orbital electronic integrals as read from an FCIDUMP.
 *
 * Two-electron integrals are in chemists' notation (ij|kl), 0-based, and
 * every write goes to all 8 permutation images, so lookups never need to
 * canonicalize indices.
 */
class MolecularIntegrals {
  public:
    MolecularIntegrals() = default;
    MolecularIntegrals(std::size_t n_orb, int n_elec, int ms2);

    [[nodiscard]] std::size_t n_orb() const { return n_orb_; }
    [[nodiscard]] int n_elec() const { return n_elec_; }
    [[nodiscard]] int ms2() const { return ms2_; }
    [[nodiscard]] double e_core() const { return e_core_; }
    [[nodiscard]] const Eigen::MatrixXd &h1() const { return h1_; }
    [[nodiscard]] double h1(std::size_t i, std::size_t j) const { return h1_(idx(i), idx(j)); }
    [[nodiscard]] double eri(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return eri_[flat(i, j, k, l)];
    }
    [[nodiscard]] const std::vector<int> &orbsym() const { return orbsym_; }

    void set_e_core(double value) { e_core_ = value; }
    /// Sets h1(i,j) and h1(j,i).
    void set_h1(std::size_t i, std::size_t j, double value);
    /// Sets (ij|kl) and its 7 symmetric images.
    void set_eri(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double value);
    void set_orbsym(std::vector<int> orbsym) { orbsym_ = std::move(orbsym); }

    /// Throws PreconditionError when a structural invariant fails.
    void validate(double tol = 1e-12) const;

  private:
    static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }
    [[nodiscard]] std::size_t flat(std::size_t i, std::size_t j, std::size_t k,
                                   std::size_t l) const {
        return ((i * n_orb_ + j) * n_orb_ + k) * n_orb_ + l;
    }

    std::size_t n_orb_ = 0;
    int n_elec_ = 0;
    int ms2_ = 0;
    double e_core_ = 0.0;
    Eigen::MatrixXd h1_;
    std::vector<double> eri_;
    std::vector<int> orbsym_;
};

/// Parses FCIDUMP text. Throws FormatError, IndexError or ConsistencyError.
MolecularIntegrals parse_fcidump(std::string_view text);
/// Reads and parses a file; IoError when it cannot be opened.
MolecularIntegrals read_fcidump(const std::string &path);
/// Canonical 8-fold-reduced FCIDUMP text with "%.16E" values.
std::string write_fcidump(const MolecularIntegrals &mi);

enum class SpinOrdering {
    Interleaved, ///< spin orbital 2i = orbital i up, 2i+1 = orbital i down
    Blocked,     ///< spin orbital i = up, n_orb + i = down
};

/**
 * Spin-orbital Hamiltonian
 *   H = e_core + sum_pq h_pq a+_p a_q + 1/2 sum_pqrs g_pqrs a+_p a+_q a_r a_s.
 */
class SpinOrbitalHamiltonian {
  public:
    SpinOrbitalHamiltonian() = default;
    SpinOrbitalHamiltonian(std::size_t n_so, double e_core);

    [[nodiscard]] std::size_t n_so() const { return n_so_; }
    [[nodiscard]] double e_core() const { return e_core_; }
    [[nodiscard]] double h(std::size_t p, std::size_t q) const {
        return h_[p * n_so_ + q];
    }
    [[nodiscard]] double g(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
        return g_[((p * n_so_ + q) * n_so_ + r) * n_so_ + s];
    }
    double &h(std::size_t p, std::size_t q) { return h_[p * n_so_ + q]; }
    double &g(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
        return g_[((p * n_so_ + q) * n_so_ + r) * n_so_ + s];
    }

  private:
    std::size_t n_so_ = 0;
    double e_core_ = 0.0;
    std::vector<double> h_;
    std::vector<double> g_;
};

SpinOrbitalHamiltonian expand_spin_orbitals(const MolecularIntegrals &mi,
                                            SpinOrdering ordering = SpinOrdering::Interleaved);

/// Aufbau occupation over the interleaved ordering. PreconditionError if infeasible.
Occupation hf_state_occupation(std::size_t n_so, int n_elec, int ms2);

/// Diagonal energy <D|H|D> of the determinant D with the given occupation.
double hf_energy(const SpinOrbitalHamiltonian &soh, Occupation occ);

/// Jordan-Wigner qubit Hamiltonian, simplified and with real coefficients.
PauliSum to_pauli_hamiltonian(const SpinOrbitalHamiltonian &soh);

} // namespace esvqe
