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
#include <vector>

#include "esvqe/integrals.hpp"
#include "esvqe/occupation.hpp"
#include "esvqe/pauli.hpp"
#include "esvqe/pools.hpp"

namespace esvqe {

/**
 * Closed-form energy impact of one excitation applied to a basis-state
 * reference |D>:
 *
 *   dE(theta) = a (1 - cos 2theta) - coupling_sign * b * sin 2theta,
 *   dE_max    = a + sqrt(a^2 + b^2).
 *
 * a is half the diagonal-energy gap between |D> and the excited
 * determinant. For doubles b = g_pqrs - g_pqsr; for singles b is the
 * Fock-like element h_pq + sum_c (g_pccq - g_pcqc). coupling_sign folds
 * together the two Jordan-Wigner signs of the rotation and of the matrix
 * element.
 */
struct PreselectResult {
    std::vector<std::size_t> orbitals;
    double a = 0.0;
    double b = 0.0;
    double delta_e_max = 0.0;
    /// Angle of the generator exponential exp(-i theta G), in [-pi/2, pi/2).
    double theta_max = 0.0;
    /// eta in A|D> = eta |D'> for the excitation operator A.
    int parity_sign = 1;
    int coupling_sign = 1;

    [[nodiscard]] double delta_e(double theta) const;
};

/// Double (p, q -> r, s) with p < q occupied and r < s virtual in `occ`.
PreselectResult preselect_double(const SpinOrbitalHamiltonian &soh, Occupation occ,
                                 std::size_t p, std::size_t q, std::size_t r, std::size_t s);
/// Single p -> q with p occupied and q virtual.
PreselectResult preselect_single(const SpinOrbitalHamiltonian &soh, Occupation occ,
                                 std::size_t p, std::size_t q);

/// Every S_z-preserving double on `occ`, in pool order.
std::vector<PreselectResult> preselect_all_doubles(const SpinOrbitalHamiltonian &soh,
                                                   Occupation occ);

struct FirstLayerRotation {
    PauliString string; ///< X_p X_q X_r Y_s
    int sign = 1;       ///< exp(-i sign theta P)|D> == exp(-i theta G)|D>
};

/// Single-string equivalent of a fermionic double acting on a basis state.
FirstLayerRotation first_layer_rotation(const Generator &g, Occupation occ);

/// "p,q,r,s,a,b,delta_e_max,theta_max,parity_sign" rows with a header line.
std::string preselect_csv(const std::vector<PreselectResult> &results);

} // namespace esvqe
