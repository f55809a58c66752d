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

#include <cstdint>
#include <optional>

#include "esvqe/pauli.hpp"

namespace esvqe {

/// Particle-number and spin-projection sector under the interleaved ordering.
struct Sector {
    int n_elec = 0;
    int ms2 = 0;
};

struct OracleResult {
    double e0 = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
};

/// Basis-state predicate for `sector`: popcount == n_elec, (#even - #odd bits) == ms2.
bool in_sector(std::uint64_t basis_state, Sector sector);

/**
 * Lowest eigenvalue of a Hermitian PauliSum, optionally within a sector.
 *
 * Restarted Lanczos with full reorthogonalization, using only H v products
 * from the simulator kernel. Stops at a residual below 1e-10; throws
 * ConvergenceError after 10^4 products.
 */
OracleResult ground_energy(const PauliSum &h, std::optional<Sector> sector = std::nullopt,
                           std::uint64_t seed = 20260401);

/// Dense diagonalization for at most 10 qubits; used as a self-test.
OracleResult ground_energy_dense(const PauliSum &h, std::optional<Sector> sector = std::nullopt);

} // namespace esvqe
