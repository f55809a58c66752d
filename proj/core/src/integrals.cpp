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

#include "esvqe/integrals.hpp"

#include <array>
#include <cmath>

#include "esvqe/error.hpp"

namespace esvqe {

MolecularIntegrals::MolecularIntegrals(std::size_t n_orb, int n_elec, int ms2)
    : n_orb_(n_orb), n_elec_(n_elec), ms2_(ms2),
      h1_(Eigen::MatrixXd::Zero(idx(n_orb), idx(n_orb))),
      eri_(n_orb * n_orb * n_orb * n_orb, 0.0) {
    if (n_orb == 0 || n_orb > 31) {
        throw PreconditionError("NORB must be in [1, 31]");
    }
    if (n_elec <= 0 || n_elec > 2 * static_cast<int>(n_orb)) {
        throw PreconditionError("NELEC must satisfy 0 < NELEC <= 2*NORB");
    }
    if (std::abs(ms2) > n_elec) {
        throw PreconditionError("|MS2| must not exceed NELEC");
    }
}

void MolecularIntegrals::set_h1(std::size_t i, std::size_t j, double value) {
    if (i >= n_orb_ || j >= n_orb_) {
        throw IndexError("one-electron index out of range");
    }
    h1_(idx(i), idx(j)) = value;
    h1_(idx(j), idx(i)) = value;
}

void MolecularIntegrals::set_eri(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                                 double value) {
    if (i >= n_orb_ || j >= n_orb_ || k >= n_orb_ || l >= n_orb_) {
        throw IndexError("two-electron index out of range");
    }
    const std::array<std::array<std::size_t, 4>, 8> images{{{i, j, k, l},
                                                           {j, i, k, l},
                                                           {i, j, l, k},
                                                           {j, i, l, k},
                                                           {k, l, i, j},
                                                           {l, k, i, j},
                                                           {k, l, j, i},
                                                           {l, k, j, i}}};
    for (const auto &[a, b, c, d] : images) {
        eri_[flat(a, b, c, d)] = value;
    }
}

void MolecularIntegrals::validate(double tol) const {
    for (std::size_t i = 0; i < n_orb_; ++i) {
        for (std::size_t j = 0; j < n_orb_; ++j) {
            if (std::abs(h1(i, j) - h1(j, i)) > tol) {
                throw PreconditionError("one-electron integrals are not symmetric");
            }
            for (std::size_t k = 0; k < n_orb_; ++k) {
                for (std::size_t l = 0; l < n_orb_; ++l) {
                    const double v = eri(i, j, k, l);
                    if (std::abs(v - eri(j, i, k, l)) > tol ||
                        std::abs(v - eri(i, j, l, k)) > tol ||
                        std::abs(v - eri(k, l, i, j)) > tol) {
                        throw PreconditionError("two-electron integrals lack 8-fold symmetry");
                    }
                }
            }
        }
    }
}

SpinOrbitalHamiltonian::SpinOrbitalHamiltonian(std::size_t n_so, double e_core)
    : n_so_(n_so), e_core_(e_core), h_(n_so * n_so, 0.0), g_(n_so * n_so * n_so * n_so, 0.0) {}

SpinOrbitalHamiltonian expand_spin_orbitals(const MolecularIntegrals &mi, SpinOrdering ordering) {
    const std::size_t n_orb = mi.n_orb();
    const std::size_t n_so = 2 * n_orb;
    SpinOrbitalHamiltonian soh(n_so, mi.e_core());

    auto spatial = [&](std::size_t p) {
        return ordering == SpinOrdering::Interleaved ? p / 2 : p % n_orb;
    };
    auto spin = [&](std::size_t p) {
        return ordering == SpinOrdering::Interleaved ? p % 2 : p / n_orb;
    };

    for (std::size_t p = 0; p < n_so; ++p) {
        for (std::size_t q = 0; q < n_so; ++q) {
            if (spin(p) == spin(q)) {
                soh.h(p, q) = mi.h1(spatial(p), spatial(q));
            }
        }
    }
    // g_pqrs = (P(p)P(s)|P(q)P(r)) for spin(p)=spin(s), spin(q)=spin(r).
    for (std::size_t p = 0; p < n_so; ++p) {
        for (std::size_t q = 0; q < n_so; ++q) {
            for (std::size_t r = 0; r < n_so; ++r) {
                if (spin(q) != spin(r)) {
                    continue;
                }
                for (std::size_t s = 0; s < n_so; ++s) {
                    if (spin(p) != spin(s)) {
                        continue;
                    }
                    soh.g(p, q, r, s) = mi.eri(spatial(p), spatial(s), spatial(q), spatial(r));
                }
            }
        }
    }
    return soh;
}

Occupation hf_state_occupation(std::size_t n_so, int n_elec, int ms2) {
    if (n_so % 2 != 0 || n_so > 64) {
        throw PreconditionError("spin-orbital count must be even and at most 64");
    }
    if (n_elec < 0 || static_cast<std::size_t>(n_elec) > n_so) {
        throw PreconditionError("electron count exceeds spin orbitals");
    }
    if ((n_elec + ms2) % 2 != 0 || std::abs(ms2) > n_elec) {
        throw PreconditionError("MS2 is infeasible for this electron count");
    }
    const int n_up = (n_elec + ms2) / 2;
    const int n_down = (n_elec - ms2) / 2;
    if (static_cast<std::size_t>(std::max(n_up, n_down)) > n_so / 2) {
        throw PreconditionError("MS2 is infeasible for this orbital count");
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < n_up; ++i) {
        bits |= 1ULL << (2 * i);
    }
    for (int i = 0; i < n_down; ++i) {
        bits |= 1ULL << (2 * i + 1);
    }
    return Occupation(bits);
}

double hf_energy(const SpinOrbitalHamiltonian &soh, Occupation occ) {
    const std::vector<std::size_t> occupied = occ.indices();
    double e = soh.e_core();
    for (std::size_t p : occupied) {
        if (p >= soh.n_so()) {
            throw IndexError("occupied orbital outside the Hamiltonian");
        }
        e += soh.h(p, p);
    }
    double two_body = 0.0;
    for (std::size_t p : occupied) {
        for (std::size_t q : occupied) {
            two_body += soh.g(p, q, q, p) - soh.g(p, q, p, q);
        }
    }
    return e + 0.5 * two_body;
}

PauliSum to_pauli_hamiltonian(const SpinOrbitalHamiltonian &soh) {
    const std::size_t n = soh.n_so();
    constexpr double kSkip = 1e-16;
    PauliSum hamiltonian = PauliSum::identity(n, soh.e_core());

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (std::abs(soh.h(p, q)) < kSkip) {
                continue;
            }
            const LadderOp ops[] = {create(p), annihilate(q)};
            hamiltonian += jordan_wigner(ops, n) * Complex(soh.h(p, q));
        }
    }

    // JW images of a+_p a+_q and a_r a_s, reused across the quartic sum.
    std::vector<PauliSum> creators(n * n);
    std::vector<PauliSum> annihilators(n * n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) {
                continue;
            }
            const LadderOp cc[] = {create(p), create(q)};
            const LadderOp aa[] = {annihilate(p), annihilate(q)};
            creators[p * n + q] = jordan_wigner(cc, n);
            annihilators[p * n + q] = jordan_wigner(aa, n);
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) {
                continue;
            }
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t s = 0; s < n; ++s) {
                    if (r == s) {
                        continue;
                    }
                    const double c = soh.g(p, q, r, s);
                    if (std::abs(c) < kSkip) {
                        continue;
                    }
                    hamiltonian +=
                        (creators[p * n + q] * annihilators[r * n + s]) * Complex(0.5 * c);
                }
            }
        }
    }

    hamiltonian.simplify();
    PauliSum real_part(n);
    for (const auto &[key, c] : hamiltonian.terms()) {
        if (std::abs(c.imag()) > 1e-10) {
            throw PreconditionError("spin-orbital Hamiltonian is not Hermitian");
        }
        real_part.add_term(key.first, key.second, c.real());
    }
    real_part.simplify();
    return real_part;
}

} // namespace esvqe
