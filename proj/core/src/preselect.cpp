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

#include "esvqe/preselect.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <span>

#include "esvqe/error.hpp"

namespace esvqe {

namespace {

struct SignedState {
    int sign;
    std::uint64_t bits;
};

// Applies ops[0] * ops[1] * ... (rightmost first) to a basis state.
std::optional<SignedState> apply_ladders(std::span<const LadderOp> ops, std::uint64_t bits) {
    int sign = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const std::uint64_t bit = 1ULL << it->mode;
        const bool occupied = (bits & bit) != 0;
        if (occupied == (it->type == Ladder::Create)) {
            return std::nullopt;
        }
        if (std::popcount(bits & (bit - 1)) % 2 == 1) sign = -sign;
        bits ^= bit;
    }
    return SignedState{sign, bits};
}

int ladder_sign(std::span<const LadderOp> ops, std::uint64_t from, std::uint64_t to) {
    const auto r = apply_ladders(ops, from);
    if (!r || r->bits != to) {
        throw PreconditionError("excitation does not connect the two determinants");
    }
    return r->sign;
}

void require(bool ok, const char *what) {
    if (!ok) throw PreconditionError(what);
}

void finish(PreselectResult &r) {
    const double beta = r.coupling_sign * r.b;
    r.delta_e_max = r.a + std::hypot(r.a, r.b);
    if (r.a == 0.0 && r.b == 0.0) {
        r.theta_max = 0.0;
        return;
    }
    // Maximize -a cos 2t - beta sin 2t: (cos 2t, sin 2t) points along (-a, -beta).
    double t = 0.5 * std::atan2(-beta, -r.a);
    if (t >= std::numbers::pi / 2) t -= std::numbers::pi;
    if (t < -std::numbers::pi / 2) t += std::numbers::pi;
    r.theta_max = t;
}

} // namespace

double PreselectResult::delta_e(double theta) const {
    return a * (1.0 - std::cos(2 * theta)) - coupling_sign * b * std::sin(2 * theta);
}

PreselectResult preselect_double(const SpinOrbitalHamiltonian &soh, Occupation occ,
                                 std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    const std::size_t n = soh.n_so();
    require(p < n && q < n && r < n && s < n, "double excitation index out of range");
    require(p != q && r != s, "double excitation orbitals must be distinct");
    require(occ.test(p) && occ.test(q), "p and q must be occupied");
    require(!occ.test(r) && !occ.test(s), "r and s must be unoccupied");

    const Occupation excited = occ.without(p).without(q).with(r).with(s);
    const LadderOp forward[] = {create(r), create(s), annihilate(q), annihilate(p)};
    const LadderOp element[] = {create(p), create(q), annihilate(r), annihilate(s)};

    PreselectResult res;
    res.orbitals = {p, q, r, s};
    res.a = 0.5 * (hf_energy(soh, occ) - hf_energy(soh, excited));
    res.b = soh.g(p, q, r, s) - soh.g(p, q, s, r);
    res.parity_sign = ladder_sign(forward, occ.bits(), excited.bits());
    res.coupling_sign = res.parity_sign * ladder_sign(element, excited.bits(), occ.bits());
    finish(res);
    return res;
}

PreselectResult preselect_single(const SpinOrbitalHamiltonian &soh, Occupation occ,
                                 std::size_t p, std::size_t q) {
    const std::size_t n = soh.n_so();
    require(p < n && q < n && p != q, "single excitation indices invalid");
    require(occ.test(p), "p must be occupied");
    require(!occ.test(q), "q must be unoccupied");

    const Occupation excited = occ.without(p).with(q);
    const LadderOp forward[] = {create(q), annihilate(p)};
    const LadderOp element[] = {create(p), annihilate(q)};

    PreselectResult res;
    res.orbitals = {p, q};
    res.a = 0.5 * (hf_energy(soh, occ) - hf_energy(soh, excited));
    res.b = soh.h(p, q);
    for (std::size_t c : occ.without(p).indices()) {
        res.b += soh.g(p, c, c, q) - soh.g(p, c, q, c);
    }
    res.parity_sign = ladder_sign(forward, occ.bits(), excited.bits());
    res.coupling_sign = res.parity_sign * ladder_sign(element, excited.bits(), occ.bits());
    finish(res);
    return res;
}

std::vector<PreselectResult> preselect_all_doubles(const SpinOrbitalHamiltonian &soh,
                                                   Occupation occ) {
    std::vector<PreselectResult> out;
    for (const auto &t : enumerate_excitations(soh.n_so(), occ, 2)) {
        out.push_back(preselect_double(soh, occ, t[0], t[1], t[2], t[3]));
    }
    return out;
}

FirstLayerRotation first_layer_rotation(const Generator &g, Occupation occ) {
    require(g.kind == GeneratorKind::FermionicDouble,
            "first-layer rotation needs a fermionic double");
    const auto &o = g.orbitals;
    const std::size_t p = o[0], q = o[1], r = o[2], s = o[3];
    require(occ.test(p) && occ.test(q) && !occ.test(r) && !occ.test(s),
            "reference must occupy p, q and leave r, s empty");
    const std::uint64_t x = (1ULL << p) | (1ULL << q) | (1ULL << r) | (1ULL << s);
    const std::uint64_t z = 1ULL << s;
    const Occupation excited = occ.without(p).without(q).with(r).with(s);
    const LadderOp forward[] = {create(r), create(s), annihilate(q), annihilate(p)};
    // X_p X_q X_r Y_s |D> = i |D'>, so exp(-i phi P)|D> = cos phi |D> + sin phi |D'>.
    return {PauliString(g.n_qubits(), x, z, 0), ladder_sign(forward, occ.bits(), excited.bits())};
}

std::string preselect_csv(const std::vector<PreselectResult> &results) {
    std::string out = "p,q,r,s,a,b,delta_e_max,theta_max,parity_sign\n";
    char buf[256];
    for (const auto &r : results) {
        for (std::size_t k = 0; k < 4; ++k) {
            if (k < r.orbitals.size()) out += std::to_string(r.orbitals[k]);
            out += ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d\n", r.a, r.b, r.delta_e_max,
                      r.theta_max, r.parity_sign);
        out += buf;
    }
    return out;
}

} // namespace esvqe
