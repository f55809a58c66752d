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

#include "esvqe/pools.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "esvqe/error.hpp"

namespace esvqe {

namespace {

// Gate metadata for the qubit-excitation family (Yordanov et al. circuits).
constexpr int kQeDoubleCnots = 13;
constexpr int kQeDoubleDepth = 11;
constexpr int kOvpCeoCnots = 9;
constexpr int kOvpCeoDepth = 7;
constexpr int kQubitSingleCnots = 2;
constexpr int kQubitSingleDepth = 2;

// Per-generator cap on precomputed diagonals; pools hold hundreds of generators.
constexpr std::size_t kGeneratorDiagonalBudget = std::size_t{1} << 20;

std::uint64_t mask_of(std::span<const std::size_t> indices) {
    std::uint64_t m = 0;
    for (std::size_t k : indices) m |= 1ULL << k;
    return m;
}

void check_indices(std::size_t n_qubits, std::span<const std::size_t> indices) {
    std::set<std::size_t> seen;
    for (std::size_t k : indices) {
        if (k >= n_qubits) {
            throw IndexError("generator orbital " + std::to_string(k) + " out of range");
        }
        if (!seen.insert(k).second) {
            throw PreconditionError("generator orbitals must be distinct");
        }
    }
}

// i(A - A^dagger) with the coefficient cleanup used by every builder.
PauliSum hermitian_generator(const PauliSum &a) {
    PauliSum g = (a - a.adjoint()) * Complex(0.0, 1.0);
    g.simplify();
    PauliSum real(g.n_qubits());
    for (const auto &[key, c] : g.terms()) {
        real.add_term(key.first, key.second, c.real());
    }
    real.simplify();
    return real;
}

PauliSum qubit_product(std::span<const LadderOp> ops, std::size_t n) {
    PauliSum product = PauliSum::identity(n);
    for (const LadderOp &op : ops) {
        product = product * qubit_ladder(op, n);
    }
    product.simplify();
    return product;
}

std::vector<LadderOp> excitation_ops(std::span<const std::size_t> occupied,
                                     std::span<const std::size_t> virtuals) {
    std::vector<LadderOp> ops;
    for (std::size_t v : virtuals) ops.push_back(create(v));
    for (auto it = occupied.rbegin(); it != occupied.rend(); ++it) ops.push_back(annihilate(*it));
    return ops;
}

GeneratorPtr finish(GeneratorKind kind, std::vector<std::size_t> orbitals, PauliSum pauli,
                    int cnots, int depth) {
    auto g = std::make_shared<Generator>();
    g->kind = kind;
    g->orbitals = std::move(orbitals);
    g->op = PauliOperator(pauli, kGeneratorDiagonalBudget);
    g->pauli = std::move(pauli);
    g->cnot_count = cnots;
    g->depth = depth;
    return g;
}

int spin_of(std::size_t so) { return static_cast<int>(so % 2); }

void combinations(std::span<const std::size_t> items, int k, std::size_t start,
                  std::vector<std::size_t> &current,
                  std::vector<std::vector<std::size_t>> &out) {
    if (static_cast<int>(current.size()) == k) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i < items.size(); ++i) {
        current.push_back(items[i]);
        combinations(items, k, i + 1, current, out);
        current.pop_back();
    }
}

} // namespace

const char *to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::FermionicSingle: return "fermionic_single";
    case GeneratorKind::FermionicDouble: return "fermionic_double";
    case GeneratorKind::FermionicTriple: return "fermionic_triple";
    case GeneratorKind::QubitSingle: return "qubit_single";
    case GeneratorKind::QubitDouble: return "qubit_double";
    case GeneratorKind::OvpCeoPlus: return "ovp_ceo_plus";
    case GeneratorKind::OvpCeoMinus: return "ovp_ceo_minus";
    }
    return "unknown";
}

int excitation_order(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::FermionicSingle:
    case GeneratorKind::QubitSingle: return 1;
    case GeneratorKind::FermionicTriple: return 3;
    default: return 2;
    }
}

std::string Generator::label() const {
    static constexpr const char *kPrefix[] = {"FS", "FD", "FT", "QS", "QD", "CEO+", "CEO-"};
    std::string out = kPrefix[static_cast<int>(kind)];
    out += '(';
    const std::size_t n_occ = orbitals.size() / 2;
    for (std::size_t i = 0; i < orbitals.size(); ++i) {
        if (i == n_occ) {
            out += "->";
        } else if (i > 0) {
            out += ',';
        }
        out += std::to_string(orbitals[i]);
    }
    out += ')';
    return out;
}

std::vector<GeneratorPtr> Pool::of_order(int order) const {
    std::vector<GeneratorPtr> out;
    for (const auto &g : generators) {
        if (excitation_order(g->kind) == order) out.push_back(g);
    }
    return out;
}

std::vector<GeneratorPtr> Pool::of_kind(GeneratorKind kind) const {
    std::vector<GeneratorPtr> out;
    for (const auto &g : generators) {
        if (g->kind == kind) out.push_back(g);
    }
    return out;
}

GeneratorPtr fermionic_excitation(std::size_t n_qubits, std::span<const std::size_t> occupied,
                                  std::span<const std::size_t> virtuals) {
    if (occupied.size() != virtuals.size() || occupied.empty() || occupied.size() > 3) {
        throw PreconditionError("fermionic excitations move 1, 2 or 3 electrons");
    }
    std::vector<std::size_t> orbitals(occupied.begin(), occupied.end());
    orbitals.insert(orbitals.end(), virtuals.begin(), virtuals.end());
    check_indices(n_qubits, orbitals);

    const auto ops = excitation_ops(occupied, virtuals);
    PauliSum pauli = hermitian_generator(jordan_wigner(ops, n_qubits));

    // Parity-string qubits add two CNOTs each to the qubit-excitation circuit.
    const std::uint64_t active = mask_of(orbitals);
    const auto &first = pauli.terms().begin()->first;
    const int parity_qubits = std::popcount(first.second & ~active);
    const int order = static_cast<int>(occupied.size());
    GeneratorKind kind = GeneratorKind::FermionicSingle;
    int cnots = kQubitSingleCnots;
    int depth = kQubitSingleDepth;
    if (order == 2) {
        kind = GeneratorKind::FermionicDouble;
        cnots = kQeDoubleCnots;
        depth = kQeDoubleDepth;
    } else if (order == 3) {
        // Naive Pauli-gadget cost: 2(w-1) CNOTs per string.
        kind = GeneratorKind::FermionicTriple;
        cnots = 0;
        for (const auto &[key, c] : pauli.terms()) {
            cnots += 2 * (std::popcount(key.first | key.second) - 1);
        }
        depth = cnots;
    }
    return finish(kind, std::move(orbitals), std::move(pauli), cnots + 2 * parity_qubits,
                  depth + 2 * parity_qubits);
}

GeneratorPtr qubit_single(std::size_t n_qubits, std::size_t p, std::size_t q) {
    const std::vector<std::size_t> orbitals{p, q};
    check_indices(n_qubits, orbitals);
    const LadderOp ops[] = {create(q), annihilate(p)};
    return finish(GeneratorKind::QubitSingle, orbitals,
                  hermitian_generator(qubit_product(ops, n_qubits)), kQubitSingleCnots,
                  kQubitSingleDepth);
}

GeneratorPtr qe_double(std::size_t n_qubits, std::span<const std::size_t> orbitals) {
    if (orbitals.size() != 4) {
        throw PreconditionError("qubit double excitations need 4 orbitals");
    }
    check_indices(n_qubits, orbitals);
    const LadderOp ops[] = {create(orbitals[2]), create(orbitals[3]), annihilate(orbitals[1]),
                            annihilate(orbitals[0])};
    return finish(GeneratorKind::QubitDouble, {orbitals.begin(), orbitals.end()},
                  hermitian_generator(qubit_product(ops, n_qubits)), kQeDoubleCnots,
                  kQeDoubleDepth);
}

GeneratorPtr ovp_ceo(std::size_t n_qubits, std::span<const std::size_t> quadruple, bool plus) {
    if (quadruple.size() != 4) {
        throw PreconditionError("OVP-CEO needs the quadruple (a1, b1, a2, b2)");
    }
    check_indices(n_qubits, quadruple);
    const std::size_t a1 = quadruple[0], b1 = quadruple[1], a2 = quadruple[2], b2 = quadruple[3];
    const LadderOp forward[] = {create(a2), create(b2), annihilate(b1), annihilate(a1)};
    const LadderOp exchange[] = {create(a1), create(b2), annihilate(b1), annihilate(a2)};
    const PauliSum g1 = hermitian_generator(qubit_product(forward, n_qubits));
    const PauliSum g2 = hermitian_generator(qubit_product(exchange, n_qubits));
    PauliSum pauli = plus ? g1 + g2 : g1 - g2;
    pauli.simplify();
    return finish(plus ? GeneratorKind::OvpCeoPlus : GeneratorKind::OvpCeoMinus,
                  {quadruple.begin(), quadruple.end()}, std::move(pauli), kOvpCeoCnots,
                  kOvpCeoDepth);
}

std::vector<std::vector<std::size_t>> enumerate_excitations(std::size_t n_so, Occupation occ,
                                                            int order) {
    std::vector<std::size_t> occupied;
    std::vector<std::size_t> virtuals;
    for (std::size_t k = 0; k < n_so; ++k) {
        (occ.test(k) ? occupied : virtuals).push_back(k);
    }
    std::vector<std::vector<std::size_t>> occ_sets;
    std::vector<std::vector<std::size_t>> virt_sets;
    std::vector<std::size_t> scratch;
    combinations(occupied, order, 0, scratch, occ_sets);
    combinations(virtuals, order, 0, scratch, virt_sets);

    auto down_count = [](const std::vector<std::size_t> &s) {
        int n = 0;
        for (std::size_t k : s) n += spin_of(k);
        return n;
    };
    std::vector<std::vector<std::size_t>> out;
    for (const auto &o : occ_sets) {
        for (const auto &v : virt_sets) {
            if (down_count(o) != down_count(v)) {
                continue;
            }
            std::vector<std::size_t> tuple = o;
            tuple.insert(tuple.end(), v.begin(), v.end());
            out.push_back(std::move(tuple));
        }
    }
    return out;
}

namespace {

Pool make_pool(std::size_t n_so, Occupation occ) {
    if (n_so == 0 || n_so > kMaxQubits) {
        throw PreconditionError("invalid spin-orbital count");
    }
    if (n_so < 64 && (occ.bits() >> n_so) != 0) {
        throw PreconditionError("occupation does not fit the spin orbitals");
    }
    Pool pool;
    pool.n_qubits = n_so;
    pool.reference = occ;
    return pool;
}

std::span<const std::size_t> head(const std::vector<std::size_t> &t, std::size_t n) {
    return std::span<const std::size_t>(t).first(n);
}
std::span<const std::size_t> tail(const std::vector<std::size_t> &t, std::size_t n) {
    return std::span<const std::size_t>(t).last(n);
}

} // namespace

Pool build_uccsd_pool(std::size_t n_so, Occupation occ) {
    Pool pool = make_pool(n_so, occ);
    for (const auto &t : enumerate_excitations(n_so, occ, 2)) {
        pool.generators.push_back(fermionic_excitation(n_so, head(t, 2), tail(t, 2)));
    }
    for (const auto &t : enumerate_excitations(n_so, occ, 1)) {
        pool.generators.push_back(fermionic_excitation(n_so, head(t, 1), tail(t, 1)));
    }
    return pool;
}

Pool build_qe_pool(std::size_t n_so, Occupation occ) {
    Pool pool = make_pool(n_so, occ);
    for (const auto &t : enumerate_excitations(n_so, occ, 2)) {
        pool.generators.push_back(qe_double(n_so, t));
    }
    for (const auto &t : enumerate_excitations(n_so, occ, 1)) {
        pool.generators.push_back(qubit_single(n_so, t[0], t[1]));
    }
    return pool;
}

std::vector<std::size_t> ovp_ceo_quadruple(std::span<const std::size_t> d) {
    if (d.size() != 4) {
        throw PreconditionError("a double excitation has 4 orbitals");
    }
    const std::size_t p = d[0], q = d[1], r = d[2], s = d[3];
    if (spin_of(r) == spin_of(p)) {
        return {p, q, r, s};
    }
    return {p, q, s, r};
}

Pool build_ovp_ceo_pool(std::size_t n_so, Occupation occ, OvpCeoVariant variant) {
    Pool pool = make_pool(n_so, occ);
    for (const auto &t : enumerate_excitations(n_so, occ, 2)) {
        const auto quad = ovp_ceo_quadruple(t);
        pool.generators.push_back(ovp_ceo(n_so, quad, true));
        if (variant == OvpCeoVariant::PlusAndMinus) {
            pool.generators.push_back(ovp_ceo(n_so, quad, false));
        }
    }
    for (const auto &t : enumerate_excitations(n_so, occ, 1)) {
        pool.generators.push_back(qubit_single(n_so, t[0], t[1]));
    }
    return pool;
}

Pool extend_with_triples(const Pool &pool) {
    Pool out = pool;
    for (const auto &t : enumerate_excitations(pool.n_qubits, pool.reference, 3)) {
        out.generators.push_back(fermionic_excitation(pool.n_qubits, head(t, 3), tail(t, 3)));
    }
    return out;
}

} // namespace esvqe
