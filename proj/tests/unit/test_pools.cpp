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


#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

#include "esvqe/error.hpp"
#include "esvqe/pools.hpp"
#include "esvqe/simulator.hpp"

using namespace esvqe;

namespace {

// Brute force over all index tuples: k distinct occupied, k distinct
// virtual, equal numbers of odd (spin-down) indices on both sides.
std::size_t brute_force_count(std::size_t n_so, Occupation occ, int k) {
    const std::uint64_t all = (1ULL << n_so) - 1;
    const std::uint64_t odd = 0xAAAAAAAAAAAAAAAAULL & all;
    const std::uint64_t occupied = occ.bits();
    const std::uint64_t virtuals = all & ~occupied;
    std::size_t count = 0;
    // Every submask of the occupied set, paired with every submask of the virtual set.
    for (std::uint64_t from = occupied;; from = (from - 1) & occupied) {
        if (std::popcount(from) == k) {
            for (std::uint64_t to = virtuals;; to = (to - 1) & virtuals) {
                if (std::popcount(to) == k &&
                    std::popcount(from & odd) == std::popcount(to & odd)) {
                    ++count;
                }
                if (to == 0) break;
            }
        }
        if (from == 0) break;
    }
    return count;
}

std::size_t choose(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Closed-form count of S_z-preserving doubles.
std::size_t doubles_formula(std::size_t n_so, Occupation occ) {
    std::size_t oa = 0, ob = 0, va = 0, vb = 0;
    for (std::size_t k = 0; k < n_so; ++k) {
        const bool down = k % 2;
        if (occ.test(k)) (down ? ob : oa)++;
        else (down ? vb : va)++;
    }
    return choose(oa, 2) * choose(va, 2) + choose(ob, 2) * choose(vb, 2) + oa * ob * va * vb;
}

Eigen::MatrixXcd spin_projection(std::size_t n) {
    PauliSum sz(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double s = (p % 2 == 0) ? 0.5 : -0.5;
        sz.add_term(0, 0, s / 2);
        sz.add_term(0, 1ULL << p, -s / 2);
    }
    return matrix_of(sz);
}

Eigen::MatrixXcd number_operator(std::size_t n) {
    PauliSum num(n);
    for (std::size_t p = 0; p < n; ++p) {
        num.add_term(0, 0, 0.5);
        num.add_term(0, 1ULL << p, -0.5);
    }
    return matrix_of(num);
}

std::vector<Pool> all_pools(std::size_t n_so, Occupation occ) {
    return {build_uccsd_pool(n_so, occ), extend_with_triples(build_uccsd_pool(n_so, occ)),
            build_qe_pool(n_so, occ), build_ovp_ceo_pool(n_so, occ, OvpCeoVariant::PlusOnly),
            build_ovp_ceo_pool(n_so, occ, OvpCeoVariant::PlusAndMinus)};
}

// Puts letters on the named qubits of an otherwise identity label.
PauliString place(std::size_t n, const std::string &letters, const std::vector<std::size_t> &qubits) {
    std::string label(n, 'I');
    for (std::size_t k = 0; k < qubits.size(); ++k) label[qubits[k]] = letters[k];
    return PauliString::from_label(label);
}

} // namespace

TEST_CASE("pool sizes") {
    CHECK(build_uccsd_pool(4, Occupation::from_indices({0, 1})).size() == 3);
    const Pool lih = build_uccsd_pool(12, Occupation::from_indices({0, 1, 2, 3}));
    CHECK(lih.size() == 92);
    CHECK(lih.of_order(2).size() == 76);
    CHECK(lih.of_order(1).size() == 16);
    CHECK(build_uccsd_pool(4, Occupation(0b1111)).empty());
    CHECK(extend_with_triples(build_uccsd_pool(4, Occupation(0b0011))).size() == 3);

    const Pool pm = build_ovp_ceo_pool(12, Occupation(0b1111), OvpCeoVariant::PlusAndMinus);
    CHECK(pm.size() == 2 * 76 + 16);
    CHECK(build_ovp_ceo_pool(12, Occupation(0b1111), OvpCeoVariant::PlusOnly).size() == 92);
    CHECK(build_qe_pool(12, Occupation(0b1111)).size() == 92);
}

TEST_CASE("excitation counts match brute force and the closed form") {
    for (std::size_t n_so = 4; n_so <= 16; n_so += 2) {
        for (std::size_t n_elec : {std::size_t{1}, n_so / 2 - 1, n_so / 2, n_so / 2 + 1}) {
            const Occupation occ((1ULL << n_elec) - 1);
            CAPTURE(n_so);
            CAPTURE(n_elec);
            const Pool p = extend_with_triples(build_uccsd_pool(n_so, occ));
            CHECK(p.of_order(1).size() == brute_force_count(n_so, occ, 1));
            CHECK(p.of_order(2).size() == brute_force_count(n_so, occ, 2));
            CHECK(p.of_order(2).size() == doubles_formula(n_so, occ));
            if (n_so <= 12) CHECK(p.of_order(3).size() == brute_force_count(n_so, occ, 3));
        }
    }
    const Occupation lih(0b1111);
    CHECK(extend_with_triples(build_uccsd_pool(12, lih)).of_order(3).size() ==
          brute_force_count(12, lih, 3));
}

TEST_CASE("every generator is Hermitian, traceless, cubes to itself and conserves N and S_z") {
    for (std::size_t n_so : {4u, 6u, 8u}) {
        const Occupation occ((1ULL << (n_so / 2)) - 1);
        const Eigen::MatrixXcd sz = spin_projection(n_so);
        const Eigen::MatrixXcd num = number_operator(n_so);
        for (const Pool &pool : all_pools(n_so, occ)) {
            for (const auto &g : pool.generators) {
                CAPTURE(g->label());
                CHECK(g->pauli.is_hermitian(0.0));
                CHECK(g->pauli.coefficient(0, 0) == Complex(0));
                const Eigen::MatrixXcd m = matrix_of(g->pauli);
                CHECK((m * m * m - m).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((m * sz - sz * m).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((m * num - num * m).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("G^3 = G spot check on 12 qubits") {
    std::mt19937_64 rng(4);
    const StateVector s = esvqe::testing::random_state(12, rng);
    const Occupation occ(0b1111);
    for (const Pool &pool : all_pools(12, occ)) {
        for (std::size_t k = 0; k < pool.size(); k += 7) {
            const auto &g = pool.generators[k];
            std::vector<Complex> a(s.dim()), b(s.dim()), c(s.dim());
            g->op.apply(s.amplitudes(), a);
            g->op.apply(a, b);
            g->op.apply(b, c);
            double worst = 0.0;
            for (std::size_t i = 0; i < s.dim(); ++i) worst = std::max(worst, std::abs(c[i] - a[i]));
            CHECK(worst < 1e-12);
        }
    }
}

TEST_CASE("resource metadata") {
    const Occupation occ(0b1111);
    for (const auto &g : build_qe_pool(12, occ).generators) {
        if (g->kind == GeneratorKind::QubitDouble) {
            CHECK(g->cnot_count == 13);
            CHECK(g->depth == 11);
        } else {
            CHECK(g->kind == GeneratorKind::QubitSingle);
            CHECK(g->cnot_count == 2);
        }
    }
    for (const auto &g : build_ovp_ceo_pool(12, occ, OvpCeoVariant::PlusAndMinus).of_order(2)) {
        CHECK(g->cnot_count == 9);
        CHECK(g->depth == 7);
    }
    for (const auto &g : build_uccsd_pool(12, occ).generators) CHECK(g->cnot_count > 0);
}

TEST_CASE("OVP-CEO+ matches the published four-term form") {
    // The published expansion lists its letters in the order (a1, a2, b1, b2).
    const std::vector<std::size_t> quad{1, 4, 3, 6}; // (a1, b1, a2, b2)
    const std::vector<std::size_t> printed_order{quad[0], quad[2], quad[1], quad[3]};
    const GeneratorPtr g = ovp_ceo(8, quad, true);
    CHECK(g->kind == GeneratorKind::OvpCeoPlus);
    CHECK(g->pauli.size() == 4);
    const std::vector<std::pair<std::string, double>> terms{
        {"XXXY", 1}, {"XXYX", -1}, {"YYXY", 1}, {"YYYX", -1}};
    for (const auto &[letters, sign] : terms) {
        CAPTURE(letters);
        CHECK(std::abs(g->pauli.coefficient(place(8, letters, printed_order)) - sign / 4) < 1e-15);
    }
}

TEST_CASE("OVP-CEO- four-term form from the exchange definition") {
    const std::vector<std::size_t> quad{0, 1, 2, 3};
    const GeneratorPtr g = ovp_ceo(4, quad, false);
    CHECK(g->kind == GeneratorKind::OvpCeoMinus);
    CHECK(g->pauli.size() == 4);
    const std::vector<std::pair<std::string, double>> terms{
        {"YXXX", -1}, {"XXYX", 1}, {"YYXY", -1}, {"XYYY", 1}};
    for (const auto &[letters, sign] : terms) {
        CAPTURE(letters);
        CHECK(std::abs(g->pauli.coefficient(PauliString::from_label(letters)) - sign / 4) < 1e-15);
    }
}

TEST_CASE("OVP-CEO+ plus OVP-CEO- is twice the qubit double") {
    const Occupation occ(0b111111);
    for (const auto &t : enumerate_excitations(10, occ, 2)) {
        const auto quad = ovp_ceo_quadruple(t);
        const PauliSum sum = ovp_ceo(10, quad, true)->pauli + ovp_ceo(10, quad, false)->pauli;
        const PauliSum qe = qe_double(10, quad)->pauli * 2.0;
        CHECK(sum.max_abs_difference(qe) < 1e-15);
    }
}

TEST_CASE("OVP-CEO variants act like the qubit double on the reference") {
    const std::size_t n = 8;
    const Occupation occ(0b1111);
    const StateVector ref = prepare_basis_state(n, occ);
    for (const auto &t : enumerate_excitations(n, occ, 2)) {
        const auto quad = ovp_ceo_quadruple(t);
        std::vector<Complex> qe(ref.dim()), plus(ref.dim()), minus(ref.dim());
        qe_double(n, quad)->op.apply(ref.amplitudes(), qe);
        ovp_ceo(n, quad, true)->op.apply(ref.amplitudes(), plus);
        ovp_ceo(n, quad, false)->op.apply(ref.amplitudes(), minus);
        double d_plus = 0.0, d_minus = 0.0, d_plus_neg = 0.0, d_minus_neg = 0.0;
        for (std::size_t i = 0; i < ref.dim(); ++i) {
            d_plus = std::max(d_plus, std::abs(plus[i] - qe[i]));
            d_plus_neg = std::max(d_plus_neg, std::abs(plus[i] + qe[i]));
            d_minus = std::max(d_minus, std::abs(minus[i] - qe[i]));
            d_minus_neg = std::max(d_minus_neg, std::abs(minus[i] + qe[i]));
        }
        CHECK(std::min(d_plus, d_plus_neg) < 1e-15);
        CHECK(std::min(d_minus, d_minus_neg) < 1e-15);
    }
}

TEST_CASE("qubit doubles") {
    const std::vector<std::size_t> orb{0, 1, 2, 3};
    const GeneratorPtr g = qe_double(4, orb);
    CHECK(g->pauli.size() == 8);
    for (const auto &[key, c] : g->pauli.terms()) {
        CHECK(key.first == 0b1111);               // X or Y on each of the four qubits
        CHECK((key.second & ~key.first) == 0);    // no bare Z parity factors
        CHECK(std::abs(std::abs(c) - 0.125) < 1e-15);
    }
    const Eigen::MatrixXcd m = matrix_of(g->pauli);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    int rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) rank += svd.singularValues()(k) > 1e-12;
    CHECK(rank == 2);
    CHECK(std::abs(std::abs(m(0b1100, 0b0011)) - 1.0) < 1e-15);

    CHECK_THROWS_AS(qe_double(4, std::vector<std::size_t>{0, 1, 1, 3}), PreconditionError);
    CHECK_THROWS_AS(qe_double(4, std::vector<std::size_t>{0, 1, 2}), PreconditionError);
    CHECK_THROWS_AS(qe_double(4, std::vector<std::size_t>{0, 1, 2, 4}), IndexError);
}

TEST_CASE("qubit and fermionic doubles differ only by parity signs") {
    const std::size_t occ_idx[]{0, 3}, vir_idx[]{4, 5};
    const GeneratorPtr f = fermionic_excitation(6, occ_idx, vir_idx);
    const GeneratorPtr q = qe_double(6, std::vector<std::size_t>{0, 3, 4, 5});
    const Eigen::MatrixXcd mf = matrix_of(f->pauli);
    const Eigen::MatrixXcd mq = matrix_of(q->pauli);
    CHECK((mf.cwiseAbs() - mq.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-15);
    int flips = 0;
    for (Eigen::Index i = 0; i < mf.rows(); ++i)
        for (Eigen::Index j = 0; j < mf.cols(); ++j) {
            if (std::abs(mq(i, j)) < 1e-12) continue;
            const bool same = std::abs(mf(i, j) - mq(i, j)) < 1e-15;
            const bool opposite = std::abs(mf(i, j) + mq(i, j)) < 1e-15;
            CHECK((same || opposite));
            flips += opposite;
        }
    // Qubits 1 and 2 sit inside the parity string, so some elements flip.
    CHECK(flips > 0);
}

TEST_CASE("pools are deterministic and free of duplicates") {
    const Occupation occ(0b1111);
    const auto a = all_pools(12, occ);
    const auto b = all_pools(12, occ);
    for (std::size_t k = 0; k < a.size(); ++k) {
        REQUIRE(a[k].size() == b[k].size());
        std::set<std::string> labels;
        for (std::size_t i = 0; i < a[k].size(); ++i) {
            CHECK(a[k].generators[i]->label() == b[k].generators[i]->label());
            CHECK(a[k].generators[i]->pauli.max_abs_difference(b[k].generators[i]->pauli) == 0.0);
            labels.insert(a[k].generators[i]->label());
        }
        CHECK(labels.size() == a[k].size());
    }
}

TEST_CASE("canonical ordering and labels") {
    const Pool p = build_uccsd_pool(4, Occupation(0b0011));
    REQUIRE(p.size() == 3);
    CHECK(p.generators[0]->label() == "FD(0,1->2,3)");
    CHECK(p.generators[1]->label() == "FS(0->2)");
    CHECK(p.generators[2]->label() == "FS(1->3)");

    for (const auto &g : build_uccsd_pool(12, Occupation(0b1111)).generators) {
        const std::size_t k = g->orbitals.size() / 2;
        CHECK(std::is_sorted(g->orbitals.begin(), g->orbitals.begin() + k));
        CHECK(std::is_sorted(g->orbitals.begin() + k, g->orbitals.end()));
    }
    CHECK(ovp_ceo_quadruple(std::vector<std::size_t>{0, 1, 4, 5}) == std::vector<std::size_t>{0, 1, 4, 5});
    CHECK(ovp_ceo_quadruple(std::vector<std::size_t>{0, 1, 5, 6}) == std::vector<std::size_t>{0, 1, 6, 5});
}

TEST_CASE("fermionic double on the reference excites exactly one determinant") {
    const Occupation occ(0b1111);
    const StateVector ref = prepare_basis_state(12, occ);
    for (const auto &g : build_uccsd_pool(12, occ).of_order(2)) {
        std::vector<Complex> out(ref.dim());
        g->op.apply(ref.amplitudes(), out);
        std::uint64_t target = occ.bits();
        for (std::size_t k = 0; k < 2; ++k) target ^= 1ULL << g->orbitals[k];
        for (std::size_t k = 2; k < 4; ++k) target ^= 1ULL << g->orbitals[k];
        int nonzero = 0;
        for (std::size_t i = 0; i < ref.dim(); ++i) nonzero += std::abs(out[i]) > 1e-15;
        CHECK(nonzero == 1);
        CHECK(std::abs(std::abs(out[target]) - 1.0) < 1e-15);
    }
}
