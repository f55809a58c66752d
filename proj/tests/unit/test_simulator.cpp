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


#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

#include "esvqe/error.hpp"
#include "esvqe/integrals.hpp"
#include "esvqe/pools.hpp"
#include "esvqe/simulator.hpp"

using namespace esvqe;
using esvqe::testing::dense_exp;
using esvqe::testing::random_hermitian;
using esvqe::testing::random_state;
using esvqe::testing::to_eigen;

namespace {

PauliOperator op_of(const char *label, Complex c = 1.0) {
    return PauliOperator(PauliSum::from_string(PauliString::from_label(label), c));
}

// A small pool containing every generator kind.
std::vector<GeneratorPtr> every_kind(std::size_t n_so, Occupation occ) {
    std::vector<GeneratorPtr> out;
    for (const Pool &p : {extend_with_triples(build_uccsd_pool(n_so, occ)), build_qe_pool(n_so, occ),
                          build_ovp_ceo_pool(n_so, occ, OvpCeoVariant::PlusAndMinus)}) {
        out.insert(out.end(), p.generators.begin(), p.generators.end());
    }
    return out;
}

} // namespace

TEST_CASE("basis states") {
    const StateVector a = prepare_basis_state(2, Occupation::from_indices({0}));
    CHECK(a[1] == Complex(1));
    CHECK(a.norm() == 1.0);
    const StateVector b = prepare_basis_state(2, Occupation{});
    CHECK(b[0] == Complex(1));
    const StateVector c = prepare_basis_state(12, Occupation::from_indices({0, 1, 2, 3}));
    CHECK(c[15] == Complex(1));
    CHECK(c.dim() == 4096);
    CHECK_THROWS_AS(prepare_basis_state(2, Occupation::from_indices({2})), IndexError);
}

TEST_CASE("generator exponential at zero angle is the identity") {
    std::mt19937_64 rng(1);
    const StateVector s = random_state(4, rng);
    for (const auto &g : every_kind(4, Occupation::from_indices({0, 1}))) {
        CHECK(esvqe::testing::max_abs_diff(apply_generator_exponential(s, g->op, 0.0), s) == 0.0);
    }
}

TEST_CASE("exp(-i pi/2 X) maps |0> to -i|1>") {
    const StateVector s = prepare_basis_state(1, Occupation{});
    const StateVector t = apply_generator_exponential(s, op_of("X"), std::numbers::pi / 2);
    CHECK(std::abs(t[0]) < 1e-15);
    CHECK(std::abs(t[1] - Complex(0, -1)) < 1e-15);
}

TEST_CASE("double excitation on the reference matches the dense exponential") {
    const std::size_t occ_idx[]{0, 1}, vir_idx[]{2, 3};
    const GeneratorPtr g = fermionic_excitation(4, occ_idx, vir_idx);
    const Eigen::MatrixXcd gm = matrix_of(g->pauli);
    const StateVector ref = prepare_basis_state(4, Occupation::from_indices({0, 1}));
    for (double theta : {0.1, 0.7, -1.3, 2.9}) {
        const StateVector t = apply_generator_exponential(ref, g->op, theta);
        const Eigen::VectorXcd expect = dense_exp(gm, theta) * to_eigen(ref);
        CHECK((to_eigen(t) - expect).norm() < 1e-12);
        // Only |0011> and |1100> are populated, with a real cos/sin split.
        CHECK(std::abs(t[0b0011] - std::cos(theta)) < 1e-15);
        CHECK(std::abs(std::abs(t[0b1100]) - std::abs(std::sin(theta))) < 1e-15);
        CHECK(std::abs(t[0b1100].imag()) < 1e-15);
        CHECK(std::abs(t.norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("generator exponentials match dense exponentials for every kind") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    struct Case {
        std::size_t n_so;
        Occupation occ;
    };
    for (const Case c : {Case{4, Occupation::from_indices({0, 1})},
                         Case{6, Occupation::from_indices({0, 1, 2})},
                         Case{8, Occupation::from_indices({0, 1, 2, 3})}}) {
        const StateVector s = random_state(c.n_so, rng);
        for (const auto &g : every_kind(c.n_so, c.occ)) {
            CAPTURE(g->label());
            const double theta = angle(rng);
            const Eigen::VectorXcd expect = dense_exp(matrix_of(g->pauli), theta) * to_eigen(s);
            CHECK((to_eigen(apply_generator_exponential(s, g->op, theta)) - expect).norm() < 1e-10);
        }
    }
}

TEST_CASE("norm survives a thousand random generator applications") {
    std::mt19937_64 rng(5);
    const Occupation occ = Occupation::from_indices({0, 1, 2, 3});
    const auto gens = every_kind(8, occ);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    StateVector s = prepare_basis_state(8, occ);
    for (int k = 0; k < 1000; ++k) apply_generator_exponential_inplace(s, gens[pick(rng)]->op, angle(rng));
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("operator application matches dense matrices") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    for (std::size_t n : {1u, 3u, 6u}) {
        PauliSum sum(n);
        std::uniform_int_distribution<std::uint64_t> mask(0, (1ULL << n) - 1);
        for (int t = 0; t < 25; ++t) sum.add_term(mask(rng), mask(rng), {normal(rng), normal(rng)});
        const StateVector s = random_state(n, rng);
        const Eigen::VectorXcd expect = matrix_of(sum) * to_eigen(s);
        for (std::size_t budget : {PauliOperator::kDefaultDiagonalBudget, std::size_t{0}}) {
            const PauliOperator op(sum, budget);
            std::vector<Complex> out(s.dim());
            op.apply(s.amplitudes(), out);
            for (std::size_t i = 0; i < s.dim(); ++i)
                CHECK(std::abs(out[i] - expect(static_cast<Eigen::Index>(i))) < 1e-12);
            const Complex dense = to_eigen(s).dot(expect);
            CHECK(std::abs(op.braket(s.amplitudes()) - dense) < 1e-12);
        }
    }
}

TEST_CASE("Hermitian expectation matches the dense value and is real") {
    std::mt19937_64 rng(9);
    for (std::size_t n : {1u, 2u, 5u, 8u}) {
        const PauliSum h = random_hermitian(n, 40, rng);
        const StateVector s = random_state(n, rng);
        const Eigen::VectorXcd v = to_eigen(s);
        const double dense = v.dot(matrix_of(h) * v).real();
        for (std::size_t budget : {PauliOperator::kDefaultDiagonalBudget, std::size_t{0}}) {
            const PauliOperator op(h, budget);
            CHECK(std::abs(expectation(s, op, Phase::Selection) - dense) < 1e-12);
            CHECK(std::abs(op.braket(s.amplitudes()).imag()) < 1e-10);
        }
    }
}

TEST_CASE("expectation examples") {
    std::mt19937_64 rng(10);
    const StateVector s = random_state(3, rng);
    CHECK(expectation(s, PauliOperator(PauliSum::identity(3, 2.5)), Phase::Selection) ==
          doctest::Approx(2.5).epsilon(1e-14));
    CHECK(expectation(prepare_basis_state(1, Occupation::from_indices({0})), op_of("Z"),
                      Phase::Selection) == -1.0);

    const MolecularIntegrals mi = esvqe::testing::load_fixture("h2_0.735");
    const SpinOrbitalHamiltonian soh = expand_spin_orbitals(mi);
    const Occupation occ = hf_state_occupation(4, 2, 0);
    const PauliOperator h(to_pauli_hamiltonian(soh));
    CHECK(std::abs(expectation(prepare_basis_state(4, occ), h, Phase::Selection) -
                   hf_energy(soh, occ)) < 1e-10);
}

TEST_CASE("expectation rejects bad operators") {
    const StateVector s = prepare_basis_state(1, Occupation{});
    CHECK_THROWS_AS(expectation(s, op_of("Z", Complex(0, 1)), Phase::Selection), PreconditionError);
    CHECK_THROWS_AS(expectation(s, op_of("ZZ"), Phase::Selection), SizeMismatchError);
    CHECK(s.counter().total() == 0);
}

TEST_CASE("evaluation counting is exact and shared by copies") {
    StateVector s = prepare_basis_state(2, Occupation::from_indices({0}));
    const PauliOperator z = op_of("ZI");
    (void)expectation(s, z, Phase::Selection);
    const StateVector copy = apply_generator_exponential(s, op_of("XY"), 0.3);
    (void)expectation(copy, z, Phase::Optimization);
    (void)expectation(copy, z, Phase::Optimization);
    CHECK(s.counter().count(Phase::Selection) == 1);
    CHECK(s.counter().count(Phase::Optimization) == 2);
    CHECK(s.counter().total() == 3);

    s.reset_counter();
    CHECK(s.counter().total() == 0);
    CHECK(copy.counter().total() == 3);
}

TEST_CASE("Pauli rotations") {
    std::mt19937_64 rng(12);
    const StateVector s = random_state(3, rng);
    CHECK(esvqe::testing::max_abs_diff(apply_pauli_rotation(s, PauliString::from_label("XYZ"), 0.0),
                                       s) == 0.0);

    const StateVector zero = prepare_basis_state(1, Occupation{});
    const StateVector r = apply_pauli_rotation(zero, PauliString::from_label("Z"), 0.4);
    CHECK(std::abs(r[0] - std::exp(Complex(0, -0.4))) < 1e-15);

    const Eigen::MatrixXcd p = matrix_of(PauliSum::from_string(PauliString::from_label("XZY")));
    const Eigen::VectorXcd expect = dense_exp(p, 0.9) * to_eigen(s);
    CHECK((to_eigen(apply_pauli_rotation(s, PauliString::from_label("XZY"), 0.9)) - expect).norm() <
          1e-13);

    CHECK_THROWS_AS(apply_pauli_rotation(s, PauliString(3, 1, 0, 1), 0.1), PreconditionError);
}

TEST_CASE("single Pauli rotation reproduces a double excitation on the reference") {
    const std::size_t occ_idx[]{0, 1}, vir_idx[]{2, 3};
    const GeneratorPtr g = fermionic_excitation(4, occ_idx, vir_idx);
    const StateVector ref = prepare_basis_state(4, Occupation::from_indices({0, 1}));
    const PauliString xxxy = PauliString::from_label("XXXY");
    for (double theta : {0.3, -1.1}) {
        const StateVector a = apply_generator_exponential(ref, g->op, theta);
        const StateVector plus = apply_pauli_rotation(ref, xxxy, theta);
        const StateVector minus = apply_pauli_rotation(ref, xxxy, -theta);
        const double d = std::min(esvqe::testing::max_abs_diff(a, plus),
                                  esvqe::testing::max_abs_diff(a, minus));
        CHECK(d < 1e-14);
    }
}
