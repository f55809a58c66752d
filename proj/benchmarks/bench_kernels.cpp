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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "esvqe/excitation_solve.hpp"
#include "esvqe/integrals.hpp"
#include "esvqe/pools.hpp"
#include "esvqe/selection.hpp"
#include "esvqe/simulator.hpp"

namespace {

const char *const kFixtures[] = {"h4_0.900", "lih_1.595", "h2o_0.958"};

const esvqe::Problem &problem(int which) {
    static esvqe::Problem cache[3];
    static bool loaded[3] = {};
    if (!loaded[which]) {
        cache[which] = esvqe::make_problem(esvqe::read_fcidump(
            std::string(ESVQE_FIXTURE_DIR) + "/" + kFixtures[which] + ".fcidump"));
        loaded[which] = true;
    }
    return cache[which];
}

esvqe::StateVector random_state(std::size_t n) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    esvqe::StateVector s(n);
    double norm = 0.0;
    for (auto &a : s.amplitudes()) {
        a = {normal(rng), normal(rng)};
        norm += std::norm(a);
    }
    for (auto &a : s.amplitudes()) a /= std::sqrt(norm);
    return s;
}

void BM_Expectation(benchmark::State &state) {
    const auto &p = problem(static_cast<int>(state.range(0)));
    const auto s = random_state(p.n_qubits);
    for (auto _ : state) {
        benchmark::DoNotOptimize(esvqe::expectation(s, p.hamiltonian, esvqe::Phase::Selection));
    }
    state.SetLabel(kFixtures[state.range(0)]);
}
BENCHMARK(BM_Expectation)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_GeneratorExponential(benchmark::State &state) {
    const auto &p = problem(static_cast<int>(state.range(0)));
    const auto pool = esvqe::build_uccsd_pool(p.n_qubits, p.reference);
    auto s = random_state(p.n_qubits);
    const auto &g = pool.generators.front()->op;
    for (auto _ : state) {
        esvqe::apply_generator_exponential_inplace(s, g, 0.1);
        benchmark::ClobberMemory();
    }
    state.SetLabel(kFixtures[state.range(0)]);
}
BENCHMARK(BM_GeneratorExponential)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_HamiltonianApply(benchmark::State &state) {
    const auto &p = problem(static_cast<int>(state.range(0)));
    const auto s = random_state(p.n_qubits);
    std::vector<esvqe::Complex> out(s.dim());
    for (auto _ : state) {
        p.hamiltonian.apply(s.amplitudes(), out);
        benchmark::ClobberMemory();
    }
    state.SetLabel(kFixtures[state.range(0)]);
}
BENCHMARK(BM_HamiltonianApply)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_MinimizeLandscape(benchmark::State &state) {
    const esvqe::TrigLandscape l{-7.8, 0.01, -0.02, 0.003, 0.004};
    for (auto _ : state) benchmark::DoNotOptimize(esvqe::minimize_landscape(l));
}
BENCHMARK(BM_MinimizeLandscape);

void BM_EnergySortPool(benchmark::State &state) {
    const auto &p = problem(1);
    const auto pool = esvqe::build_uccsd_pool(p.n_qubits, p.reference);
    const auto ref = esvqe::prepare_basis_state(p.n_qubits, p.reference);
    for (auto _ : state) {
        benchmark::DoNotOptimize(esvqe::energy_sort(pool, ref, p.hamiltonian, 1e-13));
    }
}
BENCHMARK(BM_EnergySortPool)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
