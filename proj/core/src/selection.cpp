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

#include "esvqe/selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "esvqe/error.hpp"
#include "esvqe/preselect.hpp"

namespace esvqe {

namespace {

// Below this much work (candidates x amplitudes) a pool sweep stays on one thread.
constexpr std::size_t kParallelWork = std::size_t{1} << 15;
constexpr double kPairTieTolerance = 1e-12;

bool is_ovp_ceo(const Generator &g) {
    return g.kind == GeneratorKind::OvpCeoPlus || g.kind == GeneratorKind::OvpCeoMinus;
}

Stage stage_for_order(int order) {
    switch (order) {
    case 1: return Stage::Singles;
    case 3: return Stage::Triples;
    default: return Stage::QuantumDoubles;
    }
}

// Drops are ranked on a 1e-12 Ha grid so that symmetry-degenerate operators
// tie exactly whether their drop came from the closed form or the simulator.
constexpr double kTieResolution = 1e-12;

long long rank_key(double delta_e) { return std::llround(delta_e / kTieResolution); }

void sort_records(std::vector<SelectionRecord> &records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const SelectionRecord &a, const SelectionRecord &b) {
                         const long long ka = rank_key(a.delta_e);
                         const long long kb = rank_key(b.delta_e);
                         if (ka != kb) return ka > kb;
                         return a.pool_index < b.pool_index;
                     });
}

// Shared state of one ansatz construction.
class Builder {
  public:
    Builder(const Pool &pool, const Problem &problem, const BuildOptions &options)
        : pool_(pool), problem_(problem), options_(options),
          reference_(prepare_basis_state(problem.n_qubits, problem.reference)) {
        if (pool.n_qubits != problem.n_qubits) {
            throw SizeMismatchError("pool and Hamiltonian qubit counts differ");
        }
        if (pool.reference != problem.reference) {
            throw PreconditionError("pool was built for a different reference");
        }
    }

    const PauliOperator &h() const { return problem_.hamiltonian; }
    BuildResult &result() { return res_; }
    const StateVector &reference() const { return reference_; }

    StateVector current() const { return prepare_ansatz_state(reference_, res_.ansatz); }

    bool available(const GeneratorPtr &g) const {
        if (used_.count(g.get())) return false;
        return !(is_ovp_ceo(*g) && used_quads_.count(g->orbitals));
    }

    std::vector<Candidate> candidates(int order) const {
        std::vector<Candidate> out;
        for (std::size_t i = 0; i < pool_.size(); ++i) {
            const auto &g = pool_.generators[i];
            if ((order == 0 || excitation_order(g->kind) == order) && available(g)) {
                out.push_back({i, g});
            }
        }
        return out;
    }

    void append(const GeneratorPtr &g, double theta) {
        res_.ansatz.push_back({g, theta});
        used_.insert(g.get());
        if (is_ovp_ceo(*g)) used_quads_.insert(g->orbitals);
    }

    // Sorts `cands` against the current state and logs records and trace points.
    SortResult sort(const std::vector<Candidate> &cands, Stage stage, int round) {
        const StateVector state = current();
        const double e_ref = expectation(state, h(), Phase::Selection);
        res_.trace.record(reference_.counter(), e_ref, Phase::Selection, to_string(stage),
                          res_.ansatz.size());
        SortResult s = energy_sort(cands, state, h(), options_.eps_a, e_ref, stage);
        for (auto &r : s.records) r.round = round;
        res_.trace.record(reference_.counter(), e_ref, Phase::Selection, to_string(stage),
                          res_.ansatz.size());
        res_.energy = e_ref;
        return s;
    }

    void keep(const SortResult &s) {
        res_.records.insert(res_.records.end(), s.records.begin(), s.records.end());
    }

    void append_selected(const SortResult &s) {
        for (const auto &r : s.records) {
            if (r.selected) append(r.generator, r.theta);
        }
    }

    bool classical_possible() const {
        if (!options_.classical_doubles || !problem_.integrals) return false;
        const auto doubles = pool_.of_order(2);
        return !doubles.empty() &&
               std::all_of(doubles.begin(), doubles.end(), [](const GeneratorPtr &g) {
                   return g->kind == GeneratorKind::FermionicDouble;
               });
    }

    void classical_doubles() {
        const auto &soh = *problem_.integrals;
        const double e_hf = hf_energy(soh, problem_.reference);
        std::vector<SelectionRecord> records;
        for (const auto &c : candidates(2)) {
            const auto &o = c.generator->orbitals;
            const PreselectResult pr =
                preselect_double(soh, problem_.reference, o[0], o[1], o[2], o[3]);
            records.push_back({c.pool_index, c.generator, pr.delta_e_max, pr.theta_max,
                               pr.delta_e_max > options_.eps_a, Stage::ClassicalDoubles, 0});
        }
        sort_records(records);
        res_.trace.record(reference_.counter(), e_hf, Phase::Selection,
                          to_string(Stage::ClassicalDoubles), 0);
        res_.energy = e_hf;
        SortResult s{e_hf, std::move(records)};
        keep(s);
        append_selected(s);
    }

    void staged_selection(bool paired) {
        if (paired) {
            SortResult plus = sort(candidates_of_kind(GeneratorKind::OvpCeoPlus),
                                   Stage::QuantumDoubles, 0);
            keep(plus);
            pair_append(plus.records);
        } else if (classical_possible()) {
            classical_doubles();
        } else if (auto c = candidates(2); !c.empty()) {
            SortResult s = sort(c, Stage::QuantumDoubles, 0);
            keep(s);
            append_selected(s);
        }
        for (int order : {1, 3}) {
            auto c = candidates(order);
            if (c.empty()) continue;
            SortResult s = sort(c, stage_for_order(order), 0);
            keep(s);
            append_selected(s);
        }
    }

    std::vector<Candidate> candidates_of_kind(GeneratorKind kind) const {
        std::vector<Candidate> out;
        for (const auto &c : candidates(0)) {
            if (c.generator->kind == kind) out.push_back(c);
        }
        return out;
    }

    // Routes selected OVP-CEO records through the pair procedure; others append directly.
    void pair_append(const std::vector<SelectionRecord> &records) {
        std::vector<std::vector<std::size_t>> quads;
        std::set<std::vector<std::size_t>> seen;
        for (const auto &r : records) {
            if (r.selected && is_ovp_ceo(*r.generator) && seen.insert(r.generator->orbitals).second) {
                quads.push_back(r.generator->orbitals);
            }
        }
        if (!quads.empty()) {
            StateVector state = current();
            const std::size_t before = res_.ansatz.size();
            auto decisions = select_ovp_ceo_pair(pool_, quads, state, h(), res_.ansatz, &res_.trace);
            for (std::size_t k = before; k < res_.ansatz.size(); ++k) {
                used_.insert(res_.ansatz[k].generator.get());
                used_quads_.insert(res_.ansatz[k].generator->orbitals);
            }
            res_.pairs.insert(res_.pairs.end(), decisions.begin(), decisions.end());
        }
        for (const auto &r : records) {
            if (r.selected && !is_ovp_ceo(*r.generator)) append(r.generator, r.theta);
        }
    }

    void optimize(std::optional<double> known = std::nullopt) {
        SweepResult sw = sweep_optimize(res_.ansatz, h(), reference_, options_.sweep, known,
                                        &res_.trace);
        res_.ansatz = std::move(sw.ansatz);
        res_.energy = sw.energy;
        res_.sweeps_converged = res_.sweeps_converged && sw.converged;
    }

    void screening(bool paired) {
        for (int round = 1;; ++round) {
            const auto cands = candidates(0);
            if (cands.empty()) break;
            SortResult s = sort(cands, Stage::Screening, round);
            keep(s);
            const bool any = std::any_of(s.records.begin(), s.records.end(),
                                         [](const SelectionRecord &r) { return r.selected; });
            if (!any) break;
            if (round > options_.max_screening_rounds) {
                res_.screening_clean = false;
                break;
            }
            res_.screening_rounds = round;
            if (paired) {
                pair_append(s.records);
            } else {
                append_selected(s);
            }
            optimize();
        }
    }

    BuildResult finish() {
        res_.selection_evals = reference_.counter().count(Phase::Selection);
        res_.optimization_evals = reference_.counter().count(Phase::Optimization);
        return std::move(res_);
    }

  private:
    const Pool &pool_;
    const Problem &problem_;
    const BuildOptions &options_;
    StateVector reference_;
    BuildResult res_;
    std::set<const Generator *> used_;
    std::set<std::vector<std::size_t>> used_quads_;
};

} // namespace

const char *to_string(Stage stage) {
    switch (stage) {
    case Stage::ClassicalDoubles: return "classical_doubles";
    case Stage::QuantumDoubles: return "quantum_doubles";
    case Stage::Singles: return "singles";
    case Stage::Triples: return "triples";
    case Stage::Screening: return "screening";
    }
    return "unknown";
}

Problem make_problem(const MolecularIntegrals &mi) {
    SpinOrbitalHamiltonian soh = expand_spin_orbitals(mi);
    const Occupation ref = hf_state_occupation(soh.n_so(), mi.n_elec(), mi.ms2());
    const PauliSum h = to_pauli_hamiltonian(soh);
    return make_problem(h, ref, std::move(soh));
}

Problem make_problem(const PauliSum &h, Occupation reference,
                     std::optional<SpinOrbitalHamiltonian> integrals) {
    Problem p;
    p.n_qubits = h.n_qubits();
    p.reference = reference;
    p.hamiltonian = PauliOperator(h);
    if (!p.hamiltonian.is_hermitian()) {
        throw PreconditionError("Hamiltonian must be Hermitian");
    }
    p.integrals = std::move(integrals);
    return p;
}

std::size_t worker_threads() {
    if (const char *env = std::getenv("ESVQE_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Candidate> all_candidates(const Pool &pool) {
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < pool.size(); ++i) out.push_back({i, pool.generators[i]});
    return out;
}

SortResult energy_sort(std::span<const Candidate> candidates, const StateVector &state,
                       const PauliOperator &h, double eps_a, std::optional<double> e_ref,
                       Stage stage) {
    SortResult out;
    out.e_ref = e_ref ? *e_ref : expectation(state, h, Phase::Selection);
    out.records.resize(candidates.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < candidates.size(); i = next++) {
                const Candidate &c = candidates[i];
                const TrigLandscape l =
                    reconstruct_landscape(state, *c.generator, h, out.e_ref, Phase::Selection);
                const LandscapeMinimum m = minimize_landscape(l);
                const double drop = l.drop(m.theta);
                out.records[i] = {c.pool_index, c.generator, drop, m.theta, drop > eps_a, stage,
                                  0};
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    std::size_t n_workers = std::min(worker_threads(), candidates.size());
    if (candidates.size() * state.dim() < kParallelWork) n_workers = 1;
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < n_workers; ++t) threads.emplace_back(work);
        for (auto &t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    sort_records(out.records);
    return out;
}

SortResult energy_sort(const Pool &pool, const StateVector &state, const PauliOperator &h,
                       double eps_a, std::optional<double> e_ref) {
    const auto cands = all_candidates(pool);
    SortResult s = energy_sort(cands, state, h, eps_a, e_ref);
    for (auto &r : s.records) r.stage = stage_for_order(excitation_order(r.generator->kind));
    return s;
}

std::vector<PairDecision> select_ovp_ceo_pair(const Pool &pool,
                                              std::span<const std::vector<std::size_t>> quadruples,
                                              StateVector &state, const PauliOperator &h,
                                              std::vector<AnsatzElement> &ansatz, Trace *trace) {
    std::map<std::pair<std::vector<std::size_t>, GeneratorKind>, std::size_t> index;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const auto &g = pool.generators[i];
        if (is_ovp_ceo(*g)) index[{g->orbitals, g->kind}] = i;
    }
    std::vector<PairDecision> out;
    for (const auto &quad : quadruples) {
        const auto plus_it = index.find({quad, GeneratorKind::OvpCeoPlus});
        const auto minus_it = index.find({quad, GeneratorKind::OvpCeoMinus});
        if (plus_it == index.end() || minus_it == index.end()) {
            throw PreconditionError("pair selection needs both OVP-CEO variants in the pool");
        }
        const auto &plus = pool.generators[plus_it->second];
        const auto &minus = pool.generators[minus_it->second];

        const double e_ref = expectation(state, h, Phase::Selection);
        const TrigLandscape lp = reconstruct_landscape(state, *plus, h, e_ref, Phase::Selection);
        const TrigLandscape lm = reconstruct_landscape(state, *minus, h, e_ref, Phase::Selection);
        const LandscapeMinimum mp = minimize_landscape(lp);
        const LandscapeMinimum mm = minimize_landscape(lm);

        PairDecision d;
        d.quadruple = quad;
        d.delta_plus = lp.drop(mp.theta);
        d.delta_minus = lm.drop(mm.theta);
        d.chose_plus = !(d.delta_minus > d.delta_plus + kPairTieTolerance);
        d.chosen_index = d.chose_plus ? plus_it->second : minus_it->second;
        d.theta = d.chose_plus ? mp.theta : mm.theta;
        const GeneratorPtr &chosen = d.chose_plus ? plus : minus;

        apply_generator_exponential_inplace(state, chosen->op, d.theta);
        ansatz.push_back({chosen, d.theta});
        if (trace) {
            trace->record(state.counter(), e_ref - std::max(d.delta_plus, d.delta_minus),
                          Phase::Selection, to_string(Stage::QuantumDoubles), ansatz.size());
        }
        out.push_back(std::move(d));
    }
    return out;
}

BuildResult build_ansatz_energy_sorting(const Pool &pool, const Problem &problem,
                                        const BuildOptions &options) {
    Builder b(pool, problem, options);
    b.staged_selection(false);
    b.optimize();
    b.screening(false);
    return b.finish();
}

BuildResult build_ansatz_ovp_ceo_paired(const Pool &pool, const Problem &problem,
                                        const BuildOptions &options) {
    Builder b(pool, problem, options);
    b.staged_selection(true);
    b.optimize();
    b.screening(true);
    return b.finish();
}

BuildResult build_ansatz_adaptive(const Pool &pool, const Problem &problem,
                                  const BuildOptions &options) {
    Builder b(pool, problem, options);
    BuildResult &res = b.result();
    bool sorted = false;
    for (int round = 0; res.ansatz.size() < options.max_ops; ++round) {
        const auto cands = b.candidates(0);
        if (cands.empty()) break;
        SortResult s = b.sort(cands, Stage::QuantumDoubles, round);
        sorted = true;
        SelectionRecord best = s.records.front();
        best.stage = stage_for_order(excitation_order(best.generator->kind));
        if (!best.selected) break;
        res.records.push_back(best);
        b.append(best.generator, best.theta);
        b.optimize(s.e_ref - best.delta_e);
    }
    if (!sorted) {
        res.energy = expectation(b.reference(), b.h(), Phase::Selection);
        res.trace.record(b.reference().counter(), res.energy, Phase::Selection, "reference", 0);
    }
    return b.finish();
}

BuildResult build_ansatz_fixed(const Pool &pool, const Problem &problem,
                               const BuildOptions &options) {
    Builder b(pool, problem, options);
    for (const auto &g : pool.generators) b.append(g, 0.0);
    b.optimize();
    return b.finish();
}

} // namespace esvqe
