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

// esvqe: command-line driver. Exit codes: 0 ok, 2 configuration error,
// 3 convergence failure, 4 I/O or input-format error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "esvqe/driver.hpp"
#include "esvqe/error.hpp"
#include "esvqe/fci.hpp"
#include "esvqe/integrals.hpp"
#include "esvqe/preselect.hpp"
#include "esvqe/selection.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

std::string read_text(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw esvqe::IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw esvqe::IoError("cannot write " + path);
    f << text;
}

// Flags that override the key=value config file.
struct Overrides {
    std::string config_path;
    std::optional<std::string> fcidump, method, pool, output;
    std::optional<double> eps_a, eps_conv;
    std::optional<int> max_sweeps, screening_rounds;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_ops;
    bool no_classical = false;

    void attach(CLI::App *app, bool with_fcidump) {
        app->add_option("-c,--config", config_path, "key=value configuration file");
        if (with_fcidump) app->add_option("-f,--fcidump", fcidump, "FCIDUMP input");
        app->add_option("-m,--method", method,
                        "energy_sorting | adaptive | fixed | ovp_ceo_plus | ovp_ceo_paired");
        app->add_option("-p,--pool", pool, "uccsd | uccsdt | qe | ovp_ceo");
        app->add_option("--eps-a", eps_a, "selection threshold (Hartree)");
        app->add_option("--eps-conv", eps_conv, "per-sweep convergence threshold (Hartree)");
        app->add_option("--max-sweeps", max_sweeps, "sweep budget per optimization");
        app->add_option("--screening-rounds", screening_rounds, "screening re-entry cap");
        app->add_option("--max-ops", max_ops, "operator cap for the adaptive method");
        app->add_option("--seed", seed, "seed for the FCI oracle start vector");
        app->add_option("-o,--output", output, "output directory");
        app->add_flag("--no-classical", no_classical, "select doubles on the simulator only");
    }

    esvqe::RunConfig resolve() const {
        esvqe::RunConfig c;
        if (!config_path.empty()) {
            c = esvqe::parse_config_text(read_text(config_path));
            // Relative FCIDUMP paths in a config file are relative to that file.
            const std::filesystem::path p(c.fcidump_path);
            if (!c.fcidump_path.empty() && p.is_relative()) {
                c.fcidump_path =
                    (std::filesystem::path(config_path).parent_path() / p).lexically_normal();
            }
        }
        if (fcidump) c.fcidump_path = *fcidump;
        if (method) c.method = esvqe::parse_method(*method);
        if (pool) c.pool = esvqe::parse_pool_kind(*pool);
        if (output) c.output_dir = *output;
        if (eps_a) c.eps_a = *eps_a;
        if (eps_conv) c.eps_conv = *eps_conv;
        if (max_sweeps) c.max_sweeps = *max_sweeps;
        if (screening_rounds) c.screening_rounds = *screening_rounds;
        if (seed) c.seed = *seed;
        if (max_ops) c.max_ops = *max_ops;
        if (no_classical) c.classical_doubles = false;
        return c;
    }
};

int cmd_run(const Overrides &o) {
    const esvqe::RunConfig config = o.resolve();
    esvqe::validate_config(config);
    const esvqe::RunOutput out = esvqe::execute_run(config);
    if (!config.output_dir.empty()) {
        esvqe::write_run_artifacts(out, config.output_dir);
    }
    std::cout << out.summary_json;
    if (!out.build.sweeps_converged || !out.build.screening_clean) {
        std::cerr << "esvqe: run finished without convergence\n";
        return kExitConvergence;
    }
    return kExitOk;
}

int cmd_select(const std::string &fcidump, bool singles, const std::string &out_path) {
    const auto mi = esvqe::read_fcidump(fcidump);
    const auto soh = esvqe::expand_spin_orbitals(mi);
    const auto occ = esvqe::hf_state_occupation(soh.n_so(), mi.n_elec(), mi.ms2());
    auto results = esvqe::preselect_all_doubles(soh, occ);
    if (singles) {
        for (const auto &t : esvqe::enumerate_excitations(soh.n_so(), occ, 1)) {
            results.push_back(esvqe::preselect_single(soh, occ, t[0], t[1]));
        }
    }
    const std::string csv = esvqe::preselect_csv(results);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_text(out_path, csv);
    }
    return kExitOk;
}

int cmd_scan(const Overrides &o, const std::vector<std::string> &inputs) {
    esvqe::RunConfig config = o.resolve();
    std::vector<std::pair<std::string, std::string>> labelled;
    for (const auto &in : inputs) {
        const auto eq = in.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw esvqe::ConfigError("scan input must be LABEL=PATH, got '" + in + "'");
        }
        labelled.emplace_back(in.substr(0, eq), in.substr(eq + 1));
    }
    config.fcidump_path = labelled.empty() ? "" : labelled.front().second;
    esvqe::validate_config(config);
    const auto scan = esvqe::run_scan(config, labelled);
    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
        write_text((std::filesystem::path(config.output_dir) / "selection_matrix.csv").string(),
                   scan.matrix_csv);
        write_text((std::filesystem::path(config.output_dir) / "scan_summary.json").string(),
                   scan.summary_json);
    }
    std::cout << scan.matrix_csv << scan.summary_json;
    return kExitOk;
}

int cmd_fci(const std::string &fcidump, std::uint64_t seed) {
    const auto mi = esvqe::read_fcidump(fcidump);
    const auto soh = esvqe::expand_spin_orbitals(mi);
    const auto occ = esvqe::hf_state_occupation(soh.n_so(), mi.n_elec(), mi.ms2());
    const auto h = esvqe::to_pauli_hamiltonian(soh);
    const auto r = esvqe::ground_energy(h, esvqe::Sector{mi.n_elec(), mi.ms2()}, seed);
    nlohmann::ordered_json j;
    j["fcidump"] = fcidump;
    j["n_qubits"] = h.n_qubits();
    j["hf_energy"] = esvqe::hf_energy(soh, occ);
    j["fci_energy"] = r.e0;
    j["residual_norm"] = r.residual_norm;
    j["iterations"] = r.iterations;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_pool(const std::string &fcidump, const std::string &kind, const std::string &method) {
    const auto mi = esvqe::read_fcidump(fcidump);
    const std::size_t n_so = 2 * mi.n_orb();
    const auto occ = esvqe::hf_state_occupation(n_so, mi.n_elec(), mi.ms2());
    const auto pool = esvqe::make_pool(esvqe::parse_pool_kind(kind), esvqe::parse_method(method),
                                       n_so, occ);
    std::cout << esvqe::pool_to_json(pool);
    return kExitOk;
}

int cmd_speedup(const std::vector<std::string> &files, const std::string &out_path) {
    std::vector<std::string> docs;
    for (const auto &f : files) docs.push_back(read_text(f));
    const auto report = esvqe::speedup_report(docs);
    if (out_path.empty()) {
        std::cout << report.csv;
    } else {
        write_text(out_path, report.csv);
    }
    for (const auto &[method, slope] : report.slopes) {
        std::cerr << method << " log-log slope: ";
        if (slope) {
            std::cerr << *slope << "\n";
        } else {
            std::cerr << "undefined\n";
        }
    }
    if (report.slopes.size() >= 2 && report.slopes[0].second && report.slopes[1].second &&
        *report.slopes[1].second != 0.0) {
        std::cerr << "slope ratio " << report.slopes[0].first << "/" << report.slopes[1].first
                  << ": " << *report.slopes[0].second / *report.slopes[1].second << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Compact VQE ansatz construction by energy sorting"};
    app.footer("Environment: ESVQE_THREADS sets the worker count for pool sweeps.\n"
               "Exit codes: 0 ok, 2 configuration error, 3 convergence failure, 4 I/O error.");
    app.require_subcommand(1);

    Overrides run_opts;
    auto *run = app.add_subcommand("run", "build and optimize an ansatz for one FCIDUMP");
    run_opts.attach(run, true);

    std::string select_fcidump, select_out;
    bool select_singles = false;
    auto *select = app.add_subcommand("select", "classical preselection table for the HF state");
    select->add_option("-f,--fcidump", select_fcidump, "FCIDUMP input")->required();
    select->add_flag("--singles", select_singles, "also list single excitations");
    select->add_option("-o,--out", select_out, "CSV output file (default stdout)");

    Overrides scan_opts;
    std::vector<std::string> scan_inputs;
    auto *scan = app.add_subcommand("scan", "selection matrix over a bondlength series");
    scan_opts.attach(scan, false);
    scan->add_option("-i,--input", scan_inputs, "LABEL=PATH, repeated")->required();

    std::string fci_fcidump;
    std::uint64_t fci_seed = 0;
    auto *fci = app.add_subcommand("fci", "exact ground-state energy in the HF sector");
    fci->add_option("-f,--fcidump", fci_fcidump, "FCIDUMP input")->required();
    fci->add_option("--seed", fci_seed, "start-vector seed");

    std::string pool_fcidump, pool_kind = "uccsd", pool_method = "energy_sorting";
    auto *pool = app.add_subcommand("pool", "print an operator pool as JSON");
    pool->add_option("-f,--fcidump", pool_fcidump, "FCIDUMP input")->required();
    pool->add_option("-p,--pool", pool_kind, "uccsd | uccsdt | qe | ovp_ceo");
    pool->add_option("-m,--method", pool_method, "ovp_ceo_plus selects the plus-only variant");

    std::vector<std::string> speedup_files;
    std::string speedup_out;
    auto *speedup = app.add_subcommand("speedup-report", "log-log cost scaling from summaries");
    speedup->add_option("summaries", speedup_files, "summary.json files")->required();
    speedup->add_option("-o,--out", speedup_out, "CSV output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_opts);
        if (*select) return cmd_select(select_fcidump, select_singles, select_out);
        if (*scan) return cmd_scan(scan_opts, scan_inputs);
        if (*fci) return cmd_fci(fci_fcidump, fci_seed);
        if (*pool) return cmd_pool(pool_fcidump, pool_kind, pool_method);
        if (*speedup) return cmd_speedup(speedup_files, speedup_out);
    } catch (const esvqe::ConvergenceError &e) {
        std::cerr << "esvqe: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const esvqe::ConfigError &e) {
        std::cerr << "esvqe: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const esvqe::PreconditionError &e) {
        std::cerr << "esvqe: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const esvqe::Error &e) {
        std::cerr << "esvqe: input error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "esvqe: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitConfig;
}
