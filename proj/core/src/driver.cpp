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

#include "esvqe/driver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "esvqe/error.hpp"
#include "esvqe/fci.hpp"

namespace esvqe {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view v) {
    const std::string s(v);
    if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used == s.size()) return d;
    } catch (const std::exception &) {
    }
    throw ConfigError("invalid number for " + std::string(key) + ": '" + s + "'");
}

template <typename Int> Int parse_int(std::string_view key, std::string_view v) {
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(v) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    f << content;
    if (!f) throw IoError("write failed for " + path.string());
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json record_json(const SelectionRecord &r) {
    Json j;
    j["pool_index"] = r.pool_index;
    j["label"] = r.generator->label();
    j["kind"] = to_string(r.generator->kind);
    j["stage"] = to_string(r.stage);
    j["round"] = r.round;
    j["delta_e"] = r.delta_e;
    j["theta"] = r.theta;
    j["selected"] = r.selected;
    return j;
}

std::map<const Generator *, std::size_t> pool_positions(const Pool &pool) {
    std::map<const Generator *, std::size_t> pos;
    for (std::size_t i = 0; i < pool.size(); ++i) pos[pool.generators[i].get()] = i;
    return pos;
}

} // namespace

const char *to_string(Method m) {
    switch (m) {
    case Method::EnergySorting: return "energy_sorting";
    case Method::Adaptive: return "adaptive";
    case Method::Fixed: return "fixed";
    case Method::OvpCeoPlus: return "ovp_ceo_plus";
    case Method::OvpCeoPaired: return "ovp_ceo_paired";
    }
    return "unknown";
}

const char *to_string(PoolKind p) {
    switch (p) {
    case PoolKind::Uccsd: return "uccsd";
    case PoolKind::Uccsdt: return "uccsdt";
    case PoolKind::Qe: return "qe";
    case PoolKind::OvpCeo: return "ovp_ceo";
    }
    return "unknown";
}

Method parse_method(std::string_view s) {
    for (Method m : {Method::EnergySorting, Method::Adaptive, Method::Fixed, Method::OvpCeoPlus,
                     Method::OvpCeoPaired}) {
        if (s == to_string(m)) return m;
    }
    throw ConfigError("unknown method '" + std::string(s) + "'");
}

PoolKind parse_pool_kind(std::string_view s) {
    for (PoolKind p : {PoolKind::Uccsd, PoolKind::Uccsdt, PoolKind::Qe, PoolKind::OvpCeo}) {
        if (s == to_string(p)) return p;
    }
    throw ConfigError("unknown pool '" + std::string(s) + "'");
}

void set_config_value(RunConfig &c, std::string_view key, std::string_view value) {
    if (key == "fcidump") {
        c.fcidump_path = value;
    } else if (key == "method") {
        c.method = parse_method(value);
    } else if (key == "pool") {
        c.pool = parse_pool_kind(value);
    } else if (key == "eps_a") {
        c.eps_a = parse_double(key, value);
    } else if (key == "eps_conv") {
        c.eps_conv = parse_double(key, value);
    } else if (key == "max_sweeps") {
        c.max_sweeps = parse_int<int>(key, value);
    } else if (key == "seed") {
        c.seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "output") {
        c.output_dir = value;
    } else if (key == "max_ops") {
        c.max_ops = parse_int<std::size_t>(key, value);
    } else if (key == "screening_rounds") {
        c.screening_rounds = parse_int<int>(key, value);
    } else if (key == "classical_doubles") {
        c.classical_doubles = parse_bool(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        set_config_value(base, trim(std::string_view(t).substr(0, eq)),
                         trim(std::string_view(t).substr(eq + 1)));
    }
    return base;
}

void validate_config(const RunConfig &c) {
    if (c.fcidump_path.empty()) throw ConfigError("no FCIDUMP given");
    const bool ovp_method = c.method == Method::OvpCeoPlus || c.method == Method::OvpCeoPaired;
    if (ovp_method && c.pool != PoolKind::OvpCeo) {
        throw ConfigError(std::string("method ") + to_string(c.method) + " needs pool ovp_ceo");
    }
    if (!(c.eps_a >= 0.0)) throw ConfigError("eps_a must be >= 0");
    if (!(c.eps_conv > 0.0)) throw ConfigError("eps_conv must be > 0");
    if (c.max_sweeps < 1) throw ConfigError("max_sweeps must be >= 1");
    if (c.screening_rounds < 0) throw ConfigError("screening_rounds must be >= 0");
}

Pool make_pool(PoolKind kind, Method method, std::size_t n_so, Occupation occ) {
    switch (kind) {
    case PoolKind::Uccsd: return build_uccsd_pool(n_so, occ);
    case PoolKind::Uccsdt: return extend_with_triples(build_uccsd_pool(n_so, occ));
    case PoolKind::Qe: return build_qe_pool(n_so, occ);
    case PoolKind::OvpCeo:
        return build_ovp_ceo_pool(n_so, occ,
                                  method == Method::OvpCeoPlus ? OvpCeoVariant::PlusOnly
                                                               : OvpCeoVariant::PlusAndMinus);
    }
    throw ConfigError("unknown pool kind");
}

BuildResult run_method(Method method, const Pool &pool, const Problem &problem,
                       const BuildOptions &options) {
    switch (method) {
    case Method::EnergySorting:
    case Method::OvpCeoPlus: return build_ansatz_energy_sorting(pool, problem, options);
    case Method::Adaptive: return build_ansatz_adaptive(pool, problem, options);
    case Method::Fixed: return build_ansatz_fixed(pool, problem, options);
    case Method::OvpCeoPaired: return build_ansatz_ovp_ceo_paired(pool, problem, options);
    }
    throw ConfigError("unknown method");
}

RunOutput execute_run(const RunConfig &config) {
    validate_config(config);
    return execute_run(config, read_fcidump(config.fcidump_path));
}

RunOutput execute_run(const RunConfig &config, const MolecularIntegrals &mi) {
    validate_config(config);
    const Problem problem = make_problem(mi);
    const Pool pool = make_pool(config.pool, config.method, problem.n_qubits, problem.reference);

    RunOutput out;
    out.config = config;
    out.pool_size = pool.size();
    out.hf_energy = hf_energy(*problem.integrals, problem.reference);
    out.fci_energy = ground_energy(problem.hamiltonian.sum(), Sector{mi.n_elec(), mi.ms2()},
                                   config.seed)
                         .e0;

    BuildOptions options;
    options.eps_a = config.eps_a;
    options.sweep.eps_conv = config.eps_conv;
    options.sweep.max_sweeps = config.max_sweeps;
    options.max_screening_rounds = config.screening_rounds;
    options.classical_doubles = config.classical_doubles;
    options.max_ops = config.max_ops;
    out.build = run_method(config.method, pool, problem, options);
    const BuildResult &b = out.build;

    for (const auto &r : b.trace.records()) {
        if (std::abs(r.energy - out.fci_energy) < kChemicalAccuracy) {
            out.evals_to_chemical_accuracy = r.eval_count;
            break;
        }
    }

    // summary.json
    Json counts = Json::object();
    int cnots = 0;
    int depth = 0;
    Json ansatz = Json::array();
    const auto positions = pool_positions(pool);
    for (const auto &e : b.ansatz) {
        const std::string kind = to_string(e.generator->kind);
        counts[kind] = counts.value(kind, 0) + 1;
        cnots += e.generator->cnot_count;
        depth += e.generator->depth;
        Json a;
        a["pool_index"] = positions.at(e.generator.get());
        a["label"] = e.generator->label();
        a["kind"] = kind;
        a["theta"] = e.theta;
        ansatz.push_back(std::move(a));
    }
    Json s;
    s["fcidump"] = config.fcidump_path;
    s["method"] = to_string(config.method);
    s["pool"] = to_string(config.pool);
    s["n_qubits"] = problem.n_qubits;
    s["n_elec"] = mi.n_elec();
    s["pool_size"] = pool.size();
    s["eps_a"] = number_or_null(config.eps_a);
    s["eps_conv"] = config.eps_conv;
    s["max_sweeps"] = config.max_sweeps;
    s["seed"] = config.seed;
    s["hf_energy"] = out.hf_energy;
    s["fci_energy"] = out.fci_energy;
    s["final_energy"] = b.energy;
    s["final_error"] = b.energy - out.fci_energy;
    s["ansatz_size"] = b.ansatz.size();
    s["ansatz_counts_by_kind"] = counts;
    s["evaluations"] = {{"selection", b.selection_evals},
                        {"optimization", b.optimization_evals},
                        {"total", b.selection_evals + b.optimization_evals}};
    s["evals_to_chemical_accuracy"] =
        out.evals_to_chemical_accuracy ? Json(*out.evals_to_chemical_accuracy) : Json(nullptr);
    s["cnot_total"] = cnots;
    s["depth_total"] = depth;
    s["screening_rounds"] = b.screening_rounds;
    s["screening_clean"] = b.screening_clean;
    s["sweeps_converged"] = b.sweeps_converged;
    s["ansatz"] = std::move(ansatz);
    out.summary_json = s.dump(2) + "\n";

    for (const auto &r : b.trace.records()) {
        Json t;
        t["eval_count"] = r.eval_count;
        t["selection_evals"] = r.selection_evals;
        t["optimization_evals"] = r.optimization_evals;
        t["energy"] = r.energy;
        t["energy_error"] = r.energy - out.fci_energy;
        t["phase"] = to_string(r.phase);
        t["stage"] = r.stage;
        t["ansatz_size"] = r.ansatz_size;
        out.trace_jsonl += t.dump() + "\n";
    }

    out.selection_csv = "pool_index,label,kind,stage,round,delta_e,theta,selected\n";
    char buf[128];
    for (const auto &r : b.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", r.delta_e, r.theta);
        out.selection_csv += std::to_string(r.pool_index) + "," + r.generator->label() + "," +
                             to_string(r.generator->kind) + "," + to_string(r.stage) + "," +
                             std::to_string(r.round) + "," + buf + "," +
                             (r.selected ? "1" : "0") + "\n";
        out.selection_jsonl += record_json(r).dump() + "\n";
    }
    return out;
}

void write_run_artifacts(const RunOutput &out, const std::string &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
    const std::filesystem::path d(dir);
    write_file(d / "summary.json", out.summary_json);
    write_file(d / "trace.jsonl", out.trace_jsonl);
    write_file(d / "selection.csv", out.selection_csv);
    write_file(d / "selection.jsonl", out.selection_jsonl);
}

std::string pool_to_json(const Pool &pool) {
    Json j;
    j["n_qubits"] = pool.n_qubits;
    j["reference"] = pool.reference.bits();
    j["size"] = pool.size();
    Json gens = Json::array();
    for (const auto &g : pool.generators) {
        Json e;
        e["label"] = g->label();
        e["kind"] = to_string(g->kind);
        e["orbitals"] = g->orbitals;
        e["cnot_count"] = g->cnot_count;
        e["depth"] = g->depth;
        Json terms = Json::array();
        for (const auto &[key, c] : g->pauli.terms()) {
            terms.push_back({{"pauli", PauliString(g->n_qubits(), key.first, key.second).label()},
                             {"coefficient", c.real()}});
        }
        e["terms"] = std::move(terms);
        gens.push_back(std::move(e));
    }
    j["generators"] = std::move(gens);
    return j.dump(2) + "\n";
}

bool ScanOutput::all_columns_identical() const {
    for (const auto &row : selected) {
        if (std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>()) != row.end()) {
            return false;
        }
    }
    return true;
}

ScanOutput run_scan(const RunConfig &config,
                    const std::vector<std::pair<std::string, std::string>> &labelled_paths) {
    if (labelled_paths.size() < 2) throw ConfigError("scan needs at least two inputs");
    ScanOutput out;
    std::vector<std::string> reference_labels;
    for (const auto &[label, path] : labelled_paths) {
        RunConfig c = config;
        c.fcidump_path = path;
        const RunOutput run = execute_run(c);
        const MolecularIntegrals mi = read_fcidump(path);
        const Problem problem = make_problem(mi);
        const Pool pool = make_pool(c.pool, c.method, problem.n_qubits, problem.reference);
        std::vector<std::string> labels;
        for (const auto &g : pool.generators) labels.push_back(g->label());
        if (out.labels.empty()) {
            reference_labels = labels;
            out.operator_labels = labels;
            out.selected.assign(labels.size(), {});
        } else if (labels != reference_labels) {
            throw ConsistencyError("scan inputs produce pools of different shape");
        }
        std::set<std::string> chosen;
        for (const auto &e : run.build.ansatz) chosen.insert(e.generator->label());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            out.selected[i].push_back(chosen.count(labels[i]) > 0);
        }
        out.labels.push_back(label);
    }

    out.matrix_csv = "pool_index,operator";
    for (const auto &l : out.labels) out.matrix_csv += "," + l;
    out.matrix_csv += "\n";
    for (std::size_t i = 0; i < out.operator_labels.size(); ++i) {
        out.matrix_csv += std::to_string(i) + "," + out.operator_labels[i];
        for (bool b : out.selected[i]) out.matrix_csv += b ? ",1" : ",0";
        out.matrix_csv += "\n";
    }

    const std::size_t n = out.labels.size();
    Json jaccard = Json::array();
    for (std::size_t a = 0; a < n; ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t inter = 0, uni = 0;
            for (const auto &r : out.selected) {
                inter += (r[a] && r[b]) ? 1 : 0;
                uni += (r[a] || r[b]) ? 1 : 0;
            }
            row.push_back(uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni));
        }
        jaccard.push_back(std::move(row));
    }
    Json counts = Json::array();
    for (std::size_t b = 0; b < n; ++b) {
        std::size_t c = 0;
        for (const auto &r : out.selected) c += r[b] ? 1 : 0;
        counts.push_back(c);
    }
    Json s;
    s["labels"] = out.labels;
    s["selected_counts"] = counts;
    s["jaccard"] = jaccard;
    s["all_columns_identical"] = out.all_columns_identical();
    out.summary_json = s.dump(2) + "\n";
    return out;
}

SpeedupOutput speedup_report(const std::vector<std::string> &documents) {
    if (documents.empty()) throw ConfigError("speedup report needs summaries");
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> points;
    for (const auto &doc : documents) {
        Json j;
        try {
            j = Json::parse(doc);
        } catch (const Json::parse_error &e) {
            throw FormatError(std::string("summary is not JSON: ") + e.what());
        }
        if (!j.contains("method") || !j.contains("pool_size")) {
            throw FormatError("summary lacks method or pool_size");
        }
        const std::string method = j["method"].get<std::string>();
        if (!points.count(method)) order.push_back(method);
        auto &p = points[method];
        const auto &e = j.value("evals_to_chemical_accuracy", Json(nullptr));
        if (e.is_number()) p.emplace_back(j["pool_size"].get<double>(), e.get<double>());
    }

    SpeedupOutput out;
    out.csv = "method,pool_size,evals_to_chemical_accuracy,slope\n";
    for (const auto &method : order) {
        const auto &p = points[method];
        if (p.size() < 3) {
            throw ConfigError("method " + method + " has fewer than 3 usable summaries");
        }
        double mx = 0, my = 0;
        for (const auto &[x, y] : p) {
            mx += std::log(x);
            my += std::log(y);
        }
        mx /= static_cast<double>(p.size());
        my /= static_cast<double>(p.size());
        double sxx = 0, sxy = 0;
        for (const auto &[x, y] : p) {
            sxx += (std::log(x) - mx) * (std::log(x) - mx);
            sxy += (std::log(x) - mx) * (std::log(y) - my);
        }
        std::optional<double> slope;
        if (sxx > 1e-12) slope = sxy / sxx;
        out.slopes.emplace_back(method, slope);
        char buf[64];
        if (slope) {
            std::snprintf(buf, sizeof buf, "%.17g", *slope);
        } else {
            std::snprintf(buf, sizeof buf, "undefined");
        }
        for (const auto &[x, y] : p) {
            out.csv += method + "," + std::to_string(static_cast<long long>(x)) + "," +
                       std::to_string(static_cast<long long>(y)) + "," + buf + "\n";
        }
    }
    return out;
}

} // namespace esvqe
