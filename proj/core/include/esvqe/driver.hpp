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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esvqe/integrals.hpp"
#include "esvqe/pools.hpp"
#include "esvqe/selection.hpp"

namespace esvqe {

enum class Method { EnergySorting, Adaptive, Fixed, OvpCeoPlus, OvpCeoPaired };
enum class PoolKind { Uccsd, Uccsdt, Qe, OvpCeo };

const char *to_string(Method m);
const char *to_string(PoolKind p);
/// ConfigError on unknown names.
Method parse_method(std::string_view s);
PoolKind parse_pool_kind(std::string_view s);

struct RunConfig {
    std::string fcidump_path;
    Method method = Method::EnergySorting;
    PoolKind pool = PoolKind::Uccsd;
    double eps_a = 1e-13;
    double eps_conv = 1e-8;
    int max_sweeps = 100;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::size_t max_ops = std::numeric_limits<std::size_t>::max();
    int screening_rounds = 3;
    bool classical_doubles = true;
};

/// Sets one key (same names as the config file). ConfigError on bad keys or values.
void set_config_value(RunConfig &config, std::string_view key, std::string_view value);
/// Flat "key = value" text; '#' starts a comment.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
/// Method/pool compatibility and numeric ranges.
void validate_config(const RunConfig &config);

/// The pool a run uses; OVP-CEO variants follow the method.
Pool make_pool(PoolKind kind, Method method, std::size_t n_so, Occupation occ);
BuildResult run_method(Method method, const Pool &pool, const Problem &problem,
                       const BuildOptions &options);

struct RunOutput {
    RunConfig config;
    std::size_t pool_size = 0;
    double hf_energy = 0.0;
    double fci_energy = 0.0;
    BuildResult build;
    std::optional<std::uint64_t> evals_to_chemical_accuracy;
    std::string summary_json;
    std::string trace_jsonl;
    std::string selection_csv;
    std::string selection_jsonl;
};

/// Chemical accuracy, in Hartree.
inline constexpr double kChemicalAccuracy = 1e-3;

/// Runs one configuration in memory; nothing is written.
RunOutput execute_run(const RunConfig &config);
RunOutput execute_run(const RunConfig &config, const MolecularIntegrals &mi);
/// Writes summary.json, trace.jsonl, selection.csv and selection.jsonl. IoError on failure.
void write_run_artifacts(const RunOutput &out, const std::string &dir);

std::string pool_to_json(const Pool &pool);

struct ScanOutput {
    std::vector<std::string> labels;
    std::vector<std::string> operator_labels;
    /// selected[i][j]: operator i is in the final ansatz at input j.
    std::vector<std::vector<bool>> selected;
    std::string matrix_csv;
    std::string summary_json;
    [[nodiscard]] bool all_columns_identical() const;
};

/// One run per labelled FCIDUMP; the pools must have identical shape.
ScanOutput run_scan(const RunConfig &config,
                    const std::vector<std::pair<std::string, std::string>> &labelled_paths);

struct SpeedupOutput {
    std::string csv;
    /// Per method: least-squares log-log slope, empty when undefined.
    std::vector<std::pair<std::string, std::optional<double>>> slopes;
};

/// Reads summary.json documents; each method needs at least 3 points.
SpeedupOutput speedup_report(const std::vector<std::string> &summary_documents);

} // namespace esvqe
