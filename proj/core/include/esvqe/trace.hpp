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

#include <cstdint>
#include <string>
#include <vector>

#include "esvqe/simulator.hpp"

namespace esvqe {

/// One point of an energy-versus-cost curve.
struct TraceRecord {
    std::uint64_t eval_count = 0;
    std::uint64_t selection_evals = 0;
    std::uint64_t optimization_evals = 0;
    double energy = 0.0;
    Phase phase = Phase::Selection;
    std::string stage;
    std::size_t ansatz_size = 0;
};

/**
 * Append-only energy trace keyed by the cumulative evaluation count.
 *
 * eval_count is strictly increasing: a record made without any new
 * evaluation replaces the previous one.
 */
class Trace {
  public:
    void record(const EvalCounter &counter, double energy, Phase phase, std::string stage,
                std::size_t ansatz_size);
    [[nodiscard]] const std::vector<TraceRecord> &records() const { return records_; }
    [[nodiscard]] bool empty() const { return records_.empty(); }

  private:
    std::vector<TraceRecord> records_;
};

} // namespace esvqe
