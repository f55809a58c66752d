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

#include "esvqe/trace.hpp"

namespace esvqe {

void Trace::record(const EvalCounter &counter, double energy, Phase phase, std::string stage,
                   std::size_t ansatz_size) {
    TraceRecord r;
    r.selection_evals = counter.count(Phase::Selection);
    r.optimization_evals = counter.count(Phase::Optimization);
    r.eval_count = r.selection_evals + r.optimization_evals;
    r.energy = energy;
    r.phase = phase;
    r.stage = std::move(stage);
    r.ansatz_size = ansatz_size;
    if (!records_.empty() && records_.back().eval_count >= r.eval_count) {
        records_.back() = std::move(r);
        return;
    }
    records_.push_back(std::move(r));
}

} // namespace esvqe
