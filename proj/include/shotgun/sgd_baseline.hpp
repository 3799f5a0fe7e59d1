/*
   Copyright 2026 The shotgun authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <vector>

#include "shotgun/solver_seq.hpp"

namespace shotgun {

// Stochastic gradient baseline with lazy L1 shrinkage: per-step shrinkage of
// a coordinate is deferred until a sample touches it, then applied as one
// composed soft-threshold. Each learning rate in the grid runs
// independently; the rate with the best final training objective wins.
struct SgdConfig {
    std::vector<double> rates = default_rates();
    std::int64_t epochs = 30;
    std::uint64_t seed = 0;

    // 14 exponentially increasing constant rates in [1e-4, 1].
    static std::vector<double> default_rates();
};

struct SgdResult {
    SolveResult best;
    double best_rate = 0.0;
    std::vector<double> rate_objectives;  // final objective per grid rate
    std::int64_t diverged_rates = 0;
};

// Runs the rate grid; independent RNG streams per rate, so results do not
// depend on evaluation order. Throws if every rate diverges.
SgdResult sgd_solve(const Problem& p, const SgdConfig& cfg);

// Fraction of holdout samples with sign(a_i' x) != y_i; sign(0) counts +1.
double held_out_error(const DesignMatrix& holdout, const Labels& labels,
                      std::span<const double> x);

}  // namespace shotgun
