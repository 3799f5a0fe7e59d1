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
#include <string>
#include <vector>

#include "shotgun/solver_par.hpp"

namespace shotgun {

// Pathwise continuation: a geometrically decreasing regularization sequence
// from the smallest lambda with an all-zero solution down to the target.
struct PathConfig {
    double lambda_target;
    std::int64_t num_steps = 10;
};

// The smallest lambda for which x* = 0: the max-norm of the smooth
// gradient at x = 0 (||A'y||_inf for squared loss).
double lambda_max(const Problem& p);

// Strictly decreasing geometric sequence ending exactly at lambda_target.
// Collapses to the single-element path when the target already exceeds
// lambda_max.
std::vector<double> lambda_path(const Problem& p, const PathConfig& cfg);

struct PathResult {
    std::vector<double> lambdas;
    std::vector<SolveResult> stages;  // stages.back() is the answer
    std::int64_t total_updates() const {
        std::int64_t u = 0;
        for (const auto& s : stages) u += s.updates;
        return u;
    }
};

// Solves the sequence with warm starts; a diverged stage aborts the path.
PathResult solve_path(const Problem& p, const PathConfig& path, const SeqConfig& cfg);
PathResult solve_path(const Problem& p, const PathConfig& path, const ParConfig& cfg);

// Benchmark protocol: a high-accuracy sequential reference fixes F*, every
// benchmarked configuration then runs until it first reaches
// F* * (1 + threshold_frac), averaged over several seeds.
struct BenchConfig {
    std::int64_t seeds = 10;
    std::uint64_t seed = 0;
    double threshold_frac = 0.005;
    double ref_tol = 1e-8;
    double tol = 1e-5;
    std::int64_t max_epochs = 2000;
    std::int64_t ref_max_epochs = 100000;
    SolverVariant variant = SolverVariant::fixed_step;
    bool run_async_timing = false;  // also time async runs per P
};

struct BenchRow {
    std::int64_t p = 0;
    std::int64_t seeds = 0;
    std::int64_t reached = 0;    // seeds that hit the threshold
    std::int64_t diverged = 0;
    double mean_rounds = 0.0;    // rounds to threshold, over reached seeds
    double mean_updates = 0.0;
    double mean_wall_ms = 0.0;
    double async_mean_wall_ms = -1.0;
    bool exceeds_pstar = false;
};

struct BenchmarkReport {
    double reference_objective = 0.0;
    double threshold = 0.0;
    SpectralEstimate spectral;
    std::vector<BenchRow> rows;
};

BenchmarkReport benchmark_speedup(const Problem& p,
                                  const std::vector<std::int64_t>& p_list,
                                  const BenchConfig& cfg);

std::string benchmark_csv(const BenchmarkReport& report);

}  // namespace shotgun
