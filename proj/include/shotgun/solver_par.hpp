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
#include <random>

#include "shotgun/solver_seq.hpp"
#include "shotgun/spectral.hpp"

namespace shotgun {

enum class ParMode { sync_sim, async };

struct ParConfig {
    std::int64_t p = 1;          // parallel updates per round (sync) / workers (async)
    ParMode mode = ParMode::sync_sim;
    std::uint64_t seed = 0;
    double tol = 1e-5;
    std::int64_t max_epochs = 1000;
    SolverVariant variant = SolverVariant::fixed_step;

    // Divergence guard: at every guard_check_epochs-th epoch boundary the
    // objective must stay finite and under guard_blowup times the larger of
    // F(x0) and the best objective seen.
    std::int64_t guard_check_epochs = 1;
    double guard_blowup = 10.0;

    // Optional 1/P damping of every step. Convergence-safe but slow; kept
    // only as an experiment flag.
    bool damp_by_p = false;

    // Line search parameters (cdn variant).
    double ls_shrink = 0.5;
    double ls_sufficient_decrease = 0.01;
    int ls_max_backtracks = 30;

    std::int64_t trace_every_epochs = 1;
    // Sync mode only: stop as soon as the maintained objective reaches this
    // value; used by the benchmark protocol to count rounds to a threshold.
    double stop_objective = -1.0;
    bool has_stop_objective = false;

    // Async mode only: record every committed weight transition per worker.
    bool log_deltas = false;
};

// The multiset of duplicated coordinates chosen in one synchronous round,
// with the fixed-step delta of each pick computed from the shared pre-round
// state. The raw collective update sums deltas of colliding picks; the
// applied update additionally clamps each duplicated weight at zero.
struct RoundUpdate {
    std::vector<std::int64_t> picks;   // |picks| = p, i.i.d. uniform on [0, 2d)
    std::vector<double> deltas;        // per pick
};

// Draws one round, computes all deltas from the same pre-round state,
// applies the collective update (collisions summed, then clamped at zero in
// duplicated space) and refreshes ax with one pass over the touched columns.
RoundUpdate shotgun_round_sync(const Problem& p, SolverState& state,
                               const ParConfig& cfg, std::mt19937_64& rng,
                               double* applied_max_delta = nullptr);

// Splits the exact objective change of a round on the Lasso into
//   sequential progress = -1/2 sum_j delta_j^2
//   interference       =  1/2 sum_{j != k} gram(i_j, i_k) delta_j delta_k
// over the multiset picks, with gram the duplicated-feature gram matrix.
// F(x + raw collective update) - F(x) never exceeds their sum. Rejects
// logistic problems; the decomposition is exact only for the quadratic loss.
std::pair<double, double> interference_decomposition(const Problem& p,
                                                     std::span<const double> x,
                                                     const RoundUpdate& round);

// Monte-Carlo check of the expected one-round objective change against the
// closed-form spectral bound
//   P * E_j[ delta_j g_j + (beta/2) (1 + (P-1) rho_dup / (2d)) delta_j^2 ],
// where rho_dup = 2 rho(A'A) is the duplicated-gram spectral radius and the
// expectation enumerates all 2d coordinates exactly. At P = 1 the bound
// reduces to the single-update expectation and matches the mean exactly for
// squared loss.
struct RoundExpectation {
    double mc_mean;    // Monte-Carlo estimate of E[F(x + dx) - F(x)]
    double bound;      // exact enumeration of the spectral upper bound
    double mc_stderr;
};
RoundExpectation check_round_expectation(const Problem& p, std::span<const double> x,
                                         std::int64_t parallel, std::int64_t trials,
                                         std::uint64_t seed);

// Shotgun. Sync mode simulates the synchronous algorithm exactly and is
// deterministic given the seed. Async mode runs cfg.p workers that read
// shared state without locks and commit through compare-and-swap, so reads
// may be stale but no committed addition is ever lost. If a spectral
// estimate is supplied, the result is annotated with rho, pstar and whether
// cfg.p is under the convergence precondition.
SolveResult solve_shotgun(const Problem& p, const ParConfig& cfg,
                          const SpectralEstimate* est = nullptr,
                          const SolverState* warm_start = nullptr);

// One committed weight transition (async delta log).
struct DeltaLogEntry {
    std::int64_t column;
    double before;
    double after;
};

// Async run with the per-worker delta logs attached.
struct AsyncRunLog {
    SolveResult result;
    std::vector<std::vector<DeltaLogEntry>> worker_logs;
};
AsyncRunLog solve_shotgun_logged(const Problem& p, const ParConfig& cfg);

}  // namespace shotgun
