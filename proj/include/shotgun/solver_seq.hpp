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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shotgun/objective.hpp"

namespace shotgun {

enum class SolverVariant { fixed_step, cdn };

enum class Termination { converged, max_iters, diverged };
const char* to_string(Termination t);

struct TraceRow {
    double wall_ms;
    std::int64_t updates;
    double objective;
    std::int64_t nnz;
};

struct SeqConfig {
    double tol = 1e-5;            // epoch-level convergence threshold on max |delta x|
    std::int64_t max_epochs = 1000;
    std::uint64_t seed = 0;
    SolverVariant variant = SolverVariant::fixed_step;

    // Backtracking line search (cdn only).
    double ls_shrink = 0.5;
    double ls_sufficient_decrease = 0.01;
    int ls_max_backtracks = 30;

    // Trace granularity: a row per trace_every_epochs epochs, plus a final
    // row. trace_every_updates > 0 additionally logs on that update grid.
    std::int64_t trace_every_epochs = 1;
    std::int64_t trace_every_updates = 0;
};

struct ParallelAnnotation {
    double rho;               // spectral radius of A'A
    std::int64_t pstar;       // ceil(d / rho)
    double parallel_limit;    // d / rho + 1, the convergence precondition on P
    bool precondition_ok;
};

struct SolveResult {
    std::vector<double> x;
    double objective = 0.0;
    std::int64_t epochs = 0;
    std::int64_t updates = 0;
    Termination termination = Termination::max_iters;
    std::vector<TraceRow> trace;
    std::int64_t line_search_failures = 0;

    std::optional<ParallelAnnotation> annotation;
    // Async-mode diagnostics (see solver_par.hpp).
    double ax_drift_rel = 0.0;
    std::vector<double> final_ax;

    std::int64_t nnz() const {
        std::int64_t c = 0;
        for (double v : x) c += (v != 0.0);
        return c;
    }
};

// delta of the fixed-step update for a nonnegative duplicated-space weight:
// max(-xj, -gj / beta). The updated weight xj + delta never goes negative.
inline double shooting_delta(double xj, double gj, double beta) {
    const double step = -gj / beta;
    return step < -xj ? -xj : step;
}

// One fixed-step update of duplicated coordinate j, folded into the signed
// weight vector with ax maintained incrementally. Returns the applied delta
// (in duplicated space, always >= -xhat_j).
double scd_update(const Problem& p, SolverState& state, std::int64_t j);

// Line-search step proposal for signed coordinate k, computed from the
// weight xk and the current ax values on the column's support (col_ax[t]
// belongs to row rows[t]). Does not mutate anything, so callers can stage
// several proposals against one shared snapshot.
struct CdnProposal {
    double step = 0.0;
    double gradient = 0.0;   // smooth gradient at the proposal state
    bool ls_failed = false;  // backtracking exhausted; step is 0
};
CdnProposal cdn_propose(const Problem& p, double xk,
                        std::span<const std::int32_t> rows,
                        std::span<const double> vals,
                        std::span<const double> col_ax, const SeqConfig& cfg);

// One line-search update of signed coordinate k: L1-regularized Newton
// direction, then backtracking until sufficient decrease of the true
// objective. Returns the applied signed step (0 if the search fails, which
// is flagged, not an error).
double cdn_update(const Problem& p, SolverState& state, std::int64_t k,
                  const SeqConfig& cfg, bool* ls_failed = nullptr,
                  double* out_gradient = nullptr);

// Sequential stochastic coordinate descent. Fixed-step draws uniformly from
// the 2d duplicated coordinates (an epoch is 2d draws); cdn draws from the
// active signed coordinates (an epoch is d draws). Convergence is declared
// when an epoch's max |delta| falls below tol and a subsequent full
// deterministic pass over all coordinates stays below tol.
SolveResult solve_sequential(const Problem& p, const SeqConfig& cfg);
SolveResult solve_sequential(const Problem& p, const SeqConfig& cfg,
                             const SolverState& warm_start);

}  // namespace shotgun
