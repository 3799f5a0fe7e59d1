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

#include "shotgun/solver_seq.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "shotgun/rng.hpp"

namespace shotgun {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::converged: return "converged";
        case Termination::max_iters: return "max-iters";
        case Termination::diverged: return "diverged";
    }
    return "?";
}

namespace {

void validate(const SeqConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(cfg.ls_shrink > 0.0 && cfg.ls_shrink < 1.0))
        throw std::invalid_argument("line-search shrink must be in (0,1)");
    if (!(cfg.ls_sufficient_decrease > 0.0 && cfg.ls_sufficient_decrease < 1.0))
        throw std::invalid_argument("sufficient-decrease constant must be in (0,1)");
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_).count();
    }
  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

double scd_update(const Problem& p, SolverState& state, std::int64_t j) {
    const std::int64_t d = p.d();
    const std::int64_t k = dup_column(j, d);
    const double s = dup_sign(j, d);
    const double xhat = dup_value(state.x[k], j, d);
    const double g = s * smooth_coord_gradient(p, state.ax, k) + p.lambda;
    const double delta = shooting_delta(xhat, g, p.beta());
    if (delta != 0.0) {
        state.x[k] += s * delta;
        p.matrix.add_column(k, s * delta, state.ax);
    }
    return delta;
}

CdnProposal cdn_propose(const Problem& p, double xk,
                        std::span<const std::int32_t> rows,
                        std::span<const double> vals,
                        std::span<const double> col_ax, const SeqConfig& cfg) {
    CdnProposal out;
    const double lambda = p.lambda;
    double g = 0.0;
    double h = 0.0;
    if (p.loss == Loss::squared) {
        // Unit-norm columns make the squared-loss curvature exactly beta,
        // which keeps the accepted step identical to the fixed-step update.
        h = p.beta();
        for (std::size_t t = 0; t < rows.size(); ++t)
            g += vals[t] * (col_ax[t] - p.labels[rows[t]]);
    } else {
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const double yi = p.labels[rows[t]];
            const double sg = sigmoid(-yi * col_ax[t]);
            g -= yi * vals[t] * sg;
            h += vals[t] * vals[t] * sg * (1.0 - sg);
        }
        h = std::max(h, 1e-12);
    }
    out.gradient = g;

    const double gp = g + lambda;
    const double gn = g - lambda;
    double dir;
    if (gp <= h * xk) dir = -gp / h;
    else if (gn >= h * xk) dir = -gn / h;
    else dir = -xk;
    if (std::abs(dir) < 1e-12) return out;

    double step = dir;
    for (int t = 0; t <= cfg.ls_max_backtracks; ++t, step *= cfg.ls_shrink) {
        const double l1_change = lambda * (std::abs(xk + step) - std::abs(xk));
        double loss_change = 0.0;
        if (p.loss == Loss::squared) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const double r = col_ax[i] - p.labels[rows[i]];
                loss_change += step * vals[i] * r + 0.5 * step * step * vals[i] * vals[i];
            }
        } else {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const double yi = p.labels[rows[i]];
                loss_change += log1p_exp_neg(yi * (col_ax[i] + step * vals[i])) -
                               log1p_exp_neg(yi * col_ax[i]);
            }
        }
        if (loss_change + l1_change <=
            cfg.ls_sufficient_decrease * (g * step + l1_change)) {
            out.step = step;
            return out;
        }
    }
    out.ls_failed = true;
    return out;
}

double cdn_update(const Problem& p, SolverState& state, std::int64_t k,
                  const SeqConfig& cfg, bool* ls_failed, double* out_gradient) {
    auto rows = p.matrix.col_rows(k);
    auto vals = p.matrix.col_values(k);
    thread_local std::vector<double> col_ax;
    col_ax.resize(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) col_ax[t] = state.ax[rows[t]];

    const CdnProposal prop = cdn_propose(p, state.x[k], rows, vals, col_ax, cfg);
    if (ls_failed) *ls_failed = prop.ls_failed;
    if (out_gradient) *out_gradient = prop.gradient;
    if (prop.step != 0.0) {
        state.x[k] += prop.step;
        p.matrix.add_column(k, prop.step, state.ax);
    }
    return prop.step;
}

namespace {

// Deterministic sweep over all 2d duplicated coordinates; applied updates
// are free progress. Used to confirm convergence so that a coordinate the
// random epoch happened to skip cannot hide a violation.
double fixed_full_pass(const Problem& p, SolverState& state) {
    double worst = 0.0;
    for (std::int64_t j = 0; j < 2 * p.d(); ++j)
        worst = std::max(worst, std::abs(scd_update(p, state, j)));
    return worst;
}

SolveResult solve_fixed(const Problem& p, const SeqConfig& cfg, SolverState state) {
    const std::int64_t d = p.d();
    const std::int64_t epoch_len = 2 * d;
    Stopwatch clock;
    auto rng = make_stream(cfg.seed, 0);
    std::uniform_int_distribution<std::int64_t> draw(0, 2 * d - 1);

    SolveResult res;
    res.trace.push_back({clock.ms(), 0, objective_value(p, state), state.nnz()});

    std::int64_t updates = 0;
    for (std::int64_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        double max_delta = 0.0;
        for (std::int64_t t = 0; t < epoch_len; ++t) {
            const double delta = scd_update(p, state, draw(rng));
            max_delta = std::max(max_delta, std::abs(delta));
            ++updates;
            if (cfg.trace_every_updates > 0 && updates % cfg.trace_every_updates == 0)
                res.trace.push_back({clock.ms(), updates, objective_value(p, state),
                                     state.nnz()});
        }
        res.epochs = epoch;
        if (epoch % 64 == 0) state.refresh_ax(p);

        const double f = objective_value(p, state);
        if (!std::isfinite(f)) {
            res.termination = Termination::diverged;
            break;
        }
        if (cfg.trace_every_epochs > 0 && epoch % cfg.trace_every_epochs == 0)
            res.trace.push_back({clock.ms(), updates, f, state.nnz()});

        if (max_delta < cfg.tol) {
            const double pass_max = fixed_full_pass(p, state);
            updates += epoch_len;
            if (pass_max < cfg.tol) {
                res.termination = Termination::converged;
                break;
            }
        }
    }
    state.refresh_ax(p);
    res.updates = updates;
    res.objective = objective_value(p, state);
    res.trace.push_back({clock.ms(), updates, res.objective, state.nnz()});
    res.x = std::move(state.x);
    return res;
}

SolveResult solve_cdn(const Problem& p, const SeqConfig& cfg, SolverState state) {
    const std::int64_t d = p.d();
    Stopwatch clock;
    auto rng = make_stream(cfg.seed, 0);

    SolveResult res;
    res.trace.push_back({clock.ms(), 0, objective_value(p, state), state.nnz()});

    std::vector<std::int64_t> active(static_cast<std::size_t>(d));
    for (std::int64_t k = 0; k < d; ++k) active[k] = k;

    std::int64_t updates = 0;
    for (std::int64_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        double max_delta = 0.0;
        for (std::int64_t t = 0; t < d && !active.empty(); ++t) {
            std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
            const std::size_t slot = pick(rng);
            const std::int64_t k = active[slot];
            bool failed = false;
            double g = 0.0;
            const double delta = cdn_update(p, state, k, cfg, &failed, &g);
            res.line_search_failures += failed;
            max_delta = std::max(max_delta, std::abs(delta));
            ++updates;
            // Suspend coordinates stuck at zero whose subgradient condition
            // holds with margin; the pre-convergence full pass resurrects.
            if (delta == 0.0 && state.x[k] == 0.0 &&
                p.lambda - std::abs(g) > 2.0 * cfg.tol) {
                active[slot] = active.back();
                active.pop_back();
            }
        }
        res.epochs = epoch;
        if (epoch % 64 == 0) state.refresh_ax(p);

        const double f = objective_value(p, state);
        if (!std::isfinite(f)) {
            res.termination = Termination::diverged;
            break;
        }
        if (cfg.trace_every_epochs > 0 && epoch % cfg.trace_every_epochs == 0)
            res.trace.push_back({clock.ms(), updates, f, state.nnz()});

        if (max_delta < cfg.tol || active.empty()) {
            double pass_max = 0.0;
            for (std::int64_t k = 0; k < d; ++k) {
                bool failed = false;
                pass_max = std::max(pass_max,
                                    std::abs(cdn_update(p, state, k, cfg, &failed)));
                res.line_search_failures += failed;
                ++updates;
            }
            if (pass_max < cfg.tol) {
                res.termination = Termination::converged;
                break;
            }
            active.resize(static_cast<std::size_t>(d));
            for (std::int64_t k = 0; k < d; ++k) active[k] = k;
        }
    }
    state.refresh_ax(p);
    res.updates = updates;
    res.objective = objective_value(p, state);
    res.trace.push_back({clock.ms(), updates, res.objective, state.nnz()});
    res.x = std::move(state.x);
    return res;
}

}  // namespace

SolveResult solve_sequential(const Problem& p, const SeqConfig& cfg,
                             const SolverState& warm_start) {
    validate(cfg);
    SolverState state = warm_start;
    return cfg.variant == SolverVariant::fixed_step ? solve_fixed(p, cfg, std::move(state))
                                                    : solve_cdn(p, cfg, std::move(state));
}

SolveResult solve_sequential(const Problem& p, const SeqConfig& cfg) {
    return solve_sequential(p, cfg, SolverState::zeros(p));
}

}  // namespace shotgun
