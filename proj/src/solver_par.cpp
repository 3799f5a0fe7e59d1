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

#include "shotgun/solver_par.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "shotgun/atomic_accum.hpp"
#include "shotgun/rng.hpp"

namespace shotgun {

namespace {

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

void validate(const ParConfig& cfg) {
    if (cfg.p < 1) throw std::invalid_argument("p must be >= 1");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(cfg.guard_blowup > 1.0))
        throw std::invalid_argument("divergence blow-up factor must exceed 1");
}

SeqConfig line_search_config(const ParConfig& cfg) {
    SeqConfig s;
    s.tol = cfg.tol;
    s.ls_shrink = cfg.ls_shrink;
    s.ls_sufficient_decrease = cfg.ls_sufficient_decrease;
    s.ls_max_backtracks = cfg.ls_max_backtracks;
    return s;
}

void annotate(SolveResult& res, const ParConfig& cfg, const SpectralEstimate* est,
              std::int64_t d) {
    if (!est) return;
    ParallelAnnotation a;
    a.rho = est->rho;
    a.pstar = predicted_pstar(d, est->rho);
    a.parallel_limit = static_cast<double>(d) / est->rho + 1.0;
    a.precondition_ok = static_cast<double>(cfg.p) < a.parallel_limit;
    res.annotation = a;
}

// Maintains F(x) across incremental column updates so the benchmark can
// test a stop threshold after every round without an O(n) recomputation.
// Squared loss only.
class ObjectiveTracker {
  public:
    ObjectiveTracker(const Problem& p, const SolverState& state) : p_(p) {
        refresh(state);
    }
    void refresh(const SolverState& state) {
        sq_residual_ = 0.0;
        for (std::size_t i = 0; i < state.ax.size(); ++i) {
            const double r = state.ax[i] - p_.labels[i];
            sq_residual_ += r * r;
        }
        l1_ = 0.0;
        for (double v : state.x) l1_ += std::abs(v);
    }
    // Call before state absorbs the change on column k.
    void pre_update(const SolverState& state, std::int64_t k, double change) {
        auto rows = p_.matrix.col_rows(k);
        auto vals = p_.matrix.col_values(k);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const double r = state.ax[rows[t]] - p_.labels[rows[t]];
            sq_residual_ += 2.0 * change * vals[t] * r + change * change * vals[t] * vals[t];
        }
        const double xk = state.x[k];
        l1_ += std::abs(xk + change) - std::abs(xk);
    }
    double value() const { return 0.5 * sq_residual_ + p_.lambda * l1_; }

  private:
    const Problem& p_;
    double sq_residual_ = 0.0;
    double l1_ = 0.0;
};

// One synchronous fixed-step round over the duplicated coordinates; fills
// `round` and applies the clamped collective update.
double run_fixed_round(const Problem& p, SolverState& state, const ParConfig& cfg,
                       std::mt19937_64& rng, RoundUpdate& round,
                       ObjectiveTracker* tracker) {
    const std::int64_t d = p.d();
    std::uniform_int_distribution<std::int64_t> draw(0, 2 * d - 1);
    const double scale = cfg.damp_by_p ? 1.0 / static_cast<double>(cfg.p) : 1.0;

    round.picks.resize(static_cast<std::size_t>(cfg.p));
    round.deltas.resize(static_cast<std::size_t>(cfg.p));
    for (std::int64_t t = 0; t < cfg.p; ++t) round.picks[t] = draw(rng);
    // All deltas come from the same pre-round state.
    for (std::int64_t t = 0; t < cfg.p; ++t) {
        const std::int64_t j = round.picks[t];
        const std::int64_t k = dup_column(j, d);
        const double g = dup_sign(j, d) * smooth_coord_gradient(p, state.ax, k) + p.lambda;
        round.deltas[t] = scale * shooting_delta(dup_value(state.x[k], j, d), g, p.beta());
    }

    // Collective update: colliding picks sum per duplicated coordinate, the
    // duplicated weights are clamped at zero, then folded back to signed form.
    std::unordered_map<std::int64_t, std::pair<double, double>> per_column;
    per_column.reserve(static_cast<std::size_t>(cfg.p));
    for (std::int64_t t = 0; t < cfg.p; ++t) {
        auto& sums = per_column[dup_column(round.picks[t], d)];
        (round.picks[t] < d ? sums.first : sums.second) += round.deltas[t];
    }
    double worst = 0.0;
    for (const auto& [k, sums] : per_column) {
        const double xk = state.x[k];
        const double neg = std::max(0.0, std::max(-xk, 0.0) + sums.first);
        const double pos = std::max(0.0, std::max(xk, 0.0) + sums.second);
        const double change = (pos - neg) - xk;
        if (change != 0.0) {
            if (tracker) tracker->pre_update(state, k, change);
            state.x[k] = pos - neg;
            p.matrix.add_column(k, change, state.ax);
        }
        worst = std::max(worst, std::abs(change));
    }
    return worst;
}

}  // namespace

RoundUpdate shotgun_round_sync(const Problem& p, SolverState& state,
                               const ParConfig& cfg, std::mt19937_64& rng,
                               double* applied_max_delta) {
    RoundUpdate round;
    const double worst = run_fixed_round(p, state, cfg, rng, round, nullptr);
    if (applied_max_delta) *applied_max_delta = worst;
    return round;
}

std::pair<double, double> interference_decomposition(const Problem& p,
                                                     std::span<const double> x,
                                                     const RoundUpdate& round) {
    if (p.loss != Loss::squared)
        throw std::invalid_argument(
            "interference decomposition is defined for the squared loss only");
    (void)x;  // the deltas already encode the round's base state
    const std::int64_t d = p.d();
    const std::size_t m = round.picks.size();
    double seq = 0.0;
    for (double dv : round.deltas) seq -= 0.5 * dv * dv;
    double inter = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const std::int64_t ja = round.picks[a], jb = round.picks[b];
            const double gram = dup_sign(ja, d) * dup_sign(jb, d) *
                                p.matrix.col_dot(dup_column(ja, d), dup_column(jb, d));
            inter += gram * round.deltas[a] * round.deltas[b];
        }
    }
    return {seq, inter};
}

RoundExpectation check_round_expectation(const Problem& p, std::span<const double> x,
                                         std::int64_t parallel, std::int64_t trials,
                                         std::uint64_t seed) {
    const std::int64_t d = p.d();
    const std::int64_t twod = 2 * d;
    const double beta = p.beta();

    const double rho_dup = 2.0 * power_iteration(p.matrix, 1e-10, 10000, seed).rho;

    std::vector<double> ax = p.matrix.multiply(x);
    std::vector<double> delta(static_cast<std::size_t>(twod));
    double e_dg = 0.0, e_d2 = 0.0;
    for (std::int64_t j = 0; j < twod; ++j) {
        const std::int64_t k = dup_column(j, d);
        const double g = dup_sign(j, d) * smooth_coord_gradient(p, ax, k) + p.lambda;
        delta[j] = shooting_delta(dup_value(x[k], j, d), g, beta);
        e_dg += delta[j] * g;
        e_d2 += delta[j] * delta[j];
    }
    e_dg /= static_cast<double>(twod);
    e_d2 /= static_cast<double>(twod);

    RoundExpectation out;
    out.bound = static_cast<double>(parallel) *
                (e_dg + 0.5 * beta *
                            (1.0 + static_cast<double>(parallel - 1) * rho_dup /
                                       static_cast<double>(twod)) *
                            e_d2);

    const double smooth0 = smooth_loss_from_ax(p, ax);
    auto rng = make_stream(seed, 1);
    std::uniform_int_distribution<std::int64_t> draw(0, twod - 1);
    std::vector<double> ax_trial(ax.size());
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t t = 1; t <= trials; ++t) {
        ax_trial = ax;
        double penalty_change = 0.0;
        for (std::int64_t s = 0; s < parallel; ++s) {
            const std::int64_t j = draw(rng);
            // Raw multiset update: colliding picks simply sum.
            p.matrix.add_column(dup_column(j, d), dup_sign(j, d) * delta[j], ax_trial);
            penalty_change += delta[j];
        }
        const double change =
            smooth_loss_from_ax(p, ax_trial) - smooth0 + p.lambda * penalty_change;
        const double d1 = change - mean;
        mean += d1 / static_cast<double>(t);
        m2 += d1 * (change - mean);
    }
    out.mc_mean = mean;
    out.mc_stderr = trials > 1
                        ? std::sqrt(m2 / static_cast<double>(trials - 1) /
                                    static_cast<double>(trials))
                        : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Synchronous simulator
// ---------------------------------------------------------------------------

namespace {

SolveResult solve_sync(const Problem& p, const ParConfig& cfg,
                       const SpectralEstimate* est, SolverState state) {
    const std::int64_t d = p.d();
    const bool cdn = cfg.variant == SolverVariant::cdn;
    const std::int64_t coords = cdn ? d : 2 * d;
    const std::int64_t rounds_per_epoch = (coords + cfg.p - 1) / cfg.p;
    const SeqConfig ls = line_search_config(cfg);
    const bool track = cfg.has_stop_objective && p.loss == Loss::squared && !cdn;

    Stopwatch clock;
    auto rng = make_stream(cfg.seed, 0);

    SolveResult res;
    const double f0 = objective_value(p, state);
    double best = f0;
    res.trace.push_back({clock.ms(), 0, f0, state.nnz()});

    std::optional<ObjectiveTracker> tracker;
    if (track) tracker.emplace(p, state);

    std::vector<std::int64_t> active;
    if (cdn) {
        active.resize(static_cast<std::size_t>(d));
        for (std::int64_t k = 0; k < d; ++k) active[k] = k;
    }

    RoundUpdate round;
    std::vector<double> col_ax;
    std::vector<std::int64_t> suspend;
    std::unordered_map<std::int64_t, double> agg;

    std::int64_t updates = 0;
    bool stop_hit = false;
    for (std::int64_t epoch = 1; epoch <= cfg.max_epochs && !stop_hit; ++epoch) {
        double max_delta = 0.0;
        for (std::int64_t r = 0; r < rounds_per_epoch && !stop_hit; ++r) {
            if (!cdn) {
                max_delta = std::max(
                    max_delta,
                    run_fixed_round(p, state, cfg, rng, round,
                                    tracker ? &*tracker : nullptr));
            } else {
                if (active.empty()) break;
                // Every pick line-searches against the pre-round state;
                // collisions sum in signed space.
                std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
                agg.clear();
                suspend.clear();
                for (std::int64_t t = 0; t < cfg.p; ++t) {
                    const std::int64_t k = active[pick(rng)];
                    auto rows = p.matrix.col_rows(k);
                    auto vals = p.matrix.col_values(k);
                    col_ax.resize(rows.size());
                    for (std::size_t i = 0; i < rows.size(); ++i)
                        col_ax[i] = state.ax[rows[i]];
                    const CdnProposal prop =
                        cdn_propose(p, state.x[k], rows, vals, col_ax, ls);
                    res.line_search_failures += prop.ls_failed;
                    const double step =
                        cfg.damp_by_p ? prop.step / static_cast<double>(cfg.p)
                                      : prop.step;
                    agg[k] += step;
                    if (step == 0.0 && state.x[k] == 0.0 &&
                        p.lambda - std::abs(prop.gradient) > 2.0 * cfg.tol)
                        suspend.push_back(k);
                }
                for (const auto& [k, change] : agg) {
                    if (change != 0.0) {
                        state.x[k] += change;
                        p.matrix.add_column(k, change, state.ax);
                    }
                    max_delta = std::max(max_delta, std::abs(change));
                }
                for (std::int64_t k : suspend) {
                    if (agg[k] != 0.0) continue;  // a colliding pick moved it
                    auto it = std::find(active.begin(), active.end(), k);
                    if (it != active.end()) {
                        *it = active.back();
                        active.pop_back();
                    }
                }
            }
            updates += cfg.p;
            if (cfg.has_stop_objective) {
                const double f = track ? tracker->value() : objective_value(p, state);
                if (f <= cfg.stop_objective) {
                    res.termination = Termination::converged;
                    stop_hit = true;
                }
            }
        }
        res.epochs = epoch;
        if (epoch % 64 == 0) {
            state.refresh_ax(p);
            if (track) tracker->refresh(state);
        }

        const double f = objective_value(p, state);
        if (!std::isfinite(f) ||
            (cfg.guard_check_epochs > 0 && epoch % cfg.guard_check_epochs == 0 &&
             f > cfg.guard_blowup * std::max(std::max(f0, best), 1e-12))) {
            res.termination = Termination::diverged;
            break;
        }
        best = std::min(best, f);
        if (cfg.trace_every_epochs > 0 && epoch % cfg.trace_every_epochs == 0)
            res.trace.push_back({clock.ms(), updates, f, state.nnz()});
        if (stop_hit) break;

        if (max_delta < cfg.tol || (cdn && active.empty())) {
            // Confirm with a deterministic sequential pass before declaring
            // convergence; random epochs can skip coordinates.
            double pass_max = 0.0;
            if (!cdn) {
                for (std::int64_t j = 0; j < 2 * d; ++j) {
                    pass_max = std::max(pass_max, std::abs(scd_update(p, state, j)));
                    ++updates;
                }
                if (track) tracker->refresh(state);
            } else {
                for (std::int64_t k = 0; k < d; ++k) {
                    bool failed = false;
                    pass_max =
                        std::max(pass_max, std::abs(cdn_update(p, state, k, ls, &failed)));
                    res.line_search_failures += failed;
                    ++updates;
                }
            }
            if (pass_max < cfg.tol) {
                res.termination = Termination::converged;
                break;
            }
            if (cdn) {
                active.resize(static_cast<std::size_t>(d));
                for (std::int64_t k = 0; k < d; ++k) active[k] = k;
            }
        }
    }

    state.refresh_ax(p);
    res.updates = updates;
    res.objective = objective_value(p, state);
    if (std::isfinite(res.objective))
        res.trace.push_back({clock.ms(), updates, res.objective, state.nnz()});
    res.x = std::move(state.x);
    annotate(res, cfg, est, d);
    return res;
}

// ---------------------------------------------------------------------------
// Asynchronous multicore solver
// ---------------------------------------------------------------------------
//
// The Problem is immutable and shared; x and ax are mutated only through
// compare-and-swap. Workers read whatever currently sits in shared memory
// (possibly stale, possibly mid-commit of another worker) and commit
//   - the weight as one serialized transition that re-applies the
//     nonnegativity clamp against the weight found at commit time,
//   - the ax entries as CAS additions of exactly the committed change.
// Stale reads are the algorithm's documented semantics; the contract is
// that no committed addition is ever lost.

struct AsyncShared {
    std::atomic<std::int64_t> update_count{0};
    std::atomic<int> stop{0};  // 0 run, 1 tol reached, 2 diverged, 3 epochs exhausted
    std::atomic<std::int64_t> ls_failures{0};
    double epoch_max_delta = 0.0;  // atomic_max; reset by the designated worker
};

double snapshot_objective(const Problem& p, const SolverState& state,
                          std::vector<double>& xbuf, std::vector<double>& axbuf) {
    for (std::size_t k = 0; k < state.x.size(); ++k)
        xbuf[k] = atomic_load_relaxed(state.x[k]);
    for (std::size_t i = 0; i < state.ax.size(); ++i)
        axbuf[i] = atomic_load_relaxed(state.ax[i]);
    return objective_from_ax(p, axbuf, xbuf);
}

void async_worker(const Problem& p, const ParConfig& cfg, SolverState& state,
                  AsyncShared& shared, std::int64_t epoch_len, std::int64_t max_epochs,
                  int worker_id, std::vector<DeltaLogEntry>* log,
                  std::vector<TraceRow>* trace, const Stopwatch& clock, double f0,
                  std::int64_t epoch_base) {
    const std::int64_t d = p.d();
    const bool cdn = cfg.variant == SolverVariant::cdn;
    const SeqConfig ls = line_search_config(cfg);
    auto rng = make_stream(cfg.seed, 1 + static_cast<std::uint64_t>(worker_id));
    std::uniform_int_distribution<std::int64_t> draw(0, (cdn ? d : 2 * d) - 1);
    const double scale = cfg.damp_by_p ? 1.0 / static_cast<double>(cfg.p) : 1.0;

    std::vector<double> xbuf, axbuf;
    std::int64_t next_epoch = 1;
    double best = f0;
    if (worker_id == 0) {
        xbuf.resize(state.x.size());
        axbuf.resize(state.ax.size());
    }
    std::vector<double> col_ax;

    while (shared.stop.load(std::memory_order_relaxed) == 0) {
        const std::int64_t j = draw(rng);
        const std::int64_t k = cdn ? j : dup_column(j, d);
        auto rows = p.matrix.col_rows(k);
        auto vals = p.matrix.col_values(k);

        col_ax.resize(rows.size());
        for (std::size_t t = 0; t < rows.size(); ++t)
            col_ax[t] = atomic_load_relaxed(state.ax[rows[t]]);

        double committed = 0.0;
        if (!cdn) {
            double g = 0.0;
            if (p.loss == Loss::squared) {
                for (std::size_t t = 0; t < rows.size(); ++t)
                    g += vals[t] * (col_ax[t] - p.labels[rows[t]]);
            } else {
                for (std::size_t t = 0; t < rows.size(); ++t) {
                    const double yi = p.labels[rows[t]];
                    g -= yi * vals[t] * sigmoid(-yi * col_ax[t]);
                }
            }
            const double s = dup_sign(j, d);
            g = s * g + p.lambda;
            const double stale_x = atomic_load_relaxed(state.x[k]);
            const double tentative =
                scale * shooting_delta(dup_value(stale_x, j, d), g, p.beta());

            auto [before, after] = atomic_transform(state.x[k], [&](double cur) {
                const double cur_hat = dup_value(cur, j, d);
                const double eff = std::max(-cur_hat, tentative);
                return cur + s * eff;
            });
            committed = after - before;
            if (log && committed != 0.0) log->push_back({k, before, after});
        } else {
            const double stale_x = atomic_load_relaxed(state.x[k]);
            const CdnProposal prop = cdn_propose(p, stale_x, rows, vals, col_ax, ls);
            if (prop.ls_failed) shared.ls_failures.fetch_add(1, std::memory_order_relaxed);
            const double step = scale * prop.step;
            if (step != 0.0) {
                auto [before, after] = atomic_transform(
                    state.x[k], [&](double cur) { return cur + step; });
                committed = after - before;
                if (log && committed != 0.0) log->push_back({k, before, after});
            }
        }

        if (committed != 0.0) {
            for (std::size_t t = 0; t < rows.size(); ++t)
                atomic_add(state.ax[rows[t]], committed * vals[t]);
        }
        atomic_max(shared.epoch_max_delta, std::abs(committed));
        const std::int64_t total =
            shared.update_count.fetch_add(1, std::memory_order_relaxed) + 1;

        if (worker_id == 0 && total >= next_epoch * epoch_len) {
            const double max_delta = std::atomic_ref<double>(shared.epoch_max_delta)
                                         .exchange(0.0, std::memory_order_relaxed);
            const double f = snapshot_objective(p, state, xbuf, axbuf);
            const std::int64_t epoch = epoch_base + next_epoch;

            if (!std::isfinite(f) ||
                (next_epoch % std::max<std::int64_t>(cfg.guard_check_epochs, 1) == 0 &&
                 f > cfg.guard_blowup * std::max(std::max(f0, best), 1e-12))) {
                shared.stop.store(2, std::memory_order_relaxed);
                return;
            }
            best = std::min(best, f);
            if (cfg.trace_every_epochs > 0 && epoch % cfg.trace_every_epochs == 0) {
                std::int64_t nz = 0;
                for (double v : xbuf) nz += (v != 0.0);
                trace->push_back({clock.ms(), total, f, nz});
            }
            if (max_delta < cfg.tol) {
                shared.stop.store(1, std::memory_order_relaxed);
                return;
            }
            ++next_epoch;
            if (next_epoch > max_epochs) {
                shared.stop.store(3, std::memory_order_relaxed);
                return;
            }
        }
    }
}

AsyncRunLog solve_async(const Problem& p, const ParConfig& cfg,
                        const SpectralEstimate* est, const SolverState* warm) {
    const std::int64_t d = p.d();
    const bool cdn = cfg.variant == SolverVariant::cdn;
    const std::int64_t epoch_len = cdn ? d : 2 * d;
    const SeqConfig ls = line_search_config(cfg);

    Stopwatch clock;
    SolverState state = warm ? *warm : SolverState::zeros(p);
    const double f0 = objective_value(p, state);

    AsyncRunLog run;
    SolveResult& res = run.result;
    res.trace.push_back({clock.ms(), 0, f0, 0});
    if (cfg.log_deltas) run.worker_logs.resize(static_cast<std::size_t>(cfg.p));

    std::int64_t epochs_used = 0;
    std::int64_t updates = 0;
    Termination outcome = Termination::max_iters;

    while (epochs_used < cfg.max_epochs) {
        AsyncShared shared;
        std::vector<TraceRow> phase_trace;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(cfg.p));
        for (int w = 0; w < cfg.p; ++w) {
            std::vector<DeltaLogEntry>* log =
                cfg.log_deltas ? &run.worker_logs[static_cast<std::size_t>(w)] : nullptr;
            pool.emplace_back(async_worker, std::cref(p), std::cref(cfg),
                              std::ref(state), std::ref(shared), epoch_len,
                              cfg.max_epochs - epochs_used, w, log, &phase_trace,
                              std::cref(clock), f0, epochs_used);
        }
        for (auto& t : pool) t.join();

        const std::int64_t phase_updates = shared.update_count.load();
        const std::int64_t before_phase = updates;
        updates += phase_updates;
        epochs_used += std::max<std::int64_t>(
            1, std::min(cfg.max_epochs - epochs_used,
                        (phase_updates + epoch_len - 1) / epoch_len));
        for (TraceRow row : phase_trace) {
            row.updates += before_phase;
            res.trace.push_back(row);
        }
        res.line_search_failures += shared.ls_failures.load();

        const int why = shared.stop.load();
        if (why == 2) {
            outcome = Termination::diverged;
            break;
        }
        if (why == 3 || epochs_used >= cfg.max_epochs) {
            outcome = Termination::max_iters;
            break;
        }
        // Tentative convergence; workers are quiesced. Confirm with a
        // deterministic sequential pass, resuming the pool if it fails.
        double pass_max = 0.0;
        if (!cdn) {
            for (std::int64_t j = 0; j < 2 * d; ++j) {
                pass_max = std::max(pass_max, std::abs(scd_update(p, state, j)));
                ++updates;
            }
        } else {
            for (std::int64_t k = 0; k < d; ++k) {
                bool failed = false;
                pass_max = std::max(pass_max, std::abs(cdn_update(p, state, k, ls, &failed)));
                res.line_search_failures += failed;
                ++updates;
            }
        }
        if (pass_max < cfg.tol) {
            outcome = Termination::converged;
            break;
        }
    }

    res.final_ax = state.ax;
    res.ax_drift_rel = state.refresh_ax(p);
    res.updates = updates;
    res.epochs = epochs_used;
    res.termination = outcome;
    res.objective = objective_value(p, state);
    if (std::isfinite(res.objective))
        res.trace.push_back({clock.ms(), updates, res.objective, state.nnz()});
    res.x = std::move(state.x);
    annotate(res, cfg, est, d);
    return run;
}

}  // namespace

SolveResult solve_shotgun(const Problem& p, const ParConfig& cfg,
                          const SpectralEstimate* est, const SolverState* warm_start) {
    validate(cfg);
    if (cfg.mode == ParMode::sync_sim)
        return solve_sync(p, cfg, est,
                          warm_start ? *warm_start : SolverState::zeros(p));
    return solve_async(p, cfg, est, warm_start).result;
}

AsyncRunLog solve_shotgun_logged(const Problem& p, const ParConfig& cfg) {
    validate(cfg);
    if (cfg.mode != ParMode::async)
        throw std::invalid_argument("delta logging applies to async mode");
    return solve_async(p, cfg, nullptr, nullptr);
}

}  // namespace shotgun
