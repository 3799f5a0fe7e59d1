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

#include "shotgun/driver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shotgun {

double lambda_max(const Problem& p) {
    std::vector<double> ax(static_cast<std::size_t>(p.n()), 0.0);
    double worst = 0.0;
    for (std::int64_t k = 0; k < p.d(); ++k)
        worst = std::max(worst, std::abs(smooth_coord_gradient(p, ax, k)));
    return worst;
}

std::vector<double> lambda_path(const Problem& p, const PathConfig& cfg) {
    if (!(cfg.lambda_target > 0.0))
        throw std::invalid_argument("lambda_target must be positive");
    if (cfg.num_steps < 1) throw std::invalid_argument("num_steps must be >= 1");
    const double lmax = lambda_max(p);
    if (cfg.lambda_target >= lmax || cfg.num_steps == 1)
        return {cfg.lambda_target};
    const std::int64_t steps = cfg.num_steps;
    const double ratio = std::pow(cfg.lambda_target / lmax,
                                  1.0 / static_cast<double>(steps - 1));
    std::vector<double> path(static_cast<std::size_t>(steps));
    path.front() = lmax;
    for (std::int64_t i = 1; i < steps - 1; ++i) path[i] = path[i - 1] * ratio;
    path.back() = cfg.lambda_target;
    return path;
}

namespace {

template <typename Config, typename Solve>
PathResult run_path(const Problem& p, const PathConfig& path_cfg, const Config& cfg,
                    Solve&& solve_stage) {
    PathResult out;
    out.lambdas = lambda_path(p, path_cfg);
    Problem stage = p;  // lambda varies along the path, the data does not
    SolverState warm = SolverState::zeros(stage);
    for (double lam : out.lambdas) {
        stage.lambda = lam;
        SolveResult res = solve_stage(stage, cfg, warm);
        const bool diverged = res.termination == Termination::diverged;
        if (!diverged) warm = SolverState::from_weights(stage, res.x);
        out.stages.push_back(std::move(res));
        if (diverged) break;
    }
    return out;
}

}  // namespace

PathResult solve_path(const Problem& p, const PathConfig& path, const SeqConfig& cfg) {
    return run_path(p, path, cfg,
                    [](const Problem& stage, const SeqConfig& c, const SolverState& warm) {
                        return solve_sequential(stage, c, warm);
                    });
}

PathResult solve_path(const Problem& p, const PathConfig& path, const ParConfig& cfg) {
    return run_path(p, path, cfg,
                    [](const Problem& stage, const ParConfig& c, const SolverState& warm) {
                        return solve_shotgun(stage, c, nullptr, &warm);
                    });
}

BenchmarkReport benchmark_speedup(const Problem& p,
                                  const std::vector<std::int64_t>& p_list,
                                  const BenchConfig& cfg) {
    BenchmarkReport report;
    report.spectral = power_iteration(p.matrix, 1e-6, 5000, cfg.seed);

    SeqConfig ref_cfg;
    ref_cfg.tol = cfg.ref_tol;
    ref_cfg.max_epochs = cfg.ref_max_epochs;
    ref_cfg.seed = cfg.seed;
    ref_cfg.variant = cfg.variant;
    ref_cfg.trace_every_epochs = 0;
    const SolveResult ref = solve_sequential(p, ref_cfg);
    if (ref.termination == Termination::diverged || !std::isfinite(ref.objective))
        throw std::runtime_error("benchmark reference solve failed");
    report.reference_objective = ref.objective;
    report.threshold = ref.objective * (1.0 + cfg.threshold_frac);

    for (std::int64_t pp : p_list) {
        BenchRow row;
        row.p = pp;
        row.seeds = cfg.seeds;
        row.exceeds_pstar = pp > report.spectral.pstar;
        double sum_rounds = 0.0, sum_updates = 0.0, sum_wall = 0.0, sum_async = 0.0;
        std::int64_t async_runs = 0;
        for (std::int64_t s = 0; s < cfg.seeds; ++s) {
            ParConfig run;
            run.p = pp;
            run.mode = ParMode::sync_sim;
            run.seed = cfg.seed + static_cast<std::uint64_t>(s);
            run.tol = cfg.tol;
            run.max_epochs = cfg.max_epochs;
            run.variant = cfg.variant;
            run.stop_objective = report.threshold;
            run.has_stop_objective = true;
            run.trace_every_epochs = 0;
            const SolveResult res = solve_shotgun(p, run);
            if (res.termination == Termination::diverged) {
                ++row.diverged;
                continue;
            }
            if (res.objective > report.threshold) continue;  // never crossed
            ++row.reached;
            sum_updates += static_cast<double>(res.updates);
            sum_rounds += static_cast<double>(res.updates) / static_cast<double>(pp);
            sum_wall += res.trace.empty() ? 0.0 : res.trace.back().wall_ms;

            if (cfg.run_async_timing) {
                ParConfig arun = run;
                arun.mode = ParMode::async;
                arun.has_stop_objective = false;
                arun.stop_objective = -1.0;
                arun.trace_every_epochs = 1;
                const SolveResult ares = solve_shotgun(p, arun);
                for (const TraceRow& tr : ares.trace) {
                    if (tr.objective <= report.threshold) {
                        sum_async += tr.wall_ms;
                        ++async_runs;
                        break;
                    }
                }
            }
        }
        if (row.reached > 0) {
            row.mean_rounds = sum_rounds / static_cast<double>(row.reached);
            row.mean_updates = sum_updates / static_cast<double>(row.reached);
            row.mean_wall_ms = sum_wall / static_cast<double>(row.reached);
        }
        if (async_runs > 0) row.async_mean_wall_ms = sum_async / static_cast<double>(async_runs);
        report.rows.push_back(row);
    }
    return report;
}

std::string benchmark_csv(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "p,seeds,reached,diverged,mean_rounds,mean_updates,mean_wall_ms,"
           "async_mean_wall_ms,exceeds_pstar\n";
    out.precision(17);
    for (const BenchRow& r : report.rows) {
        out << r.p << ',' << r.seeds << ',' << r.reached << ',' << r.diverged << ','
            << r.mean_rounds << ',' << r.mean_updates << ',' << r.mean_wall_ms << ','
            << r.async_mean_wall_ms << ',' << (r.exceeds_pstar ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace shotgun
