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

#include "shotgun/sgd_baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shotgun/rng.hpp"

namespace shotgun {

namespace {

// Row-major copy of the design matrix; SGD walks samples, not columns.
struct RowView {
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int32_t> col_idx;
    std::vector<double> values;

    explicit RowView(const DesignMatrix& m) {
        row_ptr.assign(static_cast<std::size_t>(m.rows()) + 1, 0);
        for (std::int64_t j = 0; j < m.cols(); ++j)
            for (std::int32_t i : m.col_rows(j)) ++row_ptr[i + 1];
        std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
        col_idx.resize(static_cast<std::size_t>(m.nnz()));
        values.resize(static_cast<std::size_t>(m.nnz()));
        std::vector<std::int64_t> fill(row_ptr.begin(), row_ptr.end() - 1);
        for (std::int64_t j = 0; j < m.cols(); ++j) {
            auto rows = m.col_rows(j);
            auto vals = m.col_values(j);
            for (std::size_t t = 0; t < rows.size(); ++t) {
                const std::int64_t slot = fill[rows[t]]++;
                col_idx[slot] = static_cast<std::int32_t>(j);
                values[slot] = vals[t];
            }
        }
    }
};

double shrink(double w, double amount) {
    if (w > 0.0) return std::max(w - amount, 0.0);
    if (w < 0.0) return std::min(w + amount, 0.0);
    return 0.0;
}

struct RateOutcome {
    std::vector<double> w;
    double objective = std::numeric_limits<double>::infinity();
    bool diverged = false;
    std::vector<TraceRow> trace;
    std::int64_t steps = 0;
};

RateOutcome run_rate(const Problem& p, const RowView& rows, double rate,
                     std::int64_t epochs, std::mt19937_64 rng) {
    const std::int64_t n = p.n();
    const std::int64_t d = p.d();
    const double eta_lambda = rate * p.lambda;
    const auto start = std::chrono::steady_clock::now();

    RateOutcome out;
    out.w.assign(static_cast<std::size_t>(d), 0.0);
    std::vector<std::int64_t> last_applied(static_cast<std::size_t>(d), 0);
    std::vector<std::int32_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    std::int64_t step = 0;
    for (std::int64_t epoch = 1; epoch <= epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::int32_t i : order) {
            ++step;
            // Bring this sample's support up to date: the shrinkage every
            // untouched step would have applied composes into one
            // soft-threshold by step - last_applied steps.
            double z = 0.0;
            for (std::int64_t t = rows.row_ptr[i]; t < rows.row_ptr[i + 1]; ++t) {
                const std::int32_t k = rows.col_idx[t];
                const std::int64_t pending = step - last_applied[k];
                if (pending > 0 && eta_lambda > 0.0)
                    out.w[k] = shrink(out.w[k], static_cast<double>(pending) * eta_lambda);
                last_applied[k] = step;
                z += rows.values[t] * out.w[k];
            }
            if (!std::isfinite(z)) {
                out.diverged = true;
                break;
            }
            double coef;
            if (p.loss == Loss::squared) {
                coef = z - p.labels[i];
            } else {
                coef = -p.labels[i] * sigmoid(-p.labels[i] * z);
            }
            for (std::int64_t t = rows.row_ptr[i]; t < rows.row_ptr[i + 1]; ++t)
                out.w[rows.col_idx[t]] -= rate * coef * rows.values[t];
        }
        if (out.diverged) break;

        // Per-epoch objective on a flushed copy of the weights.
        std::vector<double> flushed = out.w;
        for (std::int64_t k = 0; k < d; ++k) {
            const std::int64_t pending = step - last_applied[k];
            if (pending > 0 && eta_lambda > 0.0)
                flushed[k] = shrink(flushed[k], static_cast<double>(pending) * eta_lambda);
        }
        SolverState snap = SolverState::from_weights(p, std::move(flushed));
        const double f = objective_value(p, snap);
        if (!std::isfinite(f)) {
            out.diverged = true;
            break;
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start).count();
        out.trace.push_back({ms, step, f, snap.nnz()});
    }
    out.steps = step;

    if (!out.diverged) {
        for (std::int64_t k = 0; k < d; ++k) {
            const std::int64_t pending = step - last_applied[k];
            if (pending > 0 && eta_lambda > 0.0)
                out.w[k] = shrink(out.w[k], static_cast<double>(pending) * eta_lambda);
        }
        SolverState final_state = SolverState::from_weights(p, out.w);
        out.objective = objective_value(p, final_state);
        if (!std::isfinite(out.objective)) out.diverged = true;
    }
    return out;
}

}  // namespace

std::vector<double> SgdConfig::default_rates() {
    std::vector<double> rates(14);
    for (int i = 0; i < 14; ++i)
        rates[i] = 1e-4 * std::pow(1e4, static_cast<double>(i) / 13.0);
    return rates;
}

SgdResult sgd_solve(const Problem& p, const SgdConfig& cfg) {
    if (cfg.rates.empty()) throw std::invalid_argument("rate grid must be non-empty");
    for (std::size_t i = 0; i < cfg.rates.size(); ++i) {
        if (!(cfg.rates[i] > 0.0))
            throw std::invalid_argument("learning rates must be positive");
        if (i > 0 && cfg.rates[i] <= cfg.rates[i - 1])
            throw std::invalid_argument("learning rates must be increasing");
    }
    const RowView rows(p.matrix);

    SgdResult out;
    out.rate_objectives.assign(cfg.rates.size(),
                               std::numeric_limits<double>::infinity());
    std::vector<RateOutcome> outcomes(cfg.rates.size());
    for (std::size_t r = 0; r < cfg.rates.size(); ++r) {
        outcomes[r] = run_rate(p, rows, cfg.rates[r], cfg.epochs,
                               make_stream(cfg.seed, r + 1));
        if (outcomes[r].diverged) ++out.diverged_rates;
        else out.rate_objectives[r] = outcomes[r].objective;
    }

    // Selection is by training objective only.
    std::size_t best = cfg.rates.size();
    for (std::size_t r = 0; r < cfg.rates.size(); ++r)
        if (!outcomes[r].diverged &&
            (best == cfg.rates.size() ||
             outcomes[r].objective < outcomes[best].objective))
            best = r;
    if (best == cfg.rates.size())
        throw std::runtime_error("every learning rate diverged");

    out.best_rate = cfg.rates[best];
    RateOutcome& win = outcomes[best];
    out.best.x = std::move(win.w);
    out.best.objective = win.objective;
    out.best.updates = win.steps;
    out.best.epochs = cfg.epochs;
    out.best.termination = Termination::converged;
    out.best.trace = std::move(win.trace);
    return out;
}

double held_out_error(const DesignMatrix& holdout, const Labels& labels,
                      std::span<const double> x) {
    validate_labels(labels, Loss::logistic);
    if (static_cast<std::int64_t>(labels.size()) != holdout.rows())
        throw std::invalid_argument("holdout labels do not match sample count");
    const std::vector<double> scores = holdout.multiply(x);
    std::int64_t wrong = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const double pred = scores[i] >= 0.0 ? 1.0 : -1.0;  // sign(0) is +1
        wrong += (pred != labels[i]);
    }
    return static_cast<double>(wrong) / static_cast<double>(scores.size());
}

}  // namespace shotgun
