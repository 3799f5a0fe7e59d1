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

#include "shotgun/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace shotgun {

double log1p_exp_neg(double z) {
    // log(1 + exp(-z)) without overflow for large |z|.
    if (z >= 0.0) return std::log1p(std::exp(-z));
    return std::log1p(std::exp(z)) - z;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

Problem::Problem(DesignMatrix m, Labels y, Loss l, double lam)
    : matrix(std::move(m)), labels(std::move(y)), loss(l), lambda(lam) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
    if (static_cast<std::int64_t>(labels.size()) != matrix.rows())
        throw std::invalid_argument("label count does not match sample count");
    validate_labels(labels, loss);
}

void validate_labels(const Labels& y, Loss loss) {
    if (loss != Loss::logistic) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] != 1.0 && y[i] != -1.0)
            throw std::invalid_argument("logistic labels must be exactly +1 or -1 (sample " +
                                        std::to_string(i + 1) + ")");
}

SolverState SolverState::zeros(const Problem& p) {
    SolverState s;
    s.x.assign(static_cast<std::size_t>(p.d()), 0.0);
    s.ax.assign(static_cast<std::size_t>(p.n()), 0.0);
    return s;
}

SolverState SolverState::from_weights(const Problem& p, std::vector<double> weights) {
    SolverState s;
    s.x = std::move(weights);
    s.ax = p.matrix.multiply(s.x);
    return s;
}

double SolverState::refresh_ax(const Problem& p) {
    std::vector<double> fresh = p.matrix.multiply(x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
        num += (ax[i] - fresh[i]) * (ax[i] - fresh[i]);
        den += fresh[i] * fresh[i];
    }
    ax = std::move(fresh);
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

std::int64_t SolverState::nnz() const {
    std::int64_t c = 0;
    for (double v : x) c += (v != 0.0);
    return c;
}

double smooth_loss_from_ax(const Problem& p, std::span<const double> ax) {
    double f = 0.0;
    if (p.loss == Loss::squared) {
        for (std::size_t i = 0; i < ax.size(); ++i) {
            const double r = ax[i] - p.labels[i];
            f += r * r;
        }
        return 0.5 * f;
    }
    for (std::size_t i = 0; i < ax.size(); ++i)
        f += log1p_exp_neg(p.labels[i] * ax[i]);
    return f;
}

double objective_from_ax(const Problem& p, std::span<const double> ax,
                         std::span<const double> x) {
    double l1 = 0.0;
    for (double v : x) l1 += std::abs(v);
    return smooth_loss_from_ax(p, ax) + p.lambda * l1;
}

double objective_value(const Problem& p, const SolverState& state) {
    return objective_from_ax(p, state.ax, state.x);
}

double smooth_coord_gradient(const Problem& p, std::span<const double> ax,
                             std::int64_t k) {
    auto rows = p.matrix.col_rows(k);
    auto vals = p.matrix.col_values(k);
    double g = 0.0;
    if (p.loss == Loss::squared) {
        for (std::size_t t = 0; t < rows.size(); ++t)
            g += vals[t] * (ax[rows[t]] - p.labels[rows[t]]);
    } else {
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const double yi = p.labels[rows[t]];
            g -= yi * vals[t] * sigmoid(-yi * ax[rows[t]]);
        }
    }
    return g;
}

double smooth_coord_hessian(const Problem& p, std::span<const double> ax,
                            std::int64_t k) {
    auto rows = p.matrix.col_rows(k);
    auto vals = p.matrix.col_values(k);
    double h = 0.0;
    if (p.loss == Loss::squared) {
        for (std::size_t t = 0; t < rows.size(); ++t) h += vals[t] * vals[t];
    } else {
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const double z = p.labels[rows[t]] * ax[rows[t]];
            h += vals[t] * vals[t] * sigmoid(z) * sigmoid(-z);
        }
    }
    return h;
}

double coord_gradient(const Problem& p, const SolverState& state, std::int64_t j) {
    const std::int64_t k = dup_column(j, p.d());
    return dup_sign(j, p.d()) * smooth_coord_gradient(p, state.ax, k) + p.lambda;
}

double duplicated_objective(const Problem& p, std::span<const double> xhat) {
    const std::int64_t d = p.d();
    std::vector<double> x(static_cast<std::size_t>(d));
    double penalty = 0.0;
    for (std::int64_t k = 0; k < d; ++k) {
        x[k] = xhat[d + k] - xhat[k];
        penalty += xhat[k] + xhat[d + k];
    }
    std::vector<double> ax = p.matrix.multiply(x);
    return smooth_loss_from_ax(p, ax) + p.lambda * penalty;
}

double curvature_bound_gap(const Problem& p, std::span<const double> x,
                           std::span<const double> dx) {
    std::vector<double> ax = p.matrix.multiply(x);
    std::vector<double> adx = p.matrix.multiply(dx);

    double linear = 0.0;  // dx' grad(smooth loss)
    double quad = 0.0;    // ||A dx||^2
    if (p.loss == Loss::squared) {
        for (std::size_t i = 0; i < ax.size(); ++i) {
            linear += adx[i] * (ax[i] - p.labels[i]);
            quad += adx[i] * adx[i];
        }
    } else {
        for (std::size_t i = 0; i < ax.size(); ++i) {
            const double yi = p.labels[i];
            linear -= adx[i] * yi * sigmoid(-yi * ax[i]);
            quad += adx[i] * adx[i];
        }
    }
    const double f0 = smooth_loss_from_ax(p, ax);
    for (std::size_t i = 0; i < ax.size(); ++i) ax[i] += adx[i];
    const double f1 = smooth_loss_from_ax(p, ax);
    return f0 + linear + 0.5 * p.beta() * quad - f1;
}

double kkt_max_violation(const Problem& p, const SolverState& state) {
    double worst = 0.0;
    for (std::int64_t k = 0; k < p.d(); ++k) {
        const double g = smooth_coord_gradient(p, state.ax, k);
        double v;
        if (state.x[k] == 0.0) {
            v = std::max(0.0, std::abs(g) - p.lambda);
        } else {
            v = std::abs(g + (state.x[k] > 0 ? p.lambda : -p.lambda));
        }
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace shotgun
