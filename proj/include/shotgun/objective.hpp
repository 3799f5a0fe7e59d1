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
#include <span>
#include <vector>

#include "shotgun/matrix_io.hpp"

namespace shotgun {

enum class Loss { squared, logistic };

// Curvature constant bounding the per-coordinate second-order behavior of
// the smooth loss: 1 for squared loss, 1/4 for logistic.
struct LossModel {
    double beta;
    static LossModel of(Loss loss) {
        return {loss == Loss::squared ? 1.0 : 0.25};
    }
};

// min_x  sum_i L(a_i' x, y_i) + lambda * ||x||_1
//
// Squared loss:  F(x) = 0.5 ||Ax - y||^2 + lambda ||x||_1
// Logistic loss: F(x) = sum_i log(1 + exp(-y_i a_i' x)) + lambda ||x||_1,
//                y_i in {-1, +1}.
struct Problem {
    DesignMatrix matrix;
    Labels labels;
    Loss loss = Loss::squared;
    double lambda = 0.0;

    Problem() = default;
    Problem(DesignMatrix m, Labels y, Loss l, double lam);

    std::int64_t n() const { return matrix.rows(); }
    std::int64_t d() const { return matrix.cols(); }
    double beta() const { return LossModel::of(loss).beta; }
};

void validate_labels(const Labels& y, Loss loss);

// Signed weights plus the maintained prediction vector Ax. The signed
// vector is the production form of the nonnegative duplicated pair
// (xhat_neg, xhat_pos) with x_k = xhat_pos_k - xhat_neg_k and at most one
// of the pair nonzero per coordinate.
struct SolverState {
    std::vector<double> x;   // length d
    std::vector<double> ax;  // length n, tracks A * x

    static SolverState zeros(const Problem& p);
    static SolverState from_weights(const Problem& p, std::vector<double> weights);

    // Rebuild ax = A * x and return the relative drift that had accumulated.
    double refresh_ax(const Problem& p);

    std::int64_t nnz() const;
};

// Duplicated-coordinate addressing. Coordinates j in [0, d) are the
// negative copies (sign -1) and j in [d, 2d) the positive copies (sign +1)
// of column j mod d.
inline double dup_sign(std::int64_t j, std::int64_t d) { return j < d ? -1.0 : 1.0; }
inline std::int64_t dup_column(std::int64_t j, std::int64_t d) { return j < d ? j : j - d; }
// Value of duplicated coordinate j in the canonical embedding of signed x.
inline double dup_value(double xk, std::int64_t j, std::int64_t d) {
    return j < d ? (xk < 0 ? -xk : 0.0) : (xk > 0 ? xk : 0.0);
}

// F(x) evaluated from the cached prediction vector.
double objective_value(const Problem& p, const SolverState& state);
double objective_from_ax(const Problem& p, std::span<const double> ax,
                         std::span<const double> x);

// Smooth part of the objective (no L1 term) at the given predictions.
double smooth_loss_from_ax(const Problem& p, std::span<const double> ax);

// d/dx_k of the smooth loss, from cached predictions. O(nnz(column k)).
double smooth_coord_gradient(const Problem& p, std::span<const double> ax,
                             std::int64_t k);
// d^2/dx_k^2 of the smooth loss (exact for both losses).
double smooth_coord_hessian(const Problem& p, std::span<const double> ax,
                            std::int64_t k);

// Gradient of the duplicated-space objective at coordinate j in [0, 2d):
// sign(j) * smooth_gradient(j mod d) + lambda.
double coord_gradient(const Problem& p, const SolverState& state, std::int64_t j);

// Objective of the duplicated-space formulation at an arbitrary length-2d
// vector: loss at the folded signed weights plus lambda * sum_j xhat_j.
// The formula is well defined even off the nonnegative orthant, which the
// theory checks rely on when evaluating raw multiset updates.
double duplicated_objective(const Problem& p, std::span<const double> xhat);

// Slack of the quadratic upper bound
//   F(x + dx) <= F(x) + dx' grad F(x) + (beta/2) dx' A'A dx,
// returned as bound minus actual. Nonnegative when the curvature constant
// is valid; identically zero for squared loss. The L1 terms cancel, so this
// is computed on the smooth loss with signed vectors.
double curvature_bound_gap(const Problem& p, std::span<const double> x,
                           std::span<const double> dx);

// Max KKT violation of the signed problem: for x_k = 0, max(0, |g_k| - lambda);
// otherwise |g_k + lambda * sign(x_k)|, with g the smooth gradient.
double kkt_max_violation(const Problem& p, const SolverState& state);

// Numerically stable log(1 + exp(-z)) and 1 / (1 + exp(-z)).
double log1p_exp_neg(double z);
double sigmoid(double z);

}  // namespace shotgun
