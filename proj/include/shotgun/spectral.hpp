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

#include "shotgun/matrix_io.hpp"

namespace shotgun {

// Estimate of the spectral radius of A'A and the derived parallelism limit.
// For a column-normalized matrix rho >= 1, so pstar = ceil(d / rho) lies in
// [1, d]. rho of the duplicated gram [A,-A]'[A,-A] is exactly 2 * rho.
struct SpectralEstimate {
    double rho = 0.0;
    std::int64_t iterations = 0;
    double rel_change = 0.0;
    bool converged = false;
    std::int64_t pstar = 1;
};

// Power iteration on A'A, never forming the gram explicitly (two sparse
// matrix-vector products per step). A'A is positive semidefinite, so the
// Rayleigh quotient converges to the largest eigenvalue from below.
// Terminates when its relative change drops under tol; returns the estimate
// flagged unconverged if max_iters is hit first.
SpectralEstimate power_iteration(const DesignMatrix& m, double tol = 1e-4,
                                 std::int64_t max_iters = 1000,
                                 std::uint64_t seed = 0);

// ceil(d / rho), clamped to [1, d].
std::int64_t predicted_pstar(std::int64_t d, double rho);

}  // namespace shotgun
