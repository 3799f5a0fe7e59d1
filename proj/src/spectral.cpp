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

#include "shotgun/spectral.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "shotgun/rng.hpp"

namespace shotgun {

SpectralEstimate power_iteration(const DesignMatrix& m, double tol,
                                 std::int64_t max_iters, std::uint64_t seed) {
    const std::int64_t d = m.cols();
    const std::int64_t n = m.rows();
    if (d < 1) throw std::invalid_argument("power_iteration: matrix has no columns");

    auto rng = make_stream(seed, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(d));
    double norm = 0.0;
    while (norm == 0.0) {
        for (double& vi : v) vi = gauss(rng);
        norm = 0.0;
        for (double vi : v) norm += vi * vi;
        norm = std::sqrt(norm);
    }
    for (double& vi : v) vi /= norm;

    std::vector<double> av(static_cast<std::size_t>(n));
    std::vector<double> w(static_cast<std::size_t>(d));

    SpectralEstimate est;
    double rayleigh_prev = 0.0;
    for (std::int64_t it = 1; it <= max_iters; ++it) {
        std::fill(av.begin(), av.end(), 0.0);
        for (std::int64_t j = 0; j < d; ++j)
            if (v[j] != 0.0) m.add_column(j, v[j], av);
        for (std::int64_t j = 0; j < d; ++j) w[j] = m.col_dot_vec(j, av);

        double rayleigh = 0.0;
        for (std::int64_t j = 0; j < d; ++j) rayleigh += v[j] * w[j];

        est.iterations = it;
        est.rho = rayleigh;
        est.rel_change = std::abs(rayleigh - rayleigh_prev) /
                         std::max(std::abs(rayleigh), 1e-300);
        if (it > 1 && est.rel_change < tol) {
            est.converged = true;
            break;
        }
        rayleigh_prev = rayleigh;

        double wn = 0.0;
        for (double wj : w) wn += wj * wj;
        wn = std::sqrt(wn);
        if (wn == 0.0) {
            // A'A v vanished: v was in the null space; the estimate is 0.
            est.converged = true;
            est.rho = 0.0;
            break;
        }
        for (std::int64_t j = 0; j < d; ++j) v[j] = w[j] / wn;
    }
    est.pstar = predicted_pstar(d, est.rho);
    return est;
}

std::int64_t predicted_pstar(std::int64_t d, double rho) {
    if (d < 1) throw std::invalid_argument("predicted_pstar: d must be >= 1");
    if (!(rho > 0.0)) return d;
    const double raw = std::ceil(static_cast<double>(d) / rho);
    if (raw < 1.0) return 1;
    if (raw > static_cast<double>(d)) return d;
    return static_cast<std::int64_t>(raw);
}

}  // namespace shotgun
