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

#include <atomic>

namespace shotgun {

// Lock-free accumulation into shared doubles. Every mutation is a
// compare-and-swap retry loop, so concurrent additions are never lost;
// readers may observe values mid-sequence, which the asynchronous solver
// tolerates by contract.

inline double atomic_load_relaxed(const double& slot) {
    return std::atomic_ref<const double>(slot).load(std::memory_order_relaxed);
}

inline void atomic_add(double& slot, double v) {
    std::atomic_ref<double> ref(slot);
    double old = ref.load(std::memory_order_relaxed);
    while (!ref.compare_exchange_weak(old, old + v, std::memory_order_relaxed)) {
    }
}

inline void atomic_max(double& slot, double v) {
    std::atomic_ref<double> ref(slot);
    double old = ref.load(std::memory_order_relaxed);
    while (old < v &&
           !ref.compare_exchange_weak(old, v, std::memory_order_relaxed)) {
    }
}

// Serialized read-modify-write of one shared double: f maps the current
// value to the new value and may be retried. Returns the old/new pair of
// the committed transition.
template <typename F>
inline std::pair<double, double> atomic_transform(double& slot, F&& f) {
    std::atomic_ref<double> ref(slot);
    double old = ref.load(std::memory_order_relaxed);
    double next = f(old);
    while (!ref.compare_exchange_weak(old, next, std::memory_order_relaxed))
        next = f(old);
    return {old, next};
}

}  // namespace shotgun
