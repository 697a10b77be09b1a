// Copyright 2026 The bspow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <bit>

#include "bspow/kernels.hpp"

namespace bspow::kernels {

// BBFG: Per(A) = 2^(1-n) * sum over delta in {-1,1}^n with delta_1 = +1 of
// (prod_i delta_i) * prod_j (sum_i delta_i a[i,j]).
// The 2^(n-1) delta vectors are walked in Gray-code order so each step
// updates the n column sums with one fused multiply-add per column. The
// term sign alternates because exactly one delta flips per step.
cplx permanent_scalar(const cplx* a, int n) {
    if (n == 0) {
        return {1.0, 0.0};
    }
    cplx colsum[kMaxPermanentDim];
    for (int j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += a[static_cast<size_t>(i) * n + j];
        }
        colsum[j] = s;
    }
    double delta[kMaxPermanentDim];
    for (int i = 0; i < n; ++i) {
        delta[i] = 1.0;
    }

    cplx total = 0.0;
    double sign = 1.0;
    uint64_t steps = 1ull << (n - 1);
    for (uint64_t k = 0;;) {
        cplx prod = colsum[0];
        for (int j = 1; j < n; ++j) {
            prod *= colsum[j];
        }
        total += sign * prod;
        if (++k == steps) {
            break;
        }
        // Gray-code bit that flips between step k-1 and k; delta_1 stays +1.
        int flip = std::countr_zero(k) + 1;
        delta[flip] = -delta[flip];
        double f = 2.0 * delta[flip];
        const cplx* row = a + static_cast<size_t>(flip) * n;
        for (int j = 0; j < n; ++j) {
            colsum[j] += f * row[j];
        }
        sign = -sign;
    }
    return total * std::ldexp(1.0, 1 - n);
}

cplx glynn_term_scalar(const cplx* a, const int8_t* signs, int n) {
    if (n == 0) {
        return {1.0, 0.0};
    }
    double lead = 1.0;
    for (int i = 0; i < n; ++i) {
        lead *= signs[i];
    }
    cplx prod = 1.0;
    for (int j = 0; j < n; ++j) {
        const cplx* row = a + static_cast<size_t>(j) * n;
        cplx dot = 0.0;
        for (int k = 0; k < n; ++k) {
            dot += static_cast<double>(signs[k]) * row[k];
        }
        prod *= dot;
    }
    return lead * prod;
}

}  // namespace bspow::kernels
