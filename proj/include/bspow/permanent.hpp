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

#ifndef BSPOW_PERMANENT_HPP
#define BSPOW_PERMANENT_HPP

#include <cstdint>
#include <vector>

#include "bspow/complex_matrix.hpp"

namespace bspow {

/// Sign vector with entries in {-1, +1}.
using SignVector = std::vector<int8_t>;

/// Config for the randomized additive permanent estimator. The sample
/// count m = ceil((2/delta^2) ln(2/(1-p))) gives additive error <= delta
/// with probability >= p for matrices of spectral norm <= 1.
struct EstimatorConfig {
    double delta = 0.1;
    double confidence = 0.99;
    uint64_t seed = 0;

    uint64_t sample_count() const;
    void validate() const;
};

struct GurvitsResult {
    cplx estimate;
    uint64_t samples;
};

/// Exact permanent, Gray-code BBFG scheme, O(n 2^n). Per of the empty
/// matrix is 1 by convention.
cplx permanent_exact(const ComplexMatrix& a);

/// One Glynn term x_1..x_n * prod_j(sum_k A_jk x_k). Its mean over all
/// 2^n sign vectors is exactly Per(A).
cplx glynn_estimator(const ComplexMatrix& a, const SignVector& signs);

/// Randomized additive estimate: mean Glynn term over m seeded sign
/// vectors drawn from Philox(cfg.seed).
GurvitsResult permanent_gurvits(const ComplexMatrix& a, const EstimatorConfig& cfg);

}  // namespace bspow

#endif
