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

#include "bspow/permanent.hpp"

#include <cmath>

#include "bspow/kernels.hpp"
#include "bspow/philox.hpp"

namespace bspow {

void EstimatorConfig::validate() const {
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw ConfigError("EstimatorConfig: delta must be in (0,1)");
    }
    if (!(confidence > 0.0) || !(confidence < 1.0)) {
        throw ConfigError("EstimatorConfig: confidence must be in (0,1)");
    }
}

uint64_t EstimatorConfig::sample_count() const {
    validate();
    double m = std::ceil(2.0 / (delta * delta) * std::log(2.0 / (1.0 - confidence)));
    return m < 1.0 ? 1 : static_cast<uint64_t>(m);
}

static void require_square_kernel_size(const ComplexMatrix& a) {
    if (!a.square()) {
        throw DimensionError("permanent: matrix must be square");
    }
    if (a.rows() > kernels::kMaxPermanentDim) {
        throw CapacityError("permanent: dimension exceeds the O(n 2^n) desk-scale cap");
    }
}

cplx permanent_exact(const ComplexMatrix& a) {
    require_square_kernel_size(a);
    return kernels::active().permanent(a.data(), a.rows());
}

cplx glynn_estimator(const ComplexMatrix& a, const SignVector& signs) {
    require_square_kernel_size(a);
    if (static_cast<int>(signs.size()) != a.rows()) {
        throw DimensionError("glynn_estimator: sign vector length must match matrix dimension");
    }
    for (int8_t s : signs) {
        if (s != 1 && s != -1) {
            throw ConfigError("glynn_estimator: signs must be +-1");
        }
    }
    return kernels::active().glynn_term(a.data(), signs.data(), a.rows());
}

GurvitsResult permanent_gurvits(const ComplexMatrix& a, const EstimatorConfig& cfg) {
    require_square_kernel_size(a);
    uint64_t m = cfg.sample_count();
    int n = a.rows();
    Philox rng(cfg.seed);
    auto glynn = kernels::active().glynn_term;

    SignVector signs(static_cast<size_t>(std::max(n, 1)));
    cplx sum = 0.0;
    for (uint64_t i = 0; i < m; ++i) {
        uint64_t bits = rng.next_u64();
        for (int k = 0; k < n; ++k) {
            signs[k] = (bits >> k) & 1 ? 1 : -1;
        }
        sum += glynn(a.data(), signs.data(), n);
    }
    return {sum / static_cast<double>(m), m};
}

}  // namespace bspow
