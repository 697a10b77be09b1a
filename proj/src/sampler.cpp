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

#include "bspow/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "bspow/permanent.hpp"
#include "bspow/philox.hpp"

namespace bspow {

double OutputDistribution::total() const {
    double t = 0.0;
    for (double p : probs) {
        t += p;
    }
    return t;
}

std::vector<double> OutputDistribution::cumulative() const {
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cum[i] = acc;
    }
    return cum;
}

cplx output_amplitude(const ComplexMatrix& u, const InputSpec& input, const OccupationVector& y) {
    input.validate();
    if (!u.square() || u.rows() != input.m) {
        throw DimensionError("output_amplitude: U must be M x M");
    }
    if (static_cast<int>(y.size()) != input.m) {
        throw DimensionError("output_amplitude: output vector length must be M");
    }
    if (weight(y) != input.n) {
        throw PhotonNumberError("output_amplitude: output weight must equal N");
    }
    int n = input.n;
    // U_{X,Y}: rows at the input photon modes, column i repeated y_i times.
    ComplexMatrix sub(n, n);
    double norm = 1.0;
    int col = 0;
    for (int mode = 0; mode < input.m; ++mode) {
        for (int rep = 0; rep < y[mode]; ++rep) {
            for (int r = 0; r < n; ++r) {
                sub(r, col) = u(input.photon_modes[r], mode);
            }
            ++col;
        }
        for (int f = 2; f <= y[mode]; ++f) {
            norm *= f;
        }
    }
    return permanent_exact(sub) / std::sqrt(norm);
}

OutputDistribution exact_distribution(const ComplexMatrix& u, const InputSpec& input, uint64_t cap) {
    input.validate();
    if (input.m < static_cast<int>(static_cast<int64_t>(input.n) * input.n)) {
        std::cerr << "bspow: warning: M < N^2 (M=" << input.m << ", N=" << input.n
                  << "); outside the anti-bunching regime recommendation\n";
    }
    OutputDistribution dist;
    dist.m = input.m;
    dist.n = input.n;
    dist.states = enumerate_states(input.m, input.n, cap);
    dist.probs.resize(dist.states.size());
    for (size_t k = 0; k < dist.states.size(); ++k) {
        dist.probs[k] = std::norm(output_amplitude(u, input, dist.states[k]));
    }
    return dist;
}

SampleResult sample(const OutputDistribution& dist, uint64_t count, uint64_t seed, double eta) {
    if (!(eta > 0.0) || eta > 1.0) {
        throw ConfigError("sample: eta must be in (0,1]");
    }
    std::vector<double> cum = dist.cumulative();
    if (cum.empty() || cum.back() <= 0.0) {
        throw ConfigError("sample: empty or zero distribution");
    }
    double total = cum.back();
    double p_success = std::pow(eta, dist.n);
    Philox rng(seed);

    SampleResult out;
    out.samples.reserve(count);
    while (out.samples.size() < count) {
        if (eta < 1.0 && rng.next_double() >= p_success) {
            ++out.discarded_attempts;
            continue;
        }
        double r = rng.next_double() * total;
        auto it = std::upper_bound(cum.begin(), cum.end(), r);
        size_t idx = std::min(static_cast<size_t>(it - cum.begin()), cum.size() - 1);
        out.samples.push_back(dist.states[idx]);
    }
    return out;
}

SampleResult sample(const ComplexMatrix& u, const InputSpec& input, uint64_t count, uint64_t seed,
                    double eta, uint64_t cap) {
    return sample(exact_distribution(u, input, cap), count, seed, eta);
}

}  // namespace bspow
