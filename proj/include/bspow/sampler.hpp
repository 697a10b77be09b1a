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

#ifndef BSPOW_SAMPLER_HPP
#define BSPOW_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "bspow/complex_matrix.hpp"
#include "bspow/occupation.hpp"

namespace bspow {

/// Full output distribution of an exact Fock boson-sampling run:
/// lexicographically ordered weight-N states with their probabilities.
struct OutputDistribution {
    int m = 0;
    int n = 0;
    std::vector<OccupationVector> states;
    std::vector<double> probs;

    double total() const;
    /// Cumulative sums for inverse-CDF draws, built lazily by sample().
    std::vector<double> cumulative() const;
};

/// Transition amplitude <Y| U |X> = Per(U_{X,Y}) / sqrt(prod_i x_i! y_i!)
/// where U_{X,Y} takes x_i copies of row i and y_i copies of column i.
/// Rows index input modes: for N=1 the output distribution is the squared
/// moduli of one row of U.
cplx output_amplitude(const ComplexMatrix& u, const InputSpec& input, const OccupationVector& y);

/// Exact lossless distribution over all binom(M+N-1, N) outputs. Emits a
/// one-line stderr warning when M < N^2 (outside the anti-bunching
/// parameter recommendation); collision states are retained exactly.
OutputDistribution exact_distribution(const ComplexMatrix& u, const InputSpec& input,
                                      uint64_t cap = kDefaultStateCap);

struct SampleResult {
    std::vector<OccupationVector> samples;
    uint64_t discarded_attempts = 0;
};

/// Inverse-CDF sampling of `count` post-selected samples. With uniform
/// per-photon transmission eta < 1, each attempted shot first survives
/// with probability eta^N; failed attempts are discarded and counted.
SampleResult sample(const OutputDistribution& dist, uint64_t count, uint64_t seed, double eta = 1.0);

SampleResult sample(const ComplexMatrix& u, const InputSpec& input, uint64_t count, uint64_t seed,
                    double eta = 1.0, uint64_t cap = kDefaultStateCap);

}  // namespace bspow

#endif
