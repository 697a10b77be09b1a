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

#include <doctest.h>

#include "bspow/binning.hpp"
#include "bspow/linalg.hpp"
#include "support/oracles.hpp"

using namespace bspow;

namespace {

ComplexMatrix balanced_beamsplitter() {
    ComplexMatrix u(2, 2);
    double s = M_SQRT1_2;
    u(0, 0) = s;
    u(0, 1) = s;
    u(1, 0) = s;
    u(1, 1) = -s;
    return u;
}

InputSpec both_modes() {
    InputSpec in;
    in.m = 2;
    in.n = 2;
    in.photon_modes = {0, 1};
    return in;
}

}  // namespace

TEST_CASE("identity interferometer amplitudes") {
    ComplexMatrix eye = ComplexMatrix::identity(4);
    InputSpec in;
    in.m = 4;
    in.n = 2;
    in.photon_modes = {0, 2};
    CHECK(std::abs(output_amplitude(eye, in, {1, 0, 1, 0}) - cplx(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(output_amplitude(eye, in, {1, 1, 0, 0})) <= 1e-12);
    CHECK_THROWS_AS(output_amplitude(eye, in, {1, 0, 0, 0}), PhotonNumberError);
}

TEST_CASE("two-photon interference on the balanced beamsplitter") {
    ComplexMatrix u = balanced_beamsplitter();
    InputSpec in = both_modes();

    // Brute-force two-photon path sum: photon a -> mode j, photon b -> mode k,
    // amplitude sum over both assignments with bosonic normalization.
    auto path_sum = [&](int j, int k) {
        cplx amp = u(0, j) * u(1, k) + u(0, k) * u(1, j);
        double norm = (j == k) ? std::sqrt(2.0) : 1.0;  // sqrt(y_j!) for y=2
        return amp / norm;
    };
    CHECK(std::abs(output_amplitude(u, in, {1, 1}) - path_sum(0, 1)) <= 1e-12);
    CHECK(std::abs(output_amplitude(u, in, {1, 1})) <= 1e-12);  // HOM dip
    CHECK(std::norm(output_amplitude(u, in, {2, 0})) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(output_amplitude(u, in, {0, 2})) == doctest::Approx(0.5).epsilon(1e-12));

    OutputDistribution d = exact_distribution(u, in);
    REQUIRE(d.states.size() == 3);  // (0,2), (1,1), (2,0)
    CHECK(d.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.probs[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.probs[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("single photon reduces to one row of U") {
    ComplexMatrix u = haar_unitary(2, 10);
    InputSpec in;
    in.m = 2;
    in.n = 1;
    in.photon_modes = {0};
    OutputDistribution d = exact_distribution(u, in);
    CHECK(d.probs[0] == doctest::Approx(std::norm(u(0, 1))).epsilon(1e-12));
    CHECK(d.probs[1] == doctest::Approx(std::norm(u(0, 0))).epsilon(1e-12));

    ComplexMatrix u6 = haar_unitary(6, 11);
    InputSpec in6;
    in6.m = 6;
    in6.n = 1;
    in6.photon_modes = {3};
    OutputDistribution d6 = exact_distribution(u6, in6);
    for (size_t k = 0; k < d6.states.size(); ++k) {
        int mode = -1;
        for (int i = 0; i < 6; ++i) {
            if (d6.states[k][i] == 1) {
                mode = i;
            }
        }
        CHECK(d6.probs[k] == doctest::Approx(std::norm(u6(3, mode))).epsilon(1e-12));
    }
}

TEST_CASE("unitarity implies normalization across seeds") {
    Philox rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 2 + static_cast<int>(rng.next_below(7));                      // M <= 8
        int n = 1 + static_cast<int>(rng.next_below(std::min(m, 3)));         // N <= 3
        ComplexMatrix u = haar_unitary(m, 5000 + trial);
        std::vector<uint32_t> perm(m);
        std::iota(perm.begin(), perm.end(), 0u);
        for (int i = m - 1; i > 0; --i) {
            std::swap(perm[i], perm[rng.next_below(i + 1)]);
        }
        OutputDistribution d = exact_distribution(u, permuted_input(perm, n));
        CHECK(std::abs(d.total() - 1.0) <= 1e-10);
    }
}

TEST_CASE("output relabeling permutes the distribution") {
    ComplexMatrix u = haar_unitary(5, 77);
    InputSpec in;
    in.m = 5;
    in.n = 2;
    in.photon_modes = {1, 4};
    OutputDistribution d = exact_distribution(u, in);

    std::vector<int> sigma = {2, 0, 4, 1, 3};  // output mode i -> sigma[i]
    ComplexMatrix relabeled(5, 5);
    for (int a = 0; a < 5; ++a) {
        for (int j = 0; j < 5; ++j) {
            relabeled(a, sigma[j]) = u(a, j);
        }
    }
    OutputDistribution d2 = exact_distribution(relabeled, in);
    for (size_t k = 0; k < d.states.size(); ++k) {
        OccupationVector mapped(5, 0);
        for (int j = 0; j < 5; ++j) {
            mapped[sigma[j]] = d.states[k][j];
        }
        double got = d2.probs[rank_state(mapped)];
        CHECK(got == doctest::Approx(d.probs[k]).epsilon(1e-12));
    }
}

TEST_CASE("lossless sampling discards nothing") {
    ComplexMatrix u = haar_unitary(4, 8);
    InputSpec in;
    in.m = 4;
    in.n = 2;
    in.photon_modes = {0, 1};
    SampleResult r = sample(u, in, 500, 99, 1.0);
    CHECK(r.samples.size() == 500);
    CHECK(r.discarded_attempts == 0);
    for (const auto& y : r.samples) {
        CHECK(weight(y) == 2);
    }
}

TEST_CASE("lossy post-selection matches the eta^N binomial") {
    ComplexMatrix u = haar_unitary(4, 8);
    InputSpec in;
    in.m = 4;
    in.n = 2;
    in.photon_modes = {0, 1};
    const uint64_t want = 25000;  // ~1e5 attempts at eta^2 = 0.25
    SampleResult r = sample(u, in, want, 31337, 0.5);
    double attempts = static_cast<double>(want + r.discarded_attempts);
    double ratio = static_cast<double>(r.discarded_attempts) / attempts;
    double p_fail = 1.0 - 0.25;
    double sigma = std::sqrt(p_fail * 0.25 / attempts);
    CHECK(std::abs(ratio - p_fail) <= 3.0 * sigma);
    CHECK_THROWS_AS(sample(u, in, 10, 1, 0.0), ConfigError);
    CHECK_THROWS_AS(sample(u, in, 10, 1, 1.5), ConfigError);
}

TEST_CASE("sampler passes a chi-square goodness-of-fit at M=6, N=2") {
    ComplexMatrix u = haar_unitary(6, 52);
    InputSpec in;
    in.m = 6;
    in.n = 2;
    in.photon_modes = {0, 1};
    OutputDistribution d = exact_distribution(u, in);
    const uint64_t draws = 100000;
    SampleResult r = sample(d, draws, 777, 1.0);
    std::vector<uint64_t> counts(d.states.size(), 0);
    for (const auto& y : r.samples) {
        ++counts[rank_state(y)];
    }
    double stat = oracles::chi_square(counts, d.probs, draws);
    CHECK(stat < oracles::kChi2Crit_df20);  // 21 cells, significance 0.001
}
