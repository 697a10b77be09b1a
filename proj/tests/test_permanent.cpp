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

#include <doctest.h>

#include "bspow/linalg.hpp"
#include "bspow/philox.hpp"
#include "support/oracles.hpp"

using namespace bspow;

TEST_CASE("permanent identity and all-ones") {
    CHECK(permanent_exact(ComplexMatrix::identity(2)) == cplx(1.0, 0.0));
    double factorial = 1.0;
    for (int n = 1; n <= 6; ++n) {
        factorial *= n;
        ComplexMatrix ones(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                ones(i, j) = 1.0;
            }
        }
        CHECK(std::abs(permanent_exact(ones) - cplx(factorial, 0.0)) <= 1e-9 * factorial);
    }
}

TEST_CASE("permanent of empty matrix is 1; non-square rejected") {
    CHECK(permanent_exact(ComplexMatrix(0, 0)) == cplx(1.0, 0.0));
    CHECK_THROWS_AS(permanent_exact(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("gray-code permanent equals the permutation-sum oracle") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        int n = 1 + static_cast<int>(seed % 6);
        ComplexMatrix a = oracles::random_matrix(n, 42 + seed);
        cplx expect = oracles::naive_permanent(a);
        cplx got = permanent_exact(a);
        CHECK(std::abs(got - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("permanent invariant under row/column permutation") {
    Philox rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(4));  // n <= 5
        ComplexMatrix a = oracles::random_matrix(n, 9000 + trial);
        std::vector<int> rp(n), cp(n);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            std::swap(rp[i], rp[rng.next_below(i + 1)]);
            std::swap(cp[i], cp[rng.next_below(i + 1)]);
        }
        ComplexMatrix b(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                b(i, j) = a(rp[i], cp[j]);
            }
        }
        cplx pa = permanent_exact(a);
        cplx pb = permanent_exact(b);
        CHECK(std::abs(pa - pb) <= 1e-10 * std::max(1.0, std::abs(pa)));
    }
}

TEST_CASE("glynn estimator basics") {
    ComplexMatrix eye = ComplexMatrix::identity(2);
    CHECK(glynn_estimator(eye, {1, 1}) == cplx(1.0, 0.0));
    CHECK(glynn_estimator(eye, {1, -1}) == cplx(1.0, 0.0));
    CHECK_THROWS_AS(glynn_estimator(eye, {1}), DimensionError);
    CHECK_THROWS_AS(glynn_estimator(eye, {1, 0}), ConfigError);
}

TEST_CASE("glynn mean over all sign vectors equals the permanent") {
    for (int n = 1; n <= 4; ++n) {
        ComplexMatrix a = oracles::random_matrix(n, 777 + n);
        cplx mean = 0.0;
        uint64_t total = 1ull << n;
        for (uint64_t bits = 0; bits < total; ++bits) {
            SignVector signs(n);
            for (int k = 0; k < n; ++k) {
                signs[k] = (bits >> k) & 1 ? 1 : -1;
            }
            mean += glynn_estimator(a, signs);
        }
        mean /= static_cast<double>(total);
        cplx exact = permanent_exact(a);
        CHECK(std::abs(mean - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("glynn term bounded by the spectral norm power for unitaries") {
    ComplexMatrix u = haar_unitary(5, 321);
    CHECK(spectral_norm(u) == doctest::Approx(1.0).epsilon(1e-10));
    Philox rng(88);
    for (int trial = 0; trial < 200; ++trial) {
        SignVector signs(5);
        for (auto& s : signs) {
            s = rng.next_sign() > 0 ? 1 : -1;
        }
        CHECK(std::abs(glynn_estimator(u, signs)) <= 1.0 + 1e-9);
    }
}

TEST_CASE("gurvits sample-count formula and config validation") {
    EstimatorConfig cfg;
    cfg.delta = 0.1;
    cfg.confidence = 0.99;
    CHECK(cfg.sample_count() == 1060);  // ceil(200 ln 200)
    cfg.delta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.delta = 0.1;
    cfg.confidence = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("gurvits on a 1x1 matrix is exact") {
    ComplexMatrix a(1, 1);
    a(0, 0) = 0.5;
    EstimatorConfig cfg{0.2, 0.9, 7};
    GurvitsResult r = permanent_gurvits(a, cfg);
    CHECK(r.estimate == cplx(0.5, 0.0));  // every Glynn term equals 0.5
    CHECK(r.samples == cfg.sample_count());
}

TEST_CASE("gurvits concentrates on the identity permanent") {
    // I3 has permanent 1; with delta=0.05, p=0.99 the additive error stays
    // within delta in at least 99 of these 100 frozen trials.
    ComplexMatrix eye = ComplexMatrix::identity(3);
    int hits = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        EstimatorConfig cfg{0.05, 0.99, 120000 + seed};
        GurvitsResult r = permanent_gurvits(eye, cfg);
        if (std::abs(r.estimate - cplx(1.0, 0.0)) <= 0.05) {
            ++hits;
        }
    }
    CHECK(hits >= 99);
}
