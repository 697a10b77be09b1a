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

#include "bspow/hash_permutation.hpp"

#include <doctest.h>

#include <map>

#include "bspow/canonical.hpp"
#include "bspow/occupation.hpp"
#include "support/oracles.hpp"

using namespace bspow;

TEST_CASE("n = 1 yields the identity") {
    Digest d = sha256(std::string{"seed"});
    CHECK(hash_to_permutation(d, 1, "A") == std::vector<uint32_t>{0});
}

TEST_CASE("determinism and domain separation") {
    Digest d = sha256(std::string{"digest"});
    auto a1 = hash_to_permutation(d, 16, "A");
    auto a2 = hash_to_permutation(d, 16, "A");
    CHECK(a1 == a2);
    auto g = hash_to_permutation(d, 16, "G");
    auto f = hash_to_permutation(d, 16, "F");
    CHECK(a1 != g);
    CHECK(a1 != f);
    CHECK(g != f);
}

TEST_CASE("outputs are valid permutations") {
    for (uint64_t s = 0; s < 30; ++s) {
        CanonicalEncoder enc;
        enc.put_u64(s);
        Digest d = enc.digest();
        auto p = hash_to_permutation(d, 1 + s % 40, "A");
        CHECK(is_permutation(p));
    }
}

TEST_CASE("empirical uniformity over S_4") {
    const int draws = 100000;
    std::map<std::vector<uint32_t>, uint64_t> counts;
    for (int i = 0; i < draws; ++i) {
        CanonicalEncoder enc;
        enc.put_u64(static_cast<uint64_t>(i));
        counts[hash_to_permutation(enc.digest(), 4, "G")]++;
    }
    REQUIRE(counts.size() == 24);
    double expect = draws / 24.0;
    double sigma = std::sqrt(expect * (1.0 - 1.0 / 24.0));
    std::vector<uint64_t> observed;
    for (const auto& [perm, c] : counts) {
        CHECK(std::abs(static_cast<double>(c) - expect) <= 3.0 * sigma);
        observed.push_back(c);
    }
    double stat = oracles::chi_square(observed, std::vector<double>(24, 1.0 / 24), draws);
    CHECK(stat < oracles::kChi2Crit_df23);
}
