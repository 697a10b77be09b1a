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

#include <numeric>

#include "bspow/canonical.hpp"
#include "bspow/errors.hpp"

namespace bspow {

Sha256Stream::Sha256Stream(const Digest& seed, const std::string& domain_tag) {
    prefix_.assign(seed.begin(), seed.end());
    prefix_.insert(prefix_.end(), domain_tag.begin(), domain_tag.end());
}

void Sha256Stream::refill() {
    CanonicalEncoder enc;
    enc.put_bytes(prefix_);
    enc.put_u64(counter_++);
    block_ = enc.digest();
    pos_ = 0;
}

uint64_t Sha256Stream::next_u64() {
    if (pos_ + 8 > 32) {
        refill();
    }
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<uint64_t>(block_[pos_ + i]) << (8 * i);
    }
    pos_ += 8;
    return v;
}

uint64_t Sha256Stream::next_below(uint64_t bound) {
    uint64_t cut = (-bound) % bound;  // 2^64 mod bound
    uint64_t x;
    do {
        x = next_u64();
    } while (x < cut);
    return x % bound;
}

std::vector<uint32_t> hash_to_permutation(const Digest& digest, uint64_t n, const std::string& domain_tag) {
    if (n < 1) {
        throw DimensionError("hash_to_permutation: n must be >= 1");
    }
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    Sha256Stream stream(digest, domain_tag);
    for (uint64_t i = n - 1; i > 0; --i) {
        uint64_t j = stream.next_below(i + 1);
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

}  // namespace bspow
