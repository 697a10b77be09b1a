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

#ifndef BSPOW_HASH_PERMUTATION_HPP
#define BSPOW_HASH_PERMUTATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bspow/sha256.hpp"

namespace bspow {

/// Deterministic keystream: block i = SHA-256(digest || tag || LE64(i)),
/// consumed as consecutive little-endian u64 words.
class Sha256Stream {
  public:
    Sha256Stream(const Digest& seed, const std::string& domain_tag);
    uint64_t next_u64();
    uint64_t next_below(uint64_t bound);

  private:
    void refill();
    std::vector<uint8_t> prefix_;
    uint64_t counter_ = 0;
    Digest block_{};
    int pos_ = 32;
};

/// Uniform permutation of {0..n-1} from a digest: Fisher-Yates driven by
/// the SHA-256 counter stream, each draw unbiased by rejection. Domain
/// tags ("A" header->input permutation, "G" beacon->mode binning, "F"
/// beacon->state binning) keep the three protocol maps independent.
std::vector<uint32_t> hash_to_permutation(const Digest& digest, uint64_t n, const std::string& domain_tag);

}  // namespace bspow

#endif
