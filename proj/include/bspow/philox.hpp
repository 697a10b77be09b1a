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

#ifndef BSPOW_PHILOX_HPP
#define BSPOW_PHILOX_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace bspow {

/// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
/// "Parallel random numbers: as easy as 1, 2, 3", SC'11).
///
/// This is the project-wide PRNG. Every stochastic operation takes an
/// explicit 64-bit seed; independent streams are addressed by a 64-bit
/// stream id placed in the upper counter words, so any number of
/// generators can be split off one seed without coordination.
///
/// Layout: key = (seed lo32, seed hi32), counter = (block lo32, block
/// hi32, stream lo32, stream hi32). The block index increments once per
/// generated 128-bit block. Stream id 0x5EED5EEDDE11BEA7 is reserved
/// for seed derivation (see `derive`).
class Philox {
  public:
    static constexpr uint64_t kDeriveStream = 0x5EED5EEDDE11BEA7ull;

    explicit Philox(uint64_t seed, uint64_t stream = 0)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)}, stream_(stream) {}

    /// One Philox4x32-10 block. Exposed so the keystream is testable
    /// against the Random123 known-answer vectors.
    static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = static_cast<uint64_t>(0xD2511F53u) * ctr[0];
            uint64_t p1 = static_cast<uint64_t>(0xCD9E8D57u) * ctr[2];
            ctr = {static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<uint32_t>(p1),
                   static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<uint32_t>(p0)};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

    /// Deterministic child seed for labelled sub-streams (per grid point,
    /// per round, per miner, ...). Uses the reserved derivation stream.
    static uint64_t derive(uint64_t seed, uint64_t label) {
        std::array<uint32_t, 4> ctr{static_cast<uint32_t>(label), static_cast<uint32_t>(label >> 32),
                                    static_cast<uint32_t>(kDeriveStream),
                                    static_cast<uint32_t>(kDeriveStream >> 32)};
        std::array<uint32_t, 2> key{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
        auto out = block(ctr, key);
        return static_cast<uint64_t>(out[0]) | (static_cast<uint64_t>(out[1]) << 32);
    }

    uint32_t next_u32() {
        if (pos_ == 4) {
            refill();
        }
        return buf_[pos_++];
    }

    uint64_t next_u64() {
        uint64_t lo = next_u32();
        uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, bound) by rejection.
    uint64_t next_below(uint64_t bound) {
        // 2^64 mod bound; values below it are rejected so residues are uniform.
        uint64_t cut = (-bound) % bound;
        uint64_t x;
        do {
            x = next_u64();
        } while (x < cut);
        return x % bound;
    }

    /// Standard normal via Box-Muller (deterministic, caches the spare).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        if (u1 <= 0.0) {
            u1 = 0x1.0p-53;
        }
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    /// Random sign in {-1, +1}.
    int next_sign() { return (next_u32() & 1u) ? 1 : -1; }

  private:
    void refill() {
        std::array<uint32_t, 4> ctr{static_cast<uint32_t>(block_index_),
                                    static_cast<uint32_t>(block_index_ >> 32),
                                    static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)};
        buf_ = block(ctr, key_);
        ++block_index_;
        pos_ = 0;
    }

    std::array<uint32_t, 2> key_;
    uint64_t stream_ = 0;
    uint64_t block_index_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bspow

#endif
