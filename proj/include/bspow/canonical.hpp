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

#ifndef BSPOW_CANONICAL_HPP
#define BSPOW_CANONICAL_HPP

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "bspow/occupation.hpp"
#include "bspow/sha256.hpp"

namespace bspow {

/// Canonical byte encoding used for every hashed structure. Fields are
/// appended in declared order; integers are little-endian, doubles are
/// their IEEE-754 bit patterns little-endian, and variable-length fields
/// carry a u32 element-count prefix.
class CanonicalEncoder {
  public:
    void put_u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
        }
    }

    void put_u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
        }
    }

    void put_f64(double v) {
        uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        put_u64(bits);
    }

    void put_bytes(std::span<const uint8_t> bytes) {
        buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    }

    void put_digest(const Digest& d) { put_bytes(std::span<const uint8_t>(d.data(), d.size())); }

    void put_string(const std::string& s) {
        put_u32(static_cast<uint32_t>(s.size()));
        buf_.insert(buf_.end(), s.begin(), s.end());
    }

    void put_u32_vector(std::span<const uint32_t> v) {
        put_u32(static_cast<uint32_t>(v.size()));
        for (uint32_t x : v) {
            put_u32(x);
        }
    }

    void put_f64_vector(std::span<const double> v) {
        put_u32(static_cast<uint32_t>(v.size()));
        for (double x : v) {
            put_f64(x);
        }
    }

    const std::vector<uint8_t>& bytes() const { return buf_; }
    Digest digest() const { return sha256(buf_); }

  private:
    std::vector<uint8_t> buf_;
};

/// Canonical sample bytes: u32 mode count, then each photon count as u32.
std::vector<uint8_t> canonical_sample(const OccupationVector& y);

}  // namespace bspow

#endif
