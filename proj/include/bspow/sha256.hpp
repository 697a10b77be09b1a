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

#ifndef BSPOW_SHA256_HPP
#define BSPOW_SHA256_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bspow {

using Digest = std::array<uint8_t, 32>;

/// SHA-256 of a byte span (OpenSSL libcrypto underneath).
Digest sha256(std::span<const uint8_t> data);
Digest sha256(const std::string& data);

std::string to_hex(std::span<const uint8_t> bytes);
std::vector<uint8_t> from_hex(const std::string& hex);
Digest digest_from_hex(const std::string& hex);

inline bool is_zero(const Digest& d) {
    for (uint8_t b : d) {
        if (b != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace bspow

#endif
