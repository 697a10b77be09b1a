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

#include "bspow/canonical.hpp"

namespace bspow {

std::vector<uint8_t> canonical_sample(const OccupationVector& y) {
    CanonicalEncoder enc;
    enc.put_u32(static_cast<uint32_t>(y.size()));
    for (int c : y) {
        enc.put_u32(static_cast<uint32_t>(c));
    }
    return enc.bytes();
}

}  // namespace bspow
