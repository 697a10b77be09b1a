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

#include "bspow/occupation.hpp"

#include <algorithm>

namespace bspow {

int weight(const OccupationVector& y) {
    int w = 0;
    for (int c : y) {
        if (c < 0) {
            throw PhotonNumberError("occupation vector has a negative count");
        }
        w += c;
    }
    return w;
}

uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > static_cast<unsigned __int128>(UINT64_MAX)) {
            throw CapacityError("binomial: value exceeds 64 bits");
        }
    }
    return static_cast<uint64_t>(acc);
}

uint64_t state_count(int m, int n) {
    if (m < 1 || n < 0) {
        throw DimensionError("state_count: need M >= 1, N >= 0");
    }
    return binomial(static_cast<uint64_t>(m) + n - 1, static_cast<uint64_t>(n));
}

std::vector<OccupationVector> enumerate_states(int m, int n, uint64_t cap) {
    uint64_t count = state_count(m, n);
    if (count > cap) {
        throw CapacityError("enumerate_states: |Y| exceeds the configured state cap");
    }
    std::vector<OccupationVector> states;
    states.reserve(count);
    OccupationVector y(static_cast<size_t>(m), 0);
    // Lexicographic ascending: place v photons at the current mode, then
    // recurse right; v runs upward.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == m - 1) {
            y[pos] = remaining;
            states.push_back(y);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            y[pos] = v;
            self(self, pos + 1, remaining - v);
        }
        y[pos] = 0;
    };
    rec(rec, 0, n);
    return states;
}

uint64_t rank_state(const OccupationVector& y) {
    int m = static_cast<int>(y.size());
    if (m < 1) {
        throw DimensionError("rank_state: empty vector");
    }
    int remaining = weight(y);
    uint64_t rank = 0;
    for (int i = 0; i < m - 1; ++i) {
        // States sharing the prefix but with a smaller count here.
        for (int v = 0; v < y[i]; ++v) {
            rank += state_count(m - i - 1, remaining - v);
        }
        remaining -= y[i];
    }
    return rank;
}

OccupationVector unrank_state(int m, int n, uint64_t rank) {
    if (rank >= state_count(m, n)) {
        throw DimensionError("unrank_state: rank out of range");
    }
    OccupationVector y(static_cast<size_t>(m), 0);
    int remaining = n;
    for (int i = 0; i < m - 1; ++i) {
        for (int v = 0;; ++v) {
            uint64_t block = state_count(m - i - 1, remaining - v);
            if (rank < block) {
                y[i] = v;
                remaining -= v;
                break;
            }
            rank -= block;
        }
    }
    y[m - 1] = remaining;
    return y;
}

void InputSpec::validate() const {
    if (m < 1 || n < 1 || n > m) {
        throw DimensionError("InputSpec: need 1 <= N <= M");
    }
    if (static_cast<int>(photon_modes.size()) != n) {
        throw DimensionError("InputSpec: photon mode count must equal N");
    }
    for (size_t i = 0; i < photon_modes.size(); ++i) {
        if (photon_modes[i] < 0 || photon_modes[i] >= m) {
            throw DimensionError("InputSpec: photon mode out of range");
        }
        if (i > 0 && photon_modes[i] <= photon_modes[i - 1]) {
            throw DimensionError("InputSpec: photon modes must be distinct ascending");
        }
    }
}

OccupationVector InputSpec::occupation() const {
    validate();
    OccupationVector x(static_cast<size_t>(m), 0);
    for (int mode : photon_modes) {
        x[mode] = 1;
    }
    return x;
}

bool is_permutation(const std::vector<uint32_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    for (uint32_t v : perm) {
        if (v >= perm.size() || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

InputSpec permuted_input(const std::vector<uint32_t>& perm, int n) {
    if (!is_permutation(perm)) {
        throw DimensionError("permuted_input: not a valid permutation");
    }
    int m = static_cast<int>(perm.size());
    if (n < 1 || n > m) {
        throw DimensionError("permuted_input: need 1 <= N <= M");
    }
    InputSpec spec;
    spec.m = m;
    spec.n = n;
    spec.photon_modes.assign(perm.begin(), perm.begin() + n);
    std::sort(spec.photon_modes.begin(), spec.photon_modes.end());
    spec.validate();
    return spec;
}

}  // namespace bspow
