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

#ifndef BSPOW_OCCUPATION_HPP
#define BSPOW_OCCUPATION_HPP

#include <cstdint>
#include <vector>

#include "bspow/errors.hpp"

namespace bspow {

/// Photon counts per mode.
using OccupationVector = std::vector<int>;

/// Default cap on enumerated state-space sizes (desk scale).
inline constexpr uint64_t kDefaultStateCap = 2'000'000;

int weight(const OccupationVector& y);

/// binom(n, k) in exact 64-bit arithmetic; throws CapacityError on overflow.
uint64_t binomial(uint64_t n, uint64_t k);

/// |Y| = binom(M+N-1, N), the number of weight-N occupation vectors.
uint64_t state_count(int m, int n);

/// All weight-N length-M occupation vectors in ascending lexicographic
/// order, e.g. M=3, N=2: (0,0,2),(0,1,1),(0,2,0),(1,0,1),(1,1,0),(2,0,0).
std::vector<OccupationVector> enumerate_states(int m, int n, uint64_t cap = kDefaultStateCap);

/// Index of y in the lexicographic enumeration.
uint64_t rank_state(const OccupationVector& y);

/// Inverse of rank_state.
OccupationVector unrank_state(int m, int n, uint64_t rank);

/// Input specification: N single photons at distinct modes of an M-mode
/// device (0-based, sorted ascending).
struct InputSpec {
    int m = 0;
    int n = 0;
    std::vector<int> photon_modes;

    void validate() const;
    OccupationVector occupation() const;
};

bool is_permutation(const std::vector<uint32_t>& perm);

/// Photon placement from a mode permutation: the N photons go to modes
/// {perm(0), ..., perm(N-1)}, reported sorted.
InputSpec permuted_input(const std::vector<uint32_t>& perm, int n);

}  // namespace bspow

#endif
