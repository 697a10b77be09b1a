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

#include "bspow/hafnian.hpp"

#include <array>

namespace bspow {

namespace {

// Pair the first live index with every partner, recurse on the rest.
// Indices are kept in a fixed array; matched partners are swapped out.
cplx hafnian_rec(const ComplexMatrix& b, std::array<int, kMaxHafnianDim>& idx, int count) {
    if (count == 0) {
        return {1.0, 0.0};
    }
    int first = idx[0];
    cplx sum = 0.0;
    for (int j = 1; j < count; ++j) {
        int partner = idx[j];
        std::swap(idx[1], idx[j]);
        std::array<int, kMaxHafnianDim> rest = idx;
        for (int t = 0; t < count - 2; ++t) {
            rest[t] = idx[t + 2];
        }
        sum += b(first, partner) * hafnian_rec(b, rest, count - 2);
        std::swap(idx[1], idx[j]);
    }
    return sum;
}

}  // namespace

cplx hafnian_exact(const ComplexMatrix& b) {
    if (!b.square()) {
        throw DimensionError("hafnian: matrix must be square");
    }
    int n = b.rows();
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (n > kMaxHafnianDim) {
        throw CapacityError("hafnian: dimension exceeds the matching-enumeration desk-scale cap (12)");
    }
    double scale = std::max(1.0, b.max_abs());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(b(i, j) - b(j, i)) > kHafnianSymmetryTol * scale) {
                throw SymmetryError("hafnian: matrix is not symmetric within 1e-10");
            }
        }
    }
    if (n % 2 != 0) {
        return {0.0, 0.0};
    }
    std::array<int, kMaxHafnianDim> idx{};
    for (int i = 0; i < n; ++i) {
        idx[i] = i;
    }
    return hafnian_rec(b, idx, n);
}

}  // namespace bspow
