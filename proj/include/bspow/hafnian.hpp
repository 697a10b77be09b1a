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

#ifndef BSPOW_HAFNIAN_HPP
#define BSPOW_HAFNIAN_HPP

#include "bspow/complex_matrix.hpp"

namespace bspow {

inline constexpr int kMaxHafnianDim = 12;
inline constexpr double kHafnianSymmetryTol = 1e-10;

/// Hafnian of a symmetric n*n matrix: sum over all perfect matchings of
/// the products of matched entries, enumerated by first-index pairing.
/// n = 0 returns 1, odd n returns 0, n <= 12 (desk scale).
cplx hafnian_exact(const ComplexMatrix& b);

}  // namespace bspow

#endif
