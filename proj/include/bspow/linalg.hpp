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

#ifndef BSPOW_LINALG_HPP
#define BSPOW_LINALG_HPP

#include <cstdint>

#include "bspow/complex_matrix.hpp"

namespace bspow {

inline constexpr double kConditionCutoff = 1e12;

struct DetInverse {
    cplx det;
    ComplexMatrix inverse;
};

/// Haar-random M*M unitary, deterministic per seed: QR of a seeded
/// complex-Gaussian matrix with the R-diagonal phases folded back in
/// (Mezzadri's recipe), so the distribution is exactly Haar.
ComplexMatrix haar_unitary(int m, uint64_t seed);

/// LU-based determinant and inverse. Rejects inputs whose 1-norm
/// condition estimate exceeds 1e12.
DetInverse det_and_inverse(const ComplexMatrix& a);

cplx determinant(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Max |(U^dag U - I)_ij|; 0 means exactly unitary.
double unitarity_defect(const ComplexMatrix& u);

}  // namespace bspow

#endif
