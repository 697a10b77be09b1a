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

#ifndef BSPOW_KERNELS_HPP
#define BSPOW_KERNELS_HPP

#include <complex>
#include <cstdint>

namespace bspow::kernels {

using cplx = std::complex<double>;

// Hard cap on kernel size: the Gray-code walk is O(n 2^n) and loses all
// meaning past this point on desk hardware.
inline constexpr int kMaxPermanentDim = 30;

// Scalar reference kernels. These are the ground truth the SIMD variants
// are equivalence-tested against.

/// Permanent of a row-major n*n matrix by the Balasubramanian-Bax-
/// Franklin-Glynn formula with Gray-code ordering: O(n 2^(n-1)).
cplx permanent_scalar(const cplx* a, int n);

/// One Glynn term: x_1...x_n * prod_j (sum_k a[j,k] x_k), signs +-1.
cplx glynn_term_scalar(const cplx* a, const int8_t* signs, int n);

#if defined(__x86_64__) || defined(_M_X64)
#define BSPOW_KERNELS_X86 1
cplx permanent_avx2(const cplx* a, int n);
cplx glynn_term_avx2(const cplx* a, const int8_t* signs, int n);
#else
#define BSPOW_KERNELS_X86 0
#endif

struct Backend {
    const char* name;
    cplx (*permanent)(const cplx*, int);
    cplx (*glynn_term)(const cplx*, const int8_t*, int);
};

const Backend& scalar_backend();

/// Backend selected at startup: AVX2+FMA when the CPU has them, scalar
/// otherwise. Environment BSPOW_KERNELS=scalar forces the reference path.
const Backend& active();

/// Test hook: force a specific backend (nullptr restores auto-selection).
void set_active_for_testing(const Backend* backend);

}  // namespace bspow::kernels

#endif
