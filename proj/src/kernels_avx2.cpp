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

// AVX2+FMA variants of the permanent/Glynn kernels. This translation unit
// is compiled with -mavx2 -mfma and must only be reached through the
// runtime dispatcher. Interleaved (re,im) layout, two complex lanes per
// 256-bit register.

#include "bspow/kernels.hpp"

#if BSPOW_KERNELS_X86

#include <immintrin.h>

#include <bit>

namespace bspow::kernels {

namespace {

// Complex multiply on two packed complex lanes.
inline __m256d cmul(__m256d x, __m256d y) {
    __m256d yre = _mm256_movedup_pd(y);        // (y0.re, y0.re, y1.re, y1.re)
    __m256d yim = _mm256_permute_pd(y, 0xF);   // (y0.im, y0.im, y1.im, y1.im)
    __m256d xsw = _mm256_permute_pd(x, 0x5);   // (x0.im, x0.re, x1.im, x1.re)
    return _mm256_fmaddsub_pd(x, yre, _mm256_mul_pd(xsw, yim));
}

// Product of n packed complex values kept in two independent lanes, merged
// at the end (plus scalar tail when n is odd).
inline cplx cprod(const double* v, int n) {
    if (n == 1) {
        return {v[0], v[1]};
    }
    __m256d acc = _mm256_set_pd(0.0, 1.0, 0.0, 1.0);
    int j = 0;
    for (; j + 2 <= n; j += 2) {
        acc = cmul(acc, _mm256_loadu_pd(v + 2 * j));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    cplx out = cplx{lanes[0], lanes[1]} * cplx{lanes[2], lanes[3]};
    if (j < n) {
        out *= cplx{v[2 * j], v[2 * j + 1]};
    }
    return out;
}

}  // namespace

cplx permanent_avx2(const cplx* a, int n) {
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (n < 4) {
        return permanent_scalar(a, n);
    }
    alignas(32) double colsum[2 * kMaxPermanentDim];
    for (int j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += a[static_cast<size_t>(i) * n + j];
        }
        colsum[2 * j] = s.real();
        colsum[2 * j + 1] = s.imag();
    }
    double delta[kMaxPermanentDim];
    for (int i = 0; i < n; ++i) {
        delta[i] = 1.0;
    }

    cplx total = 0.0;
    double sign = 1.0;
    uint64_t steps = 1ull << (n - 1);
    for (uint64_t k = 0;;) {
        total += sign * cprod(colsum, n);
        if (++k == steps) {
            break;
        }
        int flip = std::countr_zero(k) + 1;
        delta[flip] = -delta[flip];
        const double* row = reinterpret_cast<const double*>(a + static_cast<size_t>(flip) * n);
        __m256d f = _mm256_set1_pd(2.0 * delta[flip]);
        int j = 0;
        for (; j + 2 <= n; j += 2) {
            __m256d s = _mm256_load_pd(colsum + 2 * j);
            s = _mm256_fmadd_pd(f, _mm256_loadu_pd(row + 2 * j), s);
            _mm256_store_pd(colsum + 2 * j, s);
        }
        if (j < n) {
            double fd = 2.0 * delta[flip];
            colsum[2 * j] += fd * row[2 * j];
            colsum[2 * j + 1] += fd * row[2 * j + 1];
        }
        sign = -sign;
    }
    return total * std::ldexp(1.0, 1 - n);
}

cplx glynn_term_avx2(const cplx* a, const int8_t* signs, int n) {
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (n < 4) {
        return glynn_term_scalar(a, signs, n);
    }
    alignas(32) double sx[2 * kMaxPermanentDim];
    double lead = 1.0;
    for (int k = 0; k < n; ++k) {
        double s = signs[k];
        sx[2 * k] = s;
        sx[2 * k + 1] = s;
        lead *= s;
    }
    alignas(32) double dots[2 * kMaxPermanentDim];
    for (int j = 0; j < n; ++j) {
        const double* row = reinterpret_cast<const double*>(a + static_cast<size_t>(j) * n);
        __m256d acc = _mm256_setzero_pd();
        int k = 0;
        for (; k + 2 <= n; k += 2) {
            acc = _mm256_fmadd_pd(_mm256_load_pd(sx + 2 * k), _mm256_loadu_pd(row + 2 * k), acc);
        }
        __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
        alignas(16) double re_im[2];
        _mm_store_pd(re_im, pair);
        if (k < n) {
            re_im[0] += sx[2 * k] * row[2 * k];
            re_im[1] += sx[2 * k] * row[2 * k + 1];
        }
        dots[2 * j] = re_im[0];
        dots[2 * j + 1] = re_im[1];
    }
    return lead * cprod(dots, n);
}

}  // namespace bspow::kernels

#endif  // BSPOW_KERNELS_X86
