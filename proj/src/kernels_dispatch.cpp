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

#include <cstdlib>
#include <cstring>

#include "bspow/kernels.hpp"

namespace bspow::kernels {

namespace {

const Backend kScalar{"scalar", &permanent_scalar, &glynn_term_scalar};

#if BSPOW_KERNELS_X86
const Backend kAvx2{"avx2", &permanent_avx2, &glynn_term_avx2};
#endif

const Backend* detect() {
    const char* env = std::getenv("BSPOW_KERNELS");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
        return &kScalar;
    }
#if BSPOW_KERNELS_X86
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return &kAvx2;
    }
#endif
    return &kScalar;
}

const Backend* forced = nullptr;

}  // namespace

const Backend& scalar_backend() { return kScalar; }

const Backend& active() {
    if (forced != nullptr) {
        return *forced;
    }
    static const Backend* selected = detect();
    return *selected;
}

void set_active_for_testing(const Backend* backend) { forced = backend; }

}  // namespace bspow::kernels
