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

// Independent brute-force oracles for the test suites. Everything here is
// deliberately naive (factorial/exponential enumerations) and shares no
// code path with the library implementations it checks.

#ifndef BSPOW_TESTS_ORACLES_HPP
#define BSPOW_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "bspow/binning.hpp"
#include "bspow/complex_matrix.hpp"
#include "bspow/philox.hpp"
#include "bspow/sampler.hpp"

namespace bspow::oracles {

/// Per(A) as the literal sum over all n! permutations.
inline cplx naive_permanent(const ComplexMatrix& a) {
    int n = a.rows();
    if (n == 0) {
        return {1.0, 0.0};
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cplx sum = 0.0;
    do {
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i) {
            prod *= a(i, perm[i]);
        }
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

/// Haf(B) as the permutation sum / (2^(n/2) (n/2)!), counting each perfect
/// matching once per ordering.
inline cplx permutation_sum_hafnian(const ComplexMatrix& b) {
    int n = b.rows();
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (n % 2 != 0) {
        return {0.0, 0.0};
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cplx sum = 0.0;
    do {
        cplx prod = 1.0;
        for (int i = 0; i < n / 2; ++i) {
            prod *= b(perm[2 * i], perm[2 * i + 1]);
        }
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    double pairs = 1.0;
    for (int i = 1; i <= n / 2; ++i) {
        pairs *= i;
    }
    return sum / (std::ldexp(1.0, n / 2) * pairs);
}

/// det(A) by cofactor expansion along the first row.
inline cplx cofactor_determinant(const ComplexMatrix& a) {
    int n = a.rows();
    if (n == 0) {
        return {1.0, 0.0};
    }
    if (n == 1) {
        return a(0, 0);
    }
    cplx det = 0.0;
    for (int j = 0; j < n; ++j) {
        ComplexMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) {
                    continue;
                }
                minor(r - 1, cc++) = a(r, c);
            }
        }
        cplx term = a(0, j) * cofactor_determinant(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

inline ComplexMatrix random_matrix(int n, uint64_t seed, double scale = 1.0) {
    Philox rng(seed);
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian()) * scale;
        }
    }
    return a;
}

inline ComplexMatrix random_symmetric(int n, uint64_t seed) {
    ComplexMatrix a = random_matrix(n, seed);
    ComplexMatrix s(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            s(i, j) = 0.5 * (a(i, j) + a(j, i));
        }
    }
    return s;
}

/// Brute-force mode-binned distribution: marginalize the full output
/// distribution over the binning.
inline std::vector<double> marginalized_mode_binned(const OutputDistribution& dist,
                                                    const ModeBinning& binning,
                                                    const std::vector<std::vector<int>>& labels) {
    std::vector<double> probs(labels.size(), 0.0);
    for (size_t k = 0; k < dist.states.size(); ++k) {
        auto counts = binned_counts(dist.states[k], binning);
        for (size_t li = 0; li < labels.size(); ++li) {
            if (labels[li] == counts) {
                probs[li] += dist.probs[k];
                break;
            }
        }
    }
    return probs;
}

/// Direct characteristic function sum_n P(n) e^{i s . n} from the full
/// distribution.
inline cplx direct_char_function(const OutputDistribution& dist, const ModeBinning& binning,
                                 const std::vector<int>& c, int n_photons) {
    cplx acc = 0.0;
    double step = 2.0 * M_PI / (n_photons + 1);
    for (size_t k = 0; k < dist.states.size(); ++k) {
        auto counts = binned_counts(dist.states[k], binning);
        double phase = 0.0;
        for (size_t j = 0; j < counts.size(); ++j) {
            phase += step * c[j] * counts[j];
        }
        acc += dist.probs[k] * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
}

/// Closed-form single-mode squeezed-vacuum photon distribution:
/// P(2n) = tanh^(2n) r (2n)! / (cosh r 4^n (n!)^2).
inline double squeezed_single_mode_prob(double r, int photons) {
    if (photons % 2 != 0) {
        return 0.0;
    }
    int n = photons / 2;
    double fact2n = 1.0, factn = 1.0;
    for (int i = 1; i <= 2 * n; ++i) {
        fact2n *= i;
    }
    for (int i = 1; i <= n; ++i) {
        factn *= i;
    }
    return std::pow(std::tanh(r), 2 * n) * fact2n /
           (std::cosh(r) * std::pow(4.0, n) * factn * factn);
}

/// Pearson chi-square statistic for observed counts vs expected probs.
inline double chi_square(const std::vector<uint64_t>& observed, const std::vector<double>& expected_probs,
                         uint64_t total) {
    double stat = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        double e = expected_probs[i] * static_cast<double>(total);
        if (e > 0.0) {
            double d = static_cast<double>(observed[i]) - e;
            stat += d * d / e;
        }
    }
    return stat;
}

// Upper 0.001 quantiles of chi-square (df -> critical value).
inline constexpr double kChi2Crit_df20 = 45.31474661812586;
inline constexpr double kChi2Crit_df23 = 49.7282324664315;

}  // namespace bspow::oracles

#endif
