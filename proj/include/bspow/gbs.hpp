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

#ifndef BSPOW_GBS_HPP
#define BSPOW_GBS_HPP

#include <cstdint>
#include <vector>

#include "bspow/binning.hpp"
#include "bspow/complex_matrix.hpp"
#include "bspow/occupation.hpp"

namespace bspow {

/// Gaussian boson-sampling setup: squeezed vacuum in the first modes
/// (r_j = 0 means vacuum), mixed by the interferometer U.
struct GbsSetup {
    int m = 0;
    std::vector<double> r;  // length M, real squeezing parameters
    ComplexMatrix u;

    void validate() const;
};

/// Uniform squeezing with total mean photon number exactly 2*N_target
/// across n_squeezed modes: r = asinh(sqrt(2 N_target / n_squeezed)).
double uniform_squeezing(double n_target, int n_squeezed);

/// Output Gaussian state in the (a, a^dag) ordering: 2M x 2M covariance
/// sigma, its Husimi companion sigma_Q = sigma + I/2, and the symmetric
/// kernel B = U diag(tanh r) U^T that drives Hafnian probabilities.
struct GbsState {
    int m = 0;
    ComplexMatrix sigma;
    ComplexMatrix sigma_q;
    ComplexMatrix sigma_q_inverse;
    ComplexMatrix b;
    double det_sigma_q = 1.0;  // real positive for these states
};

GbsState build_gbs_state(const GbsSetup& setup);

/// Pr(Y) = |sigma_Q|^(-1/2) |Haf(B_Y)|^2 / prod_i y_i!, with B_Y formed by
/// deleting mode i when y_i = 0 and repeating its row/column y_i times
/// otherwise. Odd photon totals have probability 0 for squeezed-vacuum
/// input; totals beyond the Hafnian cap (12) raise CapacityError.
double gbs_probability(const GbsState& state, const OccupationVector& y);

/// Characteristic function on the (N+1)-point grid,
///   chi(c) = 1/sqrt(det(sigma_Q (I - Z) + Z)),
/// Z = diag over both blocks of e^{i 2 pi c_k/(N+1)}. Normalized so
/// chi(0) = 1; the square-root branch follows the determinant
/// continuously along the straight-line path t*c from t = 0, with step
/// doubling when the winding is too coarse to track.
cplx gbs_char_function(const GbsState& state, const std::vector<int>& c, int grid_n);

/// Mode-binned distribution by inverse DFT of the bin-collapsed
/// characteristic function over Z_(N+1)^d. Labels cover the full grid;
/// photon counts above N fold in modulo N+1 (aliasing), so results are
/// meaningful when the mass above N is negligible.
BinnedDistribution gbs_mode_binned(const GbsState& state, const ModeBinning& b, int grid_n,
                                   uint64_t grid_cap = kDefaultStateCap);

struct TruncatedGbs {
    std::vector<OccupationVector> states;
    std::vector<double> probs;
    double covered_mass = 0.0;
};

/// Brute-force enumeration of all outcomes with total photons <=
/// max_total (even totals only; odd ones vanish identically).
TruncatedGbs truncated_distribution(const GbsState& state, int max_total);

/// Inverse-CDF sampling from the renormalized truncated distribution.
std::vector<OccupationVector> sample_truncated(const GbsState& state, int max_total, uint64_t count,
                                               uint64_t seed);

}  // namespace bspow

#endif
