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

#include "bspow/gbs.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "bspow/hafnian.hpp"
#include "bspow/philox.hpp"

namespace bspow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            m(i, j) = a(i, j);
        }
    }
    return m;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix a(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            a(i, j) = m(i, j);
        }
    }
    return a;
}

}  // namespace

void GbsSetup::validate() const {
    if (m < 1) {
        throw DimensionError("GbsSetup: need M >= 1");
    }
    if (static_cast<int>(r.size()) != m) {
        throw DimensionError("GbsSetup: r must have M entries");
    }
    for (double rj : r) {
        if (!std::isfinite(rj)) {
            throw ConfigError("GbsSetup: squeezing parameters must be finite");
        }
    }
    if (!u.square() || u.rows() != m) {
        throw DimensionError("GbsSetup: U must be M x M");
    }
}

double uniform_squeezing(double n_target, int n_squeezed) {
    if (n_squeezed < 1 || !(n_target >= 0.0)) {
        throw ConfigError("uniform_squeezing: need n_squeezed >= 1 and N_target >= 0");
    }
    return std::asinh(std::sqrt(2.0 * n_target / n_squeezed));
}

GbsState build_gbs_state(const GbsSetup& setup) {
    setup.validate();
    int m = setup.m;
    Eigen::MatrixXcd u = to_eigen(setup.u);
    Eigen::VectorXd cosh2(m), sinh2(m), tanh1(m);
    for (int j = 0; j < m; ++j) {
        cosh2(j) = std::cosh(2.0 * setup.r[j]);
        sinh2(j) = std::sinh(2.0 * setup.r[j]);
        tanh1(j) = std::tanh(setup.r[j]);
    }

    // sigma = 1/2 blockdiag(U, U*) . S S^dag . blockdiag(U^dag, U^T)
    Eigen::MatrixXcd sigma(2 * m, 2 * m);
    sigma.topLeftCorner(m, m) = u * cosh2.asDiagonal() * u.adjoint();
    sigma.topRightCorner(m, m) = u * sinh2.asDiagonal() * u.transpose();
    sigma.bottomLeftCorner(m, m) = u.conjugate() * sinh2.asDiagonal() * u.adjoint();
    sigma.bottomRightCorner(m, m) = u.conjugate() * cosh2.asDiagonal() * u.transpose();
    sigma *= 0.5;

    Eigen::MatrixXcd sigma_q = sigma + 0.5 * Eigen::MatrixXcd::Identity(2 * m, 2 * m);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sigma_q);
    cplx det = lu.determinant();
    if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det))) {
        throw SingularityError("build_gbs_state: sigma_Q is singular");
    }

    GbsState state;
    state.m = m;
    state.sigma = from_eigen(sigma);
    state.sigma_q = from_eigen(sigma_q);
    state.sigma_q_inverse = from_eigen(lu.inverse());
    state.b = from_eigen(u * tanh1.cast<cplx>().asDiagonal() * u.transpose());
    state.det_sigma_q = det.real();
    return state;
}

double gbs_probability(const GbsState& state, const OccupationVector& y) {
    if (static_cast<int>(y.size()) != state.m) {
        throw DimensionError("gbs_probability: outcome length must be M");
    }
    int total = weight(y);
    if (total % 2 != 0) {
        return 0.0;
    }
    if (total > kMaxHafnianDim) {
        throw CapacityError("gbs_probability: photon total exceeds the Hafnian desk-scale cap (12)");
    }
    // B_Y: row/column i repeated y_i times.
    std::vector<int> sel;
    sel.reserve(total);
    double fact = 1.0;
    for (int i = 0; i < state.m; ++i) {
        for (int rep = 0; rep < y[i]; ++rep) {
            sel.push_back(i);
        }
        for (int f = 2; f <= y[i]; ++f) {
            fact *= f;
        }
    }
    ComplexMatrix by(total, total);
    for (int a = 0; a < total; ++a) {
        for (int b = 0; b < total; ++b) {
            by(a, b) = state.b(sel[a], sel[b]);
        }
    }
    double haf2 = std::norm(hafnian_exact(by));
    return haf2 / (std::sqrt(state.det_sigma_q) * fact);
}

cplx gbs_char_function(const GbsState& state, const std::vector<int>& c, int grid_n) {
    if (static_cast<int>(c.size()) != state.m) {
        throw DimensionError("gbs_char_function: c must have M components");
    }
    if (grid_n < 0) {
        throw ConfigError("gbs_char_function: grid N must be >= 0");
    }
    int m = state.m;
    Eigen::MatrixXcd sq = to_eigen(state.sigma_q);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2 * m, 2 * m);

    std::vector<double> theta(static_cast<size_t>(m));
    bool zero = true;
    for (int k = 0; k < m; ++k) {
        theta[k] = kTwoPi * c[k] / (grid_n + 1);
        zero = zero && c[k] == 0;
    }
    if (zero) {
        return {1.0, 0.0};
    }

    // det_at(t) = det(sigma_Q (I - Z_t) + Z_t) with Z_t the per-mode phases
    // e^{i t theta_k} duplicated over the two blocks. Normalized so the
    // path starts at det = 1 (t = 0), and chi = det^{-1/2} with the branch
    // carried continuously along t in [0, 1].
    auto det_at = [&](double t) -> cplx {
        Eigen::VectorXcd z(2 * m);
        for (int k = 0; k < m; ++k) {
            cplx ph(std::cos(t * theta[k]), std::sin(t * theta[k]));
            z(k) = ph;
            z(m + k) = ph;
        }
        Eigen::MatrixXcd w = sq * (id - Eigen::MatrixXcd(z.asDiagonal()));
        w += Eigen::MatrixXcd(z.asDiagonal());
        return Eigen::PartialPivLU<Eigen::MatrixXcd>(w).determinant();
    };

    for (int steps = 16; steps <= 4096; steps *= 2) {
        double arg_acc = 0.0;
        cplx prev(1.0, 0.0);
        bool ok = true;
        cplx last = prev;
        for (int i = 1; i <= steps; ++i) {
            cplx cur = det_at(static_cast<double>(i) / steps);
            if (!(std::abs(cur) > 1e-12)) {
                ok = false;
                break;
            }
            double darg = std::arg(cur / prev);
            if (std::abs(darg) > 1.5707963267948966) {
                ok = false;  // winding too coarse to track; refine
                break;
            }
            arg_acc += darg;
            prev = cur;
            last = cur;
        }
        if (ok) {
            double mag = std::sqrt(std::abs(last));
            cplx root = mag * cplx(std::cos(arg_acc / 2.0), std::sin(arg_acc / 2.0));
            return 1.0 / root;
        }
    }
    throw SingularityError("gbs_char_function: branch tracking failed (determinant path too wild)");
}

BinnedDistribution gbs_mode_binned(const GbsState& state, const ModeBinning& b, int grid_n,
                                   uint64_t grid_cap) {
    if (b.m != state.m) {
        throw DimensionError("gbs_mode_binned: binning and state must share M");
    }
    int base = grid_n + 1;
    uint64_t grid = 1;
    for (int k = 0; k < b.d; ++k) {
        if (grid > grid_cap / static_cast<uint64_t>(base)) {
            throw CapacityError("gbs_mode_binned: grid exceeds the configured cap");
        }
        grid *= base;
    }

    // chi-tilde: all grid coordinates within a bin set equal.
    std::vector<cplx> chi(grid);
    std::vector<int> ctilde(static_cast<size_t>(b.d), 0);
    std::vector<int> c(static_cast<size_t>(state.m), 0);
    for (uint64_t g = 0; g < grid; ++g) {
        uint64_t rest = g;
        for (int k = 0; k < b.d; ++k) {
            ctilde[k] = static_cast<int>(rest % base);
            rest /= base;
        }
        for (int mode = 0; mode < state.m; ++mode) {
            c[mode] = ctilde[b.bin_of_mode[mode]];
        }
        chi[g] = gbs_char_function(state, c, grid_n);
    }

    // Inverse DFT over the full label grid; counts alias modulo N+1.
    BinnedDistribution out;
    out.kind = BinnedKind::ModeCounts;
    out.photons = grid_n;
    out.labels.reserve(grid);
    out.probs.resize(grid);
    std::vector<cplx> root(static_cast<size_t>(base));
    for (int t = 0; t < base; ++t) {
        double a = -kTwoPi * t / base;
        root[t] = cplx(std::cos(a), std::sin(a));
    }
    std::vector<int> label(static_cast<size_t>(b.d), 0);
    double clamped = 0.0;
    for (uint64_t li = 0; li < grid; ++li) {
        uint64_t rest = li;
        for (int k = 0; k < b.d; ++k) {
            label[k] = static_cast<int>(rest % base);
            rest /= base;
        }
        cplx acc = 0.0;
        for (uint64_t g = 0; g < grid; ++g) {
            uint64_t r2 = g;
            int dot = 0;
            for (int k = 0; k < b.d; ++k) {
                dot += static_cast<int>(r2 % base) * label[k];
                r2 /= base;
            }
            acc += chi[g] * root[dot % base];
        }
        double p = acc.real() / static_cast<double>(grid);
        if (p < 0.0) {
            clamped -= p;
            p = 0.0;
        }
        out.labels.push_back(label);
        out.probs[li] = p;
    }
    out.clamped_mass = clamped;
    if (clamped > 0.0) {
        double total = 0.0;
        for (double p : out.probs) {
            total += p;
        }
        if (total > 0.0) {
            for (double& p : out.probs) {
                p /= total;
            }
        }
    }
    return out;
}

TruncatedGbs truncated_distribution(const GbsState& state, int max_total) {
    if (max_total < 0 || max_total > kMaxHafnianDim) {
        throw CapacityError("truncated_distribution: max_total must be in [0, 12]");
    }
    TruncatedGbs out;
    for (int total = 0; total <= max_total; total += 2) {
        for (auto& y : enumerate_states(state.m, total)) {
            double p = gbs_probability(state, y);
            out.states.push_back(std::move(y));
            out.probs.push_back(p);
            out.covered_mass += p;
        }
    }
    return out;
}

std::vector<OccupationVector> sample_truncated(const GbsState& state, int max_total, uint64_t count,
                                               uint64_t seed) {
    TruncatedGbs trunc = truncated_distribution(state, max_total);
    if (!(trunc.covered_mass > 0.0)) {
        throw ConfigError("sample_truncated: truncated distribution has no mass");
    }
    std::vector<double> cum(trunc.probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < trunc.probs.size(); ++i) {
        acc += trunc.probs[i];
        cum[i] = acc;
    }
    Philox rng(seed);
    std::vector<OccupationVector> samples;
    samples.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        double r = rng.next_double() * acc;
        auto it = std::upper_bound(cum.begin(), cum.end(), r);
        size_t idx = std::min(static_cast<size_t>(it - cum.begin()), cum.size() - 1);
        samples.push_back(trunc.states[idx]);
    }
    return samples;
}

}  // namespace bspow
