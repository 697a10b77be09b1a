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

#include "bspow/binning.hpp"

#include <cmath>

#include "bspow/philox.hpp"

namespace bspow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

uint64_t ipow(uint64_t base, int exp, uint64_t cap) {
    uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / base) {
            throw CapacityError("mode-binned grid exceeds the configured cap");
        }
        v *= base;
    }
    return v;
}

}  // namespace

ModeBinning ModeBinning::from_permutation(const std::vector<uint32_t>& pi, int d) {
    if (!is_permutation(pi)) {
        throw DimensionError("ModeBinning: not a valid permutation");
    }
    int m = static_cast<int>(pi.size());
    if (d < 1 || m % d != 0) {
        throw DimensionError("ModeBinning: d must divide M");
    }
    ModeBinning b;
    b.m = m;
    b.d = d;
    b.bins.resize(d);
    b.bin_of_mode.assign(m, -1);
    int per = m / d;
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < per; ++k) {
            int mode = static_cast<int>(pi[static_cast<size_t>(j) * per + k]);
            b.bins[j].push_back(mode);
            b.bin_of_mode[mode] = j;
        }
    }
    return b;
}

StateBinning StateBinning::from_permutation(const std::vector<uint32_t>& pi, int d) {
    if (!is_permutation(pi)) {
        throw DimensionError("StateBinning: not a valid permutation");
    }
    uint64_t count = pi.size();
    if (d < 1 || count % d != 0) {
        throw DimensionError("StateBinning: d must divide |Y|");
    }
    StateBinning sb;
    sb.states = count;
    sb.d = d;
    sb.inverse_perm.resize(count);
    for (uint64_t k = 0; k < count; ++k) {
        sb.inverse_perm[pi[k]] = static_cast<uint32_t>(k);
    }
    return sb;
}

int StateBinning::bin_of_rank(uint64_t rank) const {
    if (rank >= states) {
        throw DimensionError("StateBinning: rank out of range");
    }
    return static_cast<int>(inverse_perm[rank] / (states / d));
}

void AccuracyParams::validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
    if (!(beta > 0.0) || !(beta <= 1.0)) {
        throw ConfigError("AccuracyParams: beta must be in (0,1]");
    }
    if (!in_unit(eps) || !in_unit(gamma) || !in_unit(confidence)) {
        throw ConfigError("AccuracyParams: eps, gamma, confidence must be in (0,1)");
    }
    if (delta != 0.0 && !in_unit(delta)) {
        throw ConfigError("AccuracyParams: delta must be 0 (auto) or in (0,1)");
    }
}

double AccuracyParams::delta_cap(int n, int d) const {
    return beta / std::pow(static_cast<double>(n) + 1.0, d / 2.0);
}

double AccuracyParams::effective_delta(int n, int d) const {
    validate();
    double cap = delta_cap(n, d);
    if (delta == 0.0) {
        return cap;
    }
    if (delta > cap + 1e-15) {
        throw ConfigError("AccuracyParams: delta exceeds beta/(N+1)^(d/2)");
    }
    return delta;
}

std::vector<int> binned_counts(const OccupationVector& y, const ModeBinning& b) {
    if (static_cast<int>(y.size()) != b.m) {
        throw DimensionError("binned_counts: sample length must be M");
    }
    std::vector<int> n(static_cast<size_t>(b.d), 0);
    for (int mode = 0; mode < b.m; ++mode) {
        n[b.bin_of_mode[mode]] += y[mode];
    }
    return n;
}

cplx char_function(const ComplexMatrix& u, const InputSpec& input, const ModeBinning& b,
                   const std::vector<int>& c, CharFunctionMode mode, const EstimatorConfig& cfg) {
    input.validate();
    if (!u.square() || u.rows() != input.m || b.m != input.m) {
        throw DimensionError("char_function: U, binning and input must share M");
    }
    if (static_cast<int>(c.size()) != b.d) {
        throw DimensionError("char_function: grid point must have d components");
    }
    int n = input.n;
    double step = kTwoPi / (n + 1);

    // Single-particle matrix of U^dag e^{i s.N_bins} U in the row-as-input
    // convention: V = U D(s) U^dag with D the per-mode bin phases.
    std::vector<cplx> phase(static_cast<size_t>(b.m));
    for (int mode = 0; mode < b.m; ++mode) {
        double s = step * c[b.bin_of_mode[mode]];
        phase[mode] = cplx(std::cos(s), std::sin(s));
    }
    ComplexMatrix sub(n, n);
    for (int r = 0; r < n; ++r) {
        for (int q = 0; q < n; ++q) {
            cplx acc = 0.0;
            int row = input.photon_modes[r];
            int col = input.photon_modes[q];
            for (int k = 0; k < b.m; ++k) {
                acc += u(row, k) * phase[k] * std::conj(u(col, k));
            }
            sub(r, q) = acc;
        }
    }
    if (mode == CharFunctionMode::Exact) {
        return permanent_exact(sub);
    }
    return permanent_gurvits(sub, cfg).estimate;
}

namespace {

// Shared inverse DFT: probs over the weight-N simplex labels from chi
// values on the full Z_(N+1)^d grid.
BinnedDistribution inverse_dft(const std::vector<cplx>& chi, int n, int d) {
    uint64_t grid = chi.size();
    int base = n + 1;

    // Labels: binned count vectors with sum N, lexicographic.
    BinnedDistribution out;
    out.kind = BinnedKind::ModeCounts;
    out.photons = n;
    auto labels = enumerate_states(d, n);
    out.labels.reserve(labels.size());
    for (auto& l : labels) {
        out.labels.push_back(l);
    }
    out.probs.resize(labels.size());

    // Roots of unity for e^{-i 2 pi t/(N+1)}.
    std::vector<cplx> root(static_cast<size_t>(base));
    for (int t = 0; t < base; ++t) {
        double a = -kTwoPi * t / base;
        root[t] = cplx(std::cos(a), std::sin(a));
    }

    std::vector<int> c(static_cast<size_t>(d), 0);
    double clamped = 0.0;
    for (size_t li = 0; li < labels.size(); ++li) {
        const auto& lbl = labels[li];
        cplx acc = 0.0;
        std::fill(c.begin(), c.end(), 0);
        for (uint64_t g = 0; g < grid; ++g) {
            int dot = 0;
            for (int k = 0; k < d; ++k) {
                dot += c[k] * lbl[k];
            }
            acc += chi[g] * root[dot % base];
            for (int k = 0; k < d; ++k) {  // mixed-radix increment
                if (++c[k] < base) {
                    break;
                }
                c[k] = 0;
            }
        }
        double p = acc.real() / static_cast<double>(grid);
        if (p < 0.0) {
            clamped -= p;
            p = 0.0;
        }
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

std::vector<int> grid_point(uint64_t g, int base, int d) {
    std::vector<int> c(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        c[k] = static_cast<int>(g % base);
        g /= base;
    }
    return c;
}

}  // namespace

BinnedDistribution exact_mode_binned(const ComplexMatrix& u, const InputSpec& input, const ModeBinning& b,
                                     uint64_t grid_cap) {
    int n = input.n;
    uint64_t grid = ipow(static_cast<uint64_t>(n) + 1, b.d, grid_cap);
    std::vector<cplx> chi(grid);
    EstimatorConfig unused;
    for (uint64_t g = 0; g < grid; ++g) {
        chi[g] = char_function(u, input, b, grid_point(g, n + 1, b.d), CharFunctionMode::Exact, unused);
    }
    return inverse_dft(chi, n, b.d);
}

BinnedDistribution estimated_mode_binned(const ComplexMatrix& u, const InputSpec& input,
                                         const ModeBinning& b, const AccuracyParams& acc, uint64_t seed,
                                         uint64_t grid_cap) {
    int n = input.n;
    uint64_t grid = ipow(static_cast<uint64_t>(n) + 1, b.d, grid_cap);
    EstimatorConfig cfg;
    cfg.delta = acc.effective_delta(n, b.d);
    cfg.confidence = acc.confidence;
    std::vector<cplx> chi(grid);
    for (uint64_t g = 0; g < grid; ++g) {
        cfg.seed = Philox::derive(seed, g);
        std::vector<int> c = grid_point(g, n + 1, b.d);
        bool zero = true;
        for (int v : c) {
            zero = zero && v == 0;
        }
        // chi(0) = 1 identically; no need to estimate the normalization.
        chi[g] = zero ? cplx(1.0, 0.0)
                      : char_function(u, input, b, c, CharFunctionMode::Gurvits, cfg);
    }
    return inverse_dft(chi, n, b.d);
}

BinnedDistribution empirical_mode_binned(const std::vector<OccupationVector>& samples,
                                         const ModeBinning& b) {
    if (samples.empty()) {
        throw ConfigError("empirical_mode_binned: empty sample set");
    }
    int n = weight(samples.front());
    std::vector<uint64_t> m(static_cast<size_t>(b.d), 0);
    for (const auto& y : samples) {
        if (weight(y) != n) {
            throw PhotonNumberError("empirical_mode_binned: mixed sample weights");
        }
        auto counts = binned_counts(y, b);
        for (int j = 0; j < b.d; ++j) {
            m[j] += counts[j];
        }
    }
    BinnedDistribution out;
    out.kind = BinnedKind::ModeFraction;
    out.photons = n;
    out.probs.resize(b.d);
    double denom = static_cast<double>(n) * static_cast<double>(samples.size());
    for (int j = 0; j < b.d; ++j) {
        out.probs[j] = static_cast<double>(m[j]) / denom;
    }
    return out;
}

BinnedDistribution expected_fraction_vector(const BinnedDistribution& counts) {
    if (counts.kind != BinnedKind::ModeCounts) {
        throw DimensionError("expected_fraction_vector: input must be a counts distribution");
    }
    int d = counts.labels.empty() ? 0 : static_cast<int>(counts.labels.front().size());
    BinnedDistribution out;
    out.kind = BinnedKind::ModeFraction;
    out.photons = counts.photons;
    out.probs.assign(static_cast<size_t>(d), 0.0);
    for (size_t i = 0; i < counts.probs.size(); ++i) {
        for (int j = 0; j < d; ++j) {
            out.probs[j] += counts.labels[i][j] * counts.probs[i];
        }
    }
    for (double& f : out.probs) {
        f /= counts.photons;
    }
    return out;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw DimensionError("tv_distance: support sizes differ");
    }
    double s = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        s += std::abs(p[i] - q[i]);
    }
    return 0.5 * s;
}

double tv_distance(const BinnedDistribution& p, const BinnedDistribution& q) {
    if (p.kind != q.kind) {
        throw DimensionError("tv_distance: mismatched distribution kinds");
    }
    return tv_distance(p.probs, q.probs);
}

PbpResult pbp(const std::vector<OccupationVector>& samples, const StateBinning& sb, int n_photons) {
    if (samples.empty()) {
        throw ConfigError("pbp: empty sample set");
    }
    PbpResult r;
    r.histogram.assign(static_cast<size_t>(sb.d), 0);
    for (const auto& y : samples) {
        if (weight(y) != n_photons) {
            throw PhotonNumberError("pbp: sample weight does not match N");
        }
        ++r.histogram[sb.bin_of_rank(rank_state(y))];
    }
    uint64_t best = 0;
    for (int j = 0; j < sb.d; ++j) {
        if (r.histogram[j] > best) {
            best = r.histogram[j];
            r.argmax_bin = j;
        }
    }
    r.mu = static_cast<double>(best) / static_cast<double>(samples.size());
    return r;
}

PbpResult pbp_exact(const OutputDistribution& dist, const StateBinning& sb) {
    if (dist.states.size() != sb.states) {
        throw DimensionError("pbp_exact: state-space sizes differ");
    }
    std::vector<double> mass(static_cast<size_t>(sb.d), 0.0);
    for (size_t k = 0; k < dist.states.size(); ++k) {
        mass[sb.bin_of_rank(k)] += dist.probs[k];
    }
    PbpResult r;
    r.histogram.assign(static_cast<size_t>(sb.d), 0);
    double best = -1.0;
    for (int j = 0; j < sb.d; ++j) {
        if (mass[j] > best) {
            best = mass[j];
            r.argmax_bin = j;
        }
    }
    r.mu = best;
    return r;
}

uint64_t required_samples_mode(int n, int d_mb, double beta, uint64_t c_constant) {
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw ConfigError("required_samples_mode: beta must be in (0,1)");
    }
    uint64_t dim = binomial(static_cast<uint64_t>(n) + d_mb - 1, static_cast<uint64_t>(n));
    double v = std::ceil(static_cast<double>(c_constant) * std::sqrt(static_cast<double>(dim)) /
                         (beta * beta));
    return static_cast<uint64_t>(v);
}

uint64_t required_samples_state(int d_sb, double eps, double gamma, StateSampleMode mode) {
    if (d_sb < 1) {
        throw ConfigError("required_samples_state: d must be >= 1");
    }
    if (!(eps > 0.0) || !(eps < 1.0) || !(gamma > 0.0) || !(gamma < 1.0)) {
        throw ConfigError("required_samples_state: eps, gamma must be in (0,1)");
    }
    if (mode == StateSampleMode::Hoeffding) {
        return static_cast<uint64_t>(std::ceil(12.0 * d_sb / (eps * eps) * std::log(2.0 / gamma)));
    }
    double validity = 2.0 * d_sb * std::pow(eps, 0.8);
    if (validity > 0.1) {
        throw ValidityError("required_samples_state: bootstrap fit requires 2*d*eps^0.8 <= 0.1 (got " +
                            std::to_string(validity) + ")");
    }
    return static_cast<uint64_t>(std::ceil(1.8e5 * std::pow(static_cast<double>(d_sb), 3.5)));
}

}  // namespace bspow
