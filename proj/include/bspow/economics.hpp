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

#ifndef BSPOW_ECONOMICS_HPP
#define BSPOW_ECONOMICS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bspow/errors.hpp"

namespace bspow {

enum class RewardMode { Split, Block };

/// Incentive parameters. R and P are per-sample base reward/penalty, k
/// the per-sample cost of an honest quantum sample, k_classical the same
/// for a classical simulator. p_honest/p_cheat are the pass
/// probabilities of the validation-plus-payoff test.
struct EconomicsConfig {
    double reward_r = 10.0;
    double penalty_p = 5.0;
    double k = 1.0;
    double k_classical = 100.0;
    double p_honest = 0.9;
    double p_cheat = 0.1;
    RewardMode reward_mode = RewardMode::Split;
    double risk_aversion_a = 0.0;  // input only; no estimate exists
    int expected_winners = 1;      // block-mode lottery size for the variance term
    double k_fixed = 0.0;
    double k_variable = 0.0;
    double tau = 0.0;  // expected samples before obsolescence

    /// Structural checks; assumption bands p_honest in (0.75,1),
    /// p_cheat in (0,0.25) enforced when `check_bands`.
    void validate(bool check_bands) const;

    /// Prospective-player cost k_variable + k_fixed/tau.
    double prospective_k() const;
};

/// Photonics cost model inputs. eta_f = eta_g*eta_c*eta_d when the
/// components are given.
struct HardwareProfile {
    double r0 = 1e8;          // single-photon source rate, Hz
    double eta_f = 0.90;      // joint preparation+detection probability
    double eta_g = 0.0;       // optional components of eta_f
    double eta_c = 0.0;
    double eta_d = 0.0;
    double eta_t = 0.9999;    // per-beamsplitter transmission
    double a_tilde = 6.309573444801942e-10;  // 10^-9.2 s, permanent step time
    double power_q = 1500.0;  // W, detector cooling dominates
    double power_c = 100.0;   // W, single core

    void validate() const;
};

/// R_q = (eta_f eta_t^M)^N R_0 / (N e); e approximates the collision-free
/// post-selection factor.
double quantum_rate(const HardwareProfile& hw, int n, int m);

/// R_c = 1/(a_tilde * 2 * N * 2^N): two exact Gray-code permanents per
/// classical sample.
double classical_rate(const HardwareProfile& hw, int n);

double energy_per_sample(double power_watts, double rate_hz);

/// R_q / R_c.
double speedup(const HardwareProfile& hw, int n, int m);

struct MiningTimeResult {
    uint64_t n_mb_tot = 0;
    uint64_t n_sb_tot = 0;
    double r_q = 0.0;
    double seconds = 0.0;
    bool state_used_bootstrap = false;
};

/// T_mine = max(N_mb_tot, N_sb_tot) / R_q. The state-binned count uses
/// the bootstrap fit when its validity region allows, Hoeffding
/// otherwise.
MiningTimeResult mining_time(int n, int m, int d_mb, int d_sb, double beta, double eps, double gamma,
                             const HardwareProfile& hw);

struct Utilities {
    double honest = 0.0;
    double cheat = 0.0;
    double classical = 0.0;
    double nothing = 0.0;
};

/// Per-round expected utilities for n submitted samples:
///   u_honest    = n (p_h R - k - (1-p_h) P)
///   u_cheat     = n (p_c R - (1-p_c) P)      (cheating samples cost 0)
///   u_classical = n (p_h R - k_classical - (1-p_h) P)
///   u_nothing   = 0
/// Block reward mode subtracts A*sigma^2 with sigma^2 the exact payout
/// variance of the uniform-winner lottery over `expected_winners` equal
/// contributors (pot w*n*R, win probability p/w).
Utilities utilities(const EconomicsConfig& econ, double n);

struct EconBounds {
    std::pair<double, double> r_range;  // (2k, k_classical)
    std::pair<double, double> p_range;  // (R/3, R)
    bool feasible = false;              // 2k < k_classical
};

EconBounds bounds(const EconomicsConfig& econ);

struct NashVerdict {
    bool ok = false;             // configured_ok && robust_ok
    bool configured_ok = false;  // at the configured (p_honest, p_cheat)
    bool robust_ok = false;      // worst case over the assumption bands
    std::vector<std::string> failures;
};

/// Checks u_honest > 0 > u_cheat and u_classical < 0 both at the
/// configured probabilities and in the worst case over the assumption
/// bands, plus the two-sided penalty inequality
/// p_c R/(1-p_c) < P < (p_h R - k)/(1-p_h).
NashVerdict nash_check(const EconomicsConfig& econ);

/// Nearest-rank m-th lower percentile of the player cost factors;
/// m = 0 picks the minimum (the most efficient player).
double heterogeneous_k(std::vector<double> costs, double percentile_m);

}  // namespace bspow

#endif
