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

#include "bspow/economics.hpp"

#include <algorithm>
#include <cmath>

#include "bspow/binning.hpp"

namespace bspow {

void EconomicsConfig::validate(bool check_bands) const {
    if (reward_r < 0.0 || penalty_p < 0.0 || k < 0.0 || k_classical < 0.0) {
        throw ConfigError("EconomicsConfig: R, P, k, k_classical must be >= 0");
    }
    if (!(p_honest > 0.0) || !(p_honest < 1.0) || !(p_cheat > 0.0) || !(p_cheat < 1.0)) {
        throw ConfigError("EconomicsConfig: probabilities must be in (0,1)");
    }
    if (expected_winners < 1) {
        throw ConfigError("EconomicsConfig: expected_winners must be >= 1");
    }
    if (check_bands) {
        if (!(p_honest > 0.75)) {
            throw ConfigError("EconomicsConfig: assumption band requires p_honest in (0.75, 1)");
        }
        if (!(p_cheat < 0.25)) {
            throw ConfigError("EconomicsConfig: assumption band requires p_cheat in (0, 0.25)");
        }
    }
}

double EconomicsConfig::prospective_k() const {
    if (tau <= 0.0) {
        throw ConfigError("EconomicsConfig: prospective k needs tau > 0");
    }
    return k_variable + k_fixed / tau;
}

void HardwareProfile::validate() const {
    auto unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!(r0 > 0.0) || !unit(eta_f) || !unit(eta_t)) {
        throw ConfigError("HardwareProfile: need R0 > 0 and efficiencies in (0,1]");
    }
    if (eta_g != 0.0 || eta_c != 0.0 || eta_d != 0.0) {
        if (!unit(eta_g) || !unit(eta_c) || !unit(eta_d)) {
            throw ConfigError("HardwareProfile: component efficiencies must be in (0,1]");
        }
        if (std::abs(eta_f - eta_g * eta_c * eta_d) > 1e-9) {
            throw ConfigError("HardwareProfile: eta_f must equal eta_g*eta_c*eta_d");
        }
    }
    if (!(a_tilde > 0.0) || !(power_q > 0.0) || !(power_c > 0.0)) {
        throw ConfigError("HardwareProfile: a_tilde and powers must be > 0");
    }
}

double quantum_rate(const HardwareProfile& hw, int n, int m) {
    hw.validate();
    if (n < 1 || m < 1) {
        throw ConfigError("quantum_rate: need N, M >= 1");
    }
    double per_photon = hw.eta_f * std::pow(hw.eta_t, m);
    return std::pow(per_photon, n) * hw.r0 / (n * M_E);
}

double classical_rate(const HardwareProfile& hw, int n) {
    if (!(hw.a_tilde > 0.0)) {
        throw ConfigError("classical_rate: a_tilde must be > 0");
    }
    if (n < 1) {
        throw ConfigError("classical_rate: need N >= 1");
    }
    return 1.0 / (hw.a_tilde * 2.0 * n * std::ldexp(1.0, n));
}

double energy_per_sample(double power_watts, double rate_hz) {
    if (!(rate_hz > 0.0)) {
        throw ConfigError("energy_per_sample: rate must be > 0");
    }
    return power_watts / rate_hz;
}

double speedup(const HardwareProfile& hw, int n, int m) {
    return quantum_rate(hw, n, m) / classical_rate(hw, n);
}

MiningTimeResult mining_time(int n, int m, int d_mb, int d_sb, double beta, double eps, double gamma,
                             const HardwareProfile& hw) {
    MiningTimeResult r;
    r.n_mb_tot = required_samples_mode(n, d_mb, beta);
    try {
        r.n_sb_tot = required_samples_state(d_sb, eps, gamma, StateSampleMode::Bootstrap);
        r.state_used_bootstrap = true;
    } catch (const ValidityError&) {
        r.n_sb_tot = required_samples_state(d_sb, eps, gamma, StateSampleMode::Hoeffding);
        r.state_used_bootstrap = false;
    }
    r.r_q = quantum_rate(hw, n, m);
    r.seconds = static_cast<double>(std::max(r.n_mb_tot, r.n_sb_tot)) / r.r_q;
    return r;
}

namespace {

Utilities utilities_at(const EconomicsConfig& econ, double n, double p_h, double p_c) {
    Utilities u;
    u.honest = n * (p_h * econ.reward_r - econ.k - (1.0 - p_h) * econ.penalty_p);
    u.cheat = n * (p_c * econ.reward_r - (1.0 - p_c) * econ.penalty_p);
    u.classical = n * (p_h * econ.reward_r - econ.k_classical - (1.0 - p_h) * econ.penalty_p);
    u.nothing = 0.0;
    if (econ.reward_mode == RewardMode::Block && n > 0.0) {
        // Uniform-winner lottery over w equal contributors: pot w*n*R, win
        // probability p/w, so Var = pot^2 (p/w)(1 - p/w).
        double w = econ.expected_winners;
        double pot = w * n * econ.reward_r;
        auto risk = [&](double p) { return econ.risk_aversion_a * pot * pot * (p / w) * (1.0 - p / w); };
        u.honest -= risk(p_h);
        u.cheat -= risk(p_c);
        u.classical -= risk(p_h);
    }
    return u;
}

}  // namespace

Utilities utilities(const EconomicsConfig& econ, double n) {
    econ.validate(false);
    if (n < 0.0) {
        throw ConfigError("utilities: n must be >= 0");
    }
    return utilities_at(econ, n, econ.p_honest, econ.p_cheat);
}

EconBounds bounds(const EconomicsConfig& econ) {
    econ.validate(false);
    EconBounds b;
    b.r_range = {2.0 * econ.k, econ.k_classical};
    b.p_range = {econ.reward_r / 3.0, econ.reward_r};
    b.feasible = 2.0 * econ.k < econ.k_classical;
    return b;
}

NashVerdict nash_check(const EconomicsConfig& econ) {
    econ.validate(false);
    NashVerdict v;
    auto fail = [&](const std::string& why) { v.failures.push_back(why); };

    EconBounds b = bounds(econ);
    if (!b.feasible) {
        fail("infeasible: 2k >= k_classical leaves no room for R");
    }
    if (!(econ.reward_r > b.r_range.first)) {
        fail("R <= 2k: honest play not guaranteed profitable");
    }
    if (!(econ.reward_r < b.r_range.second)) {
        fail("R >= k_classical: classical not excluded");
    }
    if (!(econ.penalty_p > b.p_range.first) || !(econ.penalty_p < b.p_range.second)) {
        fail("P outside (R/3, R)");
    }

    Utilities at = utilities_at(econ, 1.0, econ.p_honest, econ.p_cheat);
    v.configured_ok = at.honest > 0.0 && at.cheat < 0.0 && at.classical < 0.0;
    if (!(at.honest > 0.0)) {
        fail("u_honest <= 0 at configured probabilities");
    }
    if (!(at.cheat < 0.0)) {
        fail("u_cheat >= 0 at configured probabilities");
    }
    if (!(at.classical < 0.0)) {
        fail("u_classical >= 0 at configured probabilities");
    }
    // Two-sided penalty inequality at the configured probabilities.
    double p_lower = econ.p_cheat * econ.reward_r / (1.0 - econ.p_cheat);
    double p_upper = (econ.p_honest * econ.reward_r - econ.k) / (1.0 - econ.p_honest);
    if (!(econ.penalty_p > p_lower && econ.penalty_p < p_upper)) {
        fail("P outside the two-sided inequality p_c R/(1-p_c) < P < (p_h R - k)/(1-p_h)");
    }

    // Worst case over the assumption bands: u_honest falls with p_h
    // (infimum at 0.75), u_cheat and u_classical rise with p (suprema at
    // p_c -> 0.25 and p_h -> 1).
    Utilities worst_h = utilities_at(econ, 1.0, 0.75, econ.p_cheat);
    Utilities worst_c = utilities_at(econ, 1.0, econ.p_honest, 0.25);
    Utilities worst_cl = utilities_at(econ, 1.0, 1.0, econ.p_cheat);
    v.robust_ok = worst_h.honest > 0.0 && worst_c.cheat <= 0.0 && worst_cl.classical <= 0.0;
    if (!(worst_h.honest > 0.0)) {
        fail("u_honest <= 0 for some p_honest in (0.75,1)");
    }
    if (!(worst_c.cheat <= 0.0)) {
        fail("u_cheat can be >= 0 for some p_cheat in (0,0.25)");
    }
    if (!(worst_cl.classical <= 0.0)) {
        fail("u_classical can be >= 0 for some p_honest in (0.75,1)");
    }

    v.ok = v.failures.empty();
    return v;
}

double heterogeneous_k(std::vector<double> costs, double percentile_m) {
    if (costs.empty()) {
        throw ConfigError("heterogeneous_k: empty cost list");
    }
    if (percentile_m < 0.0 || percentile_m > 100.0) {
        throw ConfigError("heterogeneous_k: percentile must be in [0, 100]");
    }
    std::sort(costs.begin(), costs.end());
    if (percentile_m == 0.0) {
        return costs.front();
    }
    auto rank = static_cast<size_t>(std::ceil(percentile_m / 100.0 * static_cast<double>(costs.size())));
    rank = std::max<size_t>(rank, 1);
    return costs[rank - 1];
}

}  // namespace bspow
