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

#ifndef BSPOW_AGENTS_HPP
#define BSPOW_AGENTS_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "bspow/consensus.hpp"
#include "bspow/economics.hpp"
#include "bspow/sampler.hpp"

namespace bspow {

enum class Strategy { HonestQuantum, HonestClassical, CheatUniform, CheatCopycat, Abstain };

Strategy strategy_from_string(const std::string& s);
std::string strategy_to_string(Strategy s);

struct MinerProfile {
    std::string id;
    Strategy strategy = Strategy::HonestQuantum;
    uint64_t sample_budget = 0;     // 0: desk-scaled requirement
    double budget_multiplier = 1.0;
    double cost_factor = 0.0;       // tokens per sample (honest strategies)
    uint64_t seed = 0;
};

/// What a miner sees when acting: the live round's device distribution
/// and a stale one (a previous round's input permutation) that the
/// copycat strategy replays.
struct RoundView {
    const ParameterSet* pm = nullptr;
    const OutputDistribution* live = nullptr;
    const OutputDistribution* stale = nullptr;
    uint64_t round_index = 0;
    double eta = 1.0;
};

/// Produce the miner's sample set for this round. Honest strategies draw
/// from the live device distribution (classical players sample the same
/// statistics at a different cost), cheat_uniform draws states uniformly,
/// cheat_copycat replays the stale distribution, abstain returns nothing.
std::vector<OccupationVector> act(const MinerProfile& profile, const RoundView& view,
                                  uint64_t round_seed);

struct MinerRoundReport {
    std::string id;
    Strategy strategy = Strategy::Abstain;
    uint64_t committed = 0;
    bool validated = false;
    bool slashed = false;
    bool winner = false;
    double mu = -1.0;
    double tv = -1.0;
    double reward = 0.0;
    double penalty = 0.0;
    double cost = 0.0;
    double utility = 0.0;  // reward - cost - penalty, exactly
};

struct RoundReport {
    uint64_t round_index = 0;
    bool aborted = false;
    double mu_net = -1.0;
    int slash_count = 0;
    std::vector<MinerRoundReport> miners;
};

/// Token ledger in integer micro-tokens; stakes lock at commit and flow
/// back at settle, so sum(balances) - minted + burned stays 0 exactly.
struct Ledger {
    std::map<std::string, Micros> balances;
    Micros minted = 0;
    Micros burned = 0;

    Micros total_balance() const;
};

struct CampaignOptions {
    AccuracyParams acc;
    ValidatorPath validator_path = ValidatorPath::Exact;
    EconomicsConfig econ;
    double desk_scale = 1e-4;
    double eta = 1.0;
    uint64_t master_seed = 0;
};

struct CampaignResult {
    std::vector<RoundReport> reports;
    Chain chain;
    Ledger ledger;
    uint64_t aborted_rounds = 0;
};

/// Desk-scaled per-miner default budget: ceil(scale * N_mb_tot) times the
/// profile multiplier, at least 1.
uint64_t default_budget(const ParameterSet& pm, double desk_scale, double multiplier);

/// Drives `blocks` full rounds (announce, commit, reveal, validate,
/// success, settle, record) over a fixed interferometer; deterministic
/// per master_seed.
CampaignResult run_campaign(const std::vector<MinerProfile>& profiles, const ParameterSet& pm,
                            const ComplexMatrix& u, const CampaignOptions& options, uint64_t blocks);

void write_reports_csv(std::ostream& out, const CampaignResult& result, const std::string& config_hash_hex);

}  // namespace bspow

#endif
