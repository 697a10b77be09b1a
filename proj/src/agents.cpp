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

#include "bspow/agents.hpp"

#include <cmath>
#include <cstdio>

#include "bspow/canonical.hpp"
#include "bspow/philox.hpp"

namespace bspow {

Strategy strategy_from_string(const std::string& s) {
    if (s == "honest_quantum") {
        return Strategy::HonestQuantum;
    }
    if (s == "honest_classical") {
        return Strategy::HonestClassical;
    }
    if (s == "cheat_uniform") {
        return Strategy::CheatUniform;
    }
    if (s == "cheat_copycat") {
        return Strategy::CheatCopycat;
    }
    if (s == "abstain") {
        return Strategy::Abstain;
    }
    throw ConfigError("unknown strategy: " + s);
}

std::string strategy_to_string(Strategy s) {
    switch (s) {
        case Strategy::HonestQuantum: return "honest_quantum";
        case Strategy::HonestClassical: return "honest_classical";
        case Strategy::CheatUniform: return "cheat_uniform";
        case Strategy::CheatCopycat: return "cheat_copycat";
        case Strategy::Abstain: return "abstain";
    }
    throw ConfigError("invalid strategy value");
}

std::vector<OccupationVector> act(const MinerProfile& profile, const RoundView& view,
                                  uint64_t round_seed) {
    if (profile.strategy == Strategy::Abstain || profile.sample_budget == 0) {
        return {};
    }
    uint64_t seed = Philox::derive(round_seed, Philox::derive(profile.seed, view.round_index));
    uint64_t n = profile.sample_budget;
    switch (profile.strategy) {
        case Strategy::HonestQuantum:
            return sample(*view.live, n, seed, view.eta).samples;
        case Strategy::HonestClassical:
            // Same statistics as the quantum device; only the cost differs.
            return sample(*view.live, n, seed, 1.0).samples;
        case Strategy::CheatUniform: {
            uint64_t states = state_count(view.pm->m, view.pm->n);
            Philox rng(seed);
            std::vector<OccupationVector> out;
            out.reserve(n);
            for (uint64_t i = 0; i < n; ++i) {
                out.push_back(unrank_state(view.pm->m, view.pm->n, rng.next_below(states)));
            }
            return out;
        }
        case Strategy::CheatCopycat:
            // Precomputed replays from a stale input permutation.
            return sample(*view.stale, n, seed, 1.0).samples;
        case Strategy::Abstain:
            break;
    }
    return {};
}

Micros Ledger::total_balance() const {
    Micros t = 0;
    for (const auto& [id, bal] : balances) {
        t += bal;
    }
    return t;
}

uint64_t default_budget(const ParameterSet& pm, double desk_scale, double multiplier) {
    if (!(desk_scale > 0.0) || desk_scale > 1.0) {
        throw ConfigError("default_budget: desk scale must be in (0,1]");
    }
    uint64_t full = required_samples_mode(pm.n, pm.d_mb, pm.beta);
    double scaled = std::ceil(static_cast<double>(full) * desk_scale) * multiplier;
    return scaled < 1.0 ? 1 : static_cast<uint64_t>(scaled);
}

namespace {

Digest beacon_for(uint64_t master_seed, uint64_t round_index, const std::string& tag) {
    CanonicalEncoder enc;
    enc.put_u64(master_seed);
    enc.put_u64(round_index);
    enc.put_string(tag);
    return enc.digest();
}

std::vector<std::vector<uint8_t>> make_transactions(uint64_t seed) {
    Philox rng(seed);
    size_t count = 1 + static_cast<size_t>(rng.next_below(3));
    std::vector<std::vector<uint8_t>> txs(count);
    for (auto& tx : txs) {
        size_t len = 40 + static_cast<size_t>(rng.next_below(81));
        tx.resize(len);
        for (auto& byte : tx) {
            byte = static_cast<uint8_t>(rng.next_u32());
        }
    }
    return txs;
}

}  // namespace

CampaignResult run_campaign(const std::vector<MinerProfile>& profiles, const ParameterSet& pm,
                            const ComplexMatrix& u, const CampaignOptions& options, uint64_t blocks) {
    pm.validate();
    options.acc.validate();
    if (matrix_content_hash(u) != pm.u_ref) {
        throw ConfigError("run_campaign: U does not match Pm.u_ref");
    }
    CampaignResult result;
    for (const auto& p : profiles) {
        result.ledger.balances[p.id] = 0;
    }

    Micros stake = to_micros(pm.stake);
    uint64_t step = static_cast<uint64_t>(std::ceil(pm.t_mine)) + 10;
    OutputDistribution stale_dist;
    {
        // Round-0 stale input: the identity permutation's photon placement.
        std::vector<uint32_t> ident(pm.m);
        for (int i = 0; i < pm.m; ++i) {
            ident[i] = static_cast<uint32_t>(i);
        }
        stale_dist = exact_distribution(u, permuted_input(ident, pm.n), pm.state_cap);
    }

    for (uint64_t r = 0; r < blocks; ++r) {
        uint64_t round_seed = Philox::derive(options.master_seed, r);
        uint64_t t0 = 1'000'000 + r * step;
        Round round = announce_block(result.chain, pm, make_transactions(Philox::derive(round_seed, 1)),
                                     t0);
        OutputDistribution live = exact_distribution(u, round.input, pm.state_cap);

        RoundView view;
        view.pm = &pm;
        view.live = &live;
        view.stale = &stale_dist;
        view.round_index = r;
        view.eta = options.eta;

        std::map<std::string, CommitBundle> bundles;
        std::map<std::string, std::vector<OccupationVector>> sample_sets;
        for (const auto& profile : profiles) {
            auto samples = act(profile, view, round_seed);
            if (samples.empty()) {
                continue;
            }
            uint64_t commit_time = t0 + 1;
            CommitBundle bundle =
                make_commitments(samples, commit_time, Philox::derive(round_seed, Philox::derive(profile.seed, 0xC0)));
            commit(round, profile.id, bundle.commitments, commit_time);
            result.ledger.balances[profile.id] -= stake;  // stake locked
            bundles[profile.id] = std::move(bundle);
            sample_sets[profile.id] = std::move(samples);
        }
        close_commits(round);
        for (const auto& profile : profiles) {
            auto it = sample_sets.find(profile.id);
            if (it != sample_sets.end()) {
                reveal(round, profile.id, it->second, bundles[profile.id].nonces);
            }
        }
        close_reveals(round);

        validate_round(round, result.chain, u, beacon_for(options.master_seed, r, "beacon-mb"),
                       options.acc, options.validator_path, Philox::derive(round_seed, 0xE5));
        determine_success(round, result.chain, beacon_for(options.master_seed, r, "beacon-sb"));
        settle(round, options.econ, Philox::derive(round_seed, 0x70));

        RoundReport report;
        report.round_index = r;
        report.aborted = round.aborted;
        report.mu_net = round.mu_net;
        for (const auto& profile : profiles) {
            MinerRoundReport row;
            row.id = profile.id;
            row.strategy = profile.strategy;
            auto it = round.miners.find(profile.id);
            if (it != round.miners.end()) {
                const MinerRound& mr = it->second;
                row.committed = mr.samples.empty() ? mr.commitments.size() : mr.samples.size();
                row.validated = mr.validated;
                row.slashed = mr.slashed;
                row.winner = mr.winner;
                row.mu = mr.mu;
                row.tv = mr.tv;
                row.reward = from_micros(mr.payout.reward);
                row.penalty = from_micros(mr.payout.penalty);
                bool billed = profile.strategy == Strategy::HonestQuantum ||
                              profile.strategy == Strategy::HonestClassical;
                row.cost = billed ? profile.cost_factor * static_cast<double>(row.committed) : 0.0;
                report.slash_count += mr.slashed ? 1 : 0;

                result.ledger.balances[profile.id] +=
                    mr.payout.stake_returned + mr.payout.reward;
                result.ledger.minted += mr.payout.reward;
                result.ledger.burned += stake - mr.payout.stake_returned;
            }
            row.utility = row.reward - row.cost - row.penalty;
            report.miners.push_back(std::move(row));
        }
        result.reports.push_back(std::move(report));

        if (round.aborted) {
            ++result.aborted_rounds;
        } else {
            stale_dist = live;  // next round's copycat replays this one
            append_record(result.chain, round);
        }
    }
    return result;
}

void write_reports_csv(std::ostream& out, const CampaignResult& result,
                       const std::string& config_hash_hex) {
    out << "# config_hash=" << config_hash_hex << "\n";
    out << "round,miner,strategy,committed,validated,slashed,winner,mu,tv,mu_net,reward,penalty,cost,"
           "utility\n";
    char buf[512];
    for (const auto& round : result.reports) {
        for (const auto& row : round.miners) {
            std::snprintf(buf, sizeof(buf),
                          "%llu,%s,%s,%llu,%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          static_cast<unsigned long long>(round.round_index), row.id.c_str(),
                          strategy_to_string(row.strategy).c_str(),
                          static_cast<unsigned long long>(row.committed), row.validated ? 1 : 0,
                          row.slashed ? 1 : 0, row.winner ? 1 : 0, row.mu, row.tv, round.mu_net,
                          row.reward, row.penalty, row.cost, row.utility);
            out << buf;
        }
    }
}

}  // namespace bspow
