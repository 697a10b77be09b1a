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

#include "bspow/consensus.hpp"

#include <algorithm>
#include <cmath>

#include "bspow/canonical.hpp"
#include "bspow/hash_permutation.hpp"
#include "bspow/philox.hpp"
#include "bspow/sampler.hpp"

namespace bspow {

Micros to_micros(double tokens) {
    double v = std::round(tokens * 1e6);
    if (!(std::abs(v) < 9.2e18)) {
        throw ConfigError("to_micros: amount out of range");
    }
    return static_cast<Micros>(v);
}

double from_micros(Micros m) { return static_cast<double>(m) / 1e6; }

void ParameterSet::validate() const {
    if (n < 1 || m < 1 || n > m) {
        throw ConfigError("ParameterSet: need 1 <= N <= M");
    }
    if (d_mb < 1 || m % d_mb != 0) {
        throw ConfigError("ParameterSet: d_mb must divide M");
    }
    uint64_t states = state_count(m, n);
    if (d_sb < 1 || states % static_cast<uint64_t>(d_sb) != 0) {
        throw ConfigError("ParameterSet: d_sb must divide |Y| = binom(M+N-1, N)");
    }
    if (states > state_cap) {
        throw CapacityError("ParameterSet: |Y| exceeds the state cap");
    }
    // beta = 1 is admitted so the vacuous validation test (TV <= 1 < 2)
    // stays expressible.
    if (!(eps > 0.0) || !(eps < 1.0) || !(beta > 0.0) || !(beta <= 1.0)) {
        throw ConfigError("ParameterSet: need eps in (0,1) and beta in (0,1]");
    }
    if (reward_r < 0.0 || penalty_p < 0.0 || stake < 0.0 || !(t_mine > 0.0)) {
        throw ConfigError("ParameterSet: token amounts must be >= 0 and T_mine > 0");
    }
}

Digest ParameterSet::hash() const {
    CanonicalEncoder enc;
    enc.put_u32(static_cast<uint32_t>(n));
    enc.put_u32(static_cast<uint32_t>(m));
    enc.put_u32(static_cast<uint32_t>(d_mb));
    enc.put_u32(static_cast<uint32_t>(d_sb));
    enc.put_f64(t_mine);
    enc.put_f64(eps);
    enc.put_f64(beta);
    enc.put_f64(reward_r);
    enc.put_f64(penalty_p);
    enc.put_f64(stake);
    enc.put_digest(u_ref);
    enc.put_u64(state_cap);
    return enc.digest();
}

Digest matrix_content_hash(const ComplexMatrix& u) {
    CanonicalEncoder enc;
    enc.put_u32(static_cast<uint32_t>(u.rows()));
    enc.put_u32(static_cast<uint32_t>(u.cols()));
    for (int i = 0; i < u.rows(); ++i) {
        for (int j = 0; j < u.cols(); ++j) {
            enc.put_f64(u(i, j).real());
            enc.put_f64(u(i, j).imag());
        }
    }
    return enc.digest();
}

void check_econ_bounds(const ParameterSet& pm, double k) {
    if (!(pm.penalty_p > pm.reward_r / 3.0 && pm.penalty_p < pm.reward_r)) {
        throw ConfigError("ParameterSet: penalty must satisfy R/3 < P < R");
    }
    if (!(2.0 * k < pm.reward_r)) {
        throw ConfigError("ParameterSet: reward must satisfy 2k < R");
    }
}

std::vector<uint8_t> BlockHeader::bytes() const {
    CanonicalEncoder enc;
    enc.put_digest(prev_header_hash);
    enc.put_digest(prev_record_hash);
    enc.put_digest(tx_root);
    enc.put_digest(pm_hash);
    enc.put_u64(timestamp);
    enc.put_u64(height);
    return enc.bytes();
}

Digest BlockHeader::hash() const { return sha256(bytes()); }

Digest transaction_root(const std::vector<std::vector<uint8_t>>& txs) {
    CanonicalEncoder enc;
    enc.put_u32(static_cast<uint32_t>(txs.size()));
    for (const auto& tx : txs) {
        enc.put_u32(static_cast<uint32_t>(tx.size()));
        enc.put_bytes(tx);
    }
    return enc.digest();
}

Digest commitment_digest(const OccupationVector& sample, uint64_t commit_time, const Nonce& nonce) {
    CanonicalEncoder enc;
    enc.put_bytes(canonical_sample(sample));
    enc.put_u64(commit_time);
    enc.put_bytes(std::span<const uint8_t>(nonce.data(), nonce.size()));
    return enc.digest();
}

CommitBundle make_commitments(const std::vector<OccupationVector>& samples, uint64_t time,
                              uint64_t nonce_seed) {
    CommitBundle bundle;
    Philox rng(nonce_seed);
    bundle.commitments.reserve(samples.size());
    bundle.nonces.reserve(samples.size());
    for (const auto& s : samples) {
        Nonce nonce;
        for (int i = 0; i < 32; i += 4) {
            uint32_t w = rng.next_u32();
            nonce[i] = static_cast<uint8_t>(w);
            nonce[i + 1] = static_cast<uint8_t>(w >> 8);
            nonce[i + 2] = static_cast<uint8_t>(w >> 16);
            nonce[i + 3] = static_cast<uint8_t>(w >> 24);
        }
        bundle.nonces.push_back(nonce);
        bundle.commitments.push_back({commitment_digest(s, time, nonce), time});
    }
    return bundle;
}

std::vector<uint8_t> BlockRecord::bytes() const {
    CanonicalEncoder enc;
    enc.put_u32_vector(input_perm);
    enc.put_u32_vector(pi_mb);
    enc.put_u32_vector(pi_sb);
    enc.put_u32(static_cast<uint32_t>(p_hat.labels.size()));
    for (const auto& label : p_hat.labels) {
        enc.put_u32(static_cast<uint32_t>(label.size()));
        for (int v : label) {
            enc.put_u32(static_cast<uint32_t>(v));
        }
    }
    enc.put_f64_vector(p_hat.probs);
    enc.put_f64(p_hat.clamped_mass);
    enc.put_f64(mu_net);
    return enc.bytes();
}

Digest BlockRecord::hash() const { return sha256(bytes()); }

const Block& Chain::tip() const {
    if (blocks_.empty()) {
        throw ChainError("chain is empty");
    }
    return blocks_.back();
}

void Chain::append(Block block) {
    if (!blocks_.empty()) {
        if (block.header.prev_header_hash != blocks_.back().header.hash()) {
            throw ChainError("append: prev header hash does not match the tip");
        }
        if (block.header.height != blocks_.back().header.height + 1) {
            throw ChainError("append: non-consecutive height");
        }
    } else if (block.header.height != 0) {
        throw ChainError("append: genesis block must have height 0");
    }
    blocks_.push_back(std::move(block));
}

namespace {

void require_phase(const Round& round, Phase expected, const char* what) {
    if (round.phase != expected) {
        throw ProtocolError(std::string(what) + ": wrong phase");
    }
}

}  // namespace

Round announce_block(const Chain& chain, const ParameterSet& pm,
                     const std::vector<std::vector<uint8_t>>& txs, uint64_t timestamp) {
    pm.validate();
    Round round;
    round.pm = pm;
    round.txs = txs;
    round.header.tx_root = transaction_root(txs);
    round.header.pm_hash = pm.hash();
    round.header.timestamp = timestamp;
    if (!chain.empty()) {
        round.header.prev_header_hash = chain.tip().header.hash();
        round.header.prev_record_hash = chain.tip().record.hash();
        round.header.height = chain.tip().header.height + 1;
    }
    round.input_perm = hash_to_permutation(round.header.hash(), pm.m, "A");
    round.input = permuted_input(round.input_perm, pm.n);
    round.commit_cutoff = timestamp + static_cast<uint64_t>(std::ceil(pm.t_mine));
    round.phase = Phase::Committing;
    return round;
}

void commit(Round& round, const std::string& miner, const std::vector<Commitment>& commitments,
            uint64_t time) {
    require_phase(round, Phase::Committing, "commit");
    if (commitments.empty()) {
        throw ProtocolError("commit: empty commitment set");
    }
    if (time >= round.commit_cutoff) {
        throw ProtocolError("commit: at or past the mining cutoff");
    }
    if (round.miners.count(miner) > 0) {
        throw ProtocolError("commit: duplicate commit for miner " + miner);
    }
    round.miners[miner].commitments = commitments;
}

void close_commits(Round& round) {
    require_phase(round, Phase::Committing, "close_commits");
    round.phase = Phase::Revealing;
}

void reveal(Round& round, const std::string& miner, const std::vector<OccupationVector>& samples,
            const std::vector<Nonce>& nonces) {
    require_phase(round, Phase::Revealing, "reveal");
    auto it = round.miners.find(miner);
    if (it == round.miners.end()) {
        throw ProtocolError("reveal: miner never committed");
    }
    MinerRound& mr = it->second;
    if (mr.revealed) {
        throw ProtocolError("reveal: duplicate reveal");
    }
    mr.revealed = true;
    if (samples.size() != mr.commitments.size() || nonces.size() != mr.commitments.size()) {
        mr.slashed = true;
        mr.slash_reason = "reveal-size-mismatch";
        return;
    }
    for (size_t i = 0; i < samples.size(); ++i) {
        Digest d = commitment_digest(samples[i], mr.commitments[i].commit_time, nonces[i]);
        if (d != mr.commitments[i].digest) {
            mr.slashed = true;
            mr.slash_reason = "commitment-digest-mismatch";
            return;
        }
    }
    mr.samples = samples;
}

void close_reveals(Round& round) {
    require_phase(round, Phase::Revealing, "close_reveals");
    for (auto& [id, mr] : round.miners) {
        if (!mr.revealed && !mr.slashed) {
            mr.slashed = true;
            mr.slash_reason = "no-reveal";
        }
    }
    round.phase = Phase::Validating;
}

void validate_round(Round& round, const Chain& chain, const ComplexMatrix& u, const Digest& beacon_mb,
                    const AccuracyParams& acc, ValidatorPath path, uint64_t verifier_seed) {
    require_phase(round, Phase::Validating, "validate");
    if (chain.beacon_used(beacon_mb)) {
        throw ProtocolError("validate: beacon reused from a prior round");
    }
    if (matrix_content_hash(u) != round.pm.u_ref) {
        throw ProtocolError("validate: interferometer does not match Pm.u_ref");
    }
    round.beacon_mb = beacon_mb;
    round.pi_mb = hash_to_permutation(beacon_mb, round.pm.m, "G");
    ModeBinning binning = ModeBinning::from_permutation(round.pi_mb, round.pm.d_mb);

    round.p_hat = path == ValidatorPath::Exact
                      ? exact_mode_binned(u, round.input, binning, round.pm.state_cap)
                      : estimated_mode_binned(u, round.input, binning, acc, verifier_seed,
                                              round.pm.state_cap);
    round.p_hat_fraction = expected_fraction_vector(round.p_hat);

    for (auto& [id, mr] : round.miners) {
        if (mr.slashed) {
            continue;
        }
        BinnedDistribution empirical = empirical_mode_binned(mr.samples, binning);
        mr.tv = tv_distance(empirical, round.p_hat_fraction);
        if (mr.tv >= 2.0 * round.pm.beta) {
            mr.slashed = true;
            mr.slash_reason = "validation-tv";
        } else {
            mr.validated = true;
        }
    }
    round.phase = Phase::Settling;
}

void determine_success(Round& round, const Chain& chain, const Digest& beacon_sb) {
    require_phase(round, Phase::Settling, "determine_success");
    if (round.success_determined) {
        throw ProtocolError("determine_success: already determined");
    }
    if (chain.beacon_used(beacon_sb)) {
        throw ProtocolError("determine_success: beacon reused from a prior round");
    }
    round.beacon_sb = beacon_sb;

    std::vector<OccupationVector> pooled;
    for (const auto& [id, mr] : round.miners) {
        if (mr.validated) {
            pooled.insert(pooled.end(), mr.samples.begin(), mr.samples.end());
        }
    }
    if (pooled.empty()) {
        round.aborted = true;
        round.success_determined = true;
        return;
    }

    uint64_t states = state_count(round.pm.m, round.pm.n);
    round.pi_sb = hash_to_permutation(beacon_sb, states, "F");
    StateBinning sb = StateBinning::from_permutation(round.pi_sb, round.pm.d_sb);
    round.mu_net = pbp(pooled, sb, round.pm.n).mu;
    for (auto& [id, mr] : round.miners) {
        if (!mr.validated) {
            continue;
        }
        mr.mu = pbp(mr.samples, sb, round.pm.n).mu;
        // f in the payoff test is the identity.
        mr.winner = std::abs(mr.mu - round.mu_net) <= round.pm.eps;
    }
    round.success_determined = true;
}

void settle(Round& round, const EconomicsConfig& econ, uint64_t lottery_seed) {
    require_phase(round, Phase::Settling, "settle");
    if (!round.success_determined) {
        throw ProtocolError("settle: success not determined");
    }
    if (round.settled) {
        throw ProtocolError("settle: double settle");
    }
    Micros stake = to_micros(round.pm.stake);
    Micros reward_rate = to_micros(round.pm.reward_r);

    if (round.aborted) {
        for (auto& [id, mr] : round.miners) {
            mr.payout.stake_returned = stake;
            mr.payout.slashed = mr.slashed;
        }
        round.settled = true;
        return;
    }

    std::vector<std::string> winners;
    Micros pot = 0;
    for (auto& [id, mr] : round.miners) {
        if (mr.winner) {
            winners.push_back(id);
            pot += static_cast<Micros>(mr.samples.size()) * reward_rate;
        }
    }
    size_t lottery_pick = winners.size();
    if (econ.reward_mode == RewardMode::Block && !winners.empty()) {
        Philox rng(lottery_seed);
        lottery_pick = static_cast<size_t>(rng.next_below(winners.size()));
    }

    for (auto& [id, mr] : round.miners) {
        Payout& p = mr.payout;
        p.validated = mr.validated;
        p.winner = mr.winner;
        p.slashed = mr.slashed;
        if (mr.slashed) {
            p.penalty = stake;
            continue;
        }
        p.stake_returned = stake;
        if (!mr.winner) {
            continue;
        }
        if (econ.reward_mode == RewardMode::Split) {
            p.reward = static_cast<Micros>(mr.samples.size()) * reward_rate;
        } else {
            auto rank = std::find(winners.begin(), winners.end(), id) - winners.begin();
            p.reward = static_cast<size_t>(rank) == lottery_pick ? pot : 0;
        }
    }
    round.settled = true;
}

void append_record(Chain& chain, Round& round) {
    require_phase(round, Phase::Settling, "append_record");
    if (!round.settled) {
        throw ProtocolError("append_record: round not settled");
    }
    if (round.aborted) {
        throw ProtocolError("append_record: aborted round has no block");
    }
    // Sanity band: an empirical peak bin probability can never fall below
    // the mean bin mass 1/d_sb.
    if (!(round.mu_net >= 1.0 / round.pm.d_sb - 1e-12 && round.mu_net <= 1.0 + 1e-12)) {
        throw ProtocolError("append_record: mu_net outside its sanity band");
    }

    Block block;
    block.header = round.header;
    block.txs = round.txs;
    block.record.input_perm = round.input_perm;
    block.record.pi_mb = round.pi_mb;
    block.record.pi_sb = round.pi_sb;
    block.record.p_hat = round.p_hat;
    block.record.mu_net = round.mu_net;
    block.beacon_mb = round.beacon_mb;
    block.beacon_sb = round.beacon_sb;
    for (const auto& [id, mr] : round.miners) {
        block.payouts[id] = mr.payout;
    }
    chain.append(std::move(block));
    chain.mark_beacon(round.beacon_mb);
    chain.mark_beacon(round.beacon_sb);
    round.phase = Phase::Recorded;
}

VerifyReport verify_chain(const Chain& chain, const ParameterSet& pm, const ComplexMatrix& u,
                          const VerifyOptions& options) {
    if (chain.empty()) {
        throw ChainError("verify_chain: empty chain");
    }
    pm.validate();
    VerifyReport report;
    Digest pm_hash = pm.hash();
    const auto& blocks = chain.blocks();
    for (size_t j = 0; j < blocks.size(); ++j) {
        const Block& b = blocks[j];
        BlockVerdict verdict;
        verdict.height = b.header.height;
        auto flag = [&](const std::string& why) {
            verdict.ok = false;
            verdict.reasons.push_back(why);
        };

        if (b.header.height != j) {
            flag("height-mismatch");
        }
        if (b.header.pm_hash != pm_hash) {
            flag("pm-hash-mismatch");
        }
        if (b.header.tx_root != transaction_root(b.txs)) {
            flag("tx-root-mismatch");
        }
        if (j == 0) {
            if (!is_zero(b.header.prev_header_hash) || !is_zero(b.header.prev_record_hash)) {
                flag("genesis-prev-hash-nonzero");
            }
        } else {
            if (b.header.prev_header_hash != blocks[j - 1].header.hash()) {
                flag("prev-header-hash-mismatch");
            }
            if (b.header.prev_record_hash != blocks[j - 1].record.hash()) {
                flag("prev-record-hash-mismatch");
            }
        }

        if (b.record.input_perm != hash_to_permutation(b.header.hash(), pm.m, "A")) {
            flag("input-permutation-mismatch");
        }
        if (b.record.pi_mb != hash_to_permutation(b.beacon_mb, pm.m, "G")) {
            flag("mode-binning-permutation-mismatch");
        }

        // Classical record check: rebuild P-hat from (Pi, pi_mb, U).
        bool record_checkable = static_cast<int>(b.record.input_perm.size()) == pm.m &&
                                is_permutation(b.record.input_perm) &&
                                static_cast<int>(b.record.pi_mb.size()) == pm.m &&
                                is_permutation(b.record.pi_mb);
        if (record_checkable) {
            InputSpec input = permuted_input(b.record.input_perm, pm.n);
            ModeBinning binning = ModeBinning::from_permutation(b.record.pi_mb, pm.d_mb);
            BinnedDistribution fresh =
                options.path == ValidatorPath::Exact
                    ? exact_mode_binned(u, input, binning, pm.state_cap)
                    : estimated_mode_binned(u, input, binning, options.acc,
                                            Philox::derive(options.seed, b.header.height), pm.state_cap);
            if (fresh.probs.size() != b.record.p_hat.probs.size() ||
                tv_distance(fresh.probs, b.record.p_hat.probs) >= 2.0 * pm.beta) {
                flag("mode-binned-record-mismatch");
            }

            if (options.mode == VerifyMode::QuantumOracle) {
                uint64_t states = state_count(pm.m, pm.n);
                if (b.record.pi_sb.size() != states || !is_permutation(b.record.pi_sb)) {
                    flag("state-binning-permutation-invalid");
                } else {
                    StateBinning sb = StateBinning::from_permutation(b.record.pi_sb, pm.d_sb);
                    SampleResult fresh_samples =
                        sample(u, input, options.oracle_samples,
                               Philox::derive(options.seed ^ 0x9E3779B97F4A7C15ull, b.header.height), 1.0,
                               pm.state_cap);
                    double mu = pbp(fresh_samples.samples, sb, pm.n).mu;
                    if (std::abs(mu - b.record.mu_net) > pm.eps) {
                        flag("pbp-record-mismatch");
                    }
                }
            }
        } else {
            flag("record-permutations-invalid");
        }

        report.all_ok = report.all_ok && verdict.ok;
        report.blocks.push_back(std::move(verdict));
    }
    return report;
}

Block& Chain::mutable_block(size_t index) {
    if (index >= blocks_.size()) {
        throw ChainError("mutable_block: index out of range");
    }
    return blocks_[index];
}

void tamper_transaction(Chain& chain, size_t block_index, size_t tx_index, size_t byte_index,
                        uint8_t xor_mask) {
    Block& b = chain.mutable_block(block_index);
    if (tx_index >= b.txs.size() || b.txs[tx_index].empty()) {
        throw ChainError("tamper: transaction index out of range");
    }
    if (xor_mask == 0) {
        throw ChainError("tamper: xor mask must flip at least one bit");
    }
    b.txs[tx_index][byte_index % b.txs[tx_index].size()] ^= xor_mask;
    // The attacker rewrites the block consistently: the tx root (and thus
    // the header) is recomputed, but the sampling record and the
    // descendants' links cannot be redone.
    b.header.tx_root = transaction_root(b.txs);
}

}  // namespace bspow
