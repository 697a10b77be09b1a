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

#ifndef BSPOW_CONSENSUS_HPP
#define BSPOW_CONSENSUS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bspow/binning.hpp"
#include "bspow/complex_matrix.hpp"
#include "bspow/economics.hpp"
#include "bspow/occupation.hpp"
#include "bspow/sha256.hpp"

namespace bspow {

/// Token amounts are integer micro-tokens so every round balances exactly.
using Micros = int64_t;
Micros to_micros(double tokens);
double from_micros(Micros m);

/// Network-wide protocol parameters, constant over a mining campaign.
struct ParameterSet {
    int n = 2;
    int m = 6;
    int d_mb = 3;
    int d_sb = 7;
    double t_mine = 60.0;  // simulated seconds
    double eps = 0.1;
    double beta = 0.05;
    double reward_r = 10.0;   // tokens per sample
    double penalty_p = 5.0;   // kept in Pm for parity with the record
    double stake = 50.0;      // flat stake per participating miner
    Digest u_ref{};           // content hash of the interferometer matrix
    uint64_t state_cap = kDefaultStateCap;

    void validate() const;
    Digest hash() const;
};

/// Content hash used as ParameterSet::u_ref.
Digest matrix_content_hash(const ComplexMatrix& u);

/// Checks the §-level economic bounds R/3 < P < R and 2k < R against the
/// protocol reward parameters (enabled by config).
void check_econ_bounds(const ParameterSet& pm, double k);

struct BlockHeader {
    Digest prev_header_hash{};
    Digest prev_record_hash{};
    Digest tx_root{};
    Digest pm_hash{};
    uint64_t timestamp = 0;
    uint64_t height = 0;

    std::vector<uint8_t> bytes() const;
    Digest hash() const;
};

Digest transaction_root(const std::vector<std::vector<uint8_t>>& txs);

/// Hash commitment over one sample: SHA-256(canonical(sample) ||
/// LE64(commit_time) || nonce32).
using Nonce = std::array<uint8_t, 32>;
Digest commitment_digest(const OccupationVector& sample, uint64_t commit_time, const Nonce& nonce);

struct Commitment {
    Digest digest{};
    uint64_t commit_time = 0;
};

struct CommitBundle {
    std::vector<Commitment> commitments;
    std::vector<Nonce> nonces;
};

/// Miner-side helper: commit a sample set at `time` with nonces drawn
/// from the miner's seeded generator.
CommitBundle make_commitments(const std::vector<OccupationVector>& samples, uint64_t time,
                              uint64_t nonce_seed);

/// Appended per-block record Rec = {Pi, pi_mb, pi_sb, P_hat, mu_net}.
struct BlockRecord {
    std::vector<uint32_t> input_perm;
    std::vector<uint32_t> pi_mb;
    std::vector<uint32_t> pi_sb;
    BinnedDistribution p_hat;  // ModeCounts
    double mu_net = 0.0;

    std::vector<uint8_t> bytes() const;
    Digest hash() const;
};

struct Payout {
    Micros reward = 0;
    Micros penalty = 0;         // forfeited stake
    Micros stake_returned = 0;  // 0 or the full stake
    bool validated = false;
    bool winner = false;
    bool slashed = false;
};

struct Block {
    BlockHeader header;
    std::vector<std::vector<uint8_t>> txs;
    BlockRecord record;
    Digest beacon_mb{};
    Digest beacon_sb{};
    std::map<std::string, Payout> payouts;
};

class Chain {
  public:
    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }
    const Block& tip() const;
    void append(Block block);
    bool beacon_used(const Digest& beacon) const { return used_beacons_.count(beacon) > 0; }
    void mark_beacon(const Digest& beacon) { used_beacons_.insert(beacon); }
    /// Raw access for the tamper tool and chain-file loading; normal
    /// protocol flow goes through append().
    Block& mutable_block(size_t index);
    /// Loads a block without linkage checks, so damaged files can still
    /// be inspected by verify_chain.
    void push_unchecked(Block block) { blocks_.push_back(std::move(block)); }

  private:
    std::vector<Block> blocks_;
    std::set<Digest> used_beacons_;
};

enum class Phase { Announced, Committing, Revealing, Validating, Settling, Recorded };

struct MinerRound {
    std::vector<Commitment> commitments;
    std::vector<OccupationVector> samples;  // revealed
    bool revealed = false;
    bool slashed = false;
    bool validated = false;
    bool winner = false;
    std::string slash_reason;
    double tv = -1.0;
    double mu = -1.0;
    Payout payout;
};

/// One mining round. Phases move strictly forward:
/// Announced -> Committing -> Revealing -> Validating -> Settling -> Recorded.
struct Round {
    Phase phase = Phase::Announced;
    ParameterSet pm;
    BlockHeader header;
    std::vector<std::vector<uint8_t>> txs;
    std::vector<uint32_t> input_perm;
    InputSpec input;
    uint64_t commit_cutoff = 0;  // commits require time < cutoff (strict)
    std::map<std::string, MinerRound> miners;
    Digest beacon_mb{};
    Digest beacon_sb{};
    std::vector<uint32_t> pi_mb;
    std::vector<uint32_t> pi_sb;
    BinnedDistribution p_hat;
    BinnedDistribution p_hat_fraction;
    double mu_net = -1.0;
    bool success_determined = false;
    bool aborted = false;  // W^(v) empty: stakes returned, no block
    bool settled = false;
};

/// Builds the header from the chain tip, maps its hash to the input
/// permutation (domain tag "A") and opens the commit window.
Round announce_block(const Chain& chain, const ParameterSet& pm,
                     const std::vector<std::vector<uint8_t>>& txs, uint64_t timestamp);

/// Commit window: rejects submissions at or after the cutoff (strict <).
void commit(Round& round, const std::string& miner, const std::vector<Commitment>& commitments,
            uint64_t time);
void close_commits(Round& round);

/// Reveal: every digest is recomputed; any mismatch (or missing reveal at
/// close) slashes the miner out of W.
void reveal(Round& round, const std::string& miner, const std::vector<OccupationVector>& samples,
            const std::vector<Nonce>& nonces);
void close_reveals(Round& round);

enum class ValidatorPath { Exact, Estimated };

/// Mode-binned validation: beacon -> pi_mb (tag "G"), P-hat via the
/// chosen path, then each miner's photon-fraction vector is compared to
/// P-hat's expected fraction vector; TV >= 2 beta slashes the miner.
void validate_round(Round& round, const Chain& chain, const ComplexMatrix& u, const Digest& beacon_mb,
                    const AccuracyParams& acc, ValidatorPath path, uint64_t verifier_seed);

/// State-binned success: beacon -> pi_sb (tag "F"), mu_net over the
/// pooled validated samples, winners within eps of mu_net. An empty
/// validated set aborts the round.
void determine_success(Round& round, const Chain& chain, const Digest& beacon_sb);

/// Pays winners (split: |s_i| R each; block: the pooled pot to one
/// uniformly drawn winner), returns stakes to validated miners, forfeits
/// slashed stakes. Aborted rounds return every stake.
void settle(Round& round, const EconomicsConfig& econ, uint64_t lottery_seed);

/// Appends the block with its record and marks beacons as spent.
void append_record(Chain& chain, Round& round);

enum class VerifyMode { Classical, QuantumOracle };

struct VerifyOptions {
    VerifyMode mode = VerifyMode::Classical;
    ValidatorPath path = ValidatorPath::Exact;
    AccuracyParams acc;
    uint64_t oracle_samples = 20000;
    uint64_t seed = 0;
};

struct BlockVerdict {
    uint64_t height = 0;
    bool ok = true;
    std::vector<std::string> reasons;
};

struct VerifyReport {
    bool all_ok = true;
    std::vector<BlockVerdict> blocks;
};

/// Re-derives every block's linkage and record. Classical mode recomputes
/// Pi from the header and P-hat from (Pi, pi_mb, U) within TV < 2 beta;
/// quantum-oracle mode additionally re-estimates mu_net by fresh seeded
/// sampling and checks |mu - mu_net| <= eps.
VerifyReport verify_chain(const Chain& chain, const ParameterSet& pm, const ComplexMatrix& u,
                          const VerifyOptions& options);

/// Models an attacker rewriting one transaction: flips one byte of tx
/// content and recomputes the block's tx_root/header consistently, but
/// cannot redo the sampling work or the descendants' hash links.
void tamper_transaction(Chain& chain, size_t block_index, size_t tx_index, size_t byte_index,
                        uint8_t xor_mask);

}  // namespace bspow

#endif
