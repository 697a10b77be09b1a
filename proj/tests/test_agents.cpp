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

#include <doctest.h>

#include <sstream>

#include "bspow/json_io.hpp"
#include "bspow/linalg.hpp"

using namespace bspow;

namespace {

struct CampaignFixture {
    ParameterSet pm;
    ComplexMatrix u;
    CampaignOptions options;

    CampaignFixture() {
        pm.n = 2;
        pm.m = 6;
        pm.d_mb = 3;
        pm.d_sb = 7;
        pm.t_mine = 50.0;
        pm.eps = 0.1;
        pm.beta = 0.05;
        pm.reward_r = 10.0;
        pm.penalty_p = 5.0;
        pm.stake = 10000.0;
        u = haar_unitary(6, 52);
        pm.u_ref = matrix_content_hash(u);
        options.acc.beta = pm.beta;
        options.acc.eps = pm.eps;
        options.desk_scale = 1e-4;
        options.master_seed = 777;
        options.econ.reward_r = pm.reward_r;
        options.econ.penalty_p = pm.penalty_p;
    }

    MinerProfile miner(const std::string& id, Strategy s, uint64_t budget, double k,
                       uint64_t seed) const {
        MinerProfile p;
        p.id = id;
        p.strategy = s;
        p.sample_budget = budget;
        p.cost_factor = k;
        p.seed = seed;
        return p;
    }
};

}  // namespace

TEST_CASE("act: budgets and strategy shapes") {
    CampaignFixture f;
    OutputDistribution live = exact_distribution(f.u, permuted_input({0, 1, 2, 3, 4, 5}, 2));
    OutputDistribution stale = exact_distribution(f.u, permuted_input({5, 4, 3, 2, 1, 0}, 2));
    RoundView view;
    view.pm = &f.pm;
    view.live = &live;
    view.stale = &stale;
    view.round_index = 0;

    CHECK(act(f.miner("x", Strategy::Abstain, 100, 0, 1), view, 5).empty());
    CHECK(act(f.miner("x", Strategy::HonestQuantum, 137, 1, 1), view, 5).size() == 137);
    CHECK(act(f.miner("x", Strategy::CheatUniform, 64, 0, 1), view, 5).size() == 64);
    for (const auto& y : act(f.miner("x", Strategy::CheatUniform, 64, 0, 1), view, 5)) {
        CHECK(weight(y) == 2);
    }
    CHECK(act(f.miner("x", Strategy::CheatCopycat, 32, 0, 1), view, 5).size() == 32);
}

TEST_CASE("default budget follows the desk-scaled requirement") {
    CampaignFixture f;
    // ceil(1e-4 * 16052976) = 1606
    CHECK(default_budget(f.pm, 1e-4, 1.0) == 1606);
    CHECK(default_budget(f.pm, 1e-4, 10.0) == 16060);
    CHECK_THROWS_AS(default_budget(f.pm, 0.0, 1.0), ConfigError);
}

TEST_CASE("zero-block campaign changes nothing") {
    CampaignFixture f;
    std::vector<MinerProfile> profiles = {f.miner("a", Strategy::HonestQuantum, 100, 1.0, 1)};
    CampaignResult r = run_campaign(profiles, f.pm, f.u, f.options, 0);
    CHECK(r.reports.empty());
    CHECK(r.chain.blocks().empty());
    CHECK(r.ledger.total_balance() == 0);
    CHECK(r.ledger.minted == 0);
    CHECK(r.ledger.burned == 0);
}

TEST_CASE("campaigns are deterministic per master seed") {
    CampaignFixture f;
    std::vector<MinerProfile> profiles = {
        f.miner("a", Strategy::HonestQuantum, 400, 1.0, 1),
        f.miner("b", Strategy::CheatUniform, 400, 0.0, 2),
    };
    CampaignResult r1 = run_campaign(profiles, f.pm, f.u, f.options, 4);
    CampaignResult r2 = run_campaign(profiles, f.pm, f.u, f.options, 4);
    CHECK(reports_to_jsonl(r1, "x") == reports_to_jsonl(r2, "x"));
    ChainFileMeta meta{"x", f.options.desk_scale, f.options.master_seed};
    CHECK(chain_to_jsonl(r1.chain, meta) == chain_to_jsonl(r2.chain, meta));

    CampaignOptions other = f.options;
    other.master_seed = 778;
    CampaignResult r3 = run_campaign(profiles, f.pm, f.u, other, 4);
    CHECK(reports_to_jsonl(r1, "x") != reports_to_jsonl(r3, "x"));
}

TEST_CASE("accounting identity and token conservation hold each round") {
    CampaignFixture f;
    std::vector<MinerProfile> profiles = {
        f.miner("a", Strategy::HonestQuantum, 800, 1.0, 1),
        f.miner("b", Strategy::HonestClassical, 800, 3.0, 2),
        f.miner("m", Strategy::CheatUniform, 800, 0.0, 3),
        f.miner("z", Strategy::Abstain, 0, 0.0, 4),
    };
    CampaignResult r = run_campaign(profiles, f.pm, f.u, f.options, 12);
    REQUIRE(r.reports.size() == 12);
    for (const auto& round : r.reports) {
        for (const auto& row : round.miners) {
            CHECK(row.utility == row.reward - row.cost - row.penalty);  // exact identity
            if (row.strategy == Strategy::Abstain) {
                CHECK(row.committed == 0);
                CHECK(row.utility == 0.0);
            }
            if (row.strategy == Strategy::HonestClassical && row.committed > 0) {
                CHECK(row.cost == doctest::Approx(3.0 * 800));
            }
        }
    }
    CHECK(r.ledger.total_balance() == r.ledger.minted - r.ledger.burned);
}

TEST_CASE("all-honest populations are essentially never slashed") {
    CampaignFixture f;
    std::vector<MinerProfile> profiles = {
        f.miner("a", Strategy::HonestQuantum, 1606, 1.0, 1),
        f.miner("b", Strategy::HonestQuantum, 1606, 1.0, 2),
    };
    CampaignResult r = run_campaign(profiles, f.pm, f.u, f.options, 40);
    int clean_rounds = 0;
    for (const auto& round : r.reports) {
        clean_rounds += round.slash_count == 0 ? 1 : 0;
    }
    CHECK(clean_rounds >= 38);  // >= 95%
}

TEST_CASE("copycat replay is as hopeless as uniform cheating") {
    CampaignFixture f;
    std::vector<MinerProfile> profiles = {
        f.miner("honest", Strategy::HonestQuantum, 1606, 1.0, 1),
        f.miner("uniform", Strategy::CheatUniform, 1606, 0.0, 2),
        f.miner("copycat", Strategy::CheatCopycat, 1606, 0.0, 3),
    };
    const uint64_t rounds = 80;
    CampaignResult r = run_campaign(profiles, f.pm, f.u, f.options, rounds);
    int uniform_slashes = 0, copycat_slashes = 0;
    for (const auto& round : r.reports) {
        for (const auto& row : round.miners) {
            if (row.id == "uniform") {
                uniform_slashes += row.slashed ? 1 : 0;
            }
            if (row.id == "copycat") {
                copycat_slashes += row.slashed ? 1 : 0;
            }
        }
    }
    // Both cheat modes should fail most rounds, and at compatible rates
    // (binomial 3 sigma on the difference).
    CHECK(uniform_slashes > static_cast<int>(rounds / 2));
    CHECK(copycat_slashes > static_cast<int>(rounds / 2));
    double p1 = uniform_slashes / static_cast<double>(rounds);
    double p2 = copycat_slashes / static_cast<double>(rounds);
    double sigma = std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / rounds);
    CHECK(std::abs(p1 - p2) <= 3.0 * sigma + 1e-9);
}

TEST_CASE("mixed campaign: honest profit, cheater loss") {
    CampaignFixture f;
    std::vector<MinerProfile> profiles = {
        f.miner("a", Strategy::HonestQuantum, 1606, 1.0, 1),
        f.miner("b", Strategy::HonestQuantum, 1606, 1.0, 2),
        f.miner("c", Strategy::HonestQuantum, 1606, 1.0, 3),
        f.miner("m", Strategy::CheatUniform, 1606, 0.0, 4),
    };
    CampaignResult r = run_campaign(profiles, f.pm, f.u, f.options, 30);
    double honest_utility = 0.0, cheat_utility = 0.0;
    for (const auto& round : r.reports) {
        for (const auto& row : round.miners) {
            if (row.id == "m") {
                cheat_utility += row.utility;
            } else {
                honest_utility += row.utility;
            }
        }
    }
    CHECK(honest_utility > 0.0);
    CHECK(cheat_utility < 0.0);
}

TEST_CASE("csv report shape") {
    CampaignFixture f;
    std::vector<MinerProfile> profiles = {f.miner("a", Strategy::HonestQuantum, 200, 1.0, 1)};
    CampaignResult r = run_campaign(profiles, f.pm, f.u, f.options, 2);
    std::ostringstream out;
    write_reports_csv(out, r, "deadbeef");
    std::string text = out.str();
    CHECK(text.find("# config_hash=deadbeef") == 0);
    CHECK(text.find("round,miner,strategy") != std::string::npos);
    CHECK(text.find("honest_quantum") != std::string::npos);
}
