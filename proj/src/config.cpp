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

#include "bspow/config.hpp"

#include <fstream>

#include "bspow/linalg.hpp"
#include "bspow/sha256.hpp"

namespace bspow {

using json = nlohmann::json;

ChainFileMeta RunConfig::chain_meta() const {
    ChainFileMeta meta;
    meta.config_hash_hex = config_hash_hex;
    meta.desk_scale = options.desk_scale;
    meta.master_seed = options.master_seed;
    return meta;
}

RunConfig config_from_json(const json& doc) {
    RunConfig cfg;
    try {
        const json& pm = doc.at("pm");
        cfg.pm.n = pm.at("N").get<int>();
        cfg.pm.m = pm.at("M").get<int>();
        cfg.pm.d_mb = pm.at("d_mb").get<int>();
        cfg.pm.d_sb = pm.at("d_sb").get<int>();
        cfg.pm.eps = pm.at("eps").get<double>();
        cfg.pm.beta = pm.at("beta").get<double>();
        cfg.pm.reward_r = pm.at("R").get<double>();
        cfg.pm.penalty_p = pm.at("P").get<double>();
        cfg.pm.stake = pm.at("stake").get<double>();
        cfg.pm.t_mine = pm.value("T_mine", 0.0);
        cfg.pm.state_cap = pm.value("state_cap", kDefaultStateCap);
        cfg.u_seed = pm.value("u_seed", 7ull);

        if (doc.contains("hw")) {
            const json& hw = doc["hw"];
            cfg.hw.r0 = hw.value("R0", cfg.hw.r0);
            cfg.hw.eta_f = hw.value("eta_f", cfg.hw.eta_f);
            cfg.hw.eta_g = hw.value("eta_g", 0.0);
            cfg.hw.eta_c = hw.value("eta_c", 0.0);
            cfg.hw.eta_d = hw.value("eta_d", 0.0);
            cfg.hw.eta_t = hw.value("eta_t", cfg.hw.eta_t);
            cfg.hw.a_tilde = hw.value("a_tilde", cfg.hw.a_tilde);
            cfg.hw.power_q = hw.value("power_q", cfg.hw.power_q);
            cfg.hw.power_c = hw.value("power_c", cfg.hw.power_c);
        }
        if (doc.contains("econ")) {
            const json& ec = doc["econ"];
            cfg.econ.reward_r = ec.value("R", cfg.pm.reward_r);
            cfg.econ.penalty_p = ec.value("P", cfg.pm.penalty_p);
            cfg.econ.k = ec.value("k", 1.0);
            cfg.econ.k_classical = ec.value("k_classical", 100.0);
            cfg.econ.p_honest = ec.value("p_honest", 0.9);
            cfg.econ.p_cheat = ec.value("p_cheat", 0.1);
            std::string mode = ec.value("reward_mode", "split");
            if (mode != "split" && mode != "block") {
                throw ConfigError("config: reward_mode must be split or block");
            }
            cfg.econ.reward_mode = mode == "split" ? RewardMode::Split : RewardMode::Block;
            cfg.econ.risk_aversion_a = ec.value("A", 0.0);
            cfg.econ.expected_winners = ec.value("expected_winners", 1);
            cfg.econ.k_fixed = ec.value("k_fixed", 0.0);
            cfg.econ.k_variable = ec.value("k_variable", 0.0);
            cfg.econ.tau = ec.value("tau", 0.0);
        } else {
            cfg.econ.reward_r = cfg.pm.reward_r;
            cfg.econ.penalty_p = cfg.pm.penalty_p;
        }
        if (doc.contains("accuracy")) {
            const json& acc = doc["accuracy"];
            cfg.options.acc.beta = cfg.pm.beta;
            cfg.options.acc.eps = cfg.pm.eps;
            cfg.options.acc.gamma = acc.value("gamma", 1e-4);
            cfg.options.acc.delta = acc.value("delta", 0.0);
            cfg.options.acc.confidence = acc.value("p", 0.99);
            std::string path = acc.value("validator_path", "exact");
            if (path != "exact" && path != "estimated") {
                throw ConfigError("config: validator_path must be exact or estimated");
            }
            cfg.options.validator_path =
                path == "exact" ? ValidatorPath::Exact : ValidatorPath::Estimated;
        } else {
            cfg.options.acc.beta = cfg.pm.beta;
            cfg.options.acc.eps = cfg.pm.eps;
        }
        cfg.options.econ = cfg.econ;
        cfg.options.desk_scale = doc.value("desk_scale_factor", 1e-4);
        cfg.options.eta = doc.value("eta", 1.0);
        cfg.options.master_seed = doc.value("master_seed", 42ull);
        cfg.blocks = doc.value("blocks", 5ull);
        cfg.check_econ_bands = doc.value("check_econ_bands", false);
        cfg.out_dir = doc.value("out_dir", "out");

        for (const json& p : doc.value("profiles", json::array())) {
            MinerProfile profile;
            profile.id = p.at("id").get<std::string>();
            profile.strategy = strategy_from_string(p.at("strategy").get<std::string>());
            profile.sample_budget = p.value("sample_budget", 0ull);
            profile.budget_multiplier = p.value("budget_multiplier", 1.0);
            profile.cost_factor = p.value("cost_factor", 0.0);
            profile.seed = p.value("seed", 0ull);
            cfg.profiles.push_back(std::move(profile));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    // Materialize the interferometer and the derived parameters.
    cfg.u = haar_unitary(cfg.pm.m, cfg.u_seed);
    cfg.pm.u_ref = matrix_content_hash(cfg.u);
    if (cfg.pm.t_mine <= 0.0) {
        cfg.pm.t_mine = mining_time(cfg.pm.n, cfg.pm.m, cfg.pm.d_mb, cfg.pm.d_sb, cfg.pm.beta,
                                    cfg.pm.eps, cfg.options.acc.gamma, cfg.hw)
                            .seconds;
    }
    cfg.pm.validate();
    cfg.hw.validate();
    cfg.econ.validate(cfg.check_econ_bands);
    cfg.options.econ = cfg.econ;
    if (cfg.check_econ_bands) {
        check_econ_bounds(cfg.pm, cfg.econ.k);
    }
    for (auto& profile : cfg.profiles) {
        if (profile.sample_budget == 0 && profile.strategy != Strategy::Abstain) {
            profile.sample_budget =
                default_budget(cfg.pm, cfg.options.desk_scale, profile.budget_multiplier);
        }
    }
    cfg.config_hash_hex = to_hex(sha256(doc.dump()));
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("config file not found: " + path);
    }
    json doc;
    try {
        f >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config: invalid JSON in " + path + ": " + e.what());
    }
    return config_from_json(doc);
}

json example_config_json() {
    return json{
        {"pm",
         {{"N", 2},
          {"M", 6},
          {"d_mb", 3},
          {"d_sb", 7},
          {"eps", 0.1},
          {"beta", 0.05},
          {"R", 10.0},
          {"P", 5.0},
          {"stake", 10000.0},
          {"u_seed", 52}}},
        {"econ",
         {{"k", 1.0}, {"k_classical", 100.0}, {"p_honest", 0.9}, {"p_cheat", 0.1},
          {"reward_mode", "split"}}},
        {"accuracy", {{"gamma", 1e-4}, {"p", 0.99}, {"validator_path", "exact"}}},
        {"profiles",
         {{{"id", "alice"}, {"strategy", "honest_quantum"}, {"budget_multiplier", 10.0},
           {"cost_factor", 1.0}, {"seed", 11}},
          {{"id", "bob"}, {"strategy", "honest_quantum"}, {"budget_multiplier", 10.0},
           {"cost_factor", 1.0}, {"seed", 12}},
          {{"id", "carol"}, {"strategy", "honest_quantum"}, {"budget_multiplier", 10.0},
           {"cost_factor", 1.0}, {"seed", 13}},
          {{"id", "mallory"}, {"strategy", "cheat_uniform"}, {"budget_multiplier", 10.0},
           {"cost_factor", 0.0}, {"seed", 14}}}},
        {"blocks", 5},
        {"master_seed", 4242},
        {"desk_scale_factor", 1e-4},
        {"eta", 1.0},
        {"out_dir", "out"}};
}

}  // namespace bspow
