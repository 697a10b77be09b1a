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

#ifndef BSPOW_CONFIG_HPP
#define BSPOW_CONFIG_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "bspow/agents.hpp"
#include "bspow/consensus.hpp"
#include "bspow/economics.hpp"
#include "bspow/json_io.hpp"

namespace bspow {

/// One JSON document drives an experiment: protocol parameters, hardware
/// and economics models, miner profiles, seeds and the desk-scale factor.
struct RunConfig {
    ParameterSet pm;
    uint64_t u_seed = 7;
    ComplexMatrix u;  // generated from u_seed; pm.u_ref is its content hash
    HardwareProfile hw;
    EconomicsConfig econ;
    CampaignOptions options;
    std::vector<MinerProfile> profiles;
    uint64_t blocks = 5;
    bool check_econ_bands = false;
    std::string out_dir = "out";
    std::string config_hash_hex;  // provenance stamp for every output

    ChainFileMeta chain_meta() const;
};

RunConfig config_from_json(const nlohmann::json& doc);

/// Loads and fully materializes a config; a missing file raises
/// ConfigError naming the path.
RunConfig load_config(const std::string& path);

/// Built-in example config (M=6, N=2 desk scale): three honest miners
/// and one uniform cheater.
nlohmann::json example_config_json();

}  // namespace bspow

#endif
