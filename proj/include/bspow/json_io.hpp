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

#ifndef BSPOW_JSON_IO_HPP
#define BSPOW_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "bspow/agents.hpp"
#include "bspow/binning.hpp"
#include "bspow/complex_matrix.hpp"
#include "bspow/consensus.hpp"
#include "bspow/sampler.hpp"

namespace bspow {

using json = nlohmann::json;

// Canonical JSON forms. Matrices: {"rows","cols","re","im"} row-major.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json distribution_to_json(const OutputDistribution& d);

// {"kind","labels","probs","clamped_mass","photons"}
json binned_to_json(const BinnedDistribution& b);
BinnedDistribution binned_from_json(const json& j);

// Samples serialize as JSON lines {"y":[counts...]}.
std::string samples_to_jsonl(const std::vector<OccupationVector>& samples);

json block_to_json(const Block& b);
Block block_from_json(const json& j);

struct ChainFileMeta {
    std::string config_hash_hex;
    double desk_scale = 1.0;
    uint64_t master_seed = 0;
};

/// Chain file: one meta line, then one JSON line per block.
std::string chain_to_jsonl(const Chain& chain, const ChainFileMeta& meta);
void save_chain(const std::string& path, const Chain& chain, const ChainFileMeta& meta);
Chain load_chain(const std::string& path, ChainFileMeta* meta_out = nullptr);

std::string reports_to_jsonl(const CampaignResult& result, const std::string& config_hash_hex);

}  // namespace bspow

#endif
