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

#ifndef BSPOW_ERRORS_HPP
#define BSPOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bspow {

/// Shape or size mismatch (non-square matrix, wrong vector length, ...).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Invalid configuration value (delta out of range, bad probability, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured desk-scale capacity cap.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix failed a required symmetry check.
struct SymmetryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Singular or too ill-conditioned for a reliable factorization.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A formula was asked for outside its stated validity region.
struct ValidityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Photon-number bookkeeping violation (wrong sample weight, ...).
struct PhotonNumberError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Consensus state machine violation (wrong phase, reused beacon, ...).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed chain file or broken chain linkage at load time.
struct ChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bspow

#endif
