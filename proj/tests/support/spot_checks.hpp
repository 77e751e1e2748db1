// Copyright 2026 The Piecemaker Authors
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
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dense.hpp"
#include "piecemaker/graph.hpp"
#include "piecemaker/stabilizer_state.hpp"

namespace piecemaker::testing {

/// Fidelity of the reduced state of `qubits` with the pure stabilizer state
/// `target`, from the average of the target's stabilizer group expectations.
double dense_fidelity(const DenseState& state, std::span<const std::size_t> qubits, const StabilizerState& target);

/// Outcome of a batch of tableau-vs-dense comparisons.
struct SpotReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Gate-based fusion through SwitchEngine::fuse on both outcome branches,
/// plus the skipped-correction branch.
SpotReport check_fusion();

/// SwitchEngine::measure_generator on a two-node graph for every outcome pair
/// and both measurement orders, plus a skipped correction.
SpotReport check_measure_generator();

/// lc_sequence_cliffords on the star-3 centre step and on every LC orbit
/// member of path-4.
SpotReport check_lc_cliffords();

}  // namespace piecemaker::testing
