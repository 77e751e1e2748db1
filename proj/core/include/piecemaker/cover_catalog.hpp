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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "piecemaker/graph.hpp"
#include "piecemaker/lc_orbit.hpp"
#include "piecemaker/stabilizer_state.hpp"

namespace piecemaker {

struct CoverEntry {
    VertexSet cover;
    /// Orbit member with the fewest edges among those covered by `cover`.
    Graph witness;
    /// Takes the target to the witness.
    std::vector<LcStep> lc_sequence;

    friend bool operator==(const CoverEntry&, const CoverEntry&) = default;
};

/// Minimal local covers of a target graph, ordered by the BFS index of the
/// first orbit member they cover, then lexicographically.
struct CoverCatalog {
    Graph target;
    std::vector<CoverEntry> entries;

    /// Index of the first entry whose cover lies inside `stored`
    /// (a 0-based membership mask over the target's vertices).
    std::optional<std::size_t> first_contained(const std::vector<bool>& stored) const;

    friend bool operator==(const CoverCatalog&, const CoverCatalog&) = default;
};

/// Enumerates the LC orbit of `target` and keeps every inclusion-minimal
/// vertex set that covers at least one member. Throws OrbitCapExceeded.
CoverCatalog minimal_local_covers(const Graph& target, std::size_t orbit_cap = kDefaultOrbitCap);

struct LocalGate {
    Gate gate = Gate::H;
    std::size_t qubit = 0;

    friend bool operator==(const LocalGate&, const LocalGate&) = default;
};

/// Single-qubit Cliffords mapping |G'> back to |G>, where `steps` takes G to
/// G'. Steps are undone last-first: SQRT_X_DAG on v and S on every
/// neighbour of v. Throws std::invalid_argument if a step is out of range.
std::vector<LocalGate> lc_sequence_cliffords(const std::vector<LcStep>& steps, const Graph& graph);

/// Line-oriented cache format: a version header followed by one tab-separated
/// record per entry (n, target edges, cover, witness edges, LC vertices),
/// 1-based, "-" for an empty list.
void write_catalog(const CoverCatalog& catalog, std::ostream& out);
CoverCatalog read_catalog(std::istream& in);

/// "catalog-<hex>.txt", from an FNV-1a hash of n and the target edge list.
std::string catalog_cache_name(const Graph& target);

/// Loads the cached catalog from `cache_dir` if present, otherwise computes it
/// and stores it there (write-then-rename). A cache whose target differs is
/// recomputed. With no cache directory the catalog is always computed.
CoverCatalog load_or_compute_catalog(const Graph& target, std::size_t orbit_cap,
                                     const std::optional<std::filesystem::path>& cache_dir);

}  // namespace piecemaker
