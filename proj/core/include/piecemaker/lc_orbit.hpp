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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "piecemaker/graph.hpp"

namespace piecemaker {

/// One local complementation, applied at `vertex` (0-based).
struct LcStep {
    std::size_t vertex = 0;

    friend bool operator==(const LcStep&, const LcStep&) = default;
};

/// Applies the steps in order.
Graph apply_lc_sequence(const Graph& graph, const std::vector<LcStep>& steps);

inline constexpr std::size_t kDefaultOrbitCap = 2'000'000;
/// Orbit enumeration packs the adjacency matrix into 128 bits.
inline constexpr std::size_t kMaxOrbitVertices = 16;

/// Thrown when an LC orbit has more members than the configured cap.
class OrbitCapExceeded : public std::runtime_error {
  public:
    explicit OrbitCapExceeded(std::size_t cap);
    std::size_t cap() const { return cap_; }

  private:
    std::size_t cap_;
};

/// Every labelled graph reachable from a root by local complementations,
/// in breadth-first discovery order. Member 0 is the root; each member keeps
/// the step that first reached it, so `sequence(i)` is a shortest path.
class LcOrbit {
  public:
    /// Throws OrbitCapExceeded when more than `cap` members exist and
    /// std::invalid_argument for graphs above kMaxOrbitVertices vertices.
    static LcOrbit enumerate(const Graph& root, std::size_t cap = kDefaultOrbitCap);

    std::size_t size() const { return members_.size(); }
    std::size_t num_vertices() const { return n_; }

    Graph graph(std::size_t index) const;
    std::size_t edge_count(std::size_t index) const;
    /// Steps taking the root to member `index`.
    std::vector<LcStep> sequence(std::size_t index) const;
    /// Neighbourhood bitmasks of member `index`, one per vertex.
    std::vector<std::uint16_t> adjacency(std::size_t index) const;

    std::optional<std::size_t> find(const Graph& graph) const;

  private:
    struct Member {
        std::uint64_t lo = 0;
        std::uint64_t hi = 0;
        std::uint32_t parent = 0;
        std::uint8_t vertex = 0;
    };

    std::size_t n_ = 0;
    std::vector<Member> members_;
};

}  // namespace piecemaker
