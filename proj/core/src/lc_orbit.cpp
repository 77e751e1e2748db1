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

#include "piecemaker/lc_orbit.hpp"

#include <bit>
#include <string>
#include <unordered_map>

namespace piecemaker {

namespace {

struct Key {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::uint64_t h = k.lo * 0x9E3779B97F4A7C15ull ^ (k.hi + 0x632BE59BD9B4E019ull + (k.lo << 6));
        h ^= h >> 29;
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
    }
};

// Bit index of edge {u, v}, u < v, in the row-major upper triangle.
std::size_t pair_index(std::size_t u, std::size_t v, std::size_t n) { return u * n - u * (u + 1) / 2 + (v - u - 1); }

Key encode(const std::uint16_t* adj, std::size_t n) {
    Key key;
    for (std::size_t u = 0; u < n; ++u) {
        std::uint32_t above = adj[u] >> (u + 1);
        while (above) {
            const std::size_t v = u + 1 + static_cast<std::size_t>(std::countr_zero(above));
            const std::size_t bit = pair_index(u, v, n);
            if (bit < 64) {
                key.lo |= std::uint64_t{1} << bit;
            } else {
                key.hi |= std::uint64_t{1} << (bit - 64);
            }
            above &= above - 1;
        }
    }
    return key;
}

void decode(const Key& key, std::size_t n, std::uint16_t* adj) {
    for (std::size_t u = 0; u < n; ++u) adj[u] = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const std::size_t bit = pair_index(u, v, n);
            const bool set = bit < 64 ? ((key.lo >> bit) & 1u) : ((key.hi >> (bit - 64)) & 1u);
            if (set) {
                adj[u] |= static_cast<std::uint16_t>(1u << v);
                adj[v] |= static_cast<std::uint16_t>(1u << u);
            }
        }
    }
}

void complement_at(std::uint16_t* adj, std::size_t v) {
    std::uint32_t nb = adj[v];
    const std::uint16_t mask = adj[v];
    while (nb) {
        const std::size_t u = static_cast<std::size_t>(std::countr_zero(nb));
        adj[u] ^= static_cast<std::uint16_t>(mask & ~(1u << u));
        nb &= nb - 1;
    }
}

}  // namespace

Graph apply_lc_sequence(const Graph& graph, const std::vector<LcStep>& steps) {
    Graph current = graph;
    for (const auto& step : steps) current = local_complement(current, step.vertex);
    return current;
}

OrbitCapExceeded::OrbitCapExceeded(std::size_t cap)
    : std::runtime_error("LC orbit exceeds the cap of " + std::to_string(cap) +
                         " members (raise orbit_cap)"),
      cap_(cap) {}

LcOrbit LcOrbit::enumerate(const Graph& root, std::size_t cap) {
    const std::size_t n = root.num_vertices();
    if (n == 0) throw std::invalid_argument("LC orbit of an empty graph");
    if (n > kMaxOrbitVertices) {
        throw std::invalid_argument("LC orbit enumeration supports at most " +
                                    std::to_string(kMaxOrbitVertices) + " vertices");
    }
    if (cap == 0) throw std::invalid_argument("orbit cap must be at least 1");

    std::uint16_t adj[kMaxOrbitVertices] = {};
    for (const auto& [u, v] : root.edges()) {
        adj[u] |= static_cast<std::uint16_t>(1u << v);
        adj[v] |= static_cast<std::uint16_t>(1u << u);
    }

    LcOrbit orbit;
    orbit.n_ = n;
    std::unordered_map<Key, std::uint32_t, KeyHash> seen;
    const Key root_key = encode(adj, n);
    seen.emplace(root_key, 0);
    orbit.members_.push_back({root_key.lo, root_key.hi, 0, 0});

    std::uint16_t work[kMaxOrbitVertices];
    for (std::size_t head = 0; head < orbit.members_.size(); ++head) {
        const Key key{orbit.members_[head].lo, orbit.members_[head].hi};
        decode(key, n, adj);
        for (std::size_t v = 0; v < n; ++v) {
            // Complementing at a vertex of degree < 2 changes nothing.
            if (std::popcount(static_cast<unsigned>(adj[v])) < 2) continue;
            std::copy(adj, adj + n, work);
            complement_at(work, v);
            const Key next = encode(work, n);
            if (seen.contains(next)) continue;
            if (orbit.members_.size() >= cap) throw OrbitCapExceeded(cap);
            seen.emplace(next, static_cast<std::uint32_t>(orbit.members_.size()));
            orbit.members_.push_back({next.lo, next.hi, static_cast<std::uint32_t>(head),
                                      static_cast<std::uint8_t>(v)});
        }
    }
    return orbit;
}

std::vector<std::uint16_t> LcOrbit::adjacency(std::size_t index) const {
    if (index >= members_.size()) throw std::out_of_range("orbit member index out of range");
    std::vector<std::uint16_t> adj(n_);
    decode({members_[index].lo, members_[index].hi}, n_, adj.data());
    return adj;
}

Graph LcOrbit::graph(std::size_t index) const {
    const auto adj = adjacency(index);
    Graph g(n_);
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v = u + 1; v < n_; ++v) {
            if ((adj[u] >> v) & 1u) g.add_edge(u, v);
        }
    }
    return g;
}

std::size_t LcOrbit::edge_count(std::size_t index) const {
    if (index >= members_.size()) throw std::out_of_range("orbit member index out of range");
    return static_cast<std::size_t>(std::popcount(members_[index].lo) + std::popcount(members_[index].hi));
}

std::vector<LcStep> LcOrbit::sequence(std::size_t index) const {
    if (index >= members_.size()) throw std::out_of_range("orbit member index out of range");
    std::vector<LcStep> steps;
    while (index != 0) {
        steps.push_back({members_[index].vertex});
        index = members_[index].parent;
    }
    return {steps.rbegin(), steps.rend()};
}

std::optional<std::size_t> LcOrbit::find(const Graph& graph) const {
    if (graph.num_vertices() != n_) return std::nullopt;
    std::uint16_t adj[kMaxOrbitVertices] = {};
    for (const auto& [u, v] : graph.edges()) {
        adj[u] |= static_cast<std::uint16_t>(1u << v);
        adj[v] |= static_cast<std::uint16_t>(1u << u);
    }
    const Key key = encode(adj, n_);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].lo == key.lo && members_[i].hi == key.hi) return i;
    }
    return std::nullopt;
}

}  // namespace piecemaker
