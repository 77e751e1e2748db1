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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace piecemaker {

class Rng;

using Edge = std::pair<std::size_t, std::size_t>;
/// Sorted, duplicate-free list of 0-based vertices.
using VertexSet = std::vector<std::size_t>;

/// Simple undirected graph on vertices 0..n-1 backed by a packed adjacency matrix.
class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t num_vertices);
    /// Throws std::invalid_argument on self-loops, duplicates or out-of-range endpoints.
    Graph(std::size_t num_vertices, std::span<const Edge> edges);

    /// Same as the edge-list constructor but with 1-based endpoints, as used in
    /// config files and catalog caches.
    static Graph from_one_based(std::size_t num_vertices, std::span<const Edge> edges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const;

    bool has_edge(std::size_t u, std::size_t v) const;
    void add_edge(std::size_t u, std::size_t v);
    void remove_edge(std::size_t u, std::size_t v);
    void toggle_edge(std::size_t u, std::size_t v);

    std::size_t degree(std::size_t v) const;
    VertexSet neighbors(std::size_t v) const;
    /// Edges as (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    /// "1-2 2-3"-style 1-based edge list; "-" for an edgeless graph.
    std::string edge_list_string() const;

    friend bool operator==(const Graph& a, const Graph& b) = default;

  private:
    void check_vertex(std::size_t v) const;
    void set_bit(std::size_t u, std::size_t v, bool value);

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> adj_;
};

enum class GraphFamily { GhzStar, Path, Cycle, Grid, Complete, Wheel, Cube, Custom };

std::string_view family_name(GraphFamily family);
std::optional<GraphFamily> parse_family(std::string_view name);

/// Parameters for `make_graph`. Which fields matter depends on the family:
/// `n` for most, `rows`/`cols` for grids, `center` (0-based) for ghz-star and
/// `n` + `edges` (0-based) for custom graphs.
struct GraphSpec {
    GraphFamily family = GraphFamily::GhzStar;
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t center = 0;
    std::vector<Edge> edges;

    /// Short label such as "path-4", "grid-3x3" or "custom-8".
    std::string label() const;
};

/// Builds the named graph; throws std::invalid_argument on malformed parameters.
/// Wheels put the hub on the last vertex. Cubes need n = 2^d and connect
/// vertices whose binary labels differ in one bit.
Graph make_graph(const GraphSpec& spec);

Graph star_graph(std::size_t n, std::size_t center = 0);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);

/// Toggles every edge between neighbours of v.
Graph local_complement(const Graph& graph, std::size_t v);

bool is_vertex_cover(const Graph& graph, std::span<const std::size_t> vertices);

/// Randomly drops vertices of `candidates` while the rest still covers every
/// edge. Returns std::nullopt when `candidates` is not a vertex cover to begin
/// with; otherwise the result is a minimal vertex cover contained in it.
std::optional<VertexSet> shrink_to_minimal_cover(const Graph& graph,
                                                  std::span<const std::size_t> candidates, Rng& rng);

/// Center vertex if the graph is a star on >= 2 vertices (for n = 2 the lower vertex).
std::optional<std::size_t> star_center(const Graph& graph);

/// 1-based rendering "{1,3}" of a vertex set.
std::string vertex_set_string(std::span<const std::size_t> vertices);

}  // namespace piecemaker
