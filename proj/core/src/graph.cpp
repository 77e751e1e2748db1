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

#include "piecemaker/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "piecemaker/random.hpp"

namespace piecemaker {

Graph::Graph(std::size_t num_vertices)
    : n_(num_vertices), words_((num_vertices + 63) / 64), adj_(num_vertices * words_, 0) {}

Graph::Graph(std::size_t num_vertices, std::span<const Edge> edges) : Graph(num_vertices) {
    for (const auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("graph edge is a self-loop");
        if (u >= n_ || v >= n_) throw std::invalid_argument("graph edge endpoint out of range");
        if (has_edge(u, v)) throw std::invalid_argument("duplicate graph edge");
        add_edge(u, v);
    }
}

Graph Graph::from_one_based(std::size_t num_vertices, std::span<const Edge> edges) {
    std::vector<Edge> shifted;
    shifted.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (u == 0 || v == 0) throw std::invalid_argument("1-based edge endpoint must be >= 1");
        shifted.emplace_back(u - 1, v - 1);
    }
    return Graph(num_vertices, shifted);
}

void Graph::check_vertex(std::size_t v) const {
    if (v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

void Graph::set_bit(std::size_t u, std::size_t v, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (v % 64);
    auto& word = adj_[u * words_ + v / 64];
    word = value ? (word | bit) : (word & ~bit);
}

std::size_t Graph::num_edges() const {
    std::size_t total = 0;
    for (auto w : adj_) total += std::popcount(w);
    return total / 2;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[u * words_ + v / 64] >> (v % 64)) & 1u;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("graph edge is a self-loop");
    set_bit(u, v, true);
    set_bit(v, u, true);
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
    check_vertex(u);
    check_vertex(v);
    set_bit(u, v, false);
    set_bit(v, u, false);
}

void Graph::toggle_edge(std::size_t u, std::size_t v) {
    if (has_edge(u, v)) {
        remove_edge(u, v);
    } else {
        add_edge(u, v);
    }
}

std::size_t Graph::degree(std::size_t v) const {
    check_vertex(v);
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(adj_[v * words_ + w]);
    return total;
}

VertexSet Graph::neighbors(std::size_t v) const {
    check_vertex(v);
    VertexSet out;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = adj_[v * words_ + w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

std::string Graph::edge_list_string() const {
    std::string out;
    for (const auto& [u, v] : edges()) {
        if (!out.empty()) out.push_back(' ');
        out += std::to_string(u + 1) + "-" + std::to_string(v + 1);
    }
    return out.empty() ? "-" : out;
}

std::string_view family_name(GraphFamily family) {
    switch (family) {
        case GraphFamily::GhzStar:
            return "ghz-star";
        case GraphFamily::Path:
            return "path";
        case GraphFamily::Cycle:
            return "cycle";
        case GraphFamily::Grid:
            return "grid";
        case GraphFamily::Complete:
            return "complete";
        case GraphFamily::Wheel:
            return "wheel";
        case GraphFamily::Cube:
            return "cube";
        case GraphFamily::Custom:
            return "custom";
    }
    return "?";
}

std::optional<GraphFamily> parse_family(std::string_view name) {
    for (auto f : {GraphFamily::GhzStar, GraphFamily::Path, GraphFamily::Cycle, GraphFamily::Grid,
                   GraphFamily::Complete, GraphFamily::Wheel, GraphFamily::Cube, GraphFamily::Custom}) {
        if (family_name(f) == name) return f;
    }
    if (name == "star" || name == "ghz") return GraphFamily::GhzStar;
    return std::nullopt;
}

std::string GraphSpec::label() const {
    const std::string base(family_name(family));
    if (family == GraphFamily::Grid) return base + "-" + std::to_string(rows) + "x" + std::to_string(cols);
    return base + "-" + std::to_string(n);
}

Graph star_graph(std::size_t n, std::size_t center) {
    if (n < 1 || center >= n) throw std::invalid_argument("star needs n >= 1 and a center in range");
    Graph g(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (v != center) g.add_edge(center, v);
    }
    return g;
}

Graph path_graph(std::size_t n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    Graph g(n);
    for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(std::size_t n) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    }
    return g;
}

Graph make_graph(const GraphSpec& spec) {
    switch (spec.family) {
        case GraphFamily::GhzStar:
            if (spec.n < 2) throw std::invalid_argument("ghz-star needs n >= 2");
            return star_graph(spec.n, spec.center);
        case GraphFamily::Path:
            return path_graph(spec.n);
        case GraphFamily::Cycle:
            return cycle_graph(spec.n);
        case GraphFamily::Complete:
            return complete_graph(spec.n);
        case GraphFamily::Grid: {
            if (spec.rows < 1 || spec.cols < 1) throw std::invalid_argument("grid needs rows, cols >= 1");
            Graph g(spec.rows * spec.cols);
            for (std::size_t r = 0; r < spec.rows; ++r) {
                for (std::size_t c = 0; c < spec.cols; ++c) {
                    const std::size_t v = r * spec.cols + c;
                    if (c + 1 < spec.cols) g.add_edge(v, v + 1);
                    if (r + 1 < spec.rows) g.add_edge(v, v + spec.cols);
                }
            }
            return g;
        }
        case GraphFamily::Wheel: {
            if (spec.n < 4) throw std::invalid_argument("wheel needs n >= 4");
            Graph g = cycle_graph(spec.n - 1);
            Graph wheel(spec.n, g.edges());
            for (std::size_t v = 0; v + 1 < spec.n; ++v) wheel.add_edge(v, spec.n - 1);
            return wheel;
        }
        case GraphFamily::Cube: {
            if (spec.n < 2 || !std::has_single_bit(spec.n)) {
                throw std::invalid_argument("cube needs n = 2^d with d >= 1");
            }
            Graph g(spec.n);
            for (std::size_t v = 0; v < spec.n; ++v) {
                for (std::size_t bit = 1; bit < spec.n; bit <<= 1) {
                    if ((v & bit) == 0) g.add_edge(v, v | bit);
                }
            }
            return g;
        }
        case GraphFamily::Custom:
            if (spec.n < 1) throw std::invalid_argument("custom graph needs n >= 1");
            return Graph(spec.n, spec.edges);
    }
    throw std::invalid_argument("unknown graph family");
}

Graph local_complement(const Graph& graph, std::size_t v) {
    if (v >= graph.num_vertices()) throw std::out_of_range("local complementation vertex out of range");
    Graph out = graph;
    const VertexSet nbrs = graph.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) out.toggle_edge(nbrs[i], nbrs[j]);
    }
    return out;
}

bool is_vertex_cover(const Graph& graph, std::span<const std::size_t> vertices) {
    std::vector<bool> in(graph.num_vertices(), false);
    for (std::size_t v : vertices) {
        if (v >= graph.num_vertices()) throw std::out_of_range("cover vertex out of range");
        in[v] = true;
    }
    for (const auto& [u, v] : graph.edges()) {
        if (!in[u] && !in[v]) return false;
    }
    return true;
}

std::optional<VertexSet> shrink_to_minimal_cover(const Graph& graph,
                                                  std::span<const std::size_t> candidates, Rng& rng) {
    if (!is_vertex_cover(graph, candidates)) return std::nullopt;
    VertexSet order(candidates.begin(), candidates.end());
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    // Fisher-Yates with the injected stream.
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    std::vector<bool> in(graph.num_vertices(), false);
    for (std::size_t v : order) in[v] = true;
    // One pass suffices: a vertex that is needed stays needed as the set shrinks.
    for (std::size_t v : order) {
        bool needed = false;
        for (std::size_t u : graph.neighbors(v)) {
            if (!in[u]) {
                needed = true;
                break;
            }
        }
        if (!needed) in[v] = false;
    }
    VertexSet result;
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
        if (in[v]) result.push_back(v);
    }
    return result;
}

std::optional<std::size_t> star_center(const Graph& graph) {
    const std::size_t n = graph.num_vertices();
    if (n < 2 || graph.num_edges() != n - 1) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c) {
        if (graph.degree(c) == n - 1) return c;
    }
    return std::nullopt;
}

std::string vertex_set_string(std::span<const std::size_t> vertices) {
    std::string out = "{";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(vertices[i] + 1);
    }
    out.push_back('}');
    return out;
}

}  // namespace piecemaker
