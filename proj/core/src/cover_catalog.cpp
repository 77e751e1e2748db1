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

#include "piecemaker/cover_catalog.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "piecemaker/atomic_file.hpp"

namespace piecemaker {

namespace {

constexpr std::string_view kCatalogHeader = "piecemaker-catalog 1";

using Mask = std::uint32_t;

VertexSet mask_to_set(Mask mask) {
    VertexSet out;
    while (mask) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

// Marks V \ T for every independent set T, i.e. every vertex cover.
void mark_covers(const std::vector<std::uint16_t>& adj, std::size_t v, Mask chosen, Mask blocked, Mask full,
                 std::vector<std::uint8_t>& is_cover) {
    if (v == adj.size()) {
        is_cover[full & ~chosen] = 1;
        return;
    }
    mark_covers(adj, v + 1, chosen, blocked, full, is_cover);
    if (!((blocked >> v) & 1u)) {
        mark_covers(adj, v + 1, chosen | (Mask{1} << v), blocked | adj[v], full, is_cover);
    }
}

bool covers(const std::vector<std::uint16_t>& adj, Mask cover, Mask full) {
    Mask rest = full & ~cover;
    while (rest) {
        const auto u = static_cast<std::size_t>(std::countr_zero(rest));
        if (adj[u] & ~cover & full) return false;
        rest &= rest - 1;
    }
    return true;
}

std::string join_vertices(std::span<const std::size_t> vertices) {
    if (vertices.empty()) return "-";
    std::string out;
    for (std::size_t v : vertices) {
        if (!out.empty()) out.push_back(' ');
        out += std::to_string(v + 1);
    }
    return out;
}

std::vector<std::size_t> parse_vertices(const std::string& field, std::size_t n, const std::string& what) {
    std::vector<std::size_t> out;
    if (field == "-") return out;
    std::istringstream in(field);
    std::string token;
    while (in >> token) {
        std::size_t pos = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(token, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != token.size() || value == 0 || value > n) {
            throw std::runtime_error("catalog: bad vertex '" + token + "' in " + what);
        }
        out.push_back(value - 1);
    }
    return out;
}

Graph parse_edges(const std::string& field, std::size_t n, const std::string& what) {
    std::vector<Edge> edges;
    if (field != "-") {
        std::istringstream in(field);
        std::string token;
        while (in >> token) {
            const auto dash = token.find('-');
            if (dash == std::string::npos) throw std::runtime_error("catalog: bad edge '" + token + "' in " + what);
            const auto a = parse_vertices(token.substr(0, dash), n, what);
            const auto b = parse_vertices(token.substr(dash + 1), n, what);
            if (a.size() != 1 || b.size() != 1) throw std::runtime_error("catalog: bad edge '" + token + "' in " + what);
            edges.emplace_back(a[0], b[0]);
        }
    }
    try {
        return Graph(n, edges);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("catalog: invalid " + what + ": " + e.what());
    }
}

}  // namespace

std::optional<std::size_t> CoverCatalog::first_contained(const std::vector<bool>& stored) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& cover = entries[i].cover;
        if (std::all_of(cover.begin(), cover.end(), [&](std::size_t v) { return v < stored.size() && stored[v]; })) {
            return i;
        }
    }
    return std::nullopt;
}

CoverCatalog minimal_local_covers(const Graph& target, std::size_t orbit_cap) {
    const LcOrbit orbit = LcOrbit::enumerate(target, orbit_cap);
    const std::size_t n = target.num_vertices();
    const Mask full = static_cast<Mask>((std::uint64_t{1} << n) - 1);

    std::vector<std::uint8_t> is_cover(std::size_t{1} << n, 0);
    for (std::size_t i = 0; i < orbit.size(); ++i) mark_covers(orbit.adjacency(i), 0, 0, 0, full, is_cover);

    std::vector<Mask> minimal;
    for (Mask m = 0; m <= full; ++m) {
        if (!is_cover[m]) continue;
        bool is_minimal = true;
        for (Mask rest = m; rest && is_minimal; rest &= rest - 1) {
            if (is_cover[m & ~(rest & (~rest + 1))]) is_minimal = false;
        }
        if (is_minimal) minimal.push_back(m);
    }

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> first(minimal.size(), kNone);
    std::vector<std::size_t> witness(minimal.size(), kNone);
    std::vector<std::size_t> witness_edges(minimal.size(), 0);
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        const auto adj = orbit.adjacency(i);
        const std::size_t edges = orbit.edge_count(i);
        for (std::size_t k = 0; k < minimal.size(); ++k) {
            if (witness[k] != kNone && witness_edges[k] <= edges) continue;
            if (!covers(adj, minimal[k], full)) continue;
            if (first[k] == kNone) first[k] = i;
            witness[k] = i;
            witness_edges[k] = edges;
        }
    }

    CoverCatalog catalog;
    catalog.target = target;
    std::vector<std::size_t> order(minimal.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::vector<VertexSet> sets;
    for (Mask m : minimal) sets.push_back(mask_to_set(m));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (first[a] != first[b]) return first[a] < first[b];
        return sets[a] < sets[b];
    });
    for (std::size_t k : order) {
        catalog.entries.push_back({sets[k], orbit.graph(witness[k]), orbit.sequence(witness[k])});
    }
    return catalog;
}

std::vector<LocalGate> lc_sequence_cliffords(const std::vector<LcStep>& steps, const Graph& graph) {
    std::vector<Graph> path{graph};
    for (const auto& step : steps) {
        if (step.vertex >= graph.num_vertices()) {
            throw std::invalid_argument("LC step at vertex " + std::to_string(step.vertex + 1) + " is out of range");
        }
        path.push_back(local_complement(path.back(), step.vertex));
    }
    std::vector<LocalGate> gates;
    for (std::size_t k = steps.size(); k-- > 0;) {
        const std::size_t v = steps[k].vertex;
        gates.push_back({Gate::SQRT_X_DAG, v});
        for (std::size_t u : path[k + 1].neighbors(v)) gates.push_back({Gate::S, u});
    }
    return gates;
}

void write_catalog(const CoverCatalog& catalog, std::ostream& out) {
    const std::size_t n = catalog.target.num_vertices();
    const std::string target_edges = catalog.target.edge_list_string();
    out << kCatalogHeader << '\n';
    for (const auto& entry : catalog.entries) {
        std::vector<std::size_t> lc;
        for (const auto& step : entry.lc_sequence) lc.push_back(step.vertex);
        out << n << '\t' << target_edges << '\t' << join_vertices(entry.cover) << '\t'
            << entry.witness.edge_list_string() << '\t' << join_vertices(lc) << '\n';
    }
}

CoverCatalog read_catalog(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCatalogHeader) {
        throw std::runtime_error("catalog: missing or unsupported header (expected '" + std::string(kCatalogHeader) + "')");
    }
    CoverCatalog catalog;
    bool have_target = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        const std::string where = "line " + std::to_string(line_no);
        if (fields.size() != 5) throw std::runtime_error("catalog: expected 5 fields on " + where);
        std::size_t n = 0;
        try {
            n = std::stoul(fields[0]);
        } catch (const std::exception&) {
            throw std::runtime_error("catalog: bad vertex count on " + where);
        }
        if (n == 0) throw std::runtime_error("catalog: bad vertex count on " + where);
        Graph target = parse_edges(fields[1], n, "target on " + where);
        if (!have_target) {
            catalog.target = std::move(target);
            have_target = true;
        } else if (!(target == catalog.target)) {
            throw std::runtime_error("catalog: target graph changes on " + where);
        }
        CoverEntry entry;
        entry.cover = parse_vertices(fields[2], n, "cover on " + where);
        entry.witness = parse_edges(fields[3], n, "witness on " + where);
        for (std::size_t v : parse_vertices(fields[4], n, "LC sequence on " + where)) entry.lc_sequence.push_back({v});
        catalog.entries.push_back(std::move(entry));
    }
    if (!have_target) throw std::runtime_error("catalog: no records");
    return catalog;
}

std::string catalog_cache_name(const Graph& target) {
    const std::string key = std::to_string(target.num_vertices()) + ":" + target.edge_list_string();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return "catalog-" + hex + ".txt";
}

CoverCatalog load_or_compute_catalog(const Graph& target, std::size_t orbit_cap,
                                     const std::optional<std::filesystem::path>& cache_dir) {
    if (!cache_dir) return minimal_local_covers(target, orbit_cap);
    const auto path = *cache_dir / catalog_cache_name(target);
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        try {
            CoverCatalog cached = read_catalog(in);
            if (cached.target == target) return cached;
        } catch (const std::runtime_error&) {
            // Unreadable cache: fall through and rebuild it.
        }
    }
    CoverCatalog catalog = minimal_local_covers(target, orbit_cap);
    std::ostringstream out;
    write_catalog(catalog, out);
    write_file_atomically(path, out.str());
    return catalog;
}

}  // namespace piecemaker
