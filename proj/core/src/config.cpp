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

#include "piecemaker/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace piecemaker {

namespace {

const std::set<std::string> kKnownKeys = {
    "protocol", "target", "n",        "rows",      "cols",   "center",  "edges",           "p_link",
    "p_link_per_node", "delta_L", "gamma",   "p_depol",   "tau",    "delta_t", "trials",          "seed",
    "orbit_cap", "piecemaker_qubit", "paired", "threshold", "workers", "cache_dir", "noise_mode"};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double to_number(const std::string& text, const std::string& key) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
    if (pos != text.size() || !std::isfinite(value)) throw ConfigError(key, "expected a number, got '" + text + "'");
    return value;
}

double scalar_number(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) throw ConfigError(key, "expected a number");
    return to_number(trim(node.Scalar()), key);
}

std::uint64_t scalar_count(const YAML::Node& node, const std::string& key, std::uint64_t min_value) {
    const double v = scalar_number(node, key);
    if (v != std::floor(v) || v < static_cast<double>(min_value) || v > 9.0e15) {
        throw ConfigError(key, "expected an integer >= " + std::to_string(min_value));
    }
    return static_cast<std::uint64_t>(v);
}

bool scalar_bool(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) throw ConfigError(key, "expected true or false");
    const std::string v = trim(node.Scalar());
    if (v == "true" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "no" || v == "off") return false;
    throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::string scalar_text(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) throw ConfigError(key, "expected a string");
    return trim(node.Scalar());
}

/// Scalar, list, or "log-grid(a,b,k)".
std::vector<double> number_list(const YAML::Node& node, const std::string& key) {
    if (node.IsSequence()) {
        std::vector<double> out;
        for (const auto& item : node) out.push_back(scalar_number(item, key));
        if (out.empty()) throw ConfigError(key, "list is empty");
        return out;
    }
    if (!node.IsScalar()) throw ConfigError(key, "expected a number, a list or log-grid(a, b, k)");
    const std::string text = trim(node.Scalar());
    if (text.rfind("log-grid", 0) == 0) {
        try {
            return parse_grid(text);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(key, e.what());
        }
    }
    return {to_number(text, key)};
}

std::vector<Edge> parse_edges(const YAML::Node& node) {
    std::vector<Edge> edges;
    auto endpoint = [](const std::string& text) -> std::size_t {
        const double v = to_number(text, "edges");
        if (v != std::floor(v) || v < 1) throw ConfigError("edges", "vertices are 1-based integers, got '" + text + "'");
        return static_cast<std::size_t>(v);
    };
    if (node.IsScalar()) {
        // "1-2 2-3" style
        std::istringstream in(node.Scalar());
        std::string token;
        while (in >> token) {
            if (token == "-") continue;
            const auto dash = token.find('-');
            if (dash == std::string::npos || dash == 0) throw ConfigError("edges", "bad edge '" + token + "'");
            edges.emplace_back(endpoint(token.substr(0, dash)), endpoint(token.substr(dash + 1)));
        }
        return edges;
    }
    if (!node.IsSequence()) throw ConfigError("edges", "expected a list of [u, v] pairs");
    for (const auto& item : node) {
        if (!item.IsSequence() || item.size() != 2) throw ConfigError("edges", "each edge must be a pair [u, v]");
        edges.emplace_back(endpoint(trim(item[0].Scalar())), endpoint(trim(item[1].Scalar())));
    }
    return edges;
}

void require_range(const std::vector<double>& values, const std::string& key, double lo, double hi, bool lo_open) {
    for (double v : values) {
        if ((lo_open ? !(v > lo) : !(v >= lo)) || !(v <= hi)) {
            std::ostringstream msg;
            msg << "value " << v << " outside " << (lo_open ? "(" : "[") << lo << ", " << hi << "]";
            throw ConfigError(key, msg.str());
        }
    }
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

std::size_t ScenarioConfig::num_cells() const {
    std::size_t links = p_link_per_node ? 1 : (delta_ls.empty() ? p_links.size() : delta_ls.size());
    return links * p_depols.size();
}

std::vector<double> parse_grid(std::string_view text) {
    const std::string s = trim(text);
    const std::string prefix = "log-grid(";
    if (s.rfind(prefix, 0) != 0 || s.back() != ')') {
        throw std::invalid_argument("grid spec must look like log-grid(a, b, k), got '" + s + "'");
    }
    std::vector<std::string> parts;
    std::string inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
    std::size_t start = 0;
    while (true) {
        const auto comma = inner.find(',', start);
        parts.push_back(trim(inner.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3) throw std::invalid_argument("log-grid needs three arguments (a, b, k)");
    const double a = to_number(parts[0], "log-grid");
    const double b = to_number(parts[1], "log-grid");
    const double kd = to_number(parts[2], "log-grid");
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("log-grid bounds must be positive");
    if (kd != std::floor(kd) || kd < 1 || kd > 100000) throw std::invalid_argument("log-grid count must be a positive integer");
    const auto k = static_cast<std::size_t>(kd);
    if (k == 1) return {a};
    std::vector<double> out(k);
    const double la = std::log10(a), lb = std::log10(b);
    for (std::size_t i = 0; i < k; ++i) {
        out[i] = std::pow(10.0, la + (lb - la) * static_cast<double>(i) / static_cast<double>(k - 1));
    }
    out.front() = a;
    out.back() = b;
    return out;
}

ScenarioConfig parse_config_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("config", std::string("malformed document: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("config", "expected a key-value document");
    for (const auto& kv : root) {
        const std::string key = kv.first.as<std::string>();
        if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
    }

    ScenarioConfig cfg;
    if (!root["protocol"]) throw ConfigError("protocol", "required");
    {
        const auto node = root["protocol"];
        std::vector<std::string> names;
        if (node.IsSequence()) {
            for (const auto& item : node) names.push_back(scalar_text(item, "protocol"));
        } else {
            names.push_back(scalar_text(node, "protocol"));
        }
        if (names.empty()) throw ConfigError("protocol", "list is empty");
        for (const auto& name : names) {
            const auto kind = parse_protocol(name);
            if (!kind) {
                throw ConfigError("protocol", "unknown protocol '" + name +
                                                  "' (ghz-piecemaker, mvc, general-piecemaker, factory)");
            }
            if (std::find(cfg.protocols.begin(), cfg.protocols.end(), *kind) != cfg.protocols.end()) {
                throw ConfigError("protocol", "'" + name + "' listed twice");
            }
            cfg.protocols.push_back(*kind);
        }
    }

    // Target graph.
    GraphSpec& spec = cfg.target_spec;
    if (root["target"]) {
        const std::string name = scalar_text(root["target"], "target");
        const auto family = parse_family(name);
        if (!family) {
            throw ConfigError("target", "unknown graph family '" + name +
                                            "' (ghz-star, path, cycle, grid, complete, wheel, cube, custom)");
        }
        spec.family = *family;
    }
    if (root["n"]) spec.n = scalar_count(root["n"], "n", 1);
    if (root["rows"]) spec.rows = scalar_count(root["rows"], "rows", 1);
    if (root["cols"]) spec.cols = scalar_count(root["cols"], "cols", 1);
    if (spec.family == GraphFamily::Grid) {
        if (!spec.rows || !spec.cols) throw ConfigError("rows", "grid targets need rows and cols");
        if (spec.n && spec.n != spec.rows * spec.cols) throw ConfigError("n", "must equal rows * cols for a grid");
        spec.n = spec.rows * spec.cols;
    } else if (root["rows"] || root["cols"]) {
        throw ConfigError(root["rows"] ? "rows" : "cols", "only valid for grid targets");
    }
    if (!spec.n) throw ConfigError("n", "required");
    if (root["center"]) {
        if (spec.family != GraphFamily::GhzStar) throw ConfigError("center", "only valid for ghz-star targets");
        const auto c = scalar_count(root["center"], "center", 1);
        if (c > spec.n) throw ConfigError("center", "must be between 1 and n");
        spec.center = static_cast<std::size_t>(c - 1);
    }
    if (root["edges"]) {
        if (spec.family != GraphFamily::Custom) throw ConfigError("edges", "only valid for custom targets");
        for (const auto& [u, v] : parse_edges(root["edges"])) spec.edges.emplace_back(u - 1, v - 1);
    } else if (spec.family == GraphFamily::Custom) {
        throw ConfigError("edges", "required for custom targets");
    }
    try {
        cfg.target = make_graph(spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(spec.family == GraphFamily::Custom ? "edges" : "n", e.what());
    }
    if (std::find(cfg.protocols.begin(), cfg.protocols.end(), ProtocolKind::GhzPiecemaker) != cfg.protocols.end() &&
        !star_center(cfg.target)) {
        throw ConfigError("target", "ghz-piecemaker needs a ghz-star target");
    }

    // Links.
    const bool has_p_link = static_cast<bool>(root["p_link"]);
    const bool has_per_node = static_cast<bool>(root["p_link_per_node"]);
    const bool has_delta_l = static_cast<bool>(root["delta_L"]);
    if (has_p_link + has_per_node + has_delta_l > 1) {
        throw ConfigError(has_delta_l ? "delta_L" : "p_link_per_node",
                          "p_link, p_link_per_node and delta_L are mutually exclusive");
    }
    if (!has_p_link && !has_per_node && !has_delta_l) throw ConfigError("p_link", "required (or p_link_per_node / delta_L)");
    if (root["gamma"]) {
        if (!has_delta_l) throw ConfigError("gamma", "only used together with delta_L");
        cfg.gamma = scalar_number(root["gamma"], "gamma");
        if (!(cfg.gamma >= 0.0)) throw ConfigError("gamma", "must be non-negative");
    }
    if (has_p_link) {
        cfg.p_links = number_list(root["p_link"], "p_link");
        require_range(cfg.p_links, "p_link", 0.0, 1.0, true);
    }
    if (has_per_node) {
        const auto node = root["p_link_per_node"];
        if (!node.IsSequence()) throw ConfigError("p_link_per_node", "expected a list with one entry per node");
        std::vector<double> values;
        for (const auto& item : node) values.push_back(scalar_number(item, "p_link_per_node"));
        if (values.size() != spec.n) {
            throw ConfigError("p_link_per_node", "expected " + std::to_string(spec.n) + " entries, got " +
                                                     std::to_string(values.size()));
        }
        require_range(values, "p_link_per_node", 0.0, 1.0, true);
        cfg.p_link_per_node = std::move(values);
    }
    if (has_delta_l) {
        cfg.delta_ls = number_list(root["delta_L"], "delta_L");
        for (double dl : cfg.delta_ls) {
            try {
                heterogeneous_lengths(spec.n, dl);
            } catch (const std::invalid_argument& e) {
                throw ConfigError("delta_L", e.what());
            }
        }
    }

    // Memory noise.
    if (root["delta_t"]) {
        cfg.delta_t = scalar_number(root["delta_t"], "delta_t");
        if (!(cfg.delta_t > 0.0)) throw ConfigError("delta_t", "must be positive");
    }
    if (root["tau"] && root["p_depol"]) throw ConfigError("tau", "give either tau or p_depol, not both");
    if (root["tau"]) {
        cfg.tau = scalar_number(root["tau"], "tau");
        if (!(*cfg.tau > 0.0)) throw ConfigError("tau", "must be positive");
        cfg.p_depols = {depolarizing_probability(cfg.delta_t, *cfg.tau)};
    } else if (root["p_depol"]) {
        cfg.p_depols = number_list(root["p_depol"], "p_depol");
        require_range(cfg.p_depols, "p_depol", 0.0, 1.0, false);
    } else {
        throw ConfigError("p_depol", "required (or tau)");
    }

    if (root["trials"]) cfg.trials = scalar_count(root["trials"], "trials", 1);
    if (!cfg.trials) cfg.trials = default_trials(spec.n);
    if (root["seed"]) cfg.seed = scalar_count(root["seed"], "seed", 0);
    if (root["orbit_cap"]) cfg.orbit_cap = static_cast<std::size_t>(scalar_count(root["orbit_cap"], "orbit_cap", 1));
    if (root["piecemaker_qubit"]) {
        const std::string mode = scalar_text(root["piecemaker_qubit"], "piecemaker_qubit");
        if (mode == "explicit") {
            cfg.hub = HubMode::Explicit;
        } else if (mode == "virtual") {
            cfg.hub = HubMode::Virtual;
        } else {
            throw ConfigError("piecemaker_qubit", "expected explicit or virtual, got '" + mode + "'");
        }
    }
    if (root["paired"]) cfg.paired = scalar_bool(root["paired"], "paired");
    if (root["noise_mode"]) {
        const std::string mode = scalar_text(root["noise_mode"], "noise_mode");
        if (mode == "tape") {
            cfg.noise_mode = NoiseMode::Tape;
        } else if (mode == "per-round") {
            cfg.noise_mode = NoiseMode::PerRound;
        } else {
            throw ConfigError("noise_mode", "expected tape or per-round, got '" + mode + "'");
        }
    }
    if (root["threshold"]) {
        cfg.threshold = scalar_number(root["threshold"], "threshold");
        if (!(cfg.threshold > 0.0 && cfg.threshold <= 1.0)) throw ConfigError("threshold", "must be in (0, 1]");
    }
    if (root["workers"]) cfg.workers = static_cast<unsigned>(scalar_count(root["workers"], "workers", 1));
    if (root["cache_dir"]) cfg.cache_dir = std::filesystem::path(scalar_text(root["cache_dir"], "cache_dir"));
    return cfg;
}

ScenarioConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

SweepSpec to_sweep_spec(const ScenarioConfig& config, std::vector<ProtocolKind> protocols,
                        std::shared_ptr<const CoverCatalog> catalog) {
    SweepSpec spec;
    spec.protocols = std::move(protocols);
    spec.target = config.target;
    spec.target_label = config.target_label();
    spec.p_links = config.p_links;
    spec.p_depols = config.p_depols;
    spec.delta_ls = config.delta_ls;
    spec.p_link_per_node = config.p_link_per_node;
    spec.gamma = config.gamma;
    spec.delta_t = config.delta_t;
    spec.trials = config.trials;
    spec.seed = config.seed;
    spec.hub = config.hub;
    spec.paired = config.paired;
    spec.noise_mode = config.noise_mode;
    spec.catalog = std::move(catalog);
    spec.workers = config.workers;
    return spec;
}

}  // namespace piecemaker
