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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "piecemaker/graph.hpp"
#include "piecemaker/lc_orbit.hpp"
#include "piecemaker/montecarlo.hpp"
#include "piecemaker/network_model.hpp"
#include "piecemaker/protocols.hpp"

namespace piecemaker {

/// Invalid configuration; `key()` names the offending config key.
class ConfigError : public std::invalid_argument {
  public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

/// Validated experiment description. External vertex numbers (center,
/// edges) are 1-based in the file and 0-based here.
struct ScenarioConfig {
    std::vector<ProtocolKind> protocols;
    GraphSpec target_spec;
    Graph target;

    /// Homogeneous sweep values.
    std::vector<double> p_links;
    /// Explicit per-node probabilities (one scenario).
    std::optional<std::vector<double>> p_link_per_node;
    /// Heterogeneous fiber spreads (km); non-empty selects the length model.
    std::vector<double> delta_ls;
    double gamma = kDefaultGamma;

    std::vector<double> p_depols;
    std::optional<double> tau;
    double delta_t = 1.0;

    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    std::size_t orbit_cap = kDefaultOrbitCap;
    HubMode hub = HubMode::Explicit;
    bool paired = false;
    NoiseMode noise_mode = NoiseMode::Tape;
    double threshold = 0.5;
    unsigned workers = 0;
    std::optional<std::filesystem::path> cache_dir;

    std::string target_label() const { return target_spec.label(); }
    /// Number of (p_link, p_depol, delta_L) cells described by the config.
    std::size_t num_cells() const;
};

/// "log-grid(a, b, k)": k log-spaced values from a to b inclusive.
std::vector<double> parse_grid(std::string_view text);

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::filesystem::path& path);

/// Sweep description for the listed protocols; `catalog` may be null unless
/// general-piecemaker is among them.
SweepSpec to_sweep_spec(const ScenarioConfig& config, std::vector<ProtocolKind> protocols,
                        std::shared_ptr<const CoverCatalog> catalog);

}  // namespace piecemaker
