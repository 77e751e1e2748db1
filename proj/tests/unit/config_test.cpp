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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

namespace piecemaker {
namespace {

// Expects a ConfigError naming `key`.
void expect_error(const std::string& text, const std::string& key) {
    try {
        parse_config_text(text);
        ADD_FAILURE() << "accepted: " << text;
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), key) << e.what();
        EXPECT_EQ(std::string(e.what()).rfind(key + ":", 0), 0u) << e.what();
    }
}

TEST(Config, MinimalWithDefaults) {
    const auto c = parse_config_text("protocol: ghz-piecemaker\nn: 3\np_link: 0.5\np_depol: 0.01\n");
    ASSERT_EQ(c.protocols.size(), 1u);
    EXPECT_EQ(c.protocols[0], ProtocolKind::GhzPiecemaker);
    EXPECT_EQ(c.target, star_graph(3, 0));
    EXPECT_EQ(c.target_label(), "ghz-star-3");
    EXPECT_EQ(c.p_links, std::vector<double>{0.5});
    EXPECT_EQ(c.p_depols, std::vector<double>{0.01});
    EXPECT_EQ(c.delta_t, 1.0);
    EXPECT_EQ(c.gamma, 0.2);
    EXPECT_EQ(c.trials, 100000u);
    EXPECT_EQ(c.hub, HubMode::Explicit);
    EXPECT_FALSE(c.paired);
    EXPECT_EQ(c.num_cells(), 1u);

    const auto nine = parse_config_text("protocol: factory\nn: 9\np_link: 0.5\np_depol: 0.01\n");
    EXPECT_EQ(nine.trials, 10000u);
}

TEST(Config, LogGrid) {
    const auto c = parse_config_text(
        "protocol: [ghz-piecemaker, factory]\nn: 9\np_link: log-grid(1e-3, 1, 20)\np_depol: log-grid(1e-3, 1, 20)\n");
    EXPECT_EQ(c.num_cells(), 400u);
    EXPECT_EQ(c.protocols.size(), 2u);
    ASSERT_EQ(c.p_links.size(), 20u);
    EXPECT_EQ(c.p_links.front(), 1e-3);
    EXPECT_EQ(c.p_links.back(), 1.0);
    for (std::size_t k = 0; k < 20; ++k) EXPECT_NEAR(c.p_links[k], std::pow(10.0, -3.0 + 3.0 * k / 19), 1e-15);

    EXPECT_EQ(parse_grid("log-grid(0.01, 1, 3)"), (std::vector<double>{0.01, 0.1, 1.0}));
    EXPECT_THROW(parse_grid("log-grid(0, 1, 3)"), std::invalid_argument);
    EXPECT_THROW(parse_grid("log-grid(0.1, 1)"), std::invalid_argument);
    EXPECT_THROW(parse_grid("lin-grid(0.1, 1, 3)"), std::invalid_argument);
}

TEST(Config, Heterogeneous) {
    const auto c = parse_config_text("protocol: ghz-piecemaker\nn: 5\ndelta_L: 4\ngamma: 0.2\np_depol: 0.001\n");
    EXPECT_EQ(c.delta_ls, std::vector<double>{4.0});
    const auto spec = to_sweep_spec(c, c.protocols, nullptr);
    const auto cells = sweep_cells(spec);
    ASSERT_EQ(cells.size(), 1u);
    const auto lengths = heterogeneous_lengths(5, 4.0);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(cells[0].link.p_link[i], link_probability_from_length(lengths[i], 0.2));
    }
}

TEST(Config, TargetsAndOptions) {
    const auto grid = parse_config_text(
        "protocol: mvc\ntarget: grid\nrows: 2\ncols: 3\np_link: [0.2, 0.4]\np_depol: 0.01\ntrials: 50\nseed: 9\n"
        "paired: true\nworkers: 2\nnoise_mode: per-round\n");
    EXPECT_EQ(grid.target.num_vertices(), 6u);
    EXPECT_EQ(grid.trials, 50u);
    EXPECT_EQ(grid.seed, 9u);
    EXPECT_TRUE(grid.paired);
    EXPECT_EQ(grid.workers, 2u);
    EXPECT_EQ(grid.noise_mode, NoiseMode::PerRound);
    EXPECT_EQ(grid.num_cells(), 2u);

    const auto custom = parse_config_text(
        "protocol: general-piecemaker\ntarget: custom\nn: 4\nedges: [[1, 3], [1, 4], [2, 3], [2, 4]]\n"
        "p_link: 0.3\np_depol: 0.01\n");
    EXPECT_EQ(custom.target, Graph::from_one_based(4, std::vector<Edge>{{1, 3}, {1, 4}, {2, 3}, {2, 4}}));

    const auto star = parse_config_text(
        "protocol: ghz-piecemaker\nn: 4\ncenter: 2\np_link: 0.3\np_depol: 0.01\npiecemaker_qubit: virtual\n");
    EXPECT_EQ(star.target, star_graph(4, 1));
    EXPECT_EQ(star.hub, HubMode::Virtual);

    const auto tau = parse_config_text("protocol: factory\nn: 3\np_link: 0.3\ntau: 100\ndelta_t: 2\n");
    ASSERT_TRUE(tau.tau.has_value());
    const auto spec = to_sweep_spec(tau, tau.protocols, nullptr);
    EXPECT_NEAR(sweep_cells(spec)[0].link.effective_p_depol(), 1 - std::exp(-0.02), 1e-15);

    const auto per_node = parse_config_text(
        "protocol: factory\nn: 3\np_link_per_node: [0.1, 0.2, 0.3]\np_depol: 0.01\n");
    ASSERT_TRUE(per_node.p_link_per_node.has_value());
    EXPECT_EQ(per_node.num_cells(), 1u);
}

TEST(Config, ErrorsNameTheKey) {
    const std::string base = "protocol: ghz-piecemaker\nn: 3\n";
    expect_error(base + "p_link: 0.5\np_depol: 0.01\nfoo: 1\n", "foo");
    expect_error("n: 3\np_link: 0.5\np_depol: 0.01\n", "protocol");
    expect_error("protocol: teleport\nn: 3\np_link: 0.5\np_depol: 0.01\n", "protocol");
    expect_error(base + "p_link: 1.5\np_depol: 0.01\n", "p_link");
    expect_error(base + "p_link: 0\np_depol: 0.01\n", "p_link");
    expect_error(base + "p_link: 0.5\np_depol: -0.1\n", "p_depol");
    expect_error(base + "p_link: 0.5\n", "p_depol");
    expect_error(base + "p_depol: 0.01\n", "p_link");
    expect_error(base + "p_link: 0.5\np_depol: 0.01\ntau: 10\n", "tau");
    expect_error(base + "p_link: 0.5\ndelta_L: 2\np_depol: 0.01\n", "delta_L");
    expect_error(base + "p_link: 0.5\ngamma: 0.3\np_depol: 0.01\n", "gamma");
    expect_error(base + "p_link: 0.5\np_depol: 0.01\ntrials: 0\n", "trials");
    expect_error(base + "p_link: 0.5\np_depol: 0.01\ntrials: abc\n", "trials");
    expect_error(base + "p_link: 0.5\np_depol: 0.01\npiecemaker_qubit: none\n", "piecemaker_qubit");
    expect_error(base + "p_link: 0.5\np_depol: 0.01\ncenter: 4\n", "center");
    expect_error(base + "p_link: 0.5\np_depol: 0.01\nthreshold: 0\n", "threshold");
    expect_error(base + "p_link: 0.5\np_depol: 0.01\np_link_per_node: [0.1, 0.2, 0.3]\n", "p_link_per_node");
    expect_error("protocol: ghz-piecemaker\ntarget: path\nn: 4\np_link: 0.5\np_depol: 0.01\n", "target");
    expect_error("protocol: mvc\ntarget: grid\nn: 4\np_link: 0.5\np_depol: 0.01\n", "rows");
    expect_error("protocol: mvc\ntarget: custom\nn: 4\np_link: 0.5\np_depol: 0.01\n", "edges");
    expect_error("protocol: mvc\ntarget: custom\nn: 3\nedges: [[1, 1]]\np_link: 0.5\np_depol: 0.01\n", "edges");
    expect_error("protocol: mvc\ntarget: cycle\nn: 4\nedges: [[1, 2]]\np_link: 0.5\np_depol: 0.01\n", "edges");
    expect_error("protocol: mvc\ntarget: cube\nn: 6\np_link: 0.5\np_depol: 0.01\n", "n");
    expect_error("protocol: mvc\ntarget: hexagon\nn: 6\np_link: 0.5\np_depol: 0.01\n", "target");
    expect_error("- just\n- a list\n", "config");
    expect_error("protocol: [mvc\n", "config");
}

TEST(Config, ReadsFiles) {
    const auto path = std::filesystem::temp_directory_path() / "piecemaker-config-test.yaml";
    {
        std::ofstream out(path);
        out << "protocol: factory\nn: 3\np_link: 0.5\np_depol: 0.01\n";
    }
    EXPECT_EQ(parse_config_file(path).protocols[0], ProtocolKind::Factory);
    std::filesystem::remove(path);
    try {
        parse_config_file(path);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "config");
    }
}

}  // namespace
}  // namespace piecemaker
