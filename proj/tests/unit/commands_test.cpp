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
#include "piecemaker/commands.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "piecemaker/atomic_file.hpp"
#include "piecemaker/cover_catalog.hpp"

namespace piecemaker {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(fields);
    }
    return rows;
}

class CommandsTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("piecemaker-commands-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CommandResult run(Subcommand cmd, const std::string& config, const std::string& out, bool json = false) {
        CommandOptions o;
        o.out = dir_ / out;
        o.json = json;
        return run_command(cmd, parse_config_text(config), o);
    }

    fs::path dir_;
};

TEST(FormatDouble, RoundTripsWithSeventeenDigits) {
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    for (double v : {1e-3, 0.31622776601683794, 1.0 / 3.0, 123456.789, 2.5e-10}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(Subcommands, Names) {
    for (auto c : {Subcommand::Single, Subcommand::Sweep, Subcommand::Compare, Subcommand::Threshold,
                   Subcommand::Covers}) {
        EXPECT_EQ(parse_subcommand(subcommand_name(c)), c);
    }
    EXPECT_FALSE(parse_subcommand("plot").has_value());
}

TEST_F(CommandsTest, SweepSchemaAndReproducibility) {
    const std::string cfg =
        "protocol: [ghz-piecemaker, factory]\nn: 3\np_link: [0.3, 0.9]\np_depol: [0.01, 0.1]\ntrials: 2000\nseed: 5\n";
    const auto r = run(Subcommand::Sweep, cfg, "a.csv", true);
    ASSERT_EQ(r.written.size(), 2u);
    const auto text = slurp(dir_ / "a.csv");
    const auto rows = csv_rows(text);
    ASSERT_EQ(rows.size(), 2u + 8u);
    EXPECT_EQ(rows[0], std::vector<std::string>{"schema=1"});
    EXPECT_EQ(rows[1], (std::vector<std::string>{"protocol", "target", "n", "p_link", "p_depol", "delta_L", "trials",
                                                 "mean_fidelity", "stderr", "mean_completion_rounds"}));
    for (std::size_t i = 2; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 10u);
        EXPECT_EQ(rows[i][1], "ghz-star-3");
        EXPECT_EQ(rows[i][6], "2000");
    }

    run(Subcommand::Sweep, cfg, "b.csv");
    EXPECT_EQ(slurp(dir_ / "b.csv"), text);

    // With more workers the file is still byte-identical.
    run(Subcommand::Sweep, cfg + "workers: 3\n", "c.csv");
    EXPECT_EQ(slurp(dir_ / "c.csv"), text);

    // The JSON mirror carries the same fields and values.
    const auto doc = nlohmann::json::parse(slurp(dir_ / "a.json"));
    EXPECT_EQ(doc["schema"], 1);
    ASSERT_EQ(doc["rows"].size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) {
        const auto& o = doc["rows"][i];
        const auto& f = rows[i + 2];
        EXPECT_EQ(o["protocol"], f[0]);
        EXPECT_EQ(o["p_link"].get<double>(), std::stod(f[3]));
        EXPECT_EQ(o["mean_fidelity"].get<double>(), std::stod(f[7]));
        EXPECT_EQ(o["stderr"].get<double>(), std::stod(f[8]));
    }
    for (const auto& e : fs::directory_iterator(dir_)) {
        EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos) << e.path();
    }
}

TEST_F(CommandsTest, SingleNeedsOneCell) {
    const auto r = run(Subcommand::Single, "protocol: ghz-piecemaker\nn: 3\np_link: 0.5\np_depol: 0\ntrials: 100\n",
                       "s.csv");
    EXPECT_NE(r.summary.find("F = 1"), std::string::npos) << r.summary;
    EXPECT_THROW(run(Subcommand::Single,
                     "protocol: ghz-piecemaker\nn: 3\np_link: [0.5, 0.6]\np_depol: 0\ntrials: 100\n", "s.csv"),
                 ConfigError);
}

TEST_F(CommandsTest, CompareNoiselessIsZero) {
    run(Subcommand::Compare,
        "protocol: [ghz-piecemaker, factory]\nn: 3\np_link: [0.1, 0.5]\np_depol: 0\ntrials: 500\n", "cmp.csv");
    const auto rows = csv_rows(slurp(dir_ / "cmp.csv"));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1].size(), 16u);
    EXPECT_EQ(rows[1][12], "delta_F");
    for (std::size_t i = 2; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][12], "0");
        EXPECT_EQ(rows[i][14], "false");
    }
    EXPECT_THROW(run(Subcommand::Compare, "protocol: factory\nn: 3\np_link: 0.5\np_depol: 0\n", "x.csv"), ConfigError);
}

TEST_F(CommandsTest, ThresholdFiles) {
    run(Subcommand::Threshold,
        "protocol: [ghz-piecemaker, factory]\nn: 3\np_link: [0.05, 0.3, 0.9]\np_depol: [0.001, 0.3]\n"
        "trials: 2000\nthreshold: 0.9\n",
        "th.csv");
    const auto rows = csv_rows(slurp(dir_ / "th.csv"));
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows[1], (std::vector<std::string>{"protocol", "target", "n", "delta_L", "threshold", "kind", "p_link",
                                                 "p_depol"}));
    std::size_t min_lines = 0;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 8u);
        EXPECT_TRUE(rows[i][5] == "min_p_link" || rows[i][5] == "max_p_depol") << rows[i][5];
        if (rows[i][5] == "min_p_link" && rows[i][7] == "0.001") ++min_lines;
    }
    // At p_depol = 0.001 and p_link = 0.9 both protocols clear 0.9 on three nodes.
    EXPECT_EQ(min_lines, 2u);
    EXPECT_TRUE(fs::exists(dir_ / "th.cells.csv"));
}

TEST_F(CommandsTest, CoversOnCycleEight) {
    run(Subcommand::Covers, "protocol: general-piecemaker\ntarget: cycle\nn: 8\np_link: 0.5\np_depol: 0\n",
        "cyc.txt");
    std::ifstream in(dir_ / "cyc.txt");
    const auto catalog = read_catalog(in);
    EXPECT_EQ(catalog.entries.size(), 62u);
    for (const auto& e : catalog.entries) EXPECT_EQ(e.cover.size(), 4u);

    // Without --out the file lands in cache_dir under its content-hash name.
    CommandOptions o;
    run_command(Subcommand::Covers,
                parse_config_text("protocol: mvc\ntarget: wheel\nn: 6\np_link: 0.5\np_depol: 0\ncache_dir: " +
                                  dir_.string() + "\n"),
                o);
    EXPECT_TRUE(fs::exists(dir_ / catalog_cache_name(make_graph(GraphSpec{GraphFamily::Wheel, 6}))));
}

TEST_F(CommandsTest, GeneralPiecemakerUsesCache) {
    const std::string cfg = "protocol: general-piecemaker\ntarget: path\nn: 4\np_link: 0.4\np_depol: 0.01\n"
                            "trials: 300\ncache_dir: " +
                            dir_.string() + "\n";
    run(Subcommand::Single, cfg, "g1.csv");
    EXPECT_TRUE(fs::exists(dir_ / catalog_cache_name(path_graph(4))));
    run(Subcommand::Single, cfg, "g2.csv");
    EXPECT_EQ(slurp(dir_ / "g1.csv"), slurp(dir_ / "g2.csv"));
}

TEST_F(CommandsTest, AtomicWrite) {
    const auto path = dir_ / "f.txt";
    write_file_atomically(path, "one\n");
    write_file_atomically(path, "two\n");
    EXPECT_EQ(slurp(path), "two\n");
    write_file_atomically(dir_ / "sub" / "g.txt", "x");
    EXPECT_EQ(slurp(dir_ / "sub" / "g.txt"), "x");
    // Renaming over a non-empty directory fails and the temporary is removed.
    EXPECT_THROW(write_file_atomically(dir_ / "sub", "y"), std::runtime_error);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir_)) {
        EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos) << e.path();
        ++files;
    }
    EXPECT_EQ(files, 2u);
}

#ifdef PIECEMAKER_CLI
int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(PIECEMAKER_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CommandsTest, CliEndToEnd) {
    const auto cfg = dir_ / "c.yaml";
    {
        std::ofstream out(cfg);
        out << "protocol: [ghz-piecemaker, factory]\nn: 3\np_link: 0.5\np_depol: 0.01\ntrials: 1000\n";
    }
    const auto log = dir_ / "log.txt";
    ASSERT_EQ(run_cli("sweep -c " + cfg.string() + " -o " + (dir_ / "o.csv").string() + " --seed 3 --workers 2",
                      log),
              0)
        << slurp(log);
    EXPECT_EQ(csv_rows(slurp(dir_ / "o.csv")).size(), 4u);
    ASSERT_EQ(run_cli("sweep -c " + cfg.string() + " -o " + (dir_ / "p.csv").string() + " --seed 3", log), 0);
    EXPECT_EQ(slurp(dir_ / "o.csv"), slurp(dir_ / "p.csv"));

    {
        std::ofstream out(cfg);
        out << "protocol: factory\nn: 3\np_link: 0.5\np_depol: 0.01\nbogus: 1\n";
    }
    EXPECT_EQ(run_cli("single -c " + cfg.string(), log), 1);
    EXPECT_NE(slurp(log).find("error: bogus: unknown key"), std::string::npos) << slurp(log);
    EXPECT_NE(run_cli("frobnicate", log), 0);
}
#endif

}  // namespace
}  // namespace piecemaker
