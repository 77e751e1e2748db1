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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "piecemaker/config.hpp"
#include "piecemaker/montecarlo.hpp"

namespace piecemaker {

enum class Subcommand { Single, Sweep, Compare, Threshold, Covers };

std::string_view subcommand_name(Subcommand command);
std::optional<Subcommand> parse_subcommand(std::string_view name);

struct CommandOptions {
    /// Output file; defaults to "<subcommand>.csv" (covers: the cache file name).
    std::optional<std::filesystem::path> out;
    /// Also write a JSON mirror next to the CSV.
    bool json = false;
};

struct CommandResult {
    std::vector<std::filesystem::path> written;
    /// Human-readable summary for stdout.
    std::string summary;
};

/// Runs a subcommand end to end. Every file is written via write-then-rename.
CommandResult run_command(Subcommand command, const ScenarioConfig& config, const CommandOptions& options);

/// Shortest form with 17 significant digits; round-trips exactly.
std::string format_double(double value);

inline constexpr std::string_view kSchemaLine = "schema=1";

std::string sweep_csv(const SweepTable& table);
std::string sweep_json(const SweepTable& table);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string compare_json(const std::vector<CompareRow>& rows);
std::string threshold_csv(const SweepTable& table, double threshold);
std::string threshold_json(const SweepTable& table, double threshold);

}  // namespace piecemaker
