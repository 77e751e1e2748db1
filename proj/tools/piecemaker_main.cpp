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

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "piecemaker/commands.hpp"
#include "piecemaker/config.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> workers;
    std::optional<std::string> out;
    bool paired = false;
    bool json = false;
};

void add_common(CLI::App* sub, Flags& flags) {
    sub->add_option("-c,--config", flags.config, "YAML experiment description")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Override the config seed");
    sub->add_option("--trials", flags.trials, "Override the trial count")->check(CLI::PositiveNumber);
    sub->add_option("--workers", flags.workers, "Worker threads (default: PIECEMAKER_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("-o,--out", flags.out, "Output file");
    sub->add_flag("--paired", flags.paired, "Share arrivals and noise between compared protocols");
    sub->add_flag("--json", flags.json, "Also write a JSON mirror of the output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate Piecemaker and Factory entanglement distribution over a star network"};
    app.require_subcommand(1);
    Flags flags;
    for (auto command : {piecemaker::Subcommand::Single, piecemaker::Subcommand::Sweep, piecemaker::Subcommand::Compare,
                         piecemaker::Subcommand::Threshold, piecemaker::Subcommand::Covers}) {
        const char* help = "";
        switch (command) {
            case piecemaker::Subcommand::Single:
                help = "Estimate the mean fidelity of one parameter cell";
                break;
            case piecemaker::Subcommand::Sweep:
                help = "Sweep a parameter grid and write a CSV table";
                break;
            case piecemaker::Subcommand::Compare:
                help = "Compare a Piecemaker variant against Factory on every cell";
                break;
            case piecemaker::Subcommand::Threshold:
                help = "Find the cells reaching a fidelity threshold";
                break;
            case piecemaker::Subcommand::Covers:
                help = "Compute and cache the minimal local covers of the target";
                break;
        }
        add_common(app.add_subcommand(std::string(piecemaker::subcommand_name(command)), help), flags);
    }
    CLI11_PARSE(app, argc, argv);

    try {
        const auto* sub = app.get_subcommands().front();
        const auto command = *piecemaker::parse_subcommand(sub->get_name());
        auto config = piecemaker::parse_config_file(flags.config);
        if (flags.seed) config.seed = *flags.seed;
        if (flags.trials) config.trials = *flags.trials;
        if (flags.workers) config.workers = *flags.workers;
        if (flags.paired) config.paired = true;

        piecemaker::CommandOptions options;
        if (flags.out) options.out = *flags.out;
        options.json = flags.json;
        const auto result = piecemaker::run_command(command, config, options);
        std::cout << result.summary;
        for (const auto& path : result.written) std::cout << "wrote " << path.string() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}
