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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "piecemaker/atomic_file.hpp"
#include "piecemaker/cover_catalog.hpp"

namespace piecemaker {

namespace {

using nlohmann::ordered_json;

const char* const kSweepColumns =
    "protocol,target,n,p_link,p_depol,delta_L,trials,mean_fidelity,stderr,mean_completion_rounds";
const char* const kCompareExtra = ",factory_mean_fidelity,factory_stderr,delta_F,delta_eps,paired,delta_F_stderr";
const char* const kThresholdColumns = "protocol,target,n,delta_L,threshold,kind,p_link,p_depol";

std::string sweep_fields(const SweepRow& row) {
    const auto& k = row.key;
    return std::string(protocol_name(k.protocol)) + "," + k.target + "," + std::to_string(k.n) + "," +
           format_double(k.p_link) + "," + format_double(k.p_depol) + "," + format_double(k.delta_l) + "," +
           std::to_string(row.fidelity.trials) + "," + format_double(row.fidelity.mean) + "," +
           format_double(row.fidelity.stderr_) + "," + format_double(row.mean_completion_rounds);
}

ordered_json number(double v) { return ordered_json(v); }

ordered_json sweep_object(const SweepRow& row) {
    const auto& k = row.key;
    ordered_json o;
    o["protocol"] = std::string(protocol_name(k.protocol));
    o["target"] = k.target;
    o["n"] = k.n;
    o["p_link"] = number(k.p_link);
    o["p_depol"] = number(k.p_depol);
    o["delta_L"] = number(k.delta_l);
    o["trials"] = row.fidelity.trials;
    o["mean_fidelity"] = number(row.fidelity.mean);
    o["stderr"] = number(row.fidelity.stderr_);
    o["mean_completion_rounds"] = number(row.mean_completion_rounds);
    return o;
}

struct ThresholdLine {
    ProtocolKind protocol;
    std::string target;
    std::size_t n;
    double delta_l;
    std::string kind;
    std::optional<double> p_link;
    std::optional<double> p_depol;
};

std::vector<ThresholdLine> threshold_lines(const SweepTable& table, double threshold) {
    // Split by (target, n, delta_L) so heterogeneous sweeps stay separate.
    std::map<std::tuple<std::string, std::size_t, double>, SweepTable> groups;
    for (const auto& row : table.rows()) groups[{row.key.target, row.key.n, row.key.delta_l}].add(row);
    std::vector<ThresholdLine> lines;
    for (const auto& [group, sub] : groups) {
        const auto& [target, n, delta_l] = group;
        for (const auto& [protocol, entry] : threshold_map(sub, threshold)) {
            for (const auto& [p_depol, p_link] : entry.min_p_link) {
                lines.push_back({protocol, target, n, delta_l, "min_p_link", p_link, p_depol});
            }
            for (const auto& [p_link, p_depol] : entry.max_p_depol) {
                lines.push_back({protocol, target, n, delta_l, "max_p_depol", p_link, p_depol});
            }
        }
    }
    return lines;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

ordered_json optional_number(const std::optional<double>& v) { return v ? number(*v) : ordered_json(nullptr); }

std::filesystem::path json_path(const std::filesystem::path& out) {
    std::filesystem::path p = out;
    p.replace_extension(".json");
    return p;
}

void emit(CommandResult& result, const std::filesystem::path& path, const std::string& contents) {
    write_file_atomically(path, contents);
    result.written.push_back(path);
}

std::shared_ptr<const CoverCatalog> catalog_for(const ScenarioConfig& config, const std::vector<ProtocolKind>& protocols) {
    if (std::find(protocols.begin(), protocols.end(), ProtocolKind::GeneralPiecemaker) == protocols.end()) {
        return nullptr;
    }
    return std::make_shared<const CoverCatalog>(load_or_compute_catalog(config.target, config.orbit_cap, config.cache_dir));
}

std::string describe(const Estimate& e) {
    std::ostringstream out;
    out.precision(6);
    out << e.mean << " +- " << e.stderr_ << " (" << e.trials << " trials)";
    return out.str();
}

}  // namespace

std::string_view subcommand_name(Subcommand command) {
    switch (command) {
        case Subcommand::Single:
            return "single";
        case Subcommand::Sweep:
            return "sweep";
        case Subcommand::Compare:
            return "compare";
        case Subcommand::Threshold:
            return "threshold";
        case Subcommand::Covers:
            return "covers";
    }
    return "?";
}

std::optional<Subcommand> parse_subcommand(std::string_view name) {
    for (auto c : {Subcommand::Single, Subcommand::Sweep, Subcommand::Compare, Subcommand::Threshold,
                   Subcommand::Covers}) {
        if (subcommand_name(c) == name) return c;
    }
    return std::nullopt;
}

std::string format_double(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, res.ptr);
}

std::string sweep_csv(const SweepTable& table) {
    std::string out = std::string(kSchemaLine) + "\n" + kSweepColumns + "\n";
    for (const auto& row : table.rows()) out += sweep_fields(row) + "\n";
    return out;
}

std::string sweep_json(const SweepTable& table) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["rows"] = ordered_json::array();
    for (const auto& row : table.rows()) doc["rows"].push_back(sweep_object(row));
    return doc.dump(2) + "\n";
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::string out = std::string(kSchemaLine) + "\n" + kSweepColumns + kCompareExtra + "\n";
    for (const auto& r : rows) {
        out += sweep_fields(r.pm) + "," + format_double(r.factory.fidelity.mean) + "," +
               format_double(r.factory.fidelity.stderr_) + "," + format_double(r.delta_F) + "," +
               optional_field(r.delta_eps) + "," + (r.paired ? "true" : "false") + "," +
               format_double(r.delta_F_stderr) + "\n";
    }
    return out;
}

std::string compare_json(const std::vector<CompareRow>& rows) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json o = sweep_object(r.pm);
        o["factory_mean_fidelity"] = number(r.factory.fidelity.mean);
        o["factory_stderr"] = number(r.factory.fidelity.stderr_);
        o["delta_F"] = number(r.delta_F);
        o["delta_eps"] = optional_number(r.delta_eps);
        o["paired"] = r.paired;
        o["delta_F_stderr"] = number(r.delta_F_stderr);
        doc["rows"].push_back(std::move(o));
    }
    return doc.dump(2) + "\n";
}

std::string threshold_csv(const SweepTable& table, double threshold) {
    std::string out = std::string(kSchemaLine) + "\n" + kThresholdColumns + "\n";
    for (const auto& line : threshold_lines(table, threshold)) {
        out += std::string(protocol_name(line.protocol)) + "," + line.target + "," + std::to_string(line.n) + "," +
               format_double(line.delta_l) + "," + format_double(threshold) + "," + line.kind + "," +
               optional_field(line.p_link) + "," + optional_field(line.p_depol) + "\n";
    }
    return out;
}

std::string threshold_json(const SweepTable& table, double threshold) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["rows"] = ordered_json::array();
    for (const auto& line : threshold_lines(table, threshold)) {
        ordered_json o;
        o["protocol"] = std::string(protocol_name(line.protocol));
        o["target"] = line.target;
        o["n"] = line.n;
        o["delta_L"] = number(line.delta_l);
        o["threshold"] = number(threshold);
        o["kind"] = line.kind;
        o["p_link"] = optional_number(line.p_link);
        o["p_depol"] = optional_number(line.p_depol);
        doc["rows"].push_back(std::move(o));
    }
    return doc.dump(2) + "\n";
}

CommandResult run_command(Subcommand command, const ScenarioConfig& config, const CommandOptions& options) {
    CommandResult result;
    const std::filesystem::path out =
        options.out.value_or(std::filesystem::path(std::string(subcommand_name(command)) + ".csv"));

    switch (command) {
        case Subcommand::Single: {
            if (config.num_cells() != 1) {
                throw ConfigError("p_link", "single runs exactly one parameter cell; use sweep for grids");
            }
            const auto spec = to_sweep_spec(config, config.protocols, catalog_for(config, config.protocols));
            const SweepTable table = run_sweep(spec);
            emit(result, out, sweep_csv(table));
            if (options.json) emit(result, json_path(out), sweep_json(table));
            for (const auto& row : table.rows()) {
                result.summary += std::string(protocol_name(row.key.protocol)) + " " + row.key.target +
                                  ": F = " + describe(row.fidelity) + ", mean completion round " +
                                  format_double(row.mean_completion_rounds) + "\n";
            }
            break;
        }
        case Subcommand::Sweep: {
            const auto spec = to_sweep_spec(config, config.protocols, catalog_for(config, config.protocols));
            const SweepTable table = run_sweep(spec);
            emit(result, out, sweep_csv(table));
            if (options.json) emit(result, json_path(out), sweep_json(table));
            result.summary = std::to_string(table.size()) + " rows written\n";
            break;
        }
        case Subcommand::Compare: {
            std::vector<ProtocolKind> pms;
            for (auto p : config.protocols) {
                if (p != ProtocolKind::Factory) pms.push_back(p);
            }
            if (pms.size() != 1) throw ConfigError("protocol", "compare needs exactly one Piecemaker variant");
            const auto spec = to_sweep_spec(config, {pms[0]}, catalog_for(config, pms));
            const auto rows = run_compare(spec, pms[0]);
            emit(result, out, compare_csv(rows));
            if (options.json) emit(result, json_path(out), compare_json(rows));
            double max_df = -1.0;
            for (const auto& r : rows) max_df = std::max(max_df, r.delta_F);
            result.summary = std::to_string(rows.size()) + " cells compared, max delta_F " + format_double(max_df) + "\n";
            break;
        }
        case Subcommand::Threshold: {
            const auto spec = to_sweep_spec(config, config.protocols, catalog_for(config, config.protocols));
            const SweepTable table = run_sweep(spec);
            emit(result, out, threshold_csv(table, config.threshold));
            std::filesystem::path cells = out;
            cells.replace_extension(".cells.csv");
            emit(result, cells, sweep_csv(table));
            if (options.json) emit(result, json_path(out), threshold_json(table, config.threshold));
            for (const auto& [protocol, entry] : threshold_map(table, config.threshold)) {
                result.summary += std::string(protocol_name(protocol)) + ": " + std::to_string(entry.achieving.size()) +
                                  " of " + std::to_string(entry.min_p_link.size() * entry.max_p_depol.size()) +
                                  " cells reach F >= " + format_double(config.threshold) + "\n";
            }
            break;
        }
        case Subcommand::Covers: {
            const CoverCatalog catalog = minimal_local_covers(config.target, config.orbit_cap);
            std::filesystem::path path;
            if (options.out) {
                path = *options.out;
            } else if (config.cache_dir) {
                path = *config.cache_dir / catalog_cache_name(config.target);
            } else {
                path = catalog_cache_name(config.target);
            }
            std::ostringstream text;
            write_catalog(catalog, text);
            emit(result, path, text.str());
            std::size_t smallest = config.target.num_vertices(), largest = 0;
            for (const auto& e : catalog.entries) {
                smallest = std::min(smallest, e.cover.size());
                largest = std::max(largest, e.cover.size());
            }
            result.summary = std::to_string(catalog.entries.size()) + " minimal local covers of " +
                             config.target_label() + ", sizes " + std::to_string(smallest) + ".." +
                             std::to_string(largest) + "\n";
            if (!catalog.entries.empty()) {
                const auto& first = catalog.entries.front();
                result.summary += "first: " + vertex_set_string(first.cover) + " on witness " +
                                  first.witness.edge_list_string() + "\n";
            }
            break;
        }
    }
    return result;
}

}  // namespace piecemaker
