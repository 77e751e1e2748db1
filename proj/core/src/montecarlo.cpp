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

#include "piecemaker/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace piecemaker {

namespace {

constexpr int kZero = -1;

// log2 exponent k of a fidelity 2^-k, or kZero for 0.
int dyadic_exponent(double value) {
    if (value == 0.0) return kZero;
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    if (mantissa != 0.5 || exponent > 1) {
        throw std::logic_error("fidelity " + std::to_string(value) + " is not 0 or a power of 1/2");
    }
    return 1 - exponent;
}

double dyadic_value(int k) { return k == kZero ? 0.0 : std::ldexp(1.0, -k); }

Estimate from_moments(std::uint64_t count, double sum, double sum_sq) {
    Estimate e;
    e.trials = count;
    if (count == 0) return e;
    const double n = static_cast<double>(count);
    e.mean = sum / n;
    if (count > 1) {
        const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
        e.stderr_ = std::sqrt(var / n);
    }
    return e;
}

std::uint64_t protocol_salt(ProtocolKind kind) { return 1 + static_cast<std::uint64_t>(kind); }

template <typename Body>
void parallel_trials(std::uint64_t trials, unsigned workers, Body&& body) {
    workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(trials, 1)));
    std::vector<std::optional<std::pair<std::uint64_t, std::string>>> errors(workers);
    auto run_range = [&](unsigned w) {
        const std::uint64_t begin = trials * w / workers;
        const std::uint64_t end = trials * (w + 1) / workers;
        for (std::uint64_t t = begin; t < end; ++t) {
            try {
                body(w, t);
            } catch (const std::exception& e) {
                errors[w] = {t, e.what()};
                return;
            }
        }
    };
    if (workers == 1) {
        run_range(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_range, w);
        for (auto& th : threads) th.join();
    }
    for (const auto& err : errors) {
        if (err) throw std::runtime_error("trial " + std::to_string(err->first) + " failed: " + err->second);
    }
}

bool same_link(const LinkConfig& a, const LinkConfig& b) {
    return a.p_link == b.p_link && a.effective_p_depol() == b.effective_p_depol();
}

std::string format_number(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

}  // namespace

void FidelityAccumulator::add(double fidelity) {
    const int k = dyadic_exponent(fidelity);
    ++count_;
    if (k == kZero) {
        ++zeros_;
    } else {
        ++by_log2_[k];
    }
}

void FidelityAccumulator::merge(const FidelityAccumulator& other) {
    count_ += other.count_;
    zeros_ += other.zeros_;
    for (const auto& [k, c] : other.by_log2_) by_log2_[k] += c;
}

Estimate FidelityAccumulator::estimate() const {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [k, c] : by_log2_) {
        const double v = dyadic_value(k);
        sum += static_cast<double>(c) * v;
        sum_sq += static_cast<double>(c) * v * v;
    }
    return from_moments(count_, sum, sum_sq);
}

void DifferenceAccumulator::add(double a, double b) {
    ++count_;
    ++joint_[{dyadic_exponent(a), dyadic_exponent(b)}];
}

void DifferenceAccumulator::merge(const DifferenceAccumulator& other) {
    count_ += other.count_;
    for (const auto& [k, c] : other.joint_) joint_[k] += c;
}

Estimate DifferenceAccumulator::estimate() const {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [k, c] : joint_) {
        const double d = dyadic_value(k.first) - dyadic_value(k.second);
        sum += static_cast<double>(c) * d;
        sum_sq += static_cast<double>(c) * d * d;
    }
    return from_moments(count_, sum, sum_sq);
}

std::uint64_t default_trials(std::size_t n) { return (n == 3 || n == 5) ? 100'000 : 10'000; }

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PIECEMAKER_WORKERS")) {
        char* end = nullptr;
        const unsigned long value = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && value > 0 && value <= 4096) return static_cast<unsigned>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ProtocolRun run_single_trial(const Scenario& scenario, std::uint64_t trial, bool keep_end_state,
                             bool record_transcript) {
    const std::uint64_t own_salt = protocol_salt(scenario.protocol);
    const std::uint64_t shared_salt = scenario.paired ? 0 : own_salt;

    Rng arrival_rng = stream(scenario.seed, shared_salt, trial, kArrivalSite);
    const auto arrivals = sample_arrivals(scenario.link, arrival_rng);

    ProtocolOptions options;
    options.noise = {scenario.link.effective_p_depol(), scenario.noise_mode, scenario.seed, shared_salt, trial};
    options.hub = scenario.hub;
    options.keep_end_state = keep_end_state;
    options.record_transcript = record_transcript;
    Rng rng = stream(scenario.seed, own_salt, trial, kMeasurementSite);

    switch (scenario.protocol) {
        case ProtocolKind::GhzPiecemaker:
            return run_ghz_piecemaker(scenario.target, arrivals, options, rng);
        case ProtocolKind::Mvc:
            return run_mvc(scenario.target, arrivals, options, rng);
        case ProtocolKind::GeneralPiecemaker:
            if (!scenario.catalog) throw std::invalid_argument("general-piecemaker needs a cover catalog");
            return run_general_piecemaker(scenario.target, *scenario.catalog, arrivals, options, rng);
        case ProtocolKind::Factory:
            return run_factory(scenario.target, arrivals, options, rng);
    }
    throw std::logic_error("unknown protocol");
}

namespace {

struct WorkerTotals {
    FidelityAccumulator fidelity;
    std::uint64_t rounds = 0;
    std::uint64_t exposures = 0;

    void merge(const WorkerTotals& o) {
        fidelity.merge(o.fidelity);
        rounds += o.rounds;
        exposures += o.exposures;
    }
    RunSummary summary() const {
        RunSummary s;
        s.fidelity = fidelity.estimate();
        s.mean_completion_rounds =
            fidelity.count() ? static_cast<double>(rounds) / static_cast<double>(fidelity.count()) : 0.0;
        s.total_exposures = exposures;
        return s;
    }
};

void check_scenario(const Scenario& scenario) {
    if (scenario.trials == 0) throw std::invalid_argument("trials must be at least 1");
    scenario.link.validate();
    if (scenario.link.num_nodes() != scenario.target.num_vertices()) {
        throw std::invalid_argument("p_link has " + std::to_string(scenario.link.num_nodes()) +
                                    " entries but the target has " + std::to_string(scenario.target.num_vertices()) +
                                    " vertices");
    }
}

}  // namespace

RunSummary run_trials(const Scenario& scenario) {
    check_scenario(scenario);
    const unsigned workers = resolve_workers(scenario.workers);
    std::vector<WorkerTotals> totals(workers);
    parallel_trials(scenario.trials, workers, [&](unsigned w, std::uint64_t t) {
        const auto run = run_single_trial(scenario, t);
        totals[w].fidelity.add(run.fidelity);
        totals[w].rounds += run.completion_round;
        totals[w].exposures += run.exposures;
    });
    WorkerTotals all;
    for (const auto& t : totals) all.merge(t);
    return all.summary();
}

PairedSummary run_paired(const Scenario& first, const Scenario& second) {
    check_scenario(first);
    check_scenario(second);
    if (!(first.target == second.target) || !same_link(first.link, second.link) || first.seed != second.seed ||
        first.trials != second.trials) {
        throw std::invalid_argument("paired scenarios must share target, link parameters, seed and trials");
    }
    Scenario a = first, b = second;
    a.paired = b.paired = true;
    const unsigned workers = resolve_workers(first.workers);
    std::vector<WorkerTotals> ta(workers), tb(workers);
    std::vector<DifferenceAccumulator> diff(workers);
    std::vector<std::uint64_t> violations(workers, 0);
    parallel_trials(a.trials, workers, [&](unsigned w, std::uint64_t t) {
        const auto ra = run_single_trial(a, t);
        const auto rb = run_single_trial(b, t);
        if (ra.completion_round != rb.completion_round) {
            throw std::logic_error("paired runs disagree on the completion round");
        }
        ta[w].fidelity.add(ra.fidelity);
        ta[w].rounds += ra.completion_round;
        ta[w].exposures += ra.exposures;
        tb[w].fidelity.add(rb.fidelity);
        tb[w].rounds += rb.completion_round;
        tb[w].exposures += rb.exposures;
        diff[w].add(ra.fidelity, rb.fidelity);
        if (ra.exposures > rb.exposures) ++violations[w];
    });
    WorkerTotals all_a, all_b;
    DifferenceAccumulator all_diff;
    PairedSummary out;
    for (unsigned w = 0; w < workers; ++w) {
        all_a.merge(ta[w]);
        all_b.merge(tb[w]);
        all_diff.merge(diff[w]);
        out.exposure_violations += violations[w];
    }
    out.first = all_a.summary();
    out.second = all_b.summary();
    out.difference = all_diff.estimate();
    return out;
}

double delta_F(const Estimate& pm, const Estimate& factory) { return pm.mean - factory.mean; }

std::optional<double> delta_eps(const Estimate& pm, const Estimate& factory) {
    if (factory.mean >= 1.0) return std::nullopt;
    return (pm.mean - factory.mean) / (1.0 - factory.mean);
}

std::string SweepKey::str() const {
    return std::string(protocol_name(protocol)) + " " + target + " n=" + std::to_string(n) +
           " p_link=" + format_number(p_link) + " p_depol=" + format_number(p_depol) +
           " delta_L=" + format_number(delta_l);
}

void SweepTable::add(SweepRow row) {
    if (index_.contains(row.key)) throw std::invalid_argument("duplicate sweep cell " + row.key.str());
    index_.emplace(row.key, rows_.size());
    rows_.push_back(std::move(row));
}

const SweepRow* SweepTable::find(const SweepKey& key) const {
    const auto it = index_.find(key);
    return it == index_.end() ? nullptr : &rows_[it->second];
}

CellFilter all_cells_filter() {
    return {"all", [](double, double) { return true; }};
}

CellFilter overview_filter() {
    return {"overview", [](double p_link, double p_depol) { return p_link > 0.1 && p_link < 0.5 && p_depol < 0.02; }};
}

Aggregate aggregate(const SweepTable& table, const CellFilter& selection, ProtocolKind pm, ProtocolKind factory) {
    Aggregate out;
    std::vector<std::string> missing;
    double sum_pm = 0, sum_f = 0, sum_df = 0, sum_de = 0;
    std::size_t eps_cells = 0;
    bool have_max = false;
    for (const auto& row : table.rows()) {
        if (row.key.protocol != pm && row.key.protocol != factory) continue;
        SweepKey other = row.key;
        other.protocol = row.key.protocol == pm ? factory : pm;
        const SweepRow* partner = table.find(other);
        if (!partner) {
            missing.push_back(other.str());
            continue;
        }
        if (row.key.protocol != pm) continue;
        const Estimate& p = row.fidelity;
        const Estimate& f = partner->fidelity;
        const double df = delta_F(p, f);
        const auto de = delta_eps(p, f);
        if (!have_max || df > out.max_delta_F) {
            out.max_delta_F = df;
            out.argmax_delta_F = row.key;
            have_max = true;
        }
        if (de && (!out.max_delta_eps || *de > *out.max_delta_eps)) out.max_delta_eps = de;
        if (!selection.accept(row.key.p_link, row.key.p_depol)) continue;
        ++out.cells;
        sum_pm += p.mean;
        sum_f += f.mean;
        sum_df += df;
        if (de) {
            sum_de += *de;
            ++eps_cells;
        }
    }
    if (!missing.empty()) {
        std::string msg = "missing sweep cells:";
        for (const auto& m : missing) msg += " [" + m + "]";
        throw std::invalid_argument(msg);
    }
    if (out.cells == 0) throw std::invalid_argument("selection '" + selection.name + "' matches no cells");
    const double c = static_cast<double>(out.cells);
    out.mean_pm = sum_pm / c;
    out.mean_factory = sum_f / c;
    out.mean_delta_F = sum_df / c;
    out.mean_delta_eps = eps_cells ? sum_de / static_cast<double>(eps_cells) : 0.0;
    return out;
}

std::map<ProtocolKind, ProtocolThreshold> threshold_map(const SweepTable& table, double threshold) {
    std::map<ProtocolKind, ProtocolThreshold> out;
    for (const auto& row : table.rows()) {
        auto& entry = out[row.key.protocol];
        auto& row_min = entry.min_p_link[row.key.p_depol];
        auto& col_max = entry.max_p_depol[row.key.p_link];
        if (row.fidelity.mean < threshold) continue;
        entry.achieving.push_back(row.key);
        if (!row_min || row.key.p_link < *row_min) row_min = row.key.p_link;
        if (!col_max || row.key.p_depol > *col_max) col_max = row.key.p_depol;
    }
    return out;
}

std::vector<SweepCell> sweep_cells(const SweepSpec& spec) {
    const std::size_t n = spec.target.num_vertices();
    std::vector<SweepCell> cells;
    if (spec.p_depols.empty()) throw std::invalid_argument("p_depol: no values to sweep");
    if (spec.p_link_per_node) {
        const auto& per_node = *spec.p_link_per_node;
        if (per_node.size() != n) throw std::invalid_argument("p_link_per_node: expected one entry per node");
        double mean = 0.0;
        for (double p : per_node) mean += p;
        mean /= static_cast<double>(n);
        for (double p_depol : spec.p_depols) {
            SweepCell cell;
            cell.p_link = mean;
            cell.p_depol = p_depol;
            cell.link.p_link = per_node;
            cell.link.p_depol = p_depol;
            cell.link.delta_t = spec.delta_t;
            cells.push_back(std::move(cell));
        }
        return cells;
    }
    if (spec.delta_ls.empty()) {
        if (spec.p_links.empty()) throw std::invalid_argument("p_link: no values to sweep");
        for (double p_depol : spec.p_depols) {
            for (double p_link : spec.p_links) {
                SweepCell cell;
                cell.p_link = p_link;
                cell.p_depol = p_depol;
                cell.link = LinkConfig::homogeneous(n, p_link, p_depol);
                cell.link.delta_t = spec.delta_t;
                cells.push_back(std::move(cell));
            }
        }
        return cells;
    }
    for (double p_depol : spec.p_depols) {
        for (double dl : spec.delta_ls) {
            SweepCell cell;
            cell.p_link = link_probability_from_length(kReferenceLengthKm, spec.gamma);
            cell.p_depol = p_depol;
            cell.delta_l = dl;
            for (double length : heterogeneous_lengths(n, dl)) {
                cell.link.p_link.push_back(link_probability_from_length(length, spec.gamma));
            }
            cell.link.p_depol = p_depol;
            cell.link.delta_t = spec.delta_t;
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

Scenario cell_scenario(const SweepSpec& spec, const SweepCell& cell, ProtocolKind protocol) {
    Scenario s;
    s.protocol = protocol;
    s.target = spec.target;
    s.link = cell.link;
    s.trials = spec.trials ? spec.trials : default_trials(spec.target.num_vertices());
    s.seed = mix_key({spec.seed, std::bit_cast<std::uint64_t>(cell.p_link), std::bit_cast<std::uint64_t>(cell.p_depol),
                      std::bit_cast<std::uint64_t>(cell.delta_l)});
    s.hub = spec.hub;
    s.paired = spec.paired;
    s.noise_mode = spec.noise_mode;
    s.catalog = spec.catalog;
    s.workers = spec.workers;
    return s;
}

namespace {

SweepRow make_row(const SweepSpec& spec, const SweepCell& cell, ProtocolKind protocol, const RunSummary& summary) {
    SweepRow row;
    row.key = {protocol, spec.target_label, spec.target.num_vertices(), cell.p_link, cell.p_depol, cell.delta_l};
    row.fidelity = summary.fidelity;
    row.mean_completion_rounds = summary.mean_completion_rounds;
    return row;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    if (spec.protocols.empty()) throw std::invalid_argument("protocol: nothing to sweep");
    SweepTable table;
    for (const auto& cell : sweep_cells(spec)) {
        for (ProtocolKind protocol : spec.protocols) {
            table.add(make_row(spec, cell, protocol, run_trials(cell_scenario(spec, cell, protocol))));
        }
    }
    return table;
}

std::vector<CompareRow> run_compare(const SweepSpec& spec, ProtocolKind pm) {
    if (pm == ProtocolKind::Factory) throw std::invalid_argument("protocol: compare needs a Piecemaker variant");
    std::vector<CompareRow> rows;
    for (const auto& cell : sweep_cells(spec)) {
        const Scenario a = cell_scenario(spec, cell, pm);
        const Scenario b = cell_scenario(spec, cell, ProtocolKind::Factory);
        CompareRow row;
        RunSummary sa, sb;
        if (spec.paired) {
            const auto paired = run_paired(a, b);
            sa = paired.first;
            sb = paired.second;
            row.delta_F_stderr = paired.difference.stderr_;
        } else {
            sa = run_trials(a);
            sb = run_trials(b);
            row.delta_F_stderr = std::hypot(sa.fidelity.stderr_, sb.fidelity.stderr_);
        }
        row.pm = make_row(spec, cell, pm, sa);
        row.factory = make_row(spec, cell, ProtocolKind::Factory, sb);
        row.cell = row.pm.key;
        row.delta_F = delta_F(sa.fidelity, sb.fidelity);
        row.delta_eps = delta_eps(sa.fidelity, sb.fidelity);
        row.paired = spec.paired;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace piecemaker
