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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "piecemaker/cover_catalog.hpp"
#include "piecemaker/graph.hpp"
#include "piecemaker/network_model.hpp"
#include "piecemaker/protocols.hpp"

namespace piecemaker {

struct Estimate {
    double mean = 0.0;
    /// Sample standard deviation over sqrt(trials).
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
};

/// Exact accumulator for per-trial fidelities. Every value is 0 or 2^-k, so
/// a histogram over k makes merging associative and independent of how the
/// trials were split across workers.
class FidelityAccumulator {
  public:
    void add(double fidelity);
    void merge(const FidelityAccumulator& other);
    std::uint64_t count() const { return count_; }
    Estimate estimate() const;

  private:
    std::uint64_t count_ = 0;
    std::uint64_t zeros_ = 0;
    std::map<int, std::uint64_t> by_log2_;
};

/// Same idea for paired differences a - b.
class DifferenceAccumulator {
  public:
    void add(double a, double b);
    void merge(const DifferenceAccumulator& other);
    Estimate estimate() const;

  private:
    std::uint64_t count_ = 0;
    std::map<std::pair<int, int>, std::uint64_t> joint_;
};

/// Everything needed to run one protocol on one parameter point.
struct Scenario {
    ProtocolKind protocol = ProtocolKind::GhzPiecemaker;
    Graph target;
    LinkConfig link;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    HubMode hub = HubMode::Explicit;
    /// Share arrival rounds and noise tapes with the other protocol of a pair.
    bool paired = false;
    NoiseMode noise_mode = NoiseMode::Tape;
    /// Required for general-piecemaker.
    std::shared_ptr<const CoverCatalog> catalog;
    /// 0 picks PIECEMAKER_WORKERS or the hardware concurrency.
    unsigned workers = 0;
};

struct RunSummary {
    Estimate fidelity;
    double mean_completion_rounds = 0.0;
    std::uint64_t total_exposures = 0;
};

struct PairedSummary {
    RunSummary first;
    RunSummary second;
    /// Per-trial first - second.
    Estimate difference;
    /// Trials in which the first protocol had more noise exposures than the second.
    std::uint64_t exposure_violations = 0;
};

/// 10^5 for n in {3, 5}, 10^4 otherwise.
std::uint64_t default_trials(std::size_t n);

/// Resolves a worker count: `requested` if nonzero, else PIECEMAKER_WORKERS,
/// else the hardware concurrency.
unsigned resolve_workers(unsigned requested);

/// Runs a single trial; arrivals, noise and measurement draws come from
/// streams keyed by (seed, trial).
ProtocolRun run_single_trial(const Scenario& scenario, std::uint64_t trial, bool keep_end_state = false,
                             bool record_transcript = false);

/// Throws std::runtime_error naming the lowest failing trial index.
RunSummary run_trials(const Scenario& scenario);

/// Runs both scenarios trial by trial with shared randomness. They must agree
/// on target, link parameters, seed and trial count.
PairedSummary run_paired(const Scenario& first, const Scenario& second);

double delta_F(const Estimate& pm, const Estimate& factory);
/// (pm - factory) / (1 - factory); absent when the factory mean is 1.
std::optional<double> delta_eps(const Estimate& pm, const Estimate& factory);

struct SweepKey {
    ProtocolKind protocol = ProtocolKind::GhzPiecemaker;
    std::string target;
    std::size_t n = 0;
    /// For heterogeneous rows, the probability at the 25 km reference length.
    double p_link = 0.0;
    double p_depol = 0.0;
    double delta_l = 0.0;

    friend auto operator<=>(const SweepKey&, const SweepKey&) = default;
    std::string str() const;
};

struct SweepRow {
    SweepKey key;
    Estimate fidelity;
    double mean_completion_rounds = 0.0;
};

class SweepTable {
  public:
    /// Throws std::invalid_argument on a duplicate key.
    void add(SweepRow row);
    const std::vector<SweepRow>& rows() const { return rows_; }
    const SweepRow* find(const SweepKey& key) const;
    std::size_t size() const { return rows_.size(); }

  private:
    std::vector<SweepRow> rows_;
    std::map<SweepKey, std::size_t> index_;
};

/// Named predicate on (p_link, p_depol) cells.
struct CellFilter {
    std::string name;
    std::function<bool(double p_link, double p_depol)> accept;
};

CellFilter all_cells_filter();
/// 0.1 < p_link < 0.5 and p_depol < 0.02.
CellFilter overview_filter();

struct Aggregate {
    std::size_t cells = 0;
    double mean_pm = 0.0;
    double mean_factory = 0.0;
    double mean_delta_F = 0.0;
    /// Over the selected cells where delta_eps is defined.
    double mean_delta_eps = 0.0;
    /// Maxima over every paired cell of the table.
    double max_delta_F = 0.0;
    std::optional<double> max_delta_eps;
    SweepKey argmax_delta_F;
};

/// Averages over the cells accepted by `selection` and maxima over all cells
/// present for both protocols. Throws std::invalid_argument listing missing cells.
Aggregate aggregate(const SweepTable& table, const CellFilter& selection, ProtocolKind pm = ProtocolKind::GhzPiecemaker,
                    ProtocolKind factory = ProtocolKind::Factory);

struct ProtocolThreshold {
    std::vector<SweepKey> achieving;
    /// Smallest achieving p_link per p_depol row (absent if none).
    std::map<double, std::optional<double>> min_p_link;
    /// Largest achieving p_depol per p_link column.
    std::map<double, std::optional<double>> max_p_depol;
};

/// Cells with mean fidelity >= threshold, per protocol.
std::map<ProtocolKind, ProtocolThreshold> threshold_map(const SweepTable& table, double threshold);

/// Cartesian sweep over p_link x p_depol (or delta_L x p_depol for
/// heterogeneous links) for each listed protocol.
struct SweepSpec {
    std::vector<ProtocolKind> protocols;
    Graph target;
    std::string target_label;
    std::vector<double> p_links;
    std::vector<double> p_depols;
    /// Non-empty switches to heterogeneous lengths; p_links is then ignored.
    std::vector<double> delta_ls;
    /// Fixed per-node probabilities; the p_link column reports their mean.
    std::optional<std::vector<double>> p_link_per_node;
    double gamma = kDefaultGamma;
    double delta_t = 1.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    HubMode hub = HubMode::Explicit;
    bool paired = false;
    NoiseMode noise_mode = NoiseMode::Tape;
    std::shared_ptr<const CoverCatalog> catalog;
    unsigned workers = 0;
};

struct SweepCell {
    double p_link = 0.0;  // reference value for heterogeneous cells
    double p_depol = 0.0;
    double delta_l = 0.0;
    LinkConfig link;
};

std::vector<SweepCell> sweep_cells(const SweepSpec& spec);
Scenario cell_scenario(const SweepSpec& spec, const SweepCell& cell, ProtocolKind protocol);

SweepTable run_sweep(const SweepSpec& spec);

struct CompareRow {
    SweepKey cell;  // protocol field holds the Piecemaker variant
    SweepRow pm;
    SweepRow factory;
    double delta_F = 0.0;
    std::optional<double> delta_eps;
    bool paired = false;
    double delta_F_stderr = 0.0;
};

/// Runs `pm` against Factory on every cell.
std::vector<CompareRow> run_compare(const SweepSpec& spec, ProtocolKind pm);

}  // namespace piecemaker
