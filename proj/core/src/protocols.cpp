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

#include "piecemaker/protocols.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace piecemaker {

namespace {

void check_arrivals(std::size_t n, std::span<const std::uint64_t> arrivals) {
    if (arrivals.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " arrival rounds, got " +
                                    std::to_string(arrivals.size()));
    }
    for (auto r : arrivals) {
        if (r == 0) throw std::invalid_argument("arrival rounds start at 1");
    }
}

/// Nodes grouped by arrival round, ascending, node index ascending within a round.
std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> arrival_events(
    std::span<const std::uint64_t> arrivals) {
    std::vector<std::size_t> order(arrivals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return arrivals[a] < arrivals[b]; });
    std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> events;
    for (std::size_t i : order) {
        if (events.empty() || events.back().first != arrivals[i]) events.push_back({arrivals[i], {}});
        events.back().second.push_back(i);
    }
    return events;
}

std::vector<std::size_t> end_qubits(const QubitLayout& layout) {
    std::vector<std::size_t> out(layout.n);
    for (std::size_t i = 0; i < layout.n; ++i) out[i] = layout.end(i);
    return out;
}

ProtocolRun finish_run(ProtocolKind kind, const Graph& target, SwitchEngine& engine, const ProtocolOptions& options) {
    ProtocolRun run;
    run.protocol = kind;
    run.target = target;
    run.completion_round = engine.round();
    run.transcript = engine.finish();
    run.exposures = engine.ledger().exposures();
    const auto ends = end_qubits(engine.layout());
    run.fidelity = graph_state_fidelity(engine.state(), ends, target);
    if (options.keep_end_state) run.end_state = engine.state().subsystem(ends);
    return run;
}

/// Shared MVC machinery: `choose` returns the graph to build and its cover
/// once one is available among the stored links.
template <typename Choose>
void run_cover_protocol(SwitchEngine& engine, std::size_t n, std::span<const std::uint64_t> arrivals,
                        Choose&& choose, Graph& built) {
    const auto events = arrival_events(arrivals);
    std::vector<bool> arrived(n, false);
    std::vector<bool> in_cover(n, false);
    std::vector<bool> measured(n, false);
    bool have_cover = false;
    CzLedger cz(n);

    for (const auto& [round, nodes] : events) {
        engine.advance_to(round);
        for (std::size_t i : nodes) {
            engine.create_link(i);
            arrived[i] = true;
        }
        if (!have_cover) {
            auto chosen = choose(arrived);
            if (!chosen) continue;
            built = std::move(chosen->first);
            for (std::size_t v : chosen->second) in_cover[v] = true;
            have_cover = true;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (in_cover[v] || measured[v] || !arrived[v]) continue;
            const auto nb = built.neighbors(v);
            if (std::all_of(nb.begin(), nb.end(), [&](std::size_t u) { return arrived[u]; })) {
                engine.measure_generator(built, v, cz);
                measured[v] = true;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!measured[v]) engine.measure_generator(built, v, cz);
    }
}

}  // namespace

std::string_view protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::GhzPiecemaker:
            return "ghz-piecemaker";
        case ProtocolKind::Mvc:
            return "mvc";
        case ProtocolKind::GeneralPiecemaker:
            return "general-piecemaker";
        case ProtocolKind::Factory:
            return "factory";
    }
    return "?";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
    for (auto kind : {ProtocolKind::GhzPiecemaker, ProtocolKind::Mvc, ProtocolKind::GeneralPiecemaker,
                      ProtocolKind::Factory}) {
        if (protocol_name(kind) == name) return kind;
    }
    return std::nullopt;
}

std::size_t CzLedger::count() const {
    return static_cast<std::size_t>(std::count(applied_.begin(), applied_.end(), 1)) / 2;
}

SwitchEngine::SwitchEngine(std::size_t num_nodes, std::size_t num_qubits, const ProtocolOptions& options, Rng& rng)
    : layout_{num_nodes},
      options_(options),
      rng_(rng),
      state_(num_qubits),
      ledger_(num_qubits),
      p_depol_(options.noise.p_depol),
      tapes_(options.noise.mode == NoiseMode::Tape ? num_qubits : 0),
      noised_until_(num_qubits, 0),
      per_round_rng_(stream(options.noise.seed, options.noise.salt, options.noise.trial, kPerRoundNoiseSite)) {
    if (!(p_depol_ >= 0.0 && p_depol_ <= 1.0)) throw std::invalid_argument("p_depol must be in [0, 1]");
}

void SwitchEngine::advance_to(std::uint64_t target) {
    if (target < round_) throw std::logic_error("rounds cannot move backwards");
    if (target == round_) return;
    if (p_depol_ > 0.0) {
        if (options_.noise.mode == NoiseMode::PerRound) {
            for (std::uint64_t r = round_; r < target; ++r) depolarize_round(state_, ledger_, p_depol_, per_round_rng_);
        } else {
            for (std::size_t q = 0; q < ledger_.num_qubits(); ++q) {
                if (!ledger_.alive(q)) continue;
                state_.apply_pauli(q, tapes_[q].accumulate(noised_until_[q], target));
                noised_until_[q] = target;
            }
        }
    }
    round_ = target;
}

void SwitchEngine::on_create(std::size_t qubit) {
    ledger_.create(qubit, round_);
    noised_until_[qubit] = round_;
    if (options_.noise.mode == NoiseMode::Tape && p_depol_ > 0.0) {
        const auto& nc = options_.noise;
        tapes_[qubit] = NoiseTape(p_depol_, stream(nc.seed, nc.salt, nc.trial, kTapeSite + qubit));
    }
}

void SwitchEngine::create_link(std::size_t node) {
    if (node >= layout_.n) throw std::out_of_range("end node out of range");
    const std::size_t m = layout_.memory(node);
    const std::size_t l = layout_.end(node);
    if (ledger_.ever_created(m) || ledger_.ever_created(l)) {
        throw std::logic_error("link for node " + std::to_string(node + 1) + " created twice");
    }
    state_.h(m);
    state_.cx(m, l);
    on_create(m);
    on_create(l);
}

void SwitchEngine::create_plus(std::size_t qubit) {
    if (ledger_.ever_created(qubit)) throw std::logic_error("qubit " + qubit_name(qubit) + " created twice");
    state_.h(qubit);
    on_create(qubit);
}

void SwitchEngine::prepare_unstored_plus(std::size_t qubit) {
    if (ledger_.ever_created(qubit)) throw std::logic_error("qubit " + qubit_name(qubit) + " already in use");
    state_.h(qubit);
}

void SwitchEngine::require_alive(std::size_t qubit, std::string_view role) const {
    if (!ledger_.alive(qubit)) {
        throw std::logic_error(std::string(role) + " qubit " + qubit_name(qubit) + " is not live");
    }
}

int SwitchEngine::fuse(std::size_t a1, std::size_t b1, std::size_t b2) {
    if (a1 == b1 || a1 == b2 || b1 == b2) throw std::invalid_argument("fusion qubits must be distinct");
    require_alive(a1, "fusion");
    require_alive(b1, "fusion");
    require_alive(b2, "fusion");
    state_.cx(a1, b1);
    const auto forced = next_forced(PauliString::single(state_.num_qubits(), b1, PauliLetter::Z));
    const auto result = state_.measure_z(b1, rng_, forced);
    pop_forced(result.deterministic);
    const int outcome = result.outcome;
    if (outcome < 0) state_.x(b2);
    ledger_.consume(b1, round_);
    if (options_.record_transcript) record("Z(" + qubit_name(b1) + ")", outcome);
    return outcome < 0 ? 1 : 0;
}

int SwitchEngine::measure_generator(const Graph& graph, std::size_t v, CzLedger& cz) {
    if (graph.num_vertices() != layout_.n) throw std::invalid_argument("graph size does not match the end nodes");
    const std::size_t mv = layout_.memory(v);
    require_alive(mv, "generator");
    for (std::size_t u : graph.neighbors(v)) {
        if (cz.applied(v, u)) continue;
        if (!ledger_.alive(layout_.memory(u))) {
            throw std::logic_error("cannot measure K" + std::to_string(v + 1) + ": neighbour " +
                                   std::to_string(u + 1) + " has no live switch qubit");
        }
        state_.cz(mv, layout_.memory(u));
        cz.mark(v, u);
    }
    const auto forced = next_forced(PauliString::single(state_.num_qubits(), mv, PauliLetter::X));
    const auto result = state_.measure_x(mv, rng_, forced);
    pop_forced(result.deterministic);
    const int outcome = result.outcome;
    if (outcome < 0) state_.z(layout_.end(v));
    ledger_.consume(mv, round_);
    if (options_.record_transcript) record("K" + std::to_string(v + 1), outcome);
    return outcome;
}

int SwitchEngine::measure_and_consume(std::size_t qubit, PauliLetter basis, std::string_view name) {
    require_alive(qubit, "measured");
    const auto observable = PauliString::single(state_.num_qubits(), qubit, basis);
    const auto result = state_.measure(observable, rng_, next_forced(observable));
    pop_forced(result.deterministic);
    const int outcome = result.outcome;
    ledger_.consume(qubit, round_);
    if (options_.record_transcript) record(std::string(name), outcome);
    return outcome;
}

int SwitchEngine::measure(const PauliString& observable, std::string_view name) {
    const auto result = state_.measure(observable, rng_, next_forced(observable));
    pop_forced(result.deterministic);
    const int outcome = result.outcome;
    if (options_.record_transcript) record(std::string(name), outcome);
    return outcome;
}

void SwitchEngine::apply(Gate gate, std::size_t qubit) { state_.apply(gate, qubit); }

void SwitchEngine::release(std::size_t qubit) { ledger_.consume(qubit, round_); }

void SwitchEngine::record(std::string observable, int outcome) {
    transcript_.push_back({round_, std::move(observable), outcome});
}

std::vector<TranscriptEntry> SwitchEngine::finish() {
    ledger_.consume_all(round_);
    return std::move(transcript_);
}

void SwitchEngine::force_outcomes(std::vector<int> outcomes) {
    for (int o : outcomes) {
        if (o != 1 && o != -1) throw std::invalid_argument("forced outcomes must be +1 or -1");
    }
    forced_ = std::move(outcomes);
    forced_pos_ = 0;
}

std::optional<int> SwitchEngine::next_forced(const PauliString& observable) const {
    if (forced_pos_ >= forced_.size()) return std::nullopt;
    // Deterministic measurements keep their value and do not use up a forced outcome.
    if (state_.expectation(observable)) return std::nullopt;
    return forced_[forced_pos_];
}

void SwitchEngine::pop_forced(bool deterministic) {
    if (!deterministic && forced_pos_ < forced_.size()) ++forced_pos_;
}

std::string SwitchEngine::qubit_name(std::size_t qubit) const {
    const std::size_t n = layout_.n;
    if (qubit < n) return "l" + std::to_string(qubit + 1);
    if (qubit < 2 * n) return "m" + std::to_string(qubit - n + 1);
    if (qubit == 2 * n) return "hub";
    return "a" + std::to_string(qubit - 2 * n + 1);
}

double graph_state_fidelity(const StabilizerState& state, std::span<const std::size_t> qubits, const Graph& graph) {
    if (qubits.size() != graph.num_vertices()) throw std::invalid_argument("qubit list does not match the graph");
    const std::size_t total = state.num_qubits();
    bool all_plus = true;
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
        PauliString k(total);
        k.set_letter(qubits[v], PauliLetter::X);
        for (std::size_t u : graph.neighbors(v)) k.set_letter(qubits[u], PauliLetter::Z);
        const auto value = state.expectation(k);
        if (!value) {
            all_plus = false;
            break;
        }
        // A determined -1 on any generator makes the states orthogonal.
        if (*value < 0) return 0.0;
    }
    if (all_plus) return 1.0;
    return overlap_sq(state.subsystem(qubits), graph_state(graph));
}

ProtocolRun run_ghz_piecemaker(const Graph& star, std::span<const std::uint64_t> arrivals,
                               const ProtocolOptions& options, Rng& rng) {
    const auto center = star_center(star);
    if (!center) throw std::invalid_argument("ghz-piecemaker needs a star (GHZ) target");
    const std::size_t n = star.num_vertices();
    check_arrivals(n, arrivals);

    const bool virtual_hub = options.hub == HubMode::Virtual;
    SwitchEngine engine(n, virtual_hub ? 2 * n : 2 * n + 1, options, rng);
    const auto& layout = engine.layout();
    std::optional<std::size_t> hub;

    for (const auto& [round, nodes] : arrival_events(arrivals)) {
        engine.advance_to(round);
        for (std::size_t i : nodes) engine.create_link(i);
        for (std::size_t i : nodes) {
            if (!hub) {
                if (virtual_hub) {
                    hub = layout.memory(i);
                    continue;
                }
                hub = layout.hub();
                engine.create_plus(*hub);
            }
            engine.fuse(*hub, layout.memory(i), layout.end(i));
        }
    }

    const int outcome = engine.measure_and_consume(*hub, PauliLetter::X, "X(" + engine.qubit_name(*hub) + ")");
    if (outcome < 0) engine.apply(Gate::Z, layout.end(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (i != *center) engine.apply(Gate::H, layout.end(i));
    }
    return finish_run(ProtocolKind::GhzPiecemaker, star, engine, options);
}

ProtocolRun run_ghz_piecemaker(std::size_t n, std::span<const std::uint64_t> arrivals,
                               const ProtocolOptions& options, Rng& rng) {
    if (n < 2) throw std::invalid_argument("GHZ Piecemaker needs n >= 2");
    return run_ghz_piecemaker(star_graph(n, 0), arrivals, options, rng);
}

ProtocolRun run_mvc(const Graph& target, std::span<const std::uint64_t> arrivals, const ProtocolOptions& options,
                    Rng& rng) {
    const std::size_t n = target.num_vertices();
    if (n == 0) throw std::invalid_argument("target graph is empty");
    check_arrivals(n, arrivals);
    SwitchEngine engine(n, 2 * n, options, rng);

    auto choose = [&](const std::vector<bool>& arrived) -> std::optional<std::pair<Graph, VertexSet>> {
        VertexSet stored;
        for (std::size_t v = 0; v < n; ++v) {
            if (arrived[v]) stored.push_back(v);
        }
        auto cover = shrink_to_minimal_cover(target, stored, rng);
        if (!cover) return std::nullopt;
        if (options.record_transcript) engine.record("cover " + vertex_set_string(*cover), +1);
        return std::make_pair(target, std::move(*cover));
    };
    Graph built;
    run_cover_protocol(engine, n, arrivals, choose, built);
    return finish_run(ProtocolKind::Mvc, target, engine, options);
}

ProtocolRun run_general_piecemaker(const Graph& target, const CoverCatalog& catalog,
                                   std::span<const std::uint64_t> arrivals, const ProtocolOptions& options,
                                   Rng& rng) {
    if (!(catalog.target == target)) throw std::invalid_argument("cover catalog was built for a different target");
    if (catalog.entries.empty()) throw std::invalid_argument("cover catalog is empty");
    const std::size_t n = target.num_vertices();
    check_arrivals(n, arrivals);
    SwitchEngine engine(n, 2 * n, options, rng);

    const CoverEntry* entry = nullptr;
    auto choose = [&](const std::vector<bool>& arrived) -> std::optional<std::pair<Graph, VertexSet>> {
        const auto index = catalog.first_contained(arrived);
        if (!index) return std::nullopt;
        entry = &catalog.entries[*index];
        if (options.record_transcript) engine.record("local cover " + vertex_set_string(entry->cover), +1);
        return std::make_pair(entry->witness, entry->cover);
    };
    Graph built;
    run_cover_protocol(engine, n, arrivals, choose, built);
    for (const auto& g : lc_sequence_cliffords(entry->lc_sequence, target)) {
        engine.apply(g.gate, engine.layout().end(g.qubit));
    }
    return finish_run(ProtocolKind::GeneralPiecemaker, target, engine, options);
}

ProtocolRun run_factory(const Graph& target, std::span<const std::uint64_t> arrivals,
                        const ProtocolOptions& options, Rng& rng) {
    const std::size_t n = target.num_vertices();
    if (n == 0) throw std::invalid_argument("target graph is empty");
    check_arrivals(n, arrivals);
    SwitchEngine engine(n, 3 * n, options, rng);
    const auto& layout = engine.layout();

    for (const auto& [round, nodes] : arrival_events(arrivals)) {
        engine.advance_to(round);
        for (std::size_t i : nodes) engine.create_link(i);
    }

    for (std::size_t i = 0; i < n; ++i) engine.prepare_unstored_plus(layout.aux(i));
    for (const auto& [u, v] : target.edges()) engine.state().cz(layout.aux(u), layout.aux(v));

    const std::size_t total = engine.state().num_qubits();
    for (std::size_t i = 0; i < n; ++i) {
        PauliString xx(total), zz(total);
        xx.set_letter(layout.aux(i), PauliLetter::X);
        xx.set_letter(layout.memory(i), PauliLetter::X);
        zz.set_letter(layout.aux(i), PauliLetter::Z);
        zz.set_letter(layout.memory(i), PauliLetter::Z);
        const std::string pair = "(" + engine.qubit_name(layout.aux(i)) + "," + engine.qubit_name(layout.memory(i)) + ")";
        const int x_outcome = engine.measure(xx, "XX" + pair);
        const int z_outcome = engine.measure(zz, "ZZ" + pair);
        engine.release(layout.memory(i));
        if (z_outcome < 0) engine.apply(Gate::X, layout.end(i));
        if (x_outcome < 0) engine.apply(Gate::Z, layout.end(i));
    }
    return finish_run(ProtocolKind::Factory, target, engine, options);
}

}  // namespace piecemaker
