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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "piecemaker/cover_catalog.hpp"
#include "piecemaker/graph.hpp"
#include "piecemaker/network_model.hpp"
#include "piecemaker/random.hpp"
#include "piecemaker/stabilizer_state.hpp"

namespace piecemaker {

enum class ProtocolKind { GhzPiecemaker, Mvc, GeneralPiecemaker, Factory };

std::string_view protocol_name(ProtocolKind kind);
std::optional<ProtocolKind> parse_protocol(std::string_view name);

/// Whether GHZ Piecemaker uses a dedicated hub qubit at the switch or
/// promotes the first arriving switch qubit to hub.
enum class HubMode { Explicit, Virtual };

/// Qubit numbering inside the simulator for n end nodes: end-node halves
/// l_i = i, switch halves m_i = n + i, the hub 2n and auxiliaries 2n + i.
struct QubitLayout {
    std::size_t n = 0;

    std::size_t end(std::size_t i) const { return i; }
    std::size_t memory(std::size_t i) const { return n + i; }
    std::size_t hub() const { return 2 * n; }
    std::size_t aux(std::size_t i) const { return 2 * n + i; }
};

struct TranscriptEntry {
    std::uint64_t round = 0;
    std::string observable;
    int outcome = +1;

    friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct ProtocolOptions {
    NoiseConfig noise;
    HubMode hub = HubMode::Explicit;
    bool record_transcript = false;
    /// Extract the end nodes' reduced state into ProtocolRun::end_state.
    bool keep_end_state = true;
};

struct ProtocolRun {
    ProtocolKind protocol = ProtocolKind::GhzPiecemaker;
    Graph target;
    /// State of l_1..l_n after all corrections, when requested.
    std::optional<StabilizerState> end_state;
    std::uint64_t completion_round = 0;
    std::vector<TranscriptEntry> transcript;
    /// Stored-qubit noise steps, summed over every qubit.
    std::uint64_t exposures = 0;
    /// |<G_t|psi>|^2 of the end nodes' state.
    double fidelity = 0.0;
};

/// Records which CZ gates of a graph have been applied at the switch.
class CzLedger {
  public:
    explicit CzLedger(std::size_t n = 0) : n_(n), applied_(n * n, 0) {}
    bool applied(std::size_t u, std::size_t v) const { return applied_[u * n_ + v] != 0; }
    void mark(std::size_t u, std::size_t v) { applied_[u * n_ + v] = applied_[v * n_ + u] = 1; }
    std::size_t count() const;

  private:
    std::size_t n_;
    std::vector<std::uint8_t> applied_;
};

/// Switch-side simulator state for one trial: the tableau, the memory ledger
/// and the noise streams. Rounds only move forward; noise for the rounds
/// in between is applied when advancing.
class SwitchEngine {
  public:
    SwitchEngine(std::size_t num_nodes, std::size_t num_qubits, const ProtocolOptions& options, Rng& rng);

    const QubitLayout& layout() const { return layout_; }
    std::uint64_t round() const { return round_; }
    StabilizerState& state() { return state_; }
    const StabilizerState& state() const { return state_; }
    const MemoryLedger& ledger() const { return ledger_; }

    /// Runs the end-of-round noise steps of rounds [round(), target).
    void advance_to(std::uint64_t target);

    /// Heralds a Bell pair |Phi+> between m_node and l_node in the current round.
    void create_link(std::size_t node);
    /// Stores a fresh |+> in `qubit`.
    void create_plus(std::size_t qubit);
    /// Prepares a qubit outside the noise ledger (Factory auxiliaries).
    void prepare_unstored_plus(std::size_t qubit);

    /// Gate-based fusion: CX(a1 -> b1), Z-measure b1, X on b2 if the outcome
    /// is -1; b1 is consumed. Returns s in {0, 1}.
    int fuse(std::size_t a1, std::size_t b1, std::size_t b2);

    /// Measures K_v of `graph` at the switch: CZs from m_v to every neighbour
    /// not yet in `cz`, X on m_v, Z on l_v for outcome -1. Consumes m_v.
    int measure_generator(const Graph& graph, std::size_t v, CzLedger& cz);

    /// Measures a switch-held qubit and releases it.
    int measure_and_consume(std::size_t qubit, PauliLetter basis, std::string_view name);
    int measure(const PauliString& observable, std::string_view name);

    void apply(Gate gate, std::size_t qubit);
    void release(std::size_t qubit);
    void record(std::string observable, int outcome);

    /// Consumes every stored qubit in the current round and returns the transcript.
    std::vector<TranscriptEntry> finish();

    std::string qubit_name(std::size_t qubit) const;

    /// Pins the outcomes of the next random measurements, in order (tests).
    void force_outcomes(std::vector<int> outcomes);

  private:
    std::optional<int> next_forced(const PauliString& observable) const;
    void pop_forced(bool deterministic);
    void require_alive(std::size_t qubit, std::string_view role) const;
    void on_create(std::size_t qubit);

    QubitLayout layout_;
    ProtocolOptions options_;
    Rng& rng_;
    StabilizerState state_;
    MemoryLedger ledger_;
    std::uint64_t round_ = 0;
    double p_depol_ = 0.0;
    std::vector<NoiseTape> tapes_;
    std::vector<std::uint64_t> noised_until_;
    Rng per_round_rng_;
    std::vector<TranscriptEntry> transcript_;
    std::vector<int> forced_;
    std::size_t forced_pos_ = 0;
};

/// Fidelity of the `qubits` subsystem of `state` with |graph>. Uses the
/// stabilizer expectations directly and falls back to an exact overlap.
double graph_state_fidelity(const StabilizerState& state, std::span<const std::size_t> qubits, const Graph& graph);

/// GHZ Piecemaker. The target must be a star; the delivered GHZ state is
/// turned into the star graph state by H on every non-center end node.
ProtocolRun run_ghz_piecemaker(const Graph& star, std::span<const std::uint64_t> arrivals,
                               const ProtocolOptions& options, Rng& rng);
ProtocolRun run_ghz_piecemaker(std::size_t n, std::span<const std::uint64_t> arrivals,
                               const ProtocolOptions& options, Rng& rng);

/// MVC protocol: waits for a vertex cover among stored links, shrinks it at
/// random and measures out every other vertex as soon as possible.
ProtocolRun run_mvc(const Graph& target, std::span<const std::uint64_t> arrivals, const ProtocolOptions& options,
                    Rng& rng);

/// General Piecemaker: the first catalog cover contained in the stored set
/// fixes the witness graph, which is built with the MVC machinery and then
/// mapped back to the target by local Cliffords.
ProtocolRun run_general_piecemaker(const Graph& target, const CoverCatalog& catalog,
                                   std::span<const std::uint64_t> arrivals, const ProtocolOptions& options,
                                   Rng& rng);

/// Factory baseline: waits for every link, prepares the target on noiseless
/// auxiliaries and teleports it out through Bell-state measurements.
ProtocolRun run_factory(const Graph& target, std::span<const std::uint64_t> arrivals,
                        const ProtocolOptions& options, Rng& rng);

}  // namespace piecemaker
