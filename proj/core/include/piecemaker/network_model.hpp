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
#include <vector>

#include "piecemaker/pauli.hpp"
#include "piecemaker/random.hpp"
#include "piecemaker/stabilizer_state.hpp"

namespace piecemaker {

/// Per-round link and memory parameters. Rounds are numbered from 1.
struct LinkConfig {
    /// Per end node success probability of one heralded attempt, in (0, 1].
    std::vector<double> p_link;
    /// Probability of a depolarizing event per stored qubit per round, in [0, 1].
    double p_depol = 0.0;
    /// Round duration in ms.
    double delta_t = 1.0;
    /// Memory coherence time in ms. When set, p_depol is derived from it.
    std::optional<double> tau;

    static LinkConfig homogeneous(std::size_t n, double p_link, double p_depol);

    std::size_t num_nodes() const { return p_link.size(); }
    /// p_depol, or 1 - exp(-delta_t / tau) when tau is set.
    double effective_p_depol() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

double depolarizing_probability(double delta_t, double tau);

/// Round in which each node's first successful attempt happens, Geom(p_link[i]).
std::vector<std::uint64_t> sample_arrivals(const LinkConfig& config, Rng& rng);

/// 10^(-gamma L / 10) for fiber length L (km) and attenuation gamma (dB/km).
double link_probability_from_length(double length_km, double gamma_db_per_km);

/// L_i = 25 km + (i - 3) delta_L for i = 1..n. Throws if some L_i <= 0.
std::vector<double> heterogeneous_lengths(std::size_t n, double delta_l_km);

inline constexpr double kReferenceLengthKm = 25.0;
inline constexpr double kDefaultGamma = 0.2;

/// Tracks when each stored qubit was created and whether it is still held.
/// A qubit created in round t and consumed in round t' sits through t' - t
/// end-of-round noise steps; those steps are tallied as exposures.
class MemoryLedger {
  public:
    explicit MemoryLedger(std::size_t num_qubits = 0);

    void create(std::size_t qubit, std::uint64_t round);
    /// Releases the qubit and returns its number of noise steps.
    std::uint64_t consume(std::size_t qubit, std::uint64_t round);
    /// Consumes everything still alive.
    void consume_all(std::uint64_t round);

    bool alive(std::size_t qubit) const;
    bool ever_created(std::size_t qubit) const;
    std::uint64_t created_round(std::size_t qubit) const;
    std::vector<std::size_t> alive_qubits() const;
    std::size_t num_qubits() const { return created_.size(); }

    /// Total (qubit, round) noise steps of consumed qubits.
    std::uint64_t exposures() const { return exposures_; }

  private:
    void check(std::size_t qubit) const;

    std::vector<std::uint64_t> created_;
    std::vector<std::uint8_t> status_;  // 0 fresh, 1 alive, 2 consumed
    std::uint64_t exposures_ = 0;
};

/// One end-of-round noise step: every alive qubit independently gets X, Y or
/// Z with probability p_depol / 4 each.
void depolarize_round(StabilizerState& state, const MemoryLedger& ledger, double p_depol, Rng& rng);

/// Samples the letter of one depolarizing step (I with probability 1 - 3p/4).
PauliLetter sample_depolarizing_letter(double p_depol, Rng& rng);

enum class NoiseMode {
    /// Each qubit label owns a pre-drawn tape of error rounds; a stored
    /// interval picks up the tape entries inside it.
    Tape,
    /// depolarize_round is called literally once per elapsed round.
    PerRound,
};

/// Identifies the random streams behind one trial's noise.
struct NoiseConfig {
    double p_depol = 0.0;
    NoiseMode mode = NoiseMode::Tape;
    std::uint64_t seed = 0;
    std::uint64_t salt = 0;
    std::uint64_t trial = 0;
};

/// Stream sites used by the simulator. Tapes use kTapeSite + qubit label.
inline constexpr std::uint64_t kArrivalSite = 1;
inline constexpr std::uint64_t kMeasurementSite = 2;
inline constexpr std::uint64_t kPerRoundNoiseSite = 3;
inline constexpr std::uint64_t kTapeSite = 1000;

/// Error tape of a single qubit label: rounds 1, 2, ... each carry an error
/// with probability 3p/4, uniformly X, Y or Z. Reads must move forward.
class NoiseTape {
  public:
    NoiseTape() = default;
    NoiseTape(double p_depol, Rng rng);

    /// Product of the tape's errors in rounds [from, to).
    PauliLetter accumulate(std::uint64_t from, std::uint64_t to);

  private:
    void draw_next();

    double q_ = 0.0;
    Rng rng_;
    std::uint64_t next_round_ = 0;
    PauliLetter next_letter_ = PauliLetter::I;
    std::uint64_t read_until_ = 0;
};

}  // namespace piecemaker
