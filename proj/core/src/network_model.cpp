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

#include "piecemaker/network_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace piecemaker {

LinkConfig LinkConfig::homogeneous(std::size_t n, double p_link, double p_depol) {
    LinkConfig cfg;
    cfg.p_link.assign(n, p_link);
    cfg.p_depol = p_depol;
    return cfg;
}

double depolarizing_probability(double delta_t, double tau) {
    if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be positive");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    return -std::expm1(-delta_t / tau);
}

double LinkConfig::effective_p_depol() const { return tau ? depolarizing_probability(delta_t, *tau) : p_depol; }

void LinkConfig::validate() const {
    if (p_link.empty()) throw std::invalid_argument("p_link: at least one end node is required");
    for (std::size_t i = 0; i < p_link.size(); ++i) {
        if (!(p_link[i] > 0.0 && p_link[i] <= 1.0)) {
            throw std::invalid_argument("p_link: entry " + std::to_string(i + 1) + " must be in (0, 1]");
        }
    }
    if (!(delta_t > 0.0) || !std::isfinite(delta_t)) throw std::invalid_argument("delta_t: must be positive");
    if (tau && !(*tau > 0.0)) throw std::invalid_argument("tau: must be positive");
    const double p = effective_p_depol();
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p_depol: must be in [0, 1]");
}

std::vector<std::uint64_t> sample_arrivals(const LinkConfig& config, Rng& rng) {
    std::vector<std::uint64_t> rounds;
    rounds.reserve(config.p_link.size());
    for (double p : config.p_link) rounds.push_back(rng.geometric(p));
    return rounds;
}

double link_probability_from_length(double length_km, double gamma_db_per_km) {
    if (!(length_km >= 0.0)) throw std::invalid_argument("fiber length must be non-negative");
    if (!(gamma_db_per_km >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
    return std::pow(10.0, -gamma_db_per_km * length_km / 10.0);
}

std::vector<double> heterogeneous_lengths(std::size_t n, double delta_l_km) {
    if (n < 2) throw std::invalid_argument("heterogeneous lengths need n >= 2");
    if (!(delta_l_km >= 0.0)) throw std::invalid_argument("delta_L must be non-negative");
    std::vector<double> lengths;
    lengths.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const double length = kReferenceLengthKm + (static_cast<double>(i) - 3.0) * delta_l_km;
        if (!(length > 0.0)) {
            throw std::invalid_argument("delta_L: node " + std::to_string(i) + " would get a non-positive length");
        }
        lengths.push_back(length);
    }
    return lengths;
}

MemoryLedger::MemoryLedger(std::size_t num_qubits) : created_(num_qubits, 0), status_(num_qubits, 0) {}

void MemoryLedger::check(std::size_t qubit) const {
    if (qubit >= created_.size()) throw std::out_of_range("ledger qubit out of range");
}

void MemoryLedger::create(std::size_t qubit, std::uint64_t round) {
    check(qubit);
    if (status_[qubit] != 0) throw std::logic_error("qubit " + std::to_string(qubit) + " created twice");
    created_[qubit] = round;
    status_[qubit] = 1;
}

std::uint64_t MemoryLedger::consume(std::size_t qubit, std::uint64_t round) {
    check(qubit);
    if (status_[qubit] != 1) throw std::logic_error("qubit " + std::to_string(qubit) + " is not alive");
    if (round < created_[qubit]) throw std::logic_error("qubit consumed before it was created");
    status_[qubit] = 2;
    const std::uint64_t steps = round - created_[qubit];
    exposures_ += steps;
    return steps;
}

void MemoryLedger::consume_all(std::uint64_t round) {
    for (std::size_t q = 0; q < created_.size(); ++q) {
        if (status_[q] == 1) consume(q, round);
    }
}

bool MemoryLedger::alive(std::size_t qubit) const {
    check(qubit);
    return status_[qubit] == 1;
}

bool MemoryLedger::ever_created(std::size_t qubit) const {
    check(qubit);
    return status_[qubit] != 0;
}

std::uint64_t MemoryLedger::created_round(std::size_t qubit) const {
    check(qubit);
    return created_[qubit];
}

std::vector<std::size_t> MemoryLedger::alive_qubits() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < status_.size(); ++q) {
        if (status_[q] == 1) out.push_back(q);
    }
    return out;
}

PauliLetter sample_depolarizing_letter(double p_depol, Rng& rng) {
    const double u = rng.uniform();
    const double quarter = p_depol / 4.0;
    if (u < quarter) return PauliLetter::X;
    if (u < 2 * quarter) return PauliLetter::Y;
    if (u < 3 * quarter) return PauliLetter::Z;
    return PauliLetter::I;
}

void depolarize_round(StabilizerState& state, const MemoryLedger& ledger, double p_depol, Rng& rng) {
    if (!(p_depol >= 0.0 && p_depol <= 1.0)) throw std::invalid_argument("p_depol must be in [0, 1]");
    if (p_depol == 0.0) return;
    for (std::size_t q = 0; q < ledger.num_qubits(); ++q) {
        if (!ledger.alive(q)) continue;
        state.apply_pauli(q, sample_depolarizing_letter(p_depol, rng));
    }
}

NoiseTape::NoiseTape(double p_depol, Rng rng) : q_(0.75 * p_depol), rng_(rng) {
    if (!(p_depol >= 0.0 && p_depol <= 1.0)) throw std::invalid_argument("p_depol must be in [0, 1]");
    if (q_ > 0.0) draw_next();
}

void NoiseTape::draw_next() {
    next_round_ += rng_.geometric(q_);
    next_letter_ = static_cast<PauliLetter>(1 + rng_.below(3));
}

PauliLetter NoiseTape::accumulate(std::uint64_t from, std::uint64_t to) {
    if (from < read_until_) throw std::logic_error("noise tape read out of order");
    read_until_ = to;
    if (q_ == 0.0) return PauliLetter::I;
    unsigned acc = 0;
    while (next_round_ < to) {
        if (next_round_ >= from) acc ^= static_cast<unsigned>(next_letter_);
        draw_next();
    }
    return static_cast<PauliLetter>(acc);
}

}  // namespace piecemaker
