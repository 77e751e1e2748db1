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
#include <vector>

#include "piecemaker/graph.hpp"
#include "piecemaker/pauli.hpp"
#include "piecemaker/random.hpp"

namespace piecemaker {

enum class Gate { H, S, S_DAG, SQRT_X, SQRT_X_DAG, X, Y, Z, CX, CZ };

std::string_view gate_name(Gate gate);
/// Number of qubits the gate acts on (1 or 2).
std::size_t gate_arity(Gate gate);

/// Result of a Pauli measurement: outcome is +1 or -1.
struct MeasurementResult {
    int outcome = +1;
    bool deterministic = true;
};

/// Pure n-qubit stabilizer state stored as a destabilizer/stabilizer tableau.
///
/// Rows 0..n-1 hold destabilizers and rows n..2n-1 stabilizers, each as packed
/// X/Z bit rows plus a sign. Gates conjugate every row; measurement follows the
/// Aaronson-Gottesman update generalized to arbitrary Pauli observables.
/// Qubit indices are 0-based.
class StabilizerState {
  public:
    /// |0...0>, stabilized by Z_1..Z_n. Throws std::invalid_argument for n = 0.
    explicit StabilizerState(std::size_t num_qubits);

    /// Builds the state stabilized by `generators`. They must be n Hermitian,
    /// mutually commuting, independent Paulis on n qubits; destabilizers are
    /// reconstructed.
    static StabilizerState from_generators(std::span<const PauliString> generators);

    std::size_t num_qubits() const { return n_; }

    void apply(Gate gate, std::span<const std::size_t> targets);
    void apply(Gate gate, std::size_t q);
    void apply(Gate gate, std::size_t a, std::size_t b);

    void h(std::size_t q);
    void s(std::size_t q);
    void s_dag(std::size_t q);
    void sqrt_x(std::size_t q);
    void sqrt_x_dag(std::size_t q);
    void x(std::size_t q);
    void y(std::size_t q);
    void z(std::size_t q);
    void cx(std::size_t control, std::size_t target);
    void cz(std::size_t a, std::size_t b);

    /// Applies a single-qubit Pauli letter (no-op for I).
    void apply_pauli(std::size_t q, PauliLetter letter);
    /// Applies a multi-qubit Pauli; its global phase is irrelevant for the state.
    void apply_pauli(const PauliString& pauli);

    /// Measures a Hermitian Pauli observable. `forced` pins the outcome of a
    /// random measurement (used to exercise specific branches); forcing a
    /// deterministic measurement to the wrong value throws std::logic_error.
    MeasurementResult measure(const PauliString& observable, Rng& rng,
                              std::optional<int> forced = std::nullopt);
    MeasurementResult measure_x(std::size_t q, Rng& rng, std::optional<int> forced = std::nullopt);
    MeasurementResult measure_z(std::size_t q, Rng& rng, std::optional<int> forced = std::nullopt);

    /// +1/-1 when the observable (up to sign) is in the stabilizer group,
    /// std::nullopt when its outcome would be random.
    std::optional<int> expectation(const PauliString& observable) const;

    PauliString stabilizer(std::size_t k) const;
    PauliString destabilizer(std::size_t k) const;
    std::vector<PauliString> stabilizers() const;

    /// Checks the tableau invariants: Hermitian rows, commuting stabilizers,
    /// commuting destabilizers and destabilizer k anticommuting only with stabilizer k.
    bool is_valid() const;

    /// State of the listed qubits when they are unentangled with the rest.
    /// Throws std::invalid_argument if the subsystem is not in a pure state.
    StabilizerState subsystem(std::span<const std::size_t> qubits) const;

    /// Stabilizer rows in reduced row-echelon form; equal states give equal output.
    std::vector<PauliString> canonical_stabilizers() const;

  private:
    std::size_t row_offset(std::size_t row) const { return row * 2 * words_; }
    std::span<std::uint64_t> row_x(std::size_t row) { return {bits_.data() + row_offset(row), words_}; }
    std::span<std::uint64_t> row_z(std::size_t row) {
        return {bits_.data() + row_offset(row) + words_, words_};
    }
    std::span<const std::uint64_t> row_x(std::size_t row) const {
        return {bits_.data() + row_offset(row), words_};
    }
    std::span<const std::uint64_t> row_z(std::size_t row) const {
        return {bits_.data() + row_offset(row) + words_, words_};
    }
    PauliString row_pauli(std::size_t row) const;
    void set_row(std::size_t row, const PauliString& pauli);
    /// row dst <- row dst * row src (rows must commute).
    void multiply_row(std::size_t dst, std::size_t src);
    void check_qubit(std::size_t q) const;
    MeasurementResult measure_prepared(Rng& rng, std::optional<int> forced,
                                       std::optional<std::size_t> single_qubit = std::nullopt);

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint8_t> signs_;
    PauliString scratch_;
};

/// |<a|b>|^2, exactly 0 or 2^-k.
double overlap_sq(const StabilizerState& a, const StabilizerState& b);

/// k such that |<a|b>|^2 = 2^-k, or std::nullopt when the states are orthogonal.
std::optional<std::size_t> overlap_log2(const StabilizerState& a, const StabilizerState& b);

/// Graph state |G>: |+> on every vertex, then CZ across every edge.
StabilizerState graph_state(const Graph& graph);

}  // namespace piecemaker
