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

#include "piecemaker/stabilizer_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace piecemaker {

namespace {

using Word = std::uint64_t;

/// Dense GF(2) row used by the elimination routines below.
struct BitRow {
    std::vector<Word> bits;

    explicit BitRow(std::size_t num_bits = 0) : bits((num_bits + 63) / 64, 0) {}
    bool get(std::size_t i) const { return (bits[i / 64] >> (i % 64)) & 1u; }
    void flip(std::size_t i) { bits[i / 64] ^= Word{1} << (i % 64); }
    void xor_with(const BitRow& other) {
        for (std::size_t w = 0; w < bits.size(); ++w) bits[w] ^= other.bits[w];
    }
};

/// Symplectic vector of a Pauli with X and Z halves swapped, so that the dot
/// product with a plain (x|z) vector is the commutation parity.
BitRow swapped_symplectic(const PauliString& p) {
    const std::size_t n = p.num_qubits();
    BitRow row(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        const auto bits = static_cast<unsigned>(p.letter(q));
        if (bits & 2u) row.flip(q);
        if (bits & 1u) row.flip(n + q);
    }
    return row;
}

PauliString from_symplectic(const BitRow& row, std::size_t n) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) {
        const unsigned bits = (row.get(q) ? 1u : 0u) | (row.get(n + q) ? 2u : 0u);
        p.set_letter(q, static_cast<PauliLetter>(bits));
    }
    return p;
}

}  // namespace

std::string_view gate_name(Gate gate) {
    switch (gate) {
        case Gate::H:
            return "H";
        case Gate::S:
            return "S";
        case Gate::S_DAG:
            return "S_DAG";
        case Gate::SQRT_X:
            return "SQRT_X";
        case Gate::SQRT_X_DAG:
            return "SQRT_X_DAG";
        case Gate::X:
            return "X";
        case Gate::Y:
            return "Y";
        case Gate::Z:
            return "Z";
        case Gate::CX:
            return "CX";
        case Gate::CZ:
            return "CZ";
    }
    return "?";
}

std::size_t gate_arity(Gate gate) { return (gate == Gate::CX || gate == Gate::CZ) ? 2 : 1; }

StabilizerState::StabilizerState(std::size_t num_qubits)
    : n_(num_qubits), words_(detail::words_for(num_qubits)), scratch_(num_qubits) {
    if (num_qubits == 0) throw std::invalid_argument("stabilizer state needs at least one qubit");
    bits_.assign(2 * n_ * 2 * words_, 0);
    signs_.assign(2 * n_, 0);
    for (std::size_t q = 0; q < n_; ++q) {
        row_x(q)[q / 64] |= Word{1} << (q % 64);       // destabilizer X_q
        row_z(n_ + q)[q / 64] |= Word{1} << (q % 64);  // stabilizer Z_q
    }
}

StabilizerState StabilizerState::from_generators(std::span<const PauliString> generators) {
    const std::size_t n = generators.size();
    if (n == 0) throw std::invalid_argument("need at least one generator");
    for (const auto& g : generators) {
        if (g.num_qubits() != n) throw std::invalid_argument("need exactly n generators on n qubits");
        if (!g.is_hermitian()) throw std::invalid_argument("generator " + g.str() + " is not Hermitian");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!generators[i].commutes_with(generators[j])) {
                throw std::invalid_argument("generators " + generators[i].str() + " and " +
                                            generators[j].str() + " anticommute");
            }
        }
    }

    // Solve M' d = e_i, where row j of M' is generator j with X/Z halves swapped.
    // Reduce [M' | I] to reduced echelon form, remembering the pivot columns.
    std::vector<BitRow> lhs;
    std::vector<BitRow> combo;
    for (std::size_t j = 0; j < n; ++j) {
        lhs.push_back(swapped_symplectic(generators[j]));
        BitRow unit(n);
        unit.flip(j);
        combo.push_back(unit);
    }
    std::vector<std::size_t> pivot_col(n);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n && rank < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && !lhs[pivot].get(col)) ++pivot;
        if (pivot == n) continue;
        std::swap(lhs[rank], lhs[pivot]);
        std::swap(combo[rank], combo[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != rank && lhs[r].get(col)) {
                lhs[r].xor_with(lhs[rank]);
                combo[r].xor_with(combo[rank]);
            }
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank < n) throw std::invalid_argument("generators are not independent");

    std::vector<BitRow> destab(n, BitRow(2 * n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (combo[k].get(i)) destab[i].flip(pivot_col[k]);
        }
    }
    std::vector<BitRow> stab_plain;
    for (const auto& g : generators) {
        // Plain (x|z) layout for adding stabilizers to destabilizers.
        BitRow row(2 * n);
        for (std::size_t q = 0; q < n; ++q) {
            const auto bits = static_cast<unsigned>(g.letter(q));
            if (bits & 1u) row.flip(q);
            if (bits & 2u) row.flip(n + q);
        }
        stab_plain.push_back(std::move(row));
    }
    std::vector<PauliString> destab_paulis;
    for (std::size_t i = 0; i < n; ++i) {
        PauliString d = from_symplectic(destab[i], n);
        for (std::size_t j = 0; j < i; ++j) {
            if (!d.commutes_with(destab_paulis[j])) {
                destab[i].xor_with(stab_plain[j]);
                d = from_symplectic(destab[i], n);
            }
        }
        destab_paulis.push_back(std::move(d));
    }

    StabilizerState state(n);
    for (std::size_t i = 0; i < n; ++i) {
        state.set_row(i, destab_paulis[i]);
        state.set_row(n + i, generators[i]);
    }
    return state;
}

void StabilizerState::check_qubit(std::size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                "-qubit state");
    }
}

PauliString StabilizerState::row_pauli(std::size_t row) const {
    PauliString p(n_);
    std::copy(row_x(row).begin(), row_x(row).end(), p.xs().begin());
    std::copy(row_z(row).begin(), row_z(row).end(), p.zs().begin());
    p.set_log_i(signs_[row] ? 2u : 0u);
    return p;
}

void StabilizerState::set_row(std::size_t row, const PauliString& pauli) {
    std::copy(pauli.xs().begin(), pauli.xs().end(), row_x(row).begin());
    std::copy(pauli.zs().begin(), pauli.zs().end(), row_z(row).begin());
    signs_[row] = pauli.is_negative() ? 1 : 0;
}

void StabilizerState::multiply_row(std::size_t dst, std::size_t src) {
    const unsigned log_i = detail::mul_letters_inplace(row_x(dst), row_z(dst), row_x(src), row_z(src));
    const unsigned total = (2u * signs_[dst] + 2u * signs_[src] + log_i) & 3u;
    signs_[dst] = total == 2 ? 1 : 0;
}

PauliString StabilizerState::stabilizer(std::size_t k) const {
    if (k >= n_) throw std::out_of_range("stabilizer index out of range");
    return row_pauli(n_ + k);
}

PauliString StabilizerState::destabilizer(std::size_t k) const {
    if (k >= n_) throw std::out_of_range("destabilizer index out of range");
    return row_pauli(k);
}

std::vector<PauliString> StabilizerState::stabilizers() const {
    std::vector<PauliString> out;
    out.reserve(n_);
    for (std::size_t k = 0; k < n_; ++k) out.push_back(row_pauli(n_ + k));
    return out;
}

// Single-qubit gates act on one bit column; `update` gets (x, z, sign) as masks
// selecting bit q of the row and returns them transformed.
#define PIECEMAKER_FOR_EACH_ROW(q, BODY)                   \
    do {                                                   \
        const std::size_t w_ = (q) / 64;                   \
        const unsigned b_ = static_cast<unsigned>((q) % 64); \
        for (std::size_t r_ = 0; r_ < 2 * n_; ++r_) {      \
            Word& xw = bits_[row_offset(r_) + w_];         \
            Word& zw = bits_[row_offset(r_) + words_ + w_]; \
            unsigned x = (xw >> b_) & 1u;                  \
            unsigned z = (zw >> b_) & 1u;                  \
            std::uint8_t& sign = signs_[r_];               \
            BODY;                                          \
            xw = (xw & ~(Word{1} << b_)) | (Word{x} << b_); \
            zw = (zw & ~(Word{1} << b_)) | (Word{z} << b_); \
        }                                                  \
    } while (0)

void StabilizerState::h(std::size_t q) {
    check_qubit(q);
    PIECEMAKER_FOR_EACH_ROW(q, {
        sign ^= static_cast<std::uint8_t>(x & z);
        std::swap(x, z);
    });
}

void StabilizerState::s(std::size_t q) {
    check_qubit(q);
    PIECEMAKER_FOR_EACH_ROW(q, {
        sign ^= static_cast<std::uint8_t>(x & z);
        z ^= x;
    });
}

void StabilizerState::s_dag(std::size_t q) {
    check_qubit(q);
    PIECEMAKER_FOR_EACH_ROW(q, {
        sign ^= static_cast<std::uint8_t>(x & (z ^ 1u));
        z ^= x;
    });
}

void StabilizerState::sqrt_x(std::size_t q) {
    check_qubit(q);
    // X -> X, Z -> -Y, Y -> Z
    PIECEMAKER_FOR_EACH_ROW(q, {
        sign ^= static_cast<std::uint8_t>(z & (x ^ 1u));
        x ^= z;
    });
}

void StabilizerState::sqrt_x_dag(std::size_t q) {
    check_qubit(q);
    // X -> X, Z -> Y, Y -> -Z
    PIECEMAKER_FOR_EACH_ROW(q, {
        sign ^= static_cast<std::uint8_t>(z & x);
        x ^= z;
    });
}

#undef PIECEMAKER_FOR_EACH_ROW

void StabilizerState::apply_pauli(std::size_t q, PauliLetter letter) {
    check_qubit(q);
    if (letter == PauliLetter::I) return;
    const std::size_t w = q / 64;
    const unsigned b = static_cast<unsigned>(q % 64);
    // X flips rows with a Z component, Z flips rows with an X component.
    const bool flip_on_z = letter == PauliLetter::X || letter == PauliLetter::Y;
    const bool flip_on_x = letter == PauliLetter::Z || letter == PauliLetter::Y;
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        unsigned flip = 0;
        if (flip_on_z) flip ^= (bits_[row_offset(r) + words_ + w] >> b) & 1u;
        if (flip_on_x) flip ^= (bits_[row_offset(r) + w] >> b) & 1u;
        signs_[r] ^= static_cast<std::uint8_t>(flip);
    }
}

void StabilizerState::apply_pauli(const PauliString& pauli) {
    if (pauli.num_qubits() != n_) throw std::invalid_argument("Pauli size does not match state");
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        if (detail::anticommutes(row_x(r), row_z(r), pauli.xs(), pauli.zs())) signs_[r] ^= 1;
    }
}

void StabilizerState::x(std::size_t q) { apply_pauli(q, PauliLetter::X); }
void StabilizerState::y(std::size_t q) { apply_pauli(q, PauliLetter::Y); }
void StabilizerState::z(std::size_t q) { apply_pauli(q, PauliLetter::Z); }

void StabilizerState::cx(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("CX targets must be distinct");
    const std::size_t wc = control / 64, wt = target / 64;
    const unsigned bc = static_cast<unsigned>(control % 64), bt = static_cast<unsigned>(target % 64);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        Word* xs = bits_.data() + row_offset(r);
        Word* zs = xs + words_;
        const unsigned xc = (xs[wc] >> bc) & 1u, zc = (zs[wc] >> bc) & 1u;
        const unsigned xt = (xs[wt] >> bt) & 1u, zt = (zs[wt] >> bt) & 1u;
        signs_[r] ^= static_cast<std::uint8_t>(xc & zt & (xt ^ zc ^ 1u));
        xs[wt] ^= Word{xc} << bt;
        zs[wc] ^= Word{zt} << bc;
    }
}

void StabilizerState::cz(std::size_t a, std::size_t b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw std::invalid_argument("CZ targets must be distinct");
    const std::size_t wa = a / 64, wb = b / 64;
    const unsigned ba = static_cast<unsigned>(a % 64), bb = static_cast<unsigned>(b % 64);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        Word* xs = bits_.data() + row_offset(r);
        Word* zs = xs + words_;
        const unsigned xa = (xs[wa] >> ba) & 1u, za = (zs[wa] >> ba) & 1u;
        const unsigned xb = (xs[wb] >> bb) & 1u, zb = (zs[wb] >> bb) & 1u;
        signs_[r] ^= static_cast<std::uint8_t>(xa & xb & (za ^ zb));
        zs[wa] ^= Word{xb} << ba;
        zs[wb] ^= Word{xa} << bb;
    }
}

void StabilizerState::apply(Gate gate, std::span<const std::size_t> targets) {
    if (targets.size() != gate_arity(gate)) {
        throw std::invalid_argument(std::string(gate_name(gate)) + " expects " +
                                    std::to_string(gate_arity(gate)) + " target(s)");
    }
    if (targets.size() == 2) {
        apply(gate, targets[0], targets[1]);
    } else {
        apply(gate, targets[0]);
    }
}

void StabilizerState::apply(Gate gate, std::size_t q) {
    switch (gate) {
        case Gate::H:
            return h(q);
        case Gate::S:
            return s(q);
        case Gate::S_DAG:
            return s_dag(q);
        case Gate::SQRT_X:
            return sqrt_x(q);
        case Gate::SQRT_X_DAG:
            return sqrt_x_dag(q);
        case Gate::X:
            return x(q);
        case Gate::Y:
            return y(q);
        case Gate::Z:
            return z(q);
        case Gate::CX:
        case Gate::CZ:
            break;
    }
    throw std::invalid_argument(std::string(gate_name(gate)) + " is a two-qubit gate");
}

void StabilizerState::apply(Gate gate, std::size_t a, std::size_t b) {
    switch (gate) {
        case Gate::CX:
            return cx(a, b);
        case Gate::CZ:
            return cz(a, b);
        default:
            break;
    }
    throw std::invalid_argument(std::string(gate_name(gate)) + " is a single-qubit gate");
}

MeasurementResult StabilizerState::measure(const PauliString& observable, Rng& rng,
                                           std::optional<int> forced) {
    if (observable.num_qubits() != n_) throw std::invalid_argument("observable size does not match state");
    if (!observable.is_hermitian()) throw std::invalid_argument("observable " + observable.str() + " is not Hermitian");
    if (observable.is_identity_letters()) {
        throw std::invalid_argument("cannot measure the identity");
    }
    scratch_ = observable;
    return measure_prepared(rng, forced);
}

MeasurementResult StabilizerState::measure_x(std::size_t q, Rng& rng, std::optional<int> forced) {
    check_qubit(q);
    std::fill(scratch_.xs().begin(), scratch_.xs().end(), 0);
    std::fill(scratch_.zs().begin(), scratch_.zs().end(), 0);
    scratch_.set_log_i(0);
    scratch_.set_letter(q, PauliLetter::X);
    return measure_prepared(rng, forced, q);
}

MeasurementResult StabilizerState::measure_z(std::size_t q, Rng& rng, std::optional<int> forced) {
    check_qubit(q);
    std::fill(scratch_.xs().begin(), scratch_.xs().end(), 0);
    std::fill(scratch_.zs().begin(), scratch_.zs().end(), 0);
    scratch_.set_log_i(0);
    scratch_.set_letter(q, PauliLetter::Z);
    return measure_prepared(rng, forced, q);
}

MeasurementResult StabilizerState::measure_prepared(Rng& rng, std::optional<int> forced,
                                                    std::optional<std::size_t> single_qubit) {
    if (forced && *forced != 1 && *forced != -1) throw std::invalid_argument("forced outcome must be +1 or -1");
    const PauliString& obs = scratch_;
    // For a single-qubit X (Z) observable, a row anticommutes iff it has Z (X) on that qubit.
    std::size_t bit_offset = 0;
    Word bit_mask = 0;
    if (single_qubit) {
        const bool is_x = obs.letter(*single_qubit) == PauliLetter::X;
        bit_offset = (is_x ? words_ : 0) + *single_qubit / 64;
        bit_mask = Word{1} << (*single_qubit % 64);
    }
    auto anticommutes_row = [&](std::size_t r) {
        if (single_qubit) return (bits_[row_offset(r) + bit_offset] & bit_mask) != 0;
        return detail::anticommutes(row_x(r), row_z(r), obs.xs(), obs.zs());
    };
    std::size_t pivot = 2 * n_;
    for (std::size_t r = n_; r < 2 * n_; ++r) {
        if (anticommutes_row(r)) {
            pivot = r;
            break;
        }
    }

    if (pivot == 2 * n_) {
        const auto value = expectation(obs);
        const int outcome = *value;
        if (forced && *forced != outcome) {
            throw std::logic_error("cannot force a deterministic measurement to the opposite outcome");
        }
        return {outcome, true};
    }

    for (std::size_t r = 0; r < 2 * n_; ++r) {
        if (r != pivot && anticommutes_row(r)) multiply_row(r, pivot);
    }
    const std::size_t destab = pivot - n_;
    std::copy(row_x(pivot).begin(), row_x(pivot).end(), row_x(destab).begin());
    std::copy(row_z(pivot).begin(), row_z(pivot).end(), row_z(destab).begin());
    signs_[destab] = signs_[pivot];

    const int outcome = forced ? *forced : (rng.bernoulli(0.5) ? -1 : +1);
    std::copy(obs.xs().begin(), obs.xs().end(), row_x(pivot).begin());
    std::copy(obs.zs().begin(), obs.zs().end(), row_z(pivot).begin());
    signs_[pivot] = static_cast<std::uint8_t>(obs.is_negative() ^ (outcome < 0));
    return {outcome, false};
}

std::optional<int> StabilizerState::expectation(const PauliString& observable) const {
    if (observable.num_qubits() != n_) throw std::invalid_argument("observable size does not match state");
    for (std::size_t r = n_; r < 2 * n_; ++r) {
        if (detail::anticommutes(row_x(r), row_z(r), observable.xs(), observable.zs())) return std::nullopt;
    }
    // The observable is +-(product of stabilizers whose destabilizer anticommutes with it).
    std::vector<Word> acc(2 * words_, 0);
    std::span<Word> acc_x(acc.data(), words_);
    std::span<Word> acc_z(acc.data() + words_, words_);
    unsigned log_i = 0;
    for (std::size_t k = 0; k < n_; ++k) {
        if (detail::anticommutes(row_x(k), row_z(k), observable.xs(), observable.zs())) {
            log_i += detail::mul_letters_inplace(acc_x, acc_z, row_x(n_ + k), row_z(n_ + k));
            log_i += 2u * signs_[n_ + k];
        }
    }
    return (log_i & 3u) == observable.log_i() ? +1 : -1;
}

bool StabilizerState::is_valid() const {
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        for (std::size_t c = r + 1; c < 2 * n_; ++c) {
            const bool anti = detail::anticommutes(row_x(r), row_z(r), row_x(c), row_z(c));
            const bool should_anti = (r < n_) && (c == r + n_);
            if (anti != should_anti) return false;
        }
    }
    return true;
}

StabilizerState StabilizerState::subsystem(std::span<const std::size_t> qubits) const {
    if (qubits.empty()) throw std::invalid_argument("subsystem needs at least one qubit");
    std::vector<bool> keep(n_, false);
    for (std::size_t q : qubits) {
        check_qubit(q);
        if (keep[q]) throw std::invalid_argument("duplicate subsystem qubit");
        keep[q] = true;
    }

    std::vector<PauliString> rows = stabilizers();
    std::vector<bool> used(n_, false);
    // Eliminate every X and Z column of the discarded qubits.
    for (std::size_t q = 0; q < n_; ++q) {
        if (keep[q]) continue;
        for (unsigned component : {1u, 2u}) {
            const std::size_t w = q / 64;
            const Word bit = Word{1} << (q % 64);
            auto has = [&](const PauliString& p) {
                return ((component == 1u ? p.xs()[w] : p.zs()[w]) & bit) != 0;
            };
            std::size_t pivot = n_;
            for (std::size_t r = 0; r < n_; ++r) {
                if (!used[r] && has(rows[r])) {
                    pivot = r;
                    break;
                }
            }
            if (pivot == n_) continue;
            used[pivot] = true;
            for (std::size_t r = 0; r < n_; ++r) {
                if (r != pivot && has(rows[r])) rows[r] *= rows[pivot];
            }
        }
    }

    std::vector<PauliString> reduced;
    for (std::size_t r = 0; r < n_; ++r) {
        if (used[r]) continue;
        PauliString p(qubits.size());
        for (std::size_t i = 0; i < qubits.size(); ++i) p.set_letter(i, rows[r].letter(qubits[i]));
        p.set_log_i(rows[r].log_i());
        reduced.push_back(std::move(p));
    }
    if (reduced.size() != qubits.size()) {
        throw std::invalid_argument("subsystem is entangled with the remaining qubits");
    }
    return from_generators(reduced);
}

std::vector<PauliString> StabilizerState::canonical_stabilizers() const {
    std::vector<PauliString> rows = stabilizers();
    std::size_t rank = 0;
    // Column order X_0, Z_0, X_1, Z_1, ...
    for (std::size_t q = 0; q < n_ && rank < n_; ++q) {
        for (unsigned component : {1u, 2u}) {
            const std::size_t w = q / 64;
            const Word bit = Word{1} << (q % 64);
            auto has = [&](const PauliString& p) {
                return ((component == 1u ? p.xs()[w] : p.zs()[w]) & bit) != 0;
            };
            std::size_t pivot = rank;
            while (pivot < n_ && !has(rows[pivot])) ++pivot;
            if (pivot == n_) continue;
            std::swap(rows[rank], rows[pivot]);
            for (std::size_t r = 0; r < n_; ++r) {
                if (r != rank && has(rows[r])) rows[r] *= rows[rank];
            }
            ++rank;
        }
    }
    return rows;
}

std::optional<std::size_t> overlap_log2(const StabilizerState& a, const StabilizerState& b) {
    const std::size_t n = a.num_qubits();
    if (b.num_qubits() != n) throw std::invalid_argument("overlap needs equal qubit counts");

    const auto a_stabs = a.stabilizers();
    const auto b_stabs = b.stabilizers();

    // Syndrome of each generator of b against the stabilizers of a; combinations
    // with zero syndrome lie in +-S(a) and must carry the same sign in both.
    std::vector<BitRow> syndrome(n, BitRow(n));
    std::vector<BitRow> combo(n, BitRow(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!b_stabs[j].commutes_with(a_stabs[k])) syndrome[j].flip(k);
        }
        combo[j].flip(j);
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && !syndrome[pivot].get(col)) ++pivot;
        if (pivot == n) continue;
        std::swap(syndrome[rank], syndrome[pivot]);
        std::swap(combo[rank], combo[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != rank && syndrome[r].get(col)) {
                syndrome[r].xor_with(syndrome[rank]);
                combo[r].xor_with(combo[rank]);
            }
        }
        ++rank;
    }

    for (std::size_t r = rank; r < n; ++r) {
        PauliString product(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (combo[r].get(j)) product *= b_stabs[j];
        }
        // `product` stabilizes b; a must agree on its sign.
        if (a.expectation(product) != std::optional<int>(+1)) return std::nullopt;
    }
    return rank;
}

double overlap_sq(const StabilizerState& a, const StabilizerState& b) {
    const auto k = overlap_log2(a, b);
    if (!k) return 0.0;
    return std::ldexp(1.0, -static_cast<int>(*k));
}

StabilizerState graph_state(const Graph& graph) {
    StabilizerState state(graph.num_vertices());
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) state.h(v);
    for (const auto& [u, v] : graph.edges()) state.cz(u, v);
    return state;
}

}  // namespace piecemaker
