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

#include "piecemaker/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace piecemaker {

char to_char(PauliLetter letter) {
    switch (letter) {
        case PauliLetter::I:
            return 'I';
        case PauliLetter::X:
            return 'X';
        case PauliLetter::Y:
            return 'Y';
        case PauliLetter::Z:
            return 'Z';
    }
    return '?';
}

namespace detail {

unsigned mul_letters_inplace(std::span<std::uint64_t> x1, std::span<std::uint64_t> z1,
                             std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
    // Single-qubit products pick up +i for XY, YZ, ZX and -i for YX, ZY, XZ.
    int count = 0;
    for (std::size_t w = 0; w < x1.size(); ++w) {
        const std::uint64_t a_x = x1[w], a_z = z1[w], b_x = x2[w], b_z = z2[w];
        const std::uint64_t ax_only = a_x & ~a_z, ay = a_x & a_z, az_only = ~a_x & a_z;
        const std::uint64_t bx_only = b_x & ~b_z, by = b_x & b_z, bz_only = ~b_x & b_z;
        const std::uint64_t plus = (ax_only & by) | (ay & bz_only) | (az_only & bx_only);
        const std::uint64_t minus = (ay & bx_only) | (az_only & by) | (ax_only & bz_only);
        count += std::popcount(plus) - std::popcount(minus);
        x1[w] = a_x ^ b_x;
        z1[w] = a_z ^ b_z;
    }
    return static_cast<unsigned>(count) & 3u;
}

}  // namespace detail

PauliString::PauliString(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      xs_(detail::words_for(num_qubits), 0),
      zs_(detail::words_for(num_qubits), 0) {}

PauliString PauliString::from_text(std::string_view text) {
    unsigned log_i = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') log_i = 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        log_i += 1;
        ++pos;
    }
    PauliString result(text.size() - pos);
    for (std::size_t q = 0; pos < text.size(); ++pos, ++q) {
        switch (text[pos]) {
            case 'I':
            case '_':
                break;
            case 'X':
                result.set_letter(q, PauliLetter::X);
                break;
            case 'Y':
                result.set_letter(q, PauliLetter::Y);
                break;
            case 'Z':
                result.set_letter(q, PauliLetter::Z);
                break;
            default:
                throw std::invalid_argument("invalid Pauli character in '" + std::string(text) + "'");
        }
    }
    result.set_log_i(log_i);
    return result;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, PauliLetter letter) {
    PauliString result(num_qubits);
    result.set_letter(qubit, letter);
    return result;
}

PauliLetter PauliString::letter(std::size_t qubit) const {
    if (qubit >= num_qubits_) throw std::out_of_range("Pauli qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << (qubit % 64);
    const unsigned x = (xs_[qubit / 64] & bit) ? 1u : 0u;
    const unsigned z = (zs_[qubit / 64] & bit) ? 2u : 0u;
    return static_cast<PauliLetter>(x | z);
}

void PauliString::set_letter(std::size_t qubit, PauliLetter letter) {
    if (qubit >= num_qubits_) throw std::out_of_range("Pauli qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << (qubit % 64);
    const auto bits = static_cast<unsigned>(letter);
    if (bits & 1u) {
        xs_[qubit / 64] |= bit;
    } else {
        xs_[qubit / 64] &= ~bit;
    }
    if (bits & 2u) {
        zs_[qubit / 64] |= bit;
    } else {
        zs_[qubit / 64] &= ~bit;
    }
}

bool PauliString::is_identity_letters() const {
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        if (xs_[w] | zs_[w]) return false;
    }
    return true;
}

std::size_t PauliString::weight() const {
    std::size_t total = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) total += std::popcount(xs_[w] | zs_[w]);
    return total;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (other.num_qubits_ != num_qubits_) throw std::invalid_argument("Pauli size mismatch");
    return !detail::anticommutes(xs_, zs_, other.xs_, other.zs_);
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
    if (rhs.num_qubits_ != num_qubits_) throw std::invalid_argument("Pauli size mismatch");
    const unsigned extra = detail::mul_letters_inplace(xs_, zs_, rhs.xs_, rhs.zs_);
    log_i_ = (log_i_ + rhs.log_i_ + extra) & 3u;
    return *this;
}

std::string PauliString::str() const {
    static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[log_i_];
    out.reserve(out.size() + num_qubits_);
    for (std::size_t q = 0; q < num_qubits_; ++q) out.push_back(to_char(letter(q)));
    return out;
}

}  // namespace piecemaker
