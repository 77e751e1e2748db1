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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace piecemaker {

/// Single-qubit Pauli letter. Bit 0 is the X component, bit 1 the Z component,
/// so Y = X|Z and the letter of a product is the XOR of the letters.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(PauliLetter letter);

namespace detail {

inline std::size_t words_for(std::size_t num_qubits) { return (num_qubits + 63) / 64; }

/// Returns the power of i (mod 4) picked up when the letter string (x1, z1)
/// is multiplied on the right by (x2, z2), and overwrites (x1, z1) with the
/// letters of the product. Signs of the operands are not included.
unsigned mul_letters_inplace(std::span<std::uint64_t> x1, std::span<std::uint64_t> z1,
                             std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2);

/// Parity of the symplectic product; true when the two letter strings anticommute.
inline bool anticommutes(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                         std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < x1.size(); ++w) acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
    return (std::popcount(acc) & 1) != 0;
}

}  // namespace detail

/// An n-qubit Pauli operator i^log_i * (P_1 ⊗ ... ⊗ P_n) with P_k in {I, X, Y, Z}.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits);

    /// Parses strings like "+XZI", "-Y_Z", "iXX" or "-iZ". '_' is accepted for I.
    static PauliString from_text(std::string_view text);

    /// Identity on `num_qubits` qubits except `letter` on `qubit`.
    static PauliString single(std::size_t num_qubits, std::size_t qubit, PauliLetter letter);

    std::size_t num_qubits() const { return num_qubits_; }

    PauliLetter letter(std::size_t qubit) const;
    void set_letter(std::size_t qubit, PauliLetter letter);

    /// Phase exponent: the operator carries the scalar i^log_i().
    unsigned log_i() const { return log_i_; }
    void set_log_i(unsigned log_i) { log_i_ = log_i & 3u; }

    bool is_hermitian() const { return (log_i_ & 1u) == 0; }
    /// True for a Hermitian operator with sign -1.
    bool is_negative() const { return log_i_ == 2; }
    void negate() { log_i_ = (log_i_ + 2) & 3u; }

    bool is_identity_letters() const;
    std::size_t weight() const;

    bool commutes_with(const PauliString& other) const;

    /// this <- this * rhs
    PauliString& operator*=(const PauliString& rhs);
    friend PauliString operator*(PauliString lhs, const PauliString& rhs) {
        lhs *= rhs;
        return lhs;
    }

    friend bool operator==(const PauliString& a, const PauliString& b) = default;

    /// "+XZI"-style rendering, with "+i"/"-i" prefixes for non-Hermitian phases.
    std::string str() const;

    std::span<std::uint64_t> xs() { return xs_; }
    std::span<std::uint64_t> zs() { return zs_; }
    std::span<const std::uint64_t> xs() const { return xs_; }
    std::span<const std::uint64_t> zs() const { return zs_; }

  private:
    std::size_t num_qubits_ = 0;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    unsigned log_i_ = 0;
};

}  // namespace piecemaker
