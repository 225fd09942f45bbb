// Copyright 2026 The ftcc Authors
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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ftcc/bits.hpp"

namespace ftcc {

/// Thrown by the text parsers; `position()` is the offending character index.
class ParseError : public std::invalid_argument {
   public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

   private:
    std::size_t position_;
};

enum class PhaseMode { Ignore, Exact };

/// n-qubit Pauli operator  i^phase * P_0 (x) ... (x) P_{n-1}  with P_j in {I, X, Y, Z}.
///
/// Each tensor factor is the Hermitian letter encoded by (x_j, z_j):
/// (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z, where Y = i X Z. With this convention
/// every Hermitian Pauli has phase 0 or 2.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : x_(n), z_(n) {}
    PauliOperator(BitVector x, BitVector z, std::uint8_t phase = 0);

    static PauliOperator identity(std::size_t n) { return PauliOperator(n); }
    /// Single-letter operator ('X', 'Y' or 'Z') on qubit q.
    static PauliOperator single(std::size_t n, std::size_t q, char letter);
    /// Letter on every qubit of `support`.
    static PauliOperator on_support(std::size_t n, std::span<const std::size_t> support, char letter);
    /// From the 2n-bit symplectic vector [x | z], phase 0.
    static PauliOperator from_symplectic(const BitVector& v);

    std::size_t num_qubits() const { return x_.size(); }
    const BitVector& x() const { return x_; }
    const BitVector& z() const { return z_; }
    BitVector& x() { return x_; }
    BitVector& z() { return z_; }
    std::uint8_t phase() const { return phase_; }
    void set_phase(int p) { phase_ = static_cast<std::uint8_t>(((p % 4) + 4) % 4); }

    char letter(std::size_t q) const;
    void set_letter(std::size_t q, char letter);

    bool is_identity() const { return x_.none() && z_.none(); }
    bool is_hermitian() const { return (phase_ & 1) == 0; }
    BitVector support_mask() const { return x_ | z_; }
    std::vector<std::size_t> support() const { return support_mask().ones(); }

    /// [x | z] of length 2n.
    BitVector symplectic() const { return x_.concat(z_); }

    /// Same letters, phase forced to 0.
    PauliOperator unsigned_part() const { return PauliOperator(x_, z_, 0); }
    bool equal_up_to_phase(const PauliOperator& o) const { return x_ == o.x_ && z_ == o.z_; }

    /// Right-multiplies in place: *this = *this * rhs (exact phase).
    PauliOperator& operator*=(const PauliOperator& rhs);
    friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }

    /// Phase-free product on the letters only (the hot-loop form).
    void xor_letters(const PauliOperator& rhs) {
        x_ ^= rhs.x_;
        z_ ^= rhs.z_;
    }

    /// Sub-operator on the listed qubits, phase 0.
    PauliOperator restrict_to(std::span<const std::size_t> qubits) const;
    /// Embeds this operator's letters onto `qubits` of an n-qubit operator (phase kept).
    PauliOperator embed(std::size_t n, std::span<const std::size_t> qubits) const;

    bool operator==(const PauliOperator& o) const = default;
    auto operator<=>(const PauliOperator& o) const = default;

   private:
    BitVector x_, z_;
    std::uint8_t phase_ = 0;
};

/// Parses `[+|-|i|-i]?[IXYZ]*`.
PauliOperator parse_pauli(std::string_view text);
/// Canonical form: '-' / 'i' / '-i' prefix when the phase is nonzero, then letters.
std::string format_pauli(const PauliOperator& p);

PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);
bool commutes(const PauliOperator& p, const PauliOperator& q);
std::size_t weight(const PauliOperator& p);

/// Whether p lies in the group generated by `generators`. Ignore compares the
/// symplectic span only; Exact also requires the phase to match the product
/// of the generators that reproduce p. Generators must pairwise commute for
/// Exact mode to be meaningful.
bool in_group(const PauliOperator& p, std::span<const PauliOperator> generators,
              PhaseMode mode = PhaseMode::Ignore);

/// Product of the generators selected by `mask` (generator order).
PauliOperator product_of(std::span<const PauliOperator> generators, const BitVector& mask);

}  // namespace ftcc
