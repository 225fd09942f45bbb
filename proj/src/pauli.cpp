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

#include "ftcc/pauli.hpp"

#include <bit>

namespace ftcc {

namespace {

void require_same_size(const PauliOperator& p, const PauliOperator& q, const char* op) {
    if (p.num_qubits() != q.num_qubits())
        throw std::invalid_argument(std::string(op) + ": qubit count mismatch (" +
                                    std::to_string(p.num_qubits()) + " vs " +
                                    std::to_string(q.num_qubits()) + ")");
}

}  // namespace

PauliOperator::PauliOperator(BitVector x, BitVector z, std::uint8_t phase)
    : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3) {
    if (x_.size() != z_.size()) throw std::invalid_argument("PauliOperator: x/z length mismatch");
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t q, char letter) {
    PauliOperator p(n);
    p.set_letter(q, letter);
    return p;
}

PauliOperator PauliOperator::on_support(std::size_t n, std::span<const std::size_t> support, char letter) {
    PauliOperator p(n);
    for (auto q : support) p.set_letter(q, letter);
    return p;
}

PauliOperator PauliOperator::from_symplectic(const BitVector& v) {
    if (v.size() % 2) throw std::invalid_argument("symplectic vector must have even length");
    const std::size_t n = v.size() / 2;
    return PauliOperator(v.slice(0, n), v.slice(n, n), 0);
}

char PauliOperator::letter(std::size_t q) const {
    static constexpr char letters[4] = {'I', 'Z', 'X', 'Y'};
    return letters[(x_.get(q) ? 2 : 0) | (z_.get(q) ? 1 : 0)];
}

void PauliOperator::set_letter(std::size_t q, char letter) {
    switch (letter) {
        case 'I': x_.set(q, false); z_.set(q, false); break;
        case 'X': x_.set(q, true); z_.set(q, false); break;
        case 'Y': x_.set(q, true); z_.set(q, true); break;
        case 'Z': x_.set(q, false); z_.set(q, true); break;
        default: throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
    }
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& rhs) {
    require_same_size(*this, rhs, "multiply");
    // Per qubit, the letter product contributes +i for XY, YZ, ZX and -i for
    // XZ, ZY, YX.
    int log_i = phase_ + rhs.phase_;
    for (std::size_t w = 0; w < x_.num_words(); ++w) {
        const std::uint64_t x1 = x_.word(w), z1 = z_.word(w);
        const std::uint64_t x2 = rhs.x_.word(w), z2 = rhs.z_.word(w);
        const std::uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
        const std::uint64_t minus = (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2) | (x1 & z1 & x2 & ~z2);
        log_i += std::popcount(plus) - std::popcount(minus);
        x_.word(w) = x1 ^ x2;
        z_.word(w) = z1 ^ z2;
    }
    set_phase(log_i);
    return *this;
}

PauliOperator PauliOperator::restrict_to(std::span<const std::size_t> qubits) const {
    PauliOperator r(qubits.size());
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (x_.get(qubits[i])) r.x_.set(i);
        if (z_.get(qubits[i])) r.z_.set(i);
    }
    return r;
}

PauliOperator PauliOperator::embed(std::size_t n, std::span<const std::size_t> qubits) const {
    if (qubits.size() != num_qubits()) throw std::invalid_argument("embed: support size mismatch");
    PauliOperator r(n);
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (x_.get(i)) r.x_.set(qubits[i]);
        if (z_.get(i)) r.z_.set(qubits[i]);
    }
    r.phase_ = phase_;
    return r;
}

PauliOperator parse_pauli(std::string_view text) {
    std::size_t pos = 0;
    int phase = 0;
    if (text.starts_with("-i")) {
        phase = 3;
        pos = 2;
    } else if (text.starts_with("+i")) {
        phase = 1;
        pos = 2;
    } else if (text.starts_with("i")) {
        phase = 1;
        pos = 1;
    } else if (text.starts_with("-")) {
        phase = 2;
        pos = 1;
    } else if (text.starts_with("+")) {
        pos = 1;
    }
    PauliOperator p(text.size() - pos);
    for (std::size_t i = pos; i < text.size(); ++i) {
        const char c = text[i];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw ParseError(std::string("invalid Pauli character '") + c + "'", i);
        p.set_letter(i - pos, c);
    }
    p.set_phase(phase);
    return p;
}

std::string format_pauli(const PauliOperator& p) {
    static constexpr const char* prefixes[4] = {"", "i", "-", "-i"};
    std::string s = prefixes[p.phase()];
    s.reserve(s.size() + p.num_qubits());
    for (std::size_t q = 0; q < p.num_qubits(); ++q) s.push_back(p.letter(q));
    return s;
}

PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) { return p * q; }

bool commutes(const PauliOperator& p, const PauliOperator& q) {
    require_same_size(p, q, "commutes");
    return p.x().dot(q.z()) == p.z().dot(q.x());
}

std::size_t weight(const PauliOperator& p) { return p.support_mask().popcount(); }

PauliOperator product_of(std::span<const PauliOperator> generators, const BitVector& mask) {
    if (generators.empty()) throw std::invalid_argument("product_of: empty generator list");
    PauliOperator acc = PauliOperator::identity(generators.front().num_qubits());
    for (auto i : mask.ones()) acc *= generators[i];
    return acc;
}

bool in_group(const PauliOperator& p, std::span<const PauliOperator> generators, PhaseMode mode) {
    if (p.is_identity() && (mode == PhaseMode::Ignore || p.phase() == 0)) return true;
    if (generators.empty()) return false;
    const std::size_t n = p.num_qubits();
    EchelonBasis basis(2 * n, generators.size());
    for (const auto& g : generators) {
        require_same_size(p, g, "in_group");
        basis.insert(g.symplectic());
    }
    auto combo = basis.express(p.symplectic());
    if (!combo) return false;
    if (mode == PhaseMode::Ignore) return true;
    return product_of(generators, *combo).phase() == p.phase();
}

}  // namespace ftcc
