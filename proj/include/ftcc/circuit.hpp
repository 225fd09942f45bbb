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

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ftcc/code.hpp"
#include "ftcc/pauli.hpp"

namespace ftcc {

enum class GateKind {
    H,
    S,
    SDG,
    K,    // S * H: X -> Z -> Y -> X
    KDG,
    T,
    TDG,
    ZTHETA,  // diag(1, e^{i theta})
    X,
    Y,
    Z,
    CNOT,  // qubits = {control, target}
    CZ,
    CCZ,
    CKZ,      // k controls then target; diag phase e^{i theta} on |1...1>
    PERMUTE,  // content of qubits[i] moves to qubits[perm[i]]
    EC,       // ideal error correction on `blocks`
    PIECE,    // piece boundary marker
    OPAQUE,   // block-level operation with no gate-level model
};

/// Fault semantics of an OPAQUE gate.
enum class OpaqueMode {
    /// One internal fault leaves an arbitrary Pauli on the output block.
    Arbitrary,
    /// One internal fault leaves at most one single-qubit Pauli on the output
    /// block (a fault-tolerant converter).
    Converter,
};

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<std::size_t> qubits;
    double theta = 0.0;
    std::vector<std::size_t> perm;    // PERMUTE
    std::vector<std::size_t> blocks;  // EC: blocks; OPAQUE: {input block, output block}
    std::string label;                // OPAQUE: name; for block gates the logical Clifford letter
    OpaqueMode opaque_mode = OpaqueMode::Arbitrary;
    /// EC only: code decoded on the concatenated qubits of `blocks`; null
    /// means each block is decoded with its own code. Only generators matter.
    CodePtr code;

    bool is_marker() const { return kind == GateKind::EC || kind == GateKind::PIECE; }
    bool is_diagonal() const;
    /// Exact Clifford (including Clifford-angle rotations).
    bool is_clifford() const;
    /// Codes compare by generator list.
    bool operator==(const Gate& o) const;
};

Gate make_gate(GateKind kind, std::vector<std::size_t> qubits, double theta = 0.0);
Gate make_ec(std::vector<std::size_t> blocks, CodePtr joint_code = nullptr);
Gate make_piece();
Gate make_permute(std::vector<std::size_t> qubits, std::vector<std::size_t> perm);
Gate make_opaque(std::string label, std::size_t block_in, std::size_t block_out, OpaqueMode mode,
                 std::vector<std::size_t> touched);

std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);

/// Code block placed on physical qubits; qubits[i] hosts local qubit i.
struct Block {
    std::string name;
    CodePtr code;  // null for an unencoded qubit
    std::vector<std::size_t> qubits;
};

struct Circuit {
    std::size_t n = 0;
    std::vector<Gate> gates;
    std::vector<Block> blocks;

    void add(Gate g);
    void append(const Circuit& other);  // gates only; layouts must agree
    std::size_t count(GateKind kind) const;
    /// Throws std::invalid_argument when a gate violates arity or range.
    void check() const;
};

/// Ideal-circuit composition (a then b). Requires equal n.
Circuit compose(const Circuit& a, const Circuit& b);
/// Gate-wise inverse in reverse order; markers and OPAQUE gates are rejected.
Circuit inverse(const Circuit& a);

std::string format_circuit(const Circuit& c);
/// Parses the line format written by format_circuit. Blocks referring to a
/// base code by name are resolved with base_code().
Circuit parse_circuit(std::string_view text);

/// Exact conjugation U P U^dagger by one Clifford gate (phase tracked).
void conjugate_gate(const Gate& g, PauliOperator& p);
/// Exact conjugation through every Clifford gate in order; throws on a non-Clifford gate.
PauliOperator conjugate_clifford(const Circuit& c, const PauliOperator& p, std::size_t from = 0);

/// Images of an error pushed through a circuit. A single branch for Clifford
/// circuits; after X-type passage through a diagonal non-Clifford gate on Q
/// the set holds every P * Z_R with R a subset of Q (phases dropped).
struct PropagatedError {
    std::vector<PauliOperator> branches;
    std::size_t non_clifford_passages = 0;
};

PropagatedError conjugate_through(const Circuit& c, const PauliOperator& p, std::size_t from = 0,
                                  std::size_t max_branches = 1u << 16);

/// k-qubit image of each logical generator: images[2i] is the image of X_i,
/// images[2i+1] of Z_i, as Paulis on the logical qubits.
struct LogicalAction {
    std::vector<PauliOperator> images;
    bool operator==(const LogicalAction&) const = default;
};

struct LogicalActionResult {
    std::optional<LogicalAction> action;
    std::string violation;  // set when the circuit is not code-preserving
};

/// For an all-Clifford circuit over `code` (n qubits), the induced map on
/// logical operators, or the first generator whose image leaves the
/// stabilizer group.
LogicalActionResult induced_logical_action(const Circuit& c, const StabilizerCode& code);

/// Logical action of an ideal k-qubit Clifford circuit (used as the target).
LogicalAction ideal_action(const Circuit& logical_circuit);

/// Whether two circuits act identically on every Pauli (including phase).
bool same_clifford(const Circuit& a, const Circuit& b);

}  // namespace ftcc
