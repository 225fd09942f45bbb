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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftcc/circuit.hpp"
#include "ftcc/code.hpp"
#include "ftcc/statevector.hpp"

namespace ftcc {

/// One of the 24 single-qubit Cliffords (up to phase) as a shortest word
/// over {H, S, SDG, K, KDG, X, Y, Z}.
struct Clifford1 {
    PauliOperator x_image;  // signed image of X
    PauliOperator z_image;  // signed image of Z
    std::vector<GateKind> word;

    std::string name() const;
};

/// All 24, identity first, then by word length.
const std::vector<Clifford1>& single_qubit_cliffords();

/// Target action of a logical gate given as a circuit on its logical qubits.
LogicalAction logical_gate_action(GateKind kind, std::size_t arity = 1);

/// Applies `kind` to every qubit of one block, or pairwise across two
/// blocks (first block controls). Blocks of a pair must have equal size.
Circuit build_transversal(GateKind kind, std::span<const Block> blocks, std::size_t n, double theta = 0.0);

/// Transversal realization of a single-qubit logical Clifford on `code`:
/// one Clifford on every qubit, then a logical Pauli on its stored
/// representative qubits to fix signs. Circuit width is code.n.
std::optional<Circuit> find_transversal_clifford(const StabilizerCode& code, const LogicalAction& target);

/// Qubit-wise CNOT or CZ between two blocks of equal size (a on qubits
/// [0, n), b on [n, 2n)), with a logical Pauli sign fix when needed.
std::optional<Circuit> find_transversal_two_block(GateKind kind, const StabilizerCode& a, const StabilizerCode& b);

/// Physical per-qubit rotation realizing logical C^kZ(theta) on k+1 blocks
/// of a CSS code, with the rotation angle used on each qubit. Checked
/// exactly on every coset basis state of the encoded basis.
struct DiagonalRealization {
    double physical_theta;
};
std::optional<DiagonalRealization> find_transversal_diagonal(const StabilizerCode& code, std::size_t k, double theta);

/// Active qubits of the C^kZ(theta) construction and the rotation target q_t.
struct ActiveSet {
    std::vector<std::size_t> qubits;  // sorted
    std::size_t target = 0;
};

/// five_qubit: {q1, q3, q5} with q_t = q3; other codes: the support of the
/// stored logical Z with q_t its last qubit.
ActiveSet default_active_set(const StabilizerCode& code);

struct CkzGadget {
    CodePtr code;
    std::size_t k = 0;
    double theta = 0.0;
    ActiveSet active;
    PauliOperator z_rep;   // signed logical Z representative on the active set
    Circuit lc;            // local Cliffords mapping z_rep to +Z on every active qubit
    Circuit staircase;     // CNOT chain folding the active Z-parity onto q_t
    Circuit rotation;      // the single physical C^kZ(theta)
    Circuit full;          // lc, staircase, rotation, staircase^-1, lc^-1
    /// Consecutive gate ranges of `full` applied between EC rounds.
    std::vector<std::pair<std::size_t, std::size_t>> steps;
    std::optional<EquivalenceReport> oracle;  // set when verified densely

    std::size_t cnots_per_block() const { return full.count(GateKind::CNOT) / (k + 1); }
};

/// Builds the gadget on k+1 copies of `code` (copy b on qubits [b n, (b+1) n)).
/// With `verify`, runs logical_equiv when the register fits `budget` and
/// throws std::logic_error on disagreement.
CkzGadget build_ckz_gadget(CodePtr code, std::size_t k, double theta, std::optional<ActiveSet> active = {},
                           bool verify = true, const SvBudget& budget = {});

/// Logical H on the five-qubit code from local Cliffords and a relabeling
/// that fixes q3. Relabelings containing a 4-cycle are preferred.
Circuit build_permutation_h_5q();

/// Round-robin logical CNOT between blocks of different codes.
struct CrossCodeCnotPlan {
    CodePtr control_code;
    CodePtr target_code;
    std::vector<std::size_t> sz_support;  // control logical Z support (local)
    std::vector<std::size_t> sx_support;  // target logical X support (local)
    std::vector<std::pair<std::size_t, std::size_t>> cnots;  // (control local, target local)
    std::vector<std::size_t> piece_sizes;                    // contiguous, sums to cnots.size()
    /// Joint code after each piece but the last (control qubits first).
    std::vector<CodePtr> intermediate;

    std::size_t num_pieces() const { return piece_sizes.size(); }
};

/// Default piece count is min(d_control, d_target) - 1.
CrossCodeCnotPlan build_cross_code_cnot(CodePtr control, CodePtr target, std::optional<std::size_t> pieces = {});

/// Circuit on n_c + n_t qubits with blocks {0: control, 1: target}; pieces
/// are separated by PIECE and, when `with_ec`, by EC on both blocks with the
/// intermediate code.
Circuit cross_code_circuit(const CrossCodeCnotPlan& plan, bool with_ec = true);

/// Bounded search for a round-robin variant with CNOTs removed that still
/// implements logical CNOT (tableau check). Tries every subset of at most
/// `max_removed` CNOTs in lexicographic order; returns the smallest found.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> search_reduced_cross_code_cnot(
    const CrossCodeCnotPlan& plan, std::size_t max_removed);

/// How a level-1 gate is realized on its inner blocks.
enum class Lowering {
    Transversal,      // qubit-wise on each block (includes block relabeling)
    CrossCodeCnot,    // round-robin CNOT between blocks of different codes
    OpaqueConverter,  // switch to rm15, rotate transversally, switch back
    OpaqueBlockGate,  // no transversal realization; modeled as an opaque block gate
    Physical,         // all involved C1 qubits are unencoded
};
std::string_view lowering_name(Lowering l);

/// Level-1 realization of one logical gate on `copies` blocks of C1, with the
/// S1 / S2 split induced by an inner-code assignment.
struct GadgetPlan {
    GateKind gate = GateKind::H;
    CodePtr c1;
    std::vector<CodePtr> assignment;  // per C1 qubit; null = unencoded
    std::size_t copies = 1;
    bool applicable = true;
    std::string reason;  // why the gate is inapplicable
    /// Circuit on copies * c1.n qubits; copy b on [b n1, (b+1) n1).
    Circuit level1;
    /// Consecutive gate ranges of level1 separated by inner EC rounds.
    std::vector<std::pair<std::size_t, std::size_t>> steps;
    std::vector<Lowering> lowering;  // per level-1 gate
    std::vector<bool> s1;            // per level-1 gate: non-transversal on its inner code

    std::vector<std::size_t> s1_indices() const;
    std::vector<std::size_t> s2_indices() const;
};

/// Gates in the library: H, K, S, T, CZ, CCZ. Throws std::invalid_argument
/// for anything else; a gate with no realization for this assignment comes
/// back with applicable = false.
GadgetPlan assemble_gate_plan(CodePtr c1, GateKind gate, const std::vector<CodePtr>& assignment);

/// Phase angle of a diagonal gate viewed as C^kZ(theta).
double rotation_angle(const Gate& g);
/// The named gate for C^kZ(theta) when one exists (T, S, CZ, CCZ, ...), else
/// ZTHETA / CKZ.
Gate controlled_phase_gate(std::size_t k, double theta, std::vector<std::size_t> qubits);

/// Relabeling that realizes logical H on the five-qubit code keeps every
/// moved qubit on a block of the same inner code as its image.
bool permutation_h_applicable(const std::vector<CodePtr>& assignment);

}  // namespace ftcc
