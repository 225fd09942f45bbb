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

#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "ftcc/circuit.hpp"

using namespace ftcc;
using namespace ftcc::testing;

namespace {

Circuit single_gate(std::size_t n, Gate g) {
    Circuit c;
    c.n = n;
    c.add(std::move(g));
    return c;
}

Circuit transversal(GateKind kind, std::size_t n) {
    Circuit c;
    c.n = n;
    for (std::size_t q = 0; q < n; ++q) c.add(make_gate(kind, {q}));
    return c;
}

PauliOperator random_pauli(std::mt19937_64& rng, std::size_t n) {
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; ++q) p.set_letter(q, "IXYZ"[rng() % 4]);
    p.set_phase(static_cast<int>(rng() % 4));
    return p;
}

}  // namespace

TEST(Conjugation, EveryCliffordGateMatchesDenseConjugation) {
    const double pi = std::numbers::pi;
    std::vector<Gate> gates = {
        make_gate(GateKind::H, {1}),       make_gate(GateKind::S, {0}),
        make_gate(GateKind::SDG, {2}),     make_gate(GateKind::K, {1}),
        make_gate(GateKind::KDG, {0}),     make_gate(GateKind::X, {2}),
        make_gate(GateKind::Y, {1}),       make_gate(GateKind::Z, {0}),
        make_gate(GateKind::ZTHETA, {1}, pi / 2), make_gate(GateKind::ZTHETA, {2}, -pi / 2),
        make_gate(GateKind::ZTHETA, {0}, pi),     make_gate(GateKind::CNOT, {2, 0}),
        make_gate(GateKind::CNOT, {0, 1}), make_gate(GateKind::CZ, {1, 2}),
        make_gate(GateKind::CKZ, {0, 2}, pi),     make_gate(GateKind::CKZ, {1}, pi / 2),
        make_permute({0, 1, 2}, {2, 0, 1}),
    };
    std::mt19937_64 rng(5);
    for (const auto& g : gates) {
        ASSERT_TRUE(g.is_clifford()) << kind_name(g.kind);
        const Dense u = gate_unitary(g, 3);
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = random_pauli(rng, 3);
            auto img = p;
            conjugate_gate(g, img);
            const Dense want = u * pauli_matrix(p) * u.adjoint();
            EXPECT_LT((want - pauli_matrix(img)).norm(), 1e-12) << kind_name(g.kind) << " " << format_pauli(p);
        }
    }
}

TEST(Conjugation, BasicExamples) {
    auto p = conjugate_clifford(single_gate(2, make_gate(GateKind::CNOT, {0, 1})), parse_pauli("XI"));
    EXPECT_EQ(format_pauli(p), "XX");
    p = conjugate_clifford(single_gate(1, make_gate(GateKind::H, {0})), parse_pauli("X"));
    EXPECT_EQ(format_pauli(p), "Z");
    p = conjugate_clifford(single_gate(2, make_gate(GateKind::CNOT, {0, 1})), parse_pauli("IZ"));
    EXPECT_EQ(format_pauli(p), "ZZ");
}

TEST(Conjugation, NonCliffordBranching) {
    const auto r = conjugate_through(single_gate(1, make_gate(GateKind::T, {0})), parse_pauli("X"));
    ASSERT_EQ(r.branches.size(), 2u);
    EXPECT_EQ(format_pauli(r.branches[0]), "X");
    EXPECT_EQ(format_pauli(r.branches[1]), "Y");
    EXPECT_EQ(r.non_clifford_passages, 1u);
    const auto z = conjugate_through(single_gate(1, make_gate(GateKind::T, {0})), parse_pauli("Z"));
    ASSERT_EQ(z.branches.size(), 1u);
    EXPECT_EQ(format_pauli(z.branches[0]), "Z");
    // X on one input of CCZ collects Z on any subset of its support.
    const auto c = conjugate_through(single_gate(3, make_gate(GateKind::CCZ, {0, 1, 2})), parse_pauli("XII"));
    EXPECT_EQ(c.branches.size(), 8u);
    Circuit with_opaque;
    with_opaque.n = 1;
    with_opaque.blocks.push_back(Block{"b0", nullptr, {0}});
    with_opaque.add(make_opaque("CC", 0, 0, OpaqueMode::Arbitrary, {0}));
    EXPECT_THROW(conjugate_through(with_opaque, parse_pauli("X")), std::invalid_argument);
}

TEST(Conjugation, BranchesCoverExactConjugation) {
    // Every Pauli with nonzero weight in the exact T X T^dag expansion is a branch.
    const Dense t = single_qubit_unitary(GateKind::T, std::numbers::pi / 4);
    const Dense img = t * pauli_matrix(parse_pauli("X")) * t.adjoint();
    const auto r = conjugate_through(single_gate(1, make_gate(GateKind::T, {0})), parse_pauli("X"));
    for (const char* l : {"I", "X", "Y", "Z"}) {
        const Dense pm = pauli_matrix(parse_pauli(l));
        const double coeff = std::abs((pm.adjoint() * img).trace()) / 2;
        if (coeff > 1e-12) {
            bool found = false;
            for (const auto& b : r.branches) found |= format_pauli(b) == l;
            EXPECT_TRUE(found) << l;
        }
    }
}

TEST(Conjugation, HomomorphismOnCliffordCircuits) {
    std::mt19937_64 rng(9);
    Circuit c;
    c.n = 6;
    const GateKind ks[] = {GateKind::H, GateKind::S, GateKind::K, GateKind::SDG, GateKind::Y};
    for (int i = 0; i < 40; ++i) {
        if (rng() % 2) {
            std::size_t a = rng() % 6, b = (a + 1 + rng() % 5) % 6;
            c.add(make_gate(rng() % 2 ? GateKind::CNOT : GateKind::CZ, {a, b}));
        } else {
            c.add(make_gate(ks[rng() % 5], {rng() % 6}));
        }
    }
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_pauli(rng, 6), q = random_pauli(rng, 6);
        EXPECT_EQ(conjugate_clifford(c, p * q), conjugate_clifford(c, p) * conjugate_clifford(c, q));
        const auto r = conjugate_through(c, p);
        ASSERT_EQ(r.branches.size(), 1u);
        EXPECT_EQ(r.branches[0], conjugate_clifford(c, p));
    }
}

TEST(LogicalAction, TransversalGatesOnBaseCodes) {
    const auto steane = load_base_code("steane");
    Circuit h1;
    h1.n = 1;
    h1.add(make_gate(GateKind::H, {0}));
    const auto r = induced_logical_action(transversal(GateKind::H, 7), steane);
    ASSERT_TRUE(r.action.has_value()) << r.violation;
    EXPECT_EQ(*r.action, ideal_action(h1));

    std::vector<StabilizerCode> two = {steane, steane};
    const auto joint = tensor_product(two, "steane x2");
    Circuit cx;
    cx.n = 14;
    for (std::size_t q = 0; q < 7; ++q) cx.add(make_gate(GateKind::CNOT, {q, q + 7}));
    Circuit cx_l;
    cx_l.n = 2;
    cx_l.add(make_gate(GateKind::CNOT, {0, 1}));
    const auto rc = induced_logical_action(cx, joint);
    ASSERT_TRUE(rc.action.has_value()) << rc.violation;
    EXPECT_EQ(*rc.action, ideal_action(cx_l));

    const auto rm = load_base_code("rm15");
    const auto rh = induced_logical_action(transversal(GateKind::H, 15), rm);
    EXPECT_FALSE(rh.action.has_value());
    EXPECT_NE(rh.violation.find("outside the stabilizer group"), std::string::npos);
}

TEST(LogicalAction, ComposeWithInverseIsIdentity) {
    const auto five = load_base_code("five_qubit");
    Circuit c = transversal(GateKind::K, 5);
    c.add(make_gate(GateKind::CZ, {0, 1}));
    c.add(make_gate(GateKind::H, {3}));
    const auto id = compose(c, inverse(c));
    const auto r = induced_logical_action(id, five);
    ASSERT_TRUE(r.action.has_value());
    Circuit empty;
    empty.n = 1;
    EXPECT_EQ(*r.action, ideal_action(empty));
}

TEST(CircuitOps, InverseReversesStaircase) {
    Circuit sc;
    sc.n = 3;
    sc.add(make_gate(GateKind::CNOT, {0, 2}));
    sc.add(make_gate(GateKind::CNOT, {2, 1}));
    const auto inv = inverse(sc);
    ASSERT_EQ(inv.gates.size(), 2u);
    EXPECT_EQ(inv.gates[0], sc.gates[1]);
    EXPECT_EQ(inv.gates[1], sc.gates[0]);
    Circuit with_marker = sc;
    with_marker.add(make_piece());
    EXPECT_THROW(inverse(with_marker), std::invalid_argument);
    Circuit t = single_gate(1, make_gate(GateKind::T, {0}));
    EXPECT_EQ(inverse(t).gates[0].kind, GateKind::TDG);
}

TEST(CircuitText, RoundTripAndErrors) {
    const std::string text =
        "QUBITS 9\n"
        "BLOCK 0 steane 0 1 2 3 4 5 6\n"
        "BLOCK 1 none 7\n"
        "H 0\n"
        "CNOT 0 7  # comment\n"
        "CKZ 1 2 8 @theta=pi/4\n"
        "ZTHETA 3 @theta=-pi/2\n"
        "PERMUTE 0 1 2 @map=1,2,0\n"
        "EC 0\n"
        "PIECE\n"
        "OPAQUE H 0 @mode=arbitrary\n";
    const auto c = parse_circuit(text);
    EXPECT_EQ(c.n, 9u);
    EXPECT_EQ(c.gates.size(), 8u);
    EXPECT_NEAR(c.gates[2].theta, std::numbers::pi / 4, 1e-15);
    EXPECT_EQ(c.gates.back().qubits.size(), 7u);
    const auto again = parse_circuit(format_circuit(c));
    EXPECT_EQ(format_circuit(again), format_circuit(c));
    EXPECT_EQ(again.gates, c.gates);
    EXPECT_THROW(parse_circuit("QUBITS 2\nCNOT 0 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("QUBITS 2\nFOO 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("H 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("QUBITS 2\nCNOT 0 5\n"), ParseError);
    EXPECT_THROW(parse_circuit("QUBITS 3\nPERMUTE 0 1 @map=0,0\n"), ParseError);
}

TEST(CircuitText, DenseUnitaryOfParsedCircuit) {
    const auto c = parse_circuit("QUBITS 2\nH 0\nCNOT 0 1\n");
    const Dense u = circuit_unitary(c);
    // Bell-state preparation from |00>.
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(4);
    zero(0) = 1;
    const Eigen::VectorXcd out = u * zero;
    EXPECT_NEAR(std::abs(out(0)), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(std::abs(out(3)), 1 / std::sqrt(2.0), 1e-12);
}
