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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "dense_oracle.hpp"
#include "ftcc/statevector.hpp"

using namespace ftcc;
using namespace ftcc::testing;

namespace {

Circuit transversal(GateKind kind, std::size_t n, double theta = 0.0) {
    Circuit c;
    c.n = n;
    for (std::size_t q = 0; q < n; ++q) c.add(make_gate(kind, {q}, theta));
    return c;
}

Eigen::MatrixXcd one_qubit(GateKind kind, double theta = 0.0) {
    Circuit c;
    c.n = 1;
    c.add(make_gate(kind, {0}, theta));
    return logical_unitary(c);
}

}  // namespace

TEST(StateVector, GatesMatchDenseOracle) {
    std::mt19937_64 rng(11);
    const GateKind kinds[] = {GateKind::H,  GateKind::S,      GateKind::SDG, GateKind::K, GateKind::KDG,
                              GateKind::T,  GateKind::TDG,    GateKind::X,   GateKind::Y, GateKind::Z,
                              GateKind::ZTHETA};
    Circuit c;
    c.n = 4;
    for (int i = 0; i < 60; ++i) {
        switch (rng() % 5) {
            case 0: c.add(make_gate(GateKind::CNOT, {rng() % 2, 2 + rng() % 2})); break;
            case 1: c.add(make_gate(GateKind::CZ, {0, 3})); break;
            case 2: c.add(make_gate(GateKind::CKZ, {1, 2, 3}, 0.7)); break;
            case 3: c.add(make_permute({0, 2, 3}, {1, 2, 0})); break;
            default: c.add(make_gate(kinds[rng() % 11], {rng() % 4}, 0.3)); break;
        }
    }
    const Dense u = circuit_unitary(c);
    for (Eigen::Index j = 0; j < 16; ++j) {
        StateVector::Amplitudes a = StateVector::Amplitudes::Zero(16);
        a(j) = 1;
        StateVector s(4, a);
        s.apply(c);
        EXPECT_LT((s.amplitudes() - u.col(j)).norm(), 1e-12);
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    }
}

TEST(StateVector, PauliActionMatchesDense) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        PauliOperator p(3);
        for (std::size_t q = 0; q < 3; ++q) p.set_letter(q, "IXYZ"[rng() % 4]);
        p.set_phase(static_cast<int>(rng() % 4));
        StateVector::Amplitudes a = StateVector::Amplitudes::Random(8);
        StateVector s(3, a);
        s.apply_pauli(p);
        EXPECT_LT((s.amplitudes() - pauli_matrix(p) * a).norm(), 1e-12);
        StateVector b(3, StateVector::Amplitudes::Random(8));
        const auto direct = b.amplitudes().dot(pauli_matrix(p) * a);
        EXPECT_LT(std::abs(StateVector::matrix_element(b, p, StateVector(3, a)) - direct), 1e-12);
    }
}

TEST(Encode, StabilizedWithExpectedLogicalExpectation) {
    for (const auto& name : base_code_names()) {
        const auto code = load_base_code(name);
        const auto zero = encode(code, 1.0, 0.0);
        for (const auto& g : code.generators) EXPECT_NEAR(zero.expectation(g).real(), 1.0, 1e-10) << name;
        EXPECT_NEAR(zero.expectation(code.logical_z[0]).real(), 1.0, 1e-10) << name;
        const auto one = encode(code, 0.0, 1.0);
        EXPECT_NEAR(one.expectation(code.logical_z[0]).real(), -1.0, 1e-10) << name;
        const double s = 1 / std::sqrt(2.0);
        const auto plus = encode(code, s, s);
        EXPECT_NEAR(plus.expectation(code.logical_x[0]).real(), 1.0, 1e-10) << name;
        EXPECT_NEAR(plus.norm(), 1.0, 1e-12);
    }
}

TEST(Encode, TransversalXFlipsLogicalZ) {
    const auto steane = load_base_code("steane");
    auto s = encode(steane, 1.0, 0.0);
    s.apply(transversal(GateKind::X, 7));
    EXPECT_NEAR(s.expectation(steane.logical_z[0]).real(), -1.0, 1e-10);
}

TEST(Encode, BudgetIsEnforced) {
    SvBudget tiny;
    tiny.max_qubits = 6;
    EXPECT_THROW(encode(load_base_code("steane"), 1.0, 0.0, tiny), BudgetExceeded);
    SvBudget small_mem;
    small_mem.max_megabytes = 1;
    EXPECT_THROW(encode(load_base_code("rm15"), 1.0, 0.0, small_mem), BudgetExceeded);
}

TEST(LogicalEquiv, IdentityAndZeroRotation) {
    const auto five = load_base_code("five_qubit");
    Circuit id;
    id.n = 5;
    auto r = logical_equiv(id, five, Eigen::Matrix2cd::Identity());
    EXPECT_TRUE(r.equivalent);
    EXPECT_NEAR(r.min_fidelity, 1.0, 1e-12);
    EXPECT_EQ(r.inputs_checked, 6u);
    r = logical_equiv(transversal(GateKind::ZTHETA, 5, 0.0), five, Eigen::Matrix2cd::Identity());
    EXPECT_TRUE(r.equivalent);
}

TEST(LogicalEquiv, TransversalCliffordsOnSteane) {
    const auto steane = load_base_code("steane");
    EXPECT_TRUE(logical_equiv(transversal(GateKind::H, 7), steane, one_qubit(GateKind::H)).equivalent);
    EXPECT_FALSE(logical_equiv(transversal(GateKind::H, 7), steane, one_qubit(GateKind::S)).equivalent);
    // S on every qubit acts as logical S^dagger for this presentation.
    EXPECT_TRUE(logical_equiv(transversal(GateKind::S, 7), steane, one_qubit(GateKind::SDG)).equivalent);
}

TEST(LogicalEquiv, TransversalTOnRm15HasOneDaggerConvention) {
    const auto rm = load_base_code("rm15");
    const auto target = one_qubit(GateKind::T, std::numbers::pi / 4);
    const bool t_works = logical_equiv(transversal(GateKind::T, 15, std::numbers::pi / 4), rm, target).equivalent;
    const bool tdg_works =
        logical_equiv(transversal(GateKind::TDG, 15, -std::numbers::pi / 4), rm, target).equivalent;
    EXPECT_NE(t_works, tdg_works);
    EXPECT_TRUE(tdg_works);
}

TEST(LogicalEquiv, LeavingTheCodeSpaceIsReported) {
    const auto steane = load_base_code("steane");
    Circuit c;
    c.n = 7;
    c.add(make_gate(GateKind::H, {0}));
    const auto r = logical_equiv(c, steane, Eigen::Matrix2cd::Identity());
    EXPECT_FALSE(r.equivalent);
    EXPECT_NE(r.violation.find("generator"), std::string::npos);
}

TEST(LogicalEquiv, InvariantUnderAppendedStabilizer) {
    const auto five = load_base_code("five_qubit");
    const auto k_target = one_qubit(GateKind::K);
    Circuit c = transversal(GateKind::K, 5);
    const auto base = logical_equiv(c, five, k_target);
    for (const auto& g : five.generators) {
        Circuit d = c;
        for (std::size_t q = 0; q < 5; ++q) {
            const char l = g.letter(q);
            if (l != 'I') d.add(make_gate(*kind_from_name(std::string(1, l)), {q}));
        }
        const auto r = logical_equiv(d, five, k_target);
        EXPECT_EQ(r.equivalent, base.equivalent);
        EXPECT_NEAR(r.phase, base.phase, 1e-9);
    }
}

TEST(LogicalEquiv, JointCodeTwoBlocks) {
    const auto steane = load_base_code("steane");
    std::vector<StabilizerCode> two = {steane, steane};
    const auto joint = tensor_product(two, "steane x2");
    Circuit cz;
    cz.n = 14;
    for (std::size_t q = 0; q < 7; ++q) cz.add(make_gate(GateKind::CZ, {q, q + 7}));
    Circuit cz_l;
    cz_l.n = 2;
    cz_l.add(make_gate(GateKind::CZ, {0, 1}));
    const auto r = logical_equiv(cz, joint, logical_unitary(cz_l));
    EXPECT_TRUE(r.equivalent);
    EXPECT_EQ(r.inputs_checked, 36u);
}

TEST(DumpState, LittleEndianComplexPairs) {
    StateVector s(2);
    s.apply_gate(make_gate(GateKind::H, {0}));
    const auto path = std::filesystem::temp_directory_path() / "ftcc_state.bin";
    dump_state(s, path.string());
    std::ifstream in(path, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ASSERT_EQ(bytes.size(), 4u * 16u);
    double re0;
    std::memcpy(&re0, bytes.data(), 8);
    EXPECT_NEAR(re0, 1 / std::sqrt(2.0), 1e-15);
    std::filesystem::remove(path);
}
