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

#include <map>
#include <numbers>
#include <random>
#include <set>

#include "ftcc/gadgets.hpp"

using namespace ftcc;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd logical(GateKind kind, std::size_t arity, double theta = 0.0) {
    Circuit c;
    c.n = arity;
    std::vector<std::size_t> qs(arity);
    for (std::size_t i = 0; i < arity; ++i) qs[i] = i;
    c.add(make_gate(kind, qs, theta));
    return logical_unitary(c);
}

StabilizerCode copies(const CodePtr& code, std::size_t m) {
    std::vector<StabilizerCode> parts(m, *code);
    return tensor_product(parts, "joint");
}

}  // namespace

TEST(Cliffords, TwentyFourDistinctWithShortestWords) {
    const auto& all = single_qubit_cliffords();
    ASSERT_EQ(all.size(), 24u);
    EXPECT_TRUE(all[0].word.empty());
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& c : all) {
        EXPECT_LE(c.word.size(), 3u);
        seen.emplace(format_pauli(c.x_image.unsigned_part()), format_pauli(c.z_image.unsigned_part()));
        EXPECT_FALSE(commutes(c.x_image, c.z_image));
    }
    // Six unsigned frames, four sign choices each.
    EXPECT_EQ(seen.size(), 6u);
}

TEST(Transversal, CliffordSearchAgreesWithDenseOracle) {
    const auto steane = base_code("steane");
    for (auto kind : {GateKind::H, GateKind::S, GateKind::K, GateKind::SDG}) {
        auto c = find_transversal_clifford(*steane, logical_gate_action(kind));
        ASSERT_TRUE(c) << kind_name(kind);
        const auto r = logical_equiv(*c, *steane, logical(kind, 1));
        EXPECT_TRUE(r.equivalent) << kind_name(kind) << " " << r.violation;
    }
    // K on the five-qubit code is uniform; H is not.
    const auto five = base_code("five_qubit");
    auto k5 = find_transversal_clifford(*five, logical_gate_action(GateKind::K));
    ASSERT_TRUE(k5);
    EXPECT_TRUE(logical_equiv(*k5, *five, logical(GateKind::K, 1)).equivalent);
    EXPECT_FALSE(find_transversal_clifford(*five, logical_gate_action(GateKind::H)));
    // RM(15) has no transversal H.
    EXPECT_FALSE(find_transversal_clifford(*base_code("rm15"), logical_gate_action(GateKind::H)));
}

TEST(Transversal, TwoBlockGates) {
    const auto steane = base_code("steane");
    for (auto kind : {GateKind::CNOT, GateKind::CZ}) {
        auto c = find_transversal_two_block(kind, *steane, *steane);
        ASSERT_TRUE(c);
        EXPECT_EQ(c->count(kind), 7u);
        EXPECT_TRUE(logical_equiv(*c, copies(steane, 2), logical(kind, 2)).equivalent);
    }
    const auto five = base_code("five_qubit");
    EXPECT_FALSE(find_transversal_two_block(GateKind::CZ, *five, *five));
}

TEST(Transversal, DiagonalRotationsOnRm15UseDagger) {
    const auto rm = base_code("rm15");
    auto t = find_transversal_diagonal(*rm, 0, kPi / 4);
    ASSERT_TRUE(t);
    EXPECT_DOUBLE_EQ(t->physical_theta, -kPi / 4);
    auto ccz = find_transversal_diagonal(*rm, 2, kPi);
    ASSERT_TRUE(ccz);
    EXPECT_FALSE(find_transversal_diagonal(*base_code("steane"), 0, kPi / 4));
    EXPECT_FALSE(find_transversal_diagonal(*base_code("five_qubit"), 0, kPi / 4));
    auto s = find_transversal_diagonal(*base_code("steane"), 0, kPi / 2);
    ASSERT_TRUE(s);
    EXPECT_DOUBLE_EQ(s->physical_theta, -kPi / 2);
}

TEST(CkzGadget, SteaneTHasEmptyLocalCliffordsAndOneRotation) {
    auto g = build_ckz_gadget(base_code("steane"), 0, kPi / 4);
    EXPECT_EQ(g.active.qubits, (std::vector<std::size_t>{0, 1, 6}));
    EXPECT_EQ(g.active.target, 6u);
    EXPECT_TRUE(g.lc.gates.empty());
    EXPECT_EQ(g.cnots_per_block(), 4u);
    EXPECT_EQ(g.full.count(GateKind::T), 1u);
    EXPECT_EQ(g.full.gates.size(), 5u);
    // Two CNOT steps, the rotation, two CNOT steps.
    EXPECT_EQ(g.steps.size(), 5u);
    ASSERT_TRUE(g.oracle);
    EXPECT_TRUE(g.oracle->equivalent);
    EXPECT_NEAR(g.oracle->min_fidelity, 1.0, 1e-9);
}

TEST(CkzGadget, FiveQubitUsesSignedLocalCliffords) {
    const auto five = base_code("five_qubit");
    for (double theta : {kPi / 4, kPi / 2, kPi, 0.3}) {
        auto g = build_ckz_gadget(five, 0, theta);
        EXPECT_EQ(g.active.qubits, (std::vector<std::size_t>{0, 2, 4}));
        EXPECT_EQ(format_pauli(g.z_rep), "-XIZIX");
        EXPECT_EQ(g.lc.gates.size(), 3u);
        EXPECT_EQ(g.full.gates.size(), 11u);
        EXPECT_EQ(g.cnots_per_block(), 4u);
        ASSERT_TRUE(g.oracle);
        EXPECT_TRUE(g.oracle->equivalent) << theta;
    }
}

TEST(CkzGadget, MultiBlockControlledPhases) {
    for (const char* name : {"five_qubit", "steane"}) {
        const auto code = base_code(name);
        auto cz = build_ckz_gadget(code, 1, kPi);
        EXPECT_EQ(cz.full.count(GateKind::CZ), 1u);
        EXPECT_EQ(cz.cnots_per_block(), 4u);
        ASSERT_TRUE(cz.oracle) << name;
        EXPECT_TRUE(cz.oracle->equivalent) << name;
        // Clifford case: the tableau agrees with the dense result.
        const auto a = induced_logical_action(cz.full, copies(code, 2));
        ASSERT_TRUE(a.action) << a.violation;
        EXPECT_EQ(*a.action, logical_gate_action(GateKind::CZ, 2));

        auto ccz = build_ckz_gadget(code, 2, kPi);
        EXPECT_EQ(ccz.full.count(GateKind::CCZ), 1u);
        ASSERT_TRUE(ccz.oracle) << name;
        EXPECT_TRUE(ccz.oracle->equivalent) << name;
        EXPECT_EQ(ccz.oracle->inputs_checked, 216u);
    }
}

TEST(CkzGadget, ComposedWithInverseIsIdentityOnRandomStates) {
    const auto five = base_code("five_qubit");
    auto g = build_ckz_gadget(five, 0, 0.9);
    const Circuit round_trip = compose(g.full, inverse(g.full));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 5; ++trial) {
        std::complex<double> a(nd(rng), nd(rng)), b(nd(rng), nd(rng));
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        StateVector in = encode(*five, a / norm, b / norm);
        StateVector out = in;
        out.apply(round_trip);
        EXPECT_NEAR(std::norm(in.inner(out)), 1.0, 1e-9);
    }
}

TEST(CkzGadget, RejectsInactiveTarget) {
    EXPECT_THROW(build_ckz_gadget(base_code("steane"), 0, kPi / 4, ActiveSet{{0, 1, 6}, 3}), std::invalid_argument);
    EXPECT_THROW(build_ckz_gadget(base_code("steane"), 0, kPi / 4, ActiveSet{{0, 1}, 1}), std::invalid_argument);
}

TEST(PermutationH, FixesMiddleQubitAndSquaresToIdentity) {
    const auto five = base_code("five_qubit");
    const Circuit h = build_permutation_h_5q();
    ASSERT_EQ(h.count(GateKind::PERMUTE), 1u);
    for (const auto& g : h.gates) {
        if (g.kind != GateKind::PERMUTE) continue;
        for (std::size_t i = 0; i < g.qubits.size(); ++i)
            if (g.qubits[i] == 2) EXPECT_EQ(g.qubits[g.perm[i]], 2u);
        std::size_t len = 1;
        std::size_t at = 0;
        for (std::size_t q = g.perm[at]; q != at; q = g.perm[q]) ++len;
        EXPECT_EQ(len, 4u);
    }
    const auto r = logical_equiv(h, *five, logical(GateKind::H, 1));
    EXPECT_TRUE(r.equivalent) << r.violation;
    const auto sq = induced_logical_action(compose(h, h), *five);
    ASSERT_TRUE(sq.action);
    EXPECT_EQ(*sq.action, ideal_action(Circuit{1, {}, {}}));
}

TEST(CrossCodeCnot, SteaneToRmRoundRobin) {
    auto plan = build_cross_code_cnot(base_code("steane"), base_code("rm15"));
    EXPECT_EQ(plan.cnots.size(), 21u);
    std::set<std::pair<std::size_t, std::size_t>> pairs(plan.cnots.begin(), plan.cnots.end());
    EXPECT_EQ(pairs.size(), 21u);
    for (const auto& [a, b] : plan.cnots) {
        EXPECT_TRUE(plan.control_code->logical_z[0].z().get(a));
        EXPECT_TRUE(plan.target_code->logical_x[0].x().get(b));
    }
    EXPECT_EQ(plan.piece_sizes, (std::vector<std::size_t>{12, 9}));
    ASSERT_EQ(plan.intermediate.size(), 1u);
    EXPECT_TRUE(validate(*plan.intermediate[0]).empty());

    auto four = build_cross_code_cnot(base_code("steane"), base_code("rm15"), 4);
    EXPECT_EQ(four.piece_sizes, (std::vector<std::size_t>{6, 6, 6, 3}));
    EXPECT_EQ(four.intermediate.size(), 3u);
    for (const auto& c : four.intermediate) EXPECT_TRUE(validate(*c).empty()) << c->name;

    // Dense check of the stripped circuit on the joint 22-qubit code.
    std::vector<StabilizerCode> parts = {*plan.control_code, *plan.target_code};
    const auto joint = tensor_product(parts, "joint");
    const auto r = logical_equiv(cross_code_circuit(plan, false), joint, logical(GateKind::CNOT, 2));
    EXPECT_TRUE(r.equivalent) << r.violation;
}

TEST(CrossCodeCnot, SteaneToSteaneAndCircuitText) {
    auto plan = build_cross_code_cnot(base_code("steane"), base_code("steane"));
    EXPECT_EQ(plan.cnots.size(), 9u);
    const Circuit c = cross_code_circuit(plan);
    EXPECT_EQ(c.count(GateKind::EC), 1u);
    EXPECT_EQ(c.count(GateKind::PIECE), 1u);
    const Circuit back = parse_circuit(format_circuit(c));
    EXPECT_EQ(back.gates, c.gates);
    EXPECT_THROW(build_cross_code_cnot(base_code("five_qubit"), base_code("steane")), std::invalid_argument);
    EXPECT_THROW(build_cross_code_cnot(base_code("steane"), base_code("steane"), 0), std::invalid_argument);
}

TEST(CrossCodeCnot, ReducedSearchKeepsLogicalAction) {
    auto plan = build_cross_code_cnot(base_code("steane"), base_code("steane"));
    const auto reduced = search_reduced_cross_code_cnot(plan, 2);
    if (reduced) {
        EXPECT_LT(reduced->size(), plan.cnots.size());
        Circuit c;
        c.n = 14;
        for (const auto& [a, b] : *reduced) c.add(make_gate(GateKind::CNOT, {a, 7 + b}));
        std::vector<StabilizerCode> parts = {*plan.control_code, *plan.target_code};
        const auto r = induced_logical_action(c, tensor_product(parts, "joint"));
        ASSERT_TRUE(r.action);
        EXPECT_EQ(*r.action, logical_gate_action(GateKind::CNOT, 2));
    }
}

namespace {

std::vector<CodePtr> assign(const std::string& c2, std::size_t n1, std::vector<std::size_t> active,
                            std::map<std::size_t, std::string> overrides = {}, const std::string& rest = "") {
    std::vector<CodePtr> a(n1);
    for (auto q : active) a[q] = base_code(c2);
    if (!rest.empty())
        for (std::size_t q = 0; q < n1; ++q)
            if (!a[q]) a[q] = base_code(rest);
    for (const auto& [q, name] : overrides) a[q] = base_code(name);
    return a;
}

}  // namespace

TEST(GadgetPlan, SteaneTUnderHccSwitchesOnlyTheRotation) {
    const auto plan = assemble_gate_plan(base_code("steane"), GateKind::T, assign("steane", 7, {0, 1, 6}));
    EXPECT_EQ(plan.level1.gates.size(), 5u);
    EXPECT_EQ(plan.s1_indices(), (std::vector<std::size_t>{2}));
    EXPECT_EQ(plan.s2_indices().size(), 4u);
    EXPECT_EQ(plan.lowering[2], Lowering::OpaqueConverter);
}

TEST(GadgetPlan, SteaneTUnderEnuccUsesCrossCodeCnots) {
    const auto plan =
        assemble_gate_plan(base_code("steane"), GateKind::T, assign("steane", 7, {0, 1}, {{6, "rm15"}}));
    EXPECT_EQ(plan.lowering[2], Lowering::Transversal);
    EXPECT_EQ(plan.s1_indices(), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(plan.lowering[1], Lowering::CrossCodeCnot);
}

TEST(GadgetPlan, FiveQubitTHasOneNonTransversalGate) {
    const auto plan = assemble_gate_plan(base_code("five_qubit"), GateKind::T, assign("steane", 5, {0, 2, 4}));
    EXPECT_EQ(plan.level1.gates.size(), 11u);
    EXPECT_EQ(plan.s1_indices(), (std::vector<std::size_t>{5}));
    EXPECT_EQ(plan.s2_indices().size(), 10u);
}

TEST(GadgetPlan, TransversalCliffordsHaveEmptyS1) {
    const auto s = assemble_gate_plan(base_code("steane"), GateKind::S, assign("steane", 7, {0, 1, 6}));
    EXPECT_TRUE(s.s1_indices().empty());
    EXPECT_EQ(s.steps.size(), 1u);
    const auto h = assemble_gate_plan(base_code("steane"), GateKind::H, assign("steane", 7, {0, 1}, {{6, "rm15"}}));
    EXPECT_EQ(h.s1_indices().size(), 1u);
    EXPECT_EQ(h.lowering[h.s1_indices()[0]], Lowering::OpaqueBlockGate);
}

TEST(GadgetPlan, FiveQubitHApplicabilityFollowsAssignment) {
    const auto five = base_code("five_qubit");
    EXPECT_FALSE(assemble_gate_plan(five, GateKind::H, assign("steane", 5, {0, 2, 4})).applicable);
    EXPECT_FALSE(assemble_gate_plan(five, GateKind::H, assign("steane", 5, {0, 2, 4}, {}, "five_qubit")).applicable);
    const auto h = assemble_gate_plan(five, GateKind::H, assign("steane", 5, {0, 1, 2, 3, 4}));
    ASSERT_TRUE(h.applicable);
    EXPECT_TRUE(h.s1_indices().empty());
    // Case 3 S goes through K H in a single step.
    const auto s = assemble_gate_plan(five, GateKind::S, assign("steane", 5, {0, 1, 2, 3, 4}));
    EXPECT_EQ(s.steps.size(), 1u);
    EXPECT_EQ(s.level1.count(GateKind::PERMUTE), 1u);
    const auto s1 = assemble_gate_plan(five, GateKind::S, assign("steane", 5, {0, 2, 4}));
    EXPECT_EQ(s1.level1.count(GateKind::CNOT), 4u);
    EXPECT_THROW(assemble_gate_plan(five, GateKind::CNOT, assign("steane", 5, {0, 2, 4})), std::invalid_argument);
}

TEST(PermutationH, ReflectionAlternative) {
    // The (q1 q5)(q2 q4) reflection is the other relabeling that preserves
    // a Case-2 assignment; record whether it also yields logical H.
    const auto five = base_code("five_qubit");
    bool found = false;
    for (const auto& cl : single_qubit_cliffords()) {
        Circuit c;
        c.n = 5;
        for (std::size_t q = 0; q < 5; ++q)
            for (auto k : cl.word) c.add(make_gate(k, {q}));
        c.add(make_permute({0, 1, 3, 4}, {3, 2, 1, 0}));
        const auto r = induced_logical_action(c, *five);
        if (r.action && r.action->images[0].equal_up_to_phase(logical_gate_action(GateKind::H).images[0]) &&
            r.action->images[1].equal_up_to_phase(logical_gate_action(GateKind::H).images[1]))
            found = true;
    }
    EXPECT_FALSE(found);
}
