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

#include "ftcc/concat.hpp"

using namespace ftcc;

TEST(Concat, NamedSpecsHaveTableQubitCounts) {
    const std::vector<std::size_t> want = {25, 49, 23, 31, 35, 33, 57, 31, 39, 43};
    const auto& specs = named_specs();
    ASSERT_EQ(specs.size(), want.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto cc = build_concat(specs[i]);
        EXPECT_EQ(cc.physical_n, want[i]) << specs[i].id;
        EXPECT_EQ(cc.code.generators.size(), cc.physical_n - 1) << specs[i].id;
        EXPECT_TRUE(validate(cc.code).empty()) << specs[i].id;
    }
}

TEST(Concat, SteaneCaseTwoIsCaseThree) {
    EXPECT_EQ(named_spec("hcc-steane-2").id, "hcc-steane-3");
    EXPECT_EQ(make_spec(Scheme::ENUCC, "steane", 2).case_tag, 3);
    EXPECT_THROW(named_spec("hcc-rm15-1"), std::invalid_argument);
}

TEST(Concat, EnuccPlacesRmOnTheRotationTarget) {
    const auto s = named_spec("enucc-five-2");
    EXPECT_EQ(s.assignment[2]->name, "rm15");
    EXPECT_EQ(s.assignment[0]->name, "steane");
    EXPECT_EQ(s.assignment[1]->name, "five_qubit");
    const auto h = named_spec("hcc-steane-1");
    EXPECT_EQ(h.assignment[6]->name, "steane");
    EXPECT_FALSE(h.assignment[2]);
}

TEST(Concat, SpecJsonOverrides) {
    const auto s = spec_from_json(R"({"scheme": "ENUCC", "c1": "steane", "case": 1, "assignment": {"3": "steane"}})");
    EXPECT_EQ(build_concat(s).physical_n, 39u);
    EXPECT_THROW(spec_from_json(R"({"scheme": "X", "c1": "steane", "case": 1})"), std::invalid_argument);
    EXPECT_THROW(spec_from_json(R"({"scheme": "HCC", "c1": "steane"})"), std::invalid_argument);
}

TEST(Lift, IdentityAndLogicalWeights) {
    const auto cc = build_concat(named_spec("hcc-steane-1"));
    EXPECT_TRUE(lift_operator(cc, PauliOperator(7)).is_identity());
    // Z_L = ZZIIIIZ lands on three steane blocks of weight 3 each.
    const auto zl = lift_operator(cc, cc.spec.c1->logical_z[0]);
    EXPECT_EQ(weight(zl), 9u);
    for (const auto& g : cc.spec.c1->generators) EXPECT_TRUE(syndrome(cc.code, lift_operator(cc, g)).none());
}

TEST(Lift, PreservesCommutation) {
    for (const auto& spec : named_specs()) {
        const auto cc = build_concat(spec);
        std::vector<PauliOperator> ops = spec.c1->generators;
        ops.push_back(spec.c1->logical_x[0]);
        ops.push_back(spec.c1->logical_z[0]);
        for (const auto& p : ops)
            for (const auto& q : ops)
                EXPECT_EQ(commutes(p, q), commutes(lift_operator(cc, p), lift_operator(cc, q))) << spec.id;
    }
}

TEST(OverallDistance, CaseOneSweepsAndWitness) {
    for (const char* id : {"hcc-steane-1", "hcc-five-1"}) {
        const auto cc = build_concat(named_spec(id));
        const auto r = overall_distance_check(cc, 4);
        EXPECT_FALSE(r.low_weight_logical) << id;
        EXPECT_EQ(r.witness_weight, 5u) << id;
        EXPECT_TRUE(r.witness_valid) << id;
        EXPECT_FALSE(r.partial);
    }
}

TEST(OverallDistance, FullyEncodedWitnessIsNine) {
    const auto cc = build_concat(named_spec("hcc-five-2"));
    const auto r = overall_distance_check(cc, 2);
    EXPECT_FALSE(r.low_weight_logical);
    EXPECT_EQ(r.witness_weight, 9u);
    EXPECT_TRUE(r.witness_valid);
    EXPECT_TRUE(r.partial);
}

namespace {

Circuit lifted(const std::string& id, GateKind gate) {
    const auto cc = build_concat(named_spec(id));
    return lift_gadget(cc, assemble_gate_plan(cc.spec.c1, gate, cc.spec.assignment));
}

}  // namespace

TEST(LiftGadget, EnuccSteaneTCounts) {
    const Circuit c = lifted("enucc-steane-1", GateKind::T);
    EXPECT_EQ(c.n, 33u);
    EXPECT_EQ(c.count(GateKind::CNOT), 2u * 21 + 2u * 7);
    EXPECT_EQ(c.count(GateKind::TDG), 15u);
    EXPECT_EQ(c.count(GateKind::OPAQUE), 0u);
    // Each cross-code CNOT runs in four pieces.
    EXPECT_EQ(c.count(GateKind::PIECE), 2u * 3);
    EXPECT_EQ(c.count(GateKind::EC), 2u * 4);
}

TEST(LiftGadget, HccSteaneTSwitchesTheTargetBlock) {
    const Circuit c = lifted("hcc-steane-3", GateKind::T);
    EXPECT_EQ(c.n, 49u + 8);
    EXPECT_EQ(c.count(GateKind::CNOT), 4u * 7);
    EXPECT_EQ(c.count(GateKind::TDG), 15u);
    ASSERT_EQ(c.count(GateKind::OPAQUE), 2u);
    std::vector<std::string> labels;
    for (const auto& g : c.gates)
        if (g.kind == GateKind::OPAQUE) labels.push_back(g.label);
    EXPECT_EQ(labels, (std::vector<std::string>{"CC", "CC'"}));
    EXPECT_EQ(c.blocks.back().code->name, "rm15");
    EXPECT_EQ(c.blocks.back().qubits.size(), 15u);
}

TEST(LiftGadget, CliffordLiftsImplementTheLogicalGate) {
    struct Case {
        const char* id;
        GateKind gate;
        std::size_t copies;
    };
    for (const Case& t : {Case{"hcc-steane-1", GateKind::S, 1}, Case{"hcc-steane-1", GateKind::H, 1},
                          Case{"hcc-five-3", GateKind::H, 1}, Case{"hcc-five-3", GateKind::S, 1},
                          Case{"hcc-five-1", GateKind::K, 1}, Case{"hcc-five-1", GateKind::S, 1},
                          Case{"hcc-five-1", GateKind::CZ, 2}, Case{"enucc-steane-1", GateKind::S, 1},
                          Case{"enucc-steane-1", GateKind::CZ, 2}, Case{"enucc-five-2", GateKind::CZ, 2}}) {
        const auto cc = build_concat(named_spec(t.id));
        const Circuit c = lifted(t.id, t.gate);
        const auto r = induced_logical_action(c, copies_code(cc, t.copies));
        ASSERT_TRUE(r.action) << t.id << " " << kind_name(t.gate) << ": " << r.violation;
        EXPECT_EQ(*r.action, logical_gate_action(t.gate, t.copies)) << t.id << " " << kind_name(t.gate);
    }
}

TEST(LiftGadget, RmHadamardIsOpaque) {
    const Circuit c = lifted("enucc-steane-3", GateKind::H);
    ASSERT_EQ(c.count(GateKind::OPAQUE), 1u);
    for (const auto& g : c.gates)
        if (g.kind == GateKind::OPAQUE) EXPECT_EQ(g.opaque_mode, OpaqueMode::Arbitrary);
    EXPECT_THROW(lifted("hcc-five-1", GateKind::H), std::invalid_argument);
}

TEST(ConcatJson, CarriesSpecAndQubitMap) {
    const auto cc = build_concat(named_spec("enucc-five-1"));
    const std::string text = concat_to_json(cc);
    EXPECT_NE(text.find("\"qubit_map\""), std::string::npos);
    const auto back = code_from_json(text);
    EXPECT_EQ(back.generators, cc.code.generators);
}
