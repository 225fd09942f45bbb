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

#include "ftcc/effective.hpp"

using namespace ftcc;

namespace {

std::size_t locations_after(const Circuit& c, const std::vector<FaultLocation>& locs, GateKind kind) {
    std::size_t n = 0;
    for (const auto& l : locs)
        if (l.after_gate != FaultLocation::kInput && c.gates[l.after_gate].kind == kind) ++n;
    return n;
}

Circuit single_block(const std::string& code, Circuit body) {
    body.blocks = {Block{code, base_code(code), {}}};
    for (std::size_t q = 0; q < body.n; ++q) body.blocks[0].qubits.push_back(q);
    return body;
}

/// Independent t = 1 oracle for Clifford circuits: push every single fault
/// through by tableau conjugation and require one logical class per syndrome.
bool single_faults_decodable(const Circuit& c, const StabilizerCode& code) {
    std::map<BitVector, BitVector> seen;
    auto check = [&](const PauliOperator& e) {
        auto [it, fresh] = seen.try_emplace(syndrome(code, e), logical_class(code, e));
        return fresh || it->second == logical_class(code, e);
    };
    bool ok = check(PauliOperator(c.n));
    for (std::size_t q = 0; q < code.n; ++q)
        for (char l : {'X', 'Y', 'Z'}) ok = check(conjugate_clifford(c, PauliOperator::single(c.n, q, l))) && ok;
    for (std::size_t g = 0; g < c.gates.size(); ++g)
        for (auto q : c.gates[g].qubits)
            for (char l : {'X', 'Y', 'Z'})
                ok = check(conjugate_clifford(c, PauliOperator::single(c.n, q, l), g + 1)) && ok;
    return ok;
}

}  // namespace

TEST(FaultLocations, SteaneTGadget) {
    const auto g = build_ckz_gadget(base_code("steane"), 0, std::numbers::pi / 4);
    const Circuit c = single_block("steane", g.full);
    const auto locs = fault_locations(c, 7);
    EXPECT_EQ(locations_after(c, locs, GateKind::CNOT), 4u * 2);
    EXPECT_EQ(locations_after(c, locs, GateKind::T) + locations_after(c, locs, GateKind::TDG), 1u);
    std::size_t want = 7;
    for (const auto& gate : c.gates) want += gate.qubits.size();
    EXPECT_EQ(locs.size(), want);
}

TEST(FaultLocations, TransversalHAndOpaqueBlocks) {
    const auto steane = base_code("steane");
    const Block b{"b", steane, {0, 1, 2, 3, 4, 5, 6}};
    const Circuit h = build_transversal(GateKind::H, std::span<const Block>(&b, 1), 7);
    EXPECT_EQ(fault_locations(h, 0).size(), 7u);

    const auto cc = build_concat(named_spec("enucc-steane-3"));
    const auto lg = lifted_gadget(cc, GateKind::H);
    ASSERT_TRUE(lg);
    std::size_t wild = 0;
    for (const auto& l : fault_locations(lg->circuit, cc.physical_n)) {
        if (!l.wildcard) continue;
        ++wild;
        EXPECT_EQ(l.qubits.size(), 15u);
        EXPECT_EQ(l.num_paulis(), 1u);
    }
    EXPECT_EQ(wild, 1u);
}

TEST(Propagate, ZInCzLiftStaysWeightOne) {
    const auto cc = build_concat(named_spec("hcc-steane-1"));
    const auto lg = lifted_gadget(cc, GateKind::CZ);
    ASSERT_TRUE(lg);
    const FaultEngine engine(lg->circuit, lg->final_code);
    const auto& locs = engine.locations();
    for (std::size_t i = 0; i < locs.size(); ++i) {
        if (locs[i].qubits.size() != 1) continue;
        for (const auto& br : engine.propagate({{i, 2}})) {
            EXPECT_EQ(weight(br.error), 1u) << format_fault(lg->circuit, locs[i], 2);
            EXPECT_TRUE(br.span.empty());
        }
    }
}

TEST(Propagate, XBeforeSteaneTBranchesOnItsBlock) {
    const auto g = build_ckz_gadget(base_code("steane"), 0, std::numbers::pi / 4);
    const Circuit c = single_block("steane", g.full);
    const FaultEngine engine(c, *base_code("steane"));
    const auto& locs = engine.locations();
    std::size_t rot = 0;
    while (c.gates[rot].is_clifford()) ++rot;
    const std::size_t target = c.gates[rot].qubits[0];
    std::size_t seen = 0;
    for (std::size_t i = 0; i < locs.size(); ++i) {
        if (locs[i].after_gate != rot - 1 || locs[i].qubits[0] != target) continue;
        const auto branches = engine.propagate({{i, 1}});
        ASSERT_EQ(branches.size(), 2u);
        for (const auto& br : branches) EXPECT_TRUE(br.error.x().get(target) || weight(br.error) <= 3);
        std::size_t xs = 0;
        for (const auto& br : branches) xs = std::max(xs, br.error.x().popcount());
        EXPECT_LE(xs, 3u);
        ++seen;
    }
    EXPECT_EQ(seen, 1u);
}

TEST(Correctable, PairwiseCriterionMatchesDecoderExistence) {
    for (const auto& name : base_code_names()) {
        const auto code = base_code(name);
        std::vector<Circuit> circuits;
        circuits.push_back(single_block(name, Circuit{code->n, {}, {}}));
        Circuit spread{code->n, {}, {}};
        spread.add(make_gate(GateKind::CNOT, {0, 1}));
        spread.add(make_gate(GateKind::CNOT, {1, 2}));
        circuits.push_back(single_block(name, spread));
        Circuit rotated{code->n, {}, {}};
        for (std::size_t q = 0; q < code->n; ++q) rotated.add(make_gate(GateKind::X, {q}));
        rotated.add(make_gate(GateKind::CZ, {0, code->n - 1}));
        circuits.push_back(single_block(name, rotated));
        for (const auto& c : circuits) {
            const FaultEngine engine(c, *code);
            CorrectabilityOptions o;
            o.t = 1;
            const auto rep = correctable(engine, o);
            EXPECT_EQ(rep.correctable, single_faults_decodable(c, *code)) << name << "\n" << format_circuit(c);
        }
    }
}

TEST(Correctable, MonotoneAndReplaying) {
    const auto cc = build_concat(named_spec("hcc-steane-1"));
    for (GateKind gate : {GateKind::K, GateKind::T}) {
        const auto lg = lifted_gadget(cc, gate);
        const FaultEngine engine(lg->circuit, lg->final_code);
        bool previous = true;
        for (std::size_t t = 1; t <= 3; ++t) {
            CorrectabilityOptions o;
            o.t = t;
            const auto r = correctable(engine, o);
            EXPECT_TRUE(previous || !r.correctable) << kind_name(gate) << " t=" << t;
            if (r.counterexample) EXPECT_TRUE(r.counterexample->replayed);
            previous = r.correctable;
        }
    }
}

TEST(Correctable, FortyNineQubitTGadget) {
    const auto cc = build_concat(named_spec("hcc-steane-3"));
    const auto lg = lifted_gadget(cc, GateKind::T);
    const FaultEngine engine(lg->circuit, lg->final_code);
    CorrectabilityOptions o;
    o.t = 1;
    EXPECT_TRUE(correctable(engine, o).correctable);
    o.t = 2;
    const auto r = correctable(engine, o);
    ASSERT_FALSE(r.correctable);
    EXPECT_TRUE(r.counterexample->replayed);
    EXPECT_NE(r.counterexample->logical_a, r.counterexample->logical_b);
}

TEST(Correctable, ThirtyThreeQubitHadamard) {
    const auto cc = build_concat(named_spec("enucc-steane-1"));
    const auto lg = lifted_gadget(cc, GateKind::H);
    const FaultEngine engine(lg->circuit, lg->final_code);
    CorrectabilityOptions o;
    o.t = 1;
    EXPECT_TRUE(correctable(engine, o).correctable);
    o.t = 2;
    EXPECT_FALSE(correctable(engine, o).correctable);
}

TEST(Correctable, CoarseConverterModelBreaksTheTGadget) {
    const auto cc = build_concat(named_spec("hcc-steane-1"));
    auto lg = lifted_gadget(cc, GateKind::T);
    CorrectabilityOptions o;
    o.t = 1;
    EXPECT_TRUE(correctable(FaultEngine(lg->circuit, lg->final_code), o).correctable);
    for (auto& g : lg->circuit.gates)
        if (g.kind == GateKind::OPAQUE) g.opaque_mode = OpaqueMode::Arbitrary;
    EXPECT_FALSE(correctable(FaultEngine(lg->circuit, lg->final_code), o).correctable);
}

TEST(CrossCode, FourPiecesNeedTheirIntermediateEc) {
    const auto steane = base_code("steane"), rm = base_code("rm15");
    const auto joint = tensor_product(std::vector<StabilizerCode>{*steane, *rm}, "joint");
    const auto& plan = fault_tolerant_cross_code_cnot(steane, rm);
    EXPECT_EQ(plan.piece_sizes, (std::vector<std::size_t>{6, 6, 6, 3}));
    CorrectabilityOptions o;
    o.t = 1;
    EXPECT_TRUE(correctable(FaultEngine(cross_code_circuit(plan), joint), o).correctable);
    const auto bare = correctable(FaultEngine(cross_code_circuit(plan, false), joint), o);
    ASSERT_FALSE(bare.correctable);
    EXPECT_TRUE(bare.counterexample->replayed);
    const auto two = build_cross_code_cnot(steane, rm, 2);
    EXPECT_FALSE(correctable(FaultEngine(cross_code_circuit(two), joint), o).correctable);
}

TEST(Correctable, SampledRunsAreDeterministic) {
    const auto cc = build_concat(named_spec("hcc-five-3"));
    const auto lg = lifted_gadget(cc, GateKind::K);
    const FaultEngine engine(lg->circuit, lg->final_code);
    CorrectabilityOptions o;
    o.t = 4;
    o.mode = SearchMode::Sampled;
    o.exhaustive_max = 1;
    o.samples = 2000;
    const auto a = report_to_json(correctable(engine, o));
    EXPECT_EQ(a, report_to_json(correctable(engine, o)));
    EXPECT_NE(a.find("\"samples\": 2000"), std::string::npos);
    EXPECT_NE(a.find("\"runtime_ms\": 0"), std::string::npos);
}

TEST(Effective, TableClaims) {
    EXPECT_EQ(table_claim("hcc-steane-3", GateKind::H), 9);
    EXPECT_EQ(table_claim("enucc-five-3", GateKind::CZ), 3);
    EXPECT_FALSE(table_claim("hcc-five-1", GateKind::H));
    EXPECT_THROW(table_claim("hcc-five-1", GateKind::CNOT), std::invalid_argument);
    for (const auto& spec : named_specs()) {
        const auto cc = build_concat(spec);
        for (GateKind g : table_gates())
            EXPECT_EQ(lifted_gadget(cc, g).has_value(), table_claim(spec.id, g).has_value())
                << spec.id << " " << kind_name(g);
    }
}

TEST(Effective, TwentyFiveQubitK) {
    const auto cc = build_concat(named_spec("hcc-steane-1"));
    const auto r = effective_distance(cc, GateKind::K, 5);
    EXPECT_EQ(r.verdict, "PASS");
    EXPECT_EQ(r.lower->mode, SearchMode::Exhaustive);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->a.size(), 3u);
    EXPECT_LE(r.witness->b.size(), 2u);
    EXPECT_EQ(effective_to_json(r), effective_to_json(effective_distance(cc, GateKind::K, 5)));
}

TEST(Effective, OverclaimFailsAndInapplicableIsRejected) {
    const auto cc = build_concat(named_spec("hcc-five-1"));
    const auto t = effective_distance(cc, GateKind::T, 5);
    EXPECT_EQ(t.verdict, "FAIL");
    EXPECT_FALSE(t.lower->correctable);
    const auto h = effective_distance(cc, GateKind::H, 3);
    EXPECT_FALSE(h.applicable);
    EXPECT_EQ(h.verdict, "inapplicable");
    EXPECT_NE(effective_to_json(h).find("\"reason\""), std::string::npos);
}

TEST(Effective, CczIsThree) {
    const auto cc = build_concat(named_spec("enucc-five-1"));
    const auto r = effective_distance(cc, GateKind::CCZ, 3);
    EXPECT_EQ(r.verdict, "PASS");
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->a.size(), 2u);
}

TEST(HierarchicalDecoder, SoundOnRandomSyndromes) {
    for (const char* id : {"hcc-steane-3", "enucc-five-2", "hcc-five-1"}) {
        const auto cc = build_concat(named_spec(id));
        const HierarchicalDecoder dec(cc);
        EXPECT_TRUE(dec.decode(BitVector(cc.code.generators.size())).is_identity());
        std::mt19937_64 rng(7);
        for (int i = 0; i < 10000; ++i) {
            BitVector s(cc.code.generators.size());
            for (std::size_t b = 0; b < s.size(); ++b) s.set(b, rng() & 1u);
            EXPECT_EQ(syndrome(cc.code, dec.decode(s)), s) << id;
        }
    }
}

TEST(HierarchicalDecoder, RecoversSingleErrorsExactly) {
    for (const char* id : {"hcc-steane-3", "enucc-steane-1", "enucc-five-3"}) {
        const auto cc = build_concat(named_spec(id));
        const HierarchicalDecoder dec(cc);
        for (std::size_t q = 0; q < cc.physical_n; ++q) {
            for (char l : {'X', 'Y', 'Z'}) {
                const auto e = PauliOperator::single(cc.physical_n, q, l);
                const auto r = dec.decode(syndrome(cc.code, e)) * e;
                EXPECT_TRUE(in_group(r, cc.code.generators, PhaseMode::Ignore)) << id << " " << l << q;
            }
        }
    }
}

TEST(HierarchicalDecoder, TGadgetWitnessMiscorrects) {
    const auto cc = build_concat(named_spec("hcc-steane-3"));
    const auto r = effective_distance(cc, GateKind::T, 3);
    ASSERT_EQ(r.verdict, "PASS");
    const auto lg = lifted_gadget(cc, GateKind::T);
    const FaultEngine engine(lg->circuit, lg->final_code);
    const HierarchicalDecoder dec(cc);
    bool logical = false;
    for (const auto& br : engine.propagate(r.witness->a)) {
        const auto c = dec.decode(syndrome(cc.code, br.error));
        logical = logical || logical_class(cc.code, c * br.error).any();
    }
    EXPECT_TRUE(logical);
}
