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

#include "ftcc/decoder.hpp"

using namespace ftcc;

TEST(LookupDecoder, BaseCodesAreCompleteAndCorrectSingleErrors) {
    for (const auto& name : base_code_names()) {
        const auto code = load_base_code(name);
        const LookupDecoder dec(code);
        EXPECT_TRUE(dec.complete()) << name;
        EXPECT_EQ(dec.css_split(), name != "five_qubit");
        for (std::size_t q = 0; q < code.n; ++q) {
            for (char l : {'X', 'Y', 'Z'}) {
                const auto e = PauliOperator::single(code.n, q, l);
                const auto r = dec.residual(e);
                EXPECT_TRUE(in_group(r, code.generators, PhaseMode::Ignore)) << name << " " << format_pauli(e);
            }
        }
    }
}

TEST(LookupDecoder, CorrectionHasRequestedSyndrome) {
    for (const auto& name : base_code_names()) {
        const auto code = load_base_code(name);
        const LookupDecoder dec(code);
        std::size_t seen = 0;
        dec.for_each([&](std::uint64_t s, const PauliOperator& c) {
            EXPECT_EQ(packed_syndrome(code, c), s);
            ++seen;
        });
        EXPECT_EQ(seen, std::size_t{1} << code.generators.size()) << name;
    }
}

TEST(LookupDecoder, TieBreakIsLowestWeightThenLexLeast) {
    const auto steane = load_base_code("steane");
    const LookupDecoder dec(steane);
    const auto c = dec.correction(packed_syndrome(steane, parse_pauli("XIIIIII")));
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(format_pauli(*c), "XIIIIII");
    EXPECT_EQ(format_pauli(*dec.correction(0)), "IIIIIII");
    // RM-15 corrects every X error of weight <= 3, so its tables go past weight 1.
    const auto rm = load_base_code("rm15");
    const LookupDecoder rdec(rm);
    const auto e = parse_pauli("XIIIIIXIIIIIIIX");
    EXPECT_TRUE(in_group(rdec.residual(e), rm.generators, PhaseMode::Ignore));
}

TEST(LookupDecoder, IncompleteTableLeavesUntabulatedSyndromes) {
    const auto rm = load_base_code("rm15");
    const LookupDecoder dec(rm, 1);
    EXPECT_FALSE(dec.complete());
    const auto e = parse_pauli("XXIIIIIIIIIIIII");
    EXPECT_FALSE(dec.correction(packed_syndrome(rm, e)).has_value());
    EXPECT_EQ(dec.residual(e), e);
}
