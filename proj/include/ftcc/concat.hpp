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
#include <string>
#include <vector>

#include "ftcc/circuit.hpp"
#include "ftcc/code.hpp"
#include "ftcc/gadgets.hpp"

namespace ftcc {

enum class Scheme { HCC, ENUCC };
std::string_view scheme_name(Scheme s);

/// Two-level code: C1 outside, one inner code (or none) per C1 qubit.
struct ConcatSpec {
    std::string id;  // e.g. "hcc-steane-1"
    Scheme scheme = Scheme::HCC;
    CodePtr c1;
    int case_tag = 1;
    std::vector<CodePtr> assignment;  // per C1 qubit; null = unencoded
};

/// Standard assignment. Active qubits of the C1 T gadget get steane, except
/// that under ENUCC q_t gets rm15. Non-active qubits: Case 1 unencoded,
/// Case 2 C1, Case 3 steane. With C1 = steane, Case 2 is stored as Case 3.
ConcatSpec make_spec(Scheme scheme, const std::string& c1_name, int case_tag);

/// The ten codes of the comparison table, in table order.
const std::vector<ConcatSpec>& named_specs();
/// Looks up "hcc-steane-1" style ids; "-2" on a steane C1 resolves to "-3".
ConcatSpec named_spec(const std::string& id);
/// {"scheme": "HCC"|"ENUCC", "c1": name, "case": 1|2|3,
///  "assignment": {"<qubit>": code name | "unencoded"}}.
ConcatSpec spec_from_json(const std::string& text);

struct ConcatCode {
    ConcatSpec spec;
    std::size_t physical_n = 0;
    /// C1 qubit i occupies physical qubits qubit_map[i] (local order).
    std::vector<std::vector<std::size_t>> qubit_map;
    /// One block per C1 qubit; code is null for an unencoded qubit.
    std::vector<Block> blocks;
    /// Inner stabilizers block by block, then lifted C1 generators.
    StabilizerCode code;
};

ConcatCode build_concat(const ConcatSpec& spec);
/// Block-wise substitution with the stored inner representatives
/// (Y -> i X_L Z_L); unencoded factors are copied.
PauliOperator lift_operator(const ConcatCode& cc, const PauliOperator& p);
/// The code of `copies` side-by-side copies of cc (copy-major qubits).
StabilizerCode copies_code(const ConcatCode& cc, std::size_t copies);

/// Physical circuit for a level-1 plan built for cc.spec's assignment.
/// Data qubits of copy b are [b N, (b+1) N) with N = cc.physical_n; converter
/// ancillas follow all data qubits. Blocks: one per (copy, C1 qubit) in that
/// order, then one rm15 block per conversion. EC markers appear only around
/// cross-code CNOTs: between pieces (intermediate code) and after the last
/// piece (both blocks in their own codes).
Circuit lift_gadget(const ConcatCode& cc, const GadgetPlan& plan);

struct OverallDistanceReport {
    std::size_t w_exhaustive = 0;
    /// Lightest nontrivial logical found by the sweep, if any.
    std::optional<PauliOperator> low_weight_logical;
    /// Lifted C1 logical of least total inner weight.
    PauliOperator witness;
    std::size_t witness_weight = 0;
    bool witness_valid = false;
    /// The sweep bound is below witness_weight - 1, so the distance is not pinned.
    bool partial = true;
};

/// Exhaustive sweep up to w_exhaustive (BudgetExceeded past `budget`
/// candidates) plus a constructive upper-bound witness.
OverallDistanceReport overall_distance_check(const ConcatCode& cc, std::size_t w_exhaustive,
                                             std::uint64_t budget = 4'000'000'000ull);

/// stab-code JSON for cc.code plus "spec" and "qubit_map".
std::string concat_to_json(const ConcatCode& cc);

}  // namespace ftcc
