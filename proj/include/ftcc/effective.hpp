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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ftcc/concat.hpp"
#include "ftcc/decoder.hpp"
#include "ftcc/ftverify.hpp"

namespace ftcc {

/// Column order of the comparison table: H, K, T, S, CZ, CCZ.
const std::vector<GateKind>& table_gates();
/// Claimed effective distance of a named code for a table gate; nullopt
/// where the table has no entry (gate inapplicable). Throws
/// std::invalid_argument for unknown ids or gates outside the table.
std::optional<int> table_claim(const std::string& id, GateKind gate);

struct EffectiveOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
    std::size_t exhaustive_max = 2;
    bool timing = false;
    /// Forces the lower-bound search mode; by default exhaustive iff t <= 2.
    std::optional<SearchMode> mode;
    /// Pair queries allowed to the pair search before giving up.
    std::uint64_t witness_budget = 4'000'000;
};

struct EffectiveReport {
    std::string code_id;
    GateKind gate = GateKind::H;
    int claimed = 0;
    std::size_t t = 0;
    bool applicable = true;
    std::string reason;
    /// Correctability at t; unset when inapplicable.
    std::optional<CorrectabilityReport> lower;
    /// t + 1 faults (a) indistinguishable from at most t faults (b) with a
    /// different logical class.
    std::optional<Counterexample> witness;
    std::string witness_strategy;  // "lifted-logical" | "pair-search" | ""
    std::uint64_t witness_candidates = 0;
    std::size_t circuit_qubits = 0;
    std::size_t circuit_gates = 0;
    bool pass = false;
    /// "PASS", "SAMPLED-PASS", "FAIL" or "inapplicable".
    std::string verdict;
};

/// Lifts the gate, checks correctability at t = (claimed - 1) / 2
/// (exhaustive for t <= 2, sampled above) and searches for a t + 1 fault
/// witness. Passes iff both halves succeed.
EffectiveReport effective_distance(const ConcatCode& cc, GateKind gate, int claimed, const EffectiveOptions& opts = {});

/// Lifted circuit and final code the verifier uses for (cc, gate); nullopt
/// when inapplicable, with the reason.
struct LiftedGadget {
    GadgetPlan plan;
    Circuit circuit;
    StabilizerCode final_code;
};
std::optional<LiftedGadget> lifted_gadget(const ConcatCode& cc, GateKind gate, std::string* reason = nullptr);

std::string effective_to_json(const EffectiveReport& r);

/// One cell of the table run. A cell without a tabulated claim is ok iff the
/// gate has no realization on the code.
struct Table1Cell {
    std::string code_id;
    GateKind gate = GateKind::H;
    std::optional<int> claimed;
    std::string verdict;  // PASS | SAMPLED-PASS | FAIL | inapplicable
    bool ok = false;
};

struct Table1Result {
    std::vector<Table1Cell> cells;  // row-major in table order
    std::string text;               // fixed-width matrix
    std::string json;               // {"matrix", "cells", "verdict"}
    bool pass = false;
};

/// Runs every (named code, table gate) cell; progress sees each finished cell.
Table1Result reproduce_table1(const EffectiveOptions& opts = {},
                              const std::function<void(const Table1Cell&)>& progress = {});

/// Two-level decoder: each inner block by its lookup table, then C1 on the
/// residual lifted syndrome. A C1 letter on block i costs 1 when i is
/// unencoded, d_i - w when the inner stage flagged i after a weight-w
/// correction, and d_i otherwise; the cheapest C1 Pauli wins, first in
/// enumeration order on ties.
class HierarchicalDecoder {
   public:
    explicit HierarchicalDecoder(const ConcatCode& cc);
    ~HierarchicalDecoder();

    /// `s` is ordered like cc.code.generators. Flags default to "the inner
    /// syndrome of the block is nonzero".
    PauliOperator decode(const BitVector& s) const;
    PauliOperator decode(const BitVector& s, const std::vector<bool>& flags) const;

   private:
    struct State;
    std::unique_ptr<State> s_;
};

}  // namespace ftcc
