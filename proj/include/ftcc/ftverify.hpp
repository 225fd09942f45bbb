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
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ftcc/circuit.hpp"
#include "ftcc/code.hpp"
#include "ftcc/gadgets.hpp"

namespace ftcc {

/// Default sampling seed.
inline constexpr std::uint64_t kDefaultSeed = 0xF7CC;

/// A place where one fault may occur.
///
/// Pauli locations sit on the circuit inputs (one per data qubit) or after a
/// gate (one per support qubit; one joint location on the full support of a
/// non-Clifford C^kZ with k >= 1). OPAQUE converters contribute one location
/// per output-block qubit; OPAQUE arbitrary gates one wildcard that may leave
/// any Pauli on the output block. EC and PIECE contribute nothing.
struct FaultLocation {
    static constexpr std::size_t kInput = std::numeric_limits<std::size_t>::max();
    std::size_t after_gate = kInput;
    std::vector<std::size_t> qubits;
    bool wildcard = false;
    std::size_t block = 0;  // wildcard only

    /// 4^|qubits| - 1 for Pauli locations, 1 for a wildcard.
    std::uint32_t num_paulis() const;
};

/// `data_qubits` of the register carry input faults; the rest are ancillas.
std::vector<FaultLocation> fault_locations(const Circuit& c, std::size_t data_qubits);

struct Fault {
    std::size_t location = 0;
    /// 1..num_paulis(); bit 2j is X and bit 2j+1 is Z on qubits[j].
    std::uint32_t pauli = 1;
    bool operator==(const Fault&) const = default;
};
using FaultPattern = std::vector<Fault>;

/// The Pauli a fault inserts, on n qubits (identity for a wildcard).
PauliOperator fault_pauli(const FaultLocation& loc, std::uint32_t pauli, std::size_t n);
std::string format_fault(const Circuit& c, const FaultLocation& loc, std::uint32_t pauli);

/// One output branch of a propagated pattern: a fixed error plus an additive
/// span of errors contributed by wildcards (empty when none). Phases dropped.
struct OutputBranch {
    PauliOperator error;
    std::vector<PauliOperator> span;
};

enum class SearchMode { Exhaustive, Sampled };
std::string_view mode_name(SearchMode m);

struct EngineOptions {
    std::size_t max_branches = std::size_t{1} << 14;
    /// Wildcard spans up to this dimension are expanded when an EC or OPAQUE
    /// cannot absorb them; larger ones raise BudgetExceeded.
    std::size_t max_expand_dim = 10;
    /// Table weight for EC with a joint code (intermediate cross-code codes).
    std::size_t joint_decoder_weight = 3;
};

/// Compiled circuit for repeated fault propagation. Registers are limited
/// to 192 qubits. The final code acts on qubits [0, final_code.n).
class FaultEngine {
   public:
    FaultEngine(const Circuit& circuit, const StabilizerCode& final_code, EngineOptions options = {});
    ~FaultEngine();
    FaultEngine(FaultEngine&&) noexcept;
    FaultEngine& operator=(FaultEngine&&) noexcept;

    const Circuit& circuit() const;
    const StabilizerCode& final_code() const;
    const std::vector<FaultLocation>& locations() const;

    /// Output branches at the circuit end, after every EC and OPAQUE on the way.
    std::vector<OutputBranch> propagate(const FaultPattern& pattern) const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

   private:
    std::unique_ptr<Impl> impl_;
};

/// Two fault patterns (possibly equal, for a pattern whose own branches
/// disagree) that reach one syndrome with different logical classes.
struct Counterexample {
    FaultPattern a, b;
    std::vector<std::string> a_text, b_text;
    std::string logical_a, logical_b;  // per logical qubit letters, e.g. "IX"
    bool replayed = false;             // re-propagation reproduces the conflict
};

struct CorrectabilityOptions {
    std::size_t t = 1;
    SearchMode mode = SearchMode::Exhaustive;
    /// Largest pattern size enumerated exhaustively (also the sub-check in
    /// sampled mode).
    std::size_t exhaustive_max = 2;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
    bool timing = false;
};

struct CorrectabilityReport {
    std::size_t t = 0;
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::size_t exhaustive_max = 0;
    bool correctable = false;
    std::optional<Counterexample> counterexample;
    std::size_t locations_scanned = 0;
    std::uint64_t patterns_checked = 0;
    std::uint64_t branches = 0;
    std::uint64_t runtime_ms = 0;  // 0 unless timing was requested
};

/// Decoder-independent check: every pair of patterns of size <= t (sampled
/// beyond exhaustive_max) that share a syndrome must share the logical class.
/// A pattern is correctable only if all of its branches are.
CorrectabilityReport correctable(const FaultEngine& engine, const CorrectabilityOptions& options);

class ConflictTable;
/// As above, filling a caller-owned table that starts empty.
CorrectabilityReport correctable(const FaultEngine& engine, const CorrectabilityOptions& options, ConflictTable& table);

/// Incremental form of the check above, for reuse by witness searches.
class ConflictTable {
   public:
    explicit ConflictTable(const FaultEngine& engine);
    ~ConflictTable();
    /// Adds a pattern; returns a conflicting stored pattern if one appears.
    /// Conflicts with wildcard patterns are found by finish().
    std::optional<FaultPattern> add(const FaultPattern& p);
    /// Cross-checks wildcard groups; returns a conflicting pair.
    std::optional<std::pair<FaultPattern, FaultPattern>> finish();
    /// Whether `p` conflicts with any stored pattern or with itself.
    std::optional<FaultPattern> query(const FaultPattern& p);
    std::uint64_t size() const;
    std::uint64_t branches() const;

   private:
    struct State;
    std::unique_ptr<State> s_;
};

/// Re-propagates both patterns and confirms the conflict.
bool replay_conflict(const FaultEngine& engine, const FaultPattern& a, const FaultPattern& b);
Counterexample make_counterexample(const FaultEngine& engine, const FaultPattern& a, const FaultPattern& b);

/// Exactly `count` distinct locations, uniformly, each with a uniform Pauli.
/// Deterministic for a given generator state.
FaultPattern sample_pattern(const std::vector<FaultLocation>& locs, std::size_t count, std::mt19937_64& rng);

/// Round-robin cross-code CNOT with the fewest pieces (starting from the
/// default count) whose circuit, intermediate EC included, corrects every
/// single fault against the product of the two codes. Falls back to the
/// finest split when none does. Results are cached per code pair.
const CrossCodeCnotPlan& fault_tolerant_cross_code_cnot(const CodePtr& control, const CodePtr& target);

std::string counterexample_to_json(const Counterexample& c);
std::string report_to_json(const CorrectabilityReport& r);

}  // namespace ftcc
