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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftcc/bits.hpp"
#include "ftcc/pauli.hpp"

namespace ftcc {

/// Thrown when an enumeration would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// [[n, k, d]] stabilizer code with explicit generators and k logical pairs.
///
/// Invariants (checked by validate()): generators pairwise commute and are
/// independent; logical_x[i], logical_z[i] commute with every generator,
/// anticommute with each other, commute with every other logical, and lie
/// outside the stabilizer span.
struct StabilizerCode {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<PauliOperator> generators;
    std::vector<PauliOperator> logical_x;
    std::vector<PauliOperator> logical_z;
    std::optional<int> claimed_distance;

    std::size_t num_generators() const { return generators.size(); }
};

using CodePtr = std::shared_ptr<const StabilizerCode>;

/// "five_qubit", "steane" or "rm15". Throws std::invalid_argument otherwise.
StabilizerCode load_base_code(const std::string& name);
/// Shared, immutable instance of a base code.
CodePtr base_code(const std::string& name);
std::vector<std::string> base_code_names();

/// Violations in check order; empty means the code is valid.
std::vector<std::string> validate(const StabilizerCode& code);
/// Throws std::invalid_argument with the first violation.
void require_valid(const StabilizerCode& code);

/// Bit i set iff e anticommutes with generator i.
BitVector syndrome(const StabilizerCode& code, const PauliOperator& e);
/// Bit 2i (2i+1) set iff e anticommutes with logical_z[i] (logical_x[i]),
/// i.e. e acts as logical X_i (Z_i).
BitVector logical_class(const StabilizerCode& code, const PauliOperator& e);

enum class TypeFilter { Any, XOnly, ZOnly };

struct LogicalSearchResult {
    std::size_t weight;
    PauliOperator witness;
};

/// Minimum weight <= w_max of an operator that commutes with every generator
/// but is not in the stabilizer group. Throws BudgetExceeded when the number
/// of candidates exceeds `budget`.
std::optional<LogicalSearchResult> min_logical_weight(const StabilizerCode& code, std::size_t w_max,
                                                      TypeFilter filter = TypeFilter::Any,
                                                      std::uint64_t budget = 4'000'000'000ull);

/// Whether some operator supported on `qubits` is a nontrivial logical.
bool supports_nontrivial_logical(const StabilizerCode& code, std::span<const std::size_t> qubits);

bool is_css(const StabilizerCode& code);

/// Minimum-weight element of the coset p * S restricted to support within
/// `allowed` (all qubits when empty); ties go to the lexicographically least
/// sorted support, then the least letter string. Exact phase is kept.
/// Enumerates the stabilizer group, so only for small codes.
std::optional<PauliOperator> min_weight_coset_rep(const StabilizerCode& code, const PauliOperator& p,
                                                  std::span<const std::size_t> allowed = {});

/// Joint code of several codes placed side by side (k adds up).
StabilizerCode tensor_product(std::span<const StabilizerCode> codes, const std::string& name);

std::string code_to_json(const StabilizerCode& code);
/// Parses and validates; throws std::invalid_argument on malformed or invalid input.
StabilizerCode code_from_json(const std::string& text);

}  // namespace ftcc
