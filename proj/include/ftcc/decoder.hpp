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
#include <optional>
#include <unordered_map>
#include <vector>

#include "ftcc/code.hpp"
#include "ftcc/pauli.hpp"

namespace ftcc {

/// Syndrome packed into an integer; bit i is generator i. Lookup decoders
/// are limited to 64 generators.
std::uint64_t packed_syndrome(const StabilizerCode& code, const PauliOperator& e);

/// Minimum-weight syndrome lookup for one stabilizer code.
///
/// Errors are tabulated by increasing weight, then lexicographically least
/// sorted support, then letter string (X < Y < Z); the first error reaching a
/// syndrome is its correction. When every generator is pure X or pure Z the
/// X and Z halves are tabulated separately and multiplied.
class LookupDecoder {
   public:
    /// Tabulates until complete or past `max_weight`.
    explicit LookupDecoder(const StabilizerCode& code, std::size_t max_weight = SIZE_MAX);

    const StabilizerCode& code() const { return code_; }
    bool css_split() const { return css_; }
    /// Every syndrome reachable by some Pauli has an entry.
    bool complete() const { return complete_; }

    /// Correction whose syndrome is `s`, or nullopt when untabulated.
    std::optional<PauliOperator> correction(std::uint64_t s) const;
    /// e times its correction; e unchanged when the syndrome is untabulated.
    PauliOperator residual(const PauliOperator& e) const;

    /// Visits (syndrome, correction) for every tabulated full syndrome.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        if (css_) {
            for (const auto& [sx, cx] : xs_)
                for (const auto& [sz, cz] : zs_) fn(sx | sz, (cx * cz).unsigned_part());
        } else {
            for (const auto& [s, c] : full_) fn(s, c);
        }
    }
    /// Number of tabulated full syndromes.
    std::size_t size() const { return css_ ? xs_.size() * zs_.size() : full_.size(); }

   private:
    void tabulate(std::unordered_map<std::uint64_t, PauliOperator>& table, std::uint64_t gen_mask,
                  const std::string& letters, std::size_t target, std::size_t max_weight) const;

    StabilizerCode code_;
    bool css_ = false;
    bool complete_ = false;
    std::uint64_t xgens_ = 0, zgens_ = 0;
    // CSS: X corrections keyed by the Z-generator bits, Z corrections by the
    // X-generator bits. Otherwise full_ holds whole syndromes.
    std::unordered_map<std::uint64_t, PauliOperator> xs_, zs_;
    std::unordered_map<std::uint64_t, PauliOperator> full_;
};

}  // namespace ftcc
