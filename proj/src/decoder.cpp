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

#include "ftcc/decoder.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace ftcc {

std::uint64_t packed_syndrome(const StabilizerCode& code, const PauliOperator& e) {
    if (code.generators.size() > 64) throw std::invalid_argument("more than 64 generators");
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        if (!commutes(code.generators[i], e)) s |= std::uint64_t{1} << i;
    return s;
}

namespace {

bool pure(const PauliOperator& g, char letter) {
    return letter == 'X' ? g.z().none() : g.x().none();
}

/// Number of distinct syndromes on the generators in `mask` reachable by
/// Paulis built from `letters`: 2^rank of the relevant commutation matrix.
std::size_t reachable(const StabilizerCode& code, std::uint64_t mask, const std::string& letters) {
    std::vector<BitVector> rows;
    for (std::size_t q = 0; q < code.n; ++q) {
        for (char l : letters) {
            BitVector r(code.generators.size());
            const auto p = PauliOperator::single(code.n, q, l);
            for (std::size_t i = 0; i < code.generators.size(); ++i)
                if (((mask >> i) & 1) && !commutes(code.generators[i], p)) r.set(i);
            rows.push_back(std::move(r));
        }
    }
    const std::size_t rank = BitMatrix(std::move(rows)).rank();
    return std::size_t{1} << rank;
}

}  // namespace

void LookupDecoder::tabulate(std::unordered_map<std::uint64_t, PauliOperator>& table, std::uint64_t gen_mask,
                             const std::string& letters, std::size_t target, std::size_t max_weight) const {
    const std::size_t n = code_.n;
    const std::size_t nl = letters.size();
    table.emplace(0, PauliOperator(n));
    std::vector<std::size_t> support;
    for (std::size_t w = 1; w <= max_weight && w <= n && table.size() < target; ++w) {
        support.resize(w);
        std::iota(support.begin(), support.end(), 0);
        while (true) {
            std::vector<std::size_t> choice(w, 0);
            while (true) {
                PauliOperator e(n);
                for (std::size_t j = 0; j < w; ++j) e.set_letter(support[j], letters[choice[j]]);
                table.try_emplace(packed_syndrome(code_, e) & gen_mask, e);
                std::size_t j = w;
                while (j > 0 && choice[j - 1] + 1 == nl) choice[--j] = 0;
                if (j == 0) break;
                ++choice[j - 1];
            }
            std::size_t i = w;
            while (i > 0 && support[i - 1] == n - w + i - 1) --i;
            if (i == 0) break;
            ++support[i - 1];
            for (std::size_t j = i; j < w; ++j) support[j] = support[j - 1] + 1;
        }
    }
}

LookupDecoder::LookupDecoder(const StabilizerCode& code, std::size_t max_weight) : code_(code) {
    const std::size_t r = code.generators.size();
    if (r > 64) throw std::invalid_argument("lookup decoder supports at most 64 generators");
    std::uint64_t xgens = 0, zgens = 0;
    css_ = r > 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (pure(code.generators[i], 'X')) {
            xgens |= std::uint64_t{1} << i;
        } else if (pure(code.generators[i], 'Z')) {
            zgens |= std::uint64_t{1} << i;
        } else {
            css_ = false;
        }
    }
    if (css_) {
        // X errors are seen by Z-type generators and vice versa.
        xgens_ = xgens;
        zgens_ = zgens;
        const std::size_t nx = reachable(code, zgens, "X"), nz = reachable(code, xgens, "Z");
        tabulate(xs_, zgens, "X", nx, max_weight);
        tabulate(zs_, xgens, "Z", nz, max_weight);
        complete_ = xs_.size() == nx && zs_.size() == nz;
    } else {
        const std::uint64_t all = r == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
        const std::size_t target = reachable(code, all, "XZ");
        tabulate(full_, all, "XYZ", target, max_weight);
        complete_ = full_.size() == target;
    }
}

std::optional<PauliOperator> LookupDecoder::correction(std::uint64_t s) const {
    if (css_) {
        auto ix = xs_.find(s & zgens_);
        auto iz = zs_.find(s & xgens_);
        if (ix == xs_.end() || iz == zs_.end()) return std::nullopt;
        return (ix->second * iz->second).unsigned_part();
    }
    auto it = full_.find(s);
    if (it == full_.end()) return std::nullopt;
    return it->second;
}

PauliOperator LookupDecoder::residual(const PauliOperator& e) const {
    auto c = correction(packed_syndrome(code_, e));
    if (!c) return e;
    PauliOperator r = e;
    r.xor_letters(*c);
    return r;
}

}  // namespace ftcc
