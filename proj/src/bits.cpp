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

#include "ftcc/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace ftcc {

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t v = words_[w];
        while (v) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(v)));
            v &= v - 1;
        }
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitVector BitVector::from_string(const std::string& s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            v.set(i);
        } else if (s[i] != '0') {
            throw std::invalid_argument("bit string contains non-binary character at position " +
                                        std::to_string(i));
        }
    }
    return v;
}

BitVector BitVector::concat(const BitVector& o) const {
    BitVector r(n_ + o.n_);
    for (auto i : ones()) r.set(i);
    for (auto i : o.ones()) r.set(n_ + i);
    return r;
}

BitVector BitVector::slice(std::size_t begin, std::size_t len) const {
    BitVector r(len);
    for (std::size_t i = 0; i < len; ++i)
        if (get(begin + i)) r.set(i);
    return r;
}

std::size_t BitVector::hash() const {
    // FNV-1a over words, mixed with the length.
    std::uint64_t h = 1469598103934665603ull ^ n_;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

BitMatrix::BitMatrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_.front().size();
    for (const auto& r : rows_)
        if (r.size() != cols_) throw std::invalid_argument("BitMatrix rows have unequal length");
}

void BitMatrix::append_row(BitVector r) {
    if (rows_.empty() && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("BitMatrix row length mismatch");
    rows_.push_back(std::move(r));
}

std::vector<std::size_t> BitMatrix::row_reduce() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_.size(); ++c) {
        std::size_t p = r;
        while (p < rows_.size() && !rows_[p].get(c)) ++p;
        if (p == rows_.size()) continue;
        std::swap(rows_[r], rows_[p]);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t BitMatrix::rank() const {
    BitMatrix copy = *this;
    return copy.row_reduce().size();
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (auto c : rows_[r].ones()) t.set(c, r);
    return t;
}

std::vector<BitVector> BitMatrix::null_space() const {
    BitMatrix red = *this;
    auto pivots = red.row_reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        BitVector v(cols_);
        v.set(free);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (red.get(i, free)) v.set(pivots[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

BitMatrix BitMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    BitMatrix out(rows_.size(), cols.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (rows_[r].get(cols[j])) out.set(r, j);
    return out;
}

BitVector EchelonBasis::reduce(const BitVector& v, BitVector* combination) const {
    BitVector res = v;
    if (combination) *combination = BitVector(capacity_);
    for (const auto& row : rows_) {
        if (res.get(row.pivot)) {
            res ^= row.bits;
            if (combination) *combination ^= row.combo;
        }
    }
    return res;
}

bool EchelonBasis::contains(const BitVector& v) const { return reduce(v).none(); }

bool EchelonBasis::insert(const BitVector& v) {
    if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: dimension mismatch");
    BitVector combo;
    BitVector res = reduce(v, capacity_ ? &combo : nullptr);
    const std::size_t index = inserted_++;
    if (res.none()) return false;
    if (capacity_) {
        if (index >= capacity_) throw std::out_of_range("EchelonBasis: capacity exceeded");
        combo.flip(index);
    }
    Row row{std::move(res), std::move(combo), 0};
    row.pivot = row.bits.first_set();
    auto it = std::lower_bound(rows_.begin(), rows_.end(), row.pivot,
                               [](const Row& r, std::size_t p) { return r.pivot < p; });
    rows_.insert(it, std::move(row));
    return true;
}

std::optional<BitVector> EchelonBasis::express(const BitVector& v) const {
    if (!capacity_) throw std::logic_error("EchelonBasis::express requires combination tracking");
    BitVector combo;
    if (reduce(v, &combo).any()) return std::nullopt;
    return combo;
}

}  // namespace ftcc
