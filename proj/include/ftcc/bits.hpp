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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ftcc {

/// Packed GF(2) vector. Bits past `size()` in the last word are kept zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    std::size_t num_words() const { return words_.size(); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::uint64_t word(std::size_t w) const { return words_[w]; }
    std::uint64_t& word(std::size_t w) { return words_[w]; }
    const std::vector<std::uint64_t>& words() const { return words_; }

    BitVector& operator^=(const BitVector& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    BitVector& operator&=(const BitVector& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }
    BitVector& operator|=(const BitVector& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    bool operator==(const BitVector& o) const = default;
    auto operator<=>(const BitVector& o) const = default;

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    /// Parity of the bitwise AND; the GF(2) dot product.
    bool dot(const BitVector& o) const {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
        return std::popcount(acc) & 1;
    }

    /// Index of the lowest set bit, or size() when empty.
    std::size_t first_set() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return n_;
    }

    std::vector<std::size_t> ones() const;
    std::string to_string() const;  // '0'/'1' per bit, index 0 first
    static BitVector from_string(const std::string& s);

    /// Concatenation [this | o].
    BitVector concat(const BitVector& o) const;
    /// Bits [begin, begin+len).
    BitVector slice(std::size_t begin, std::size_t len) const;

    std::size_t hash() const;

   private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const { return v.hash(); }
};

/// Dense GF(2) matrix stored as a list of row vectors.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}
    explicit BitMatrix(std::vector<BitVector> rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const BitVector& row(std::size_t r) const { return rows_[r]; }
    BitVector& row(std::size_t r) { return rows_[r]; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
    void append_row(BitVector r);

    /// In-place reduced row echelon form; returns pivot columns in row order.
    std::vector<std::size_t> row_reduce();
    std::size_t rank() const;
    BitMatrix transpose() const;
    /// Basis of {v : M v = 0}.
    std::vector<BitVector> null_space() const;
    /// Columns `cols` of this matrix, in the given order.
    BitMatrix select_columns(const std::vector<std::size_t>& cols) const;

   private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Incrementally built echelon basis that remembers, for each basis row,
/// which inserted vectors it is a combination of.
class EchelonBasis {
   public:
    /// `capacity` bounds the number of insert() calls whose combinations are
    /// tracked; pass 0 when express()/combination output is not needed.
    explicit EchelonBasis(std::size_t dim, std::size_t capacity = 0) : dim_(dim), capacity_(capacity) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    /// Inserts v; returns false if v was already in the span.
    bool insert(const BitVector& v);
    bool contains(const BitVector& v) const;
    /// Reduces v against the basis. The residual is zero iff v is in the span.
    /// `combination` (length = capacity) records which
    /// inserted vectors were used.
    BitVector reduce(const BitVector& v, BitVector* combination = nullptr) const;
    /// Coefficients over inserted vectors expressing v, or nullopt.
    std::optional<BitVector> express(const BitVector& v) const;

   private:
    struct Row {
        BitVector bits;
        BitVector combo;
        std::size_t pivot;
    };
    std::size_t dim_;
    std::size_t capacity_;
    std::size_t inserted_ = 0;
    std::vector<Row> rows_;  // sorted by pivot
};

}  // namespace ftcc
