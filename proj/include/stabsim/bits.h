// Copyright 2026 The stabsim Authors
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

#ifndef STABSIM_BITS_H
#define STABSIM_BITS_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stabsim {

inline constexpr size_t words_for_bits(size_t num_bits) {
    return (num_bits + 63) >> 6;
}

/// Word-level kernels shared by BitVec, BitMatrix and the hot loops elsewhere.
namespace words {

inline void xor_into(uint64_t *dst, const uint64_t *src, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] ^= src[k];
    }
}

inline void xor_into_masked(uint64_t *dst, const uint64_t *src, const uint64_t *mask, size_t n) {
    for (size_t k = 0; k < n; k++) {
        dst[k] ^= src[k] & mask[k];
    }
}

inline bool and_parity(const uint64_t *a, const uint64_t *b, size_t n) {
    uint64_t acc = 0;
    for (size_t k = 0; k < n; k++) {
        acc ^= a[k] & b[k];
    }
    return std::popcount(acc) & 1;
}

inline size_t and_popcount(const uint64_t *a, const uint64_t *b, size_t n) {
    size_t total = 0;
    for (size_t k = 0; k < n; k++) {
        total += std::popcount(a[k] & b[k]);
    }
    return total;
}

inline size_t popcount(const uint64_t *a, size_t n) {
    size_t total = 0;
    for (size_t k = 0; k < n; k++) {
        total += std::popcount(a[k]);
    }
    return total;
}

inline bool any(const uint64_t *a, size_t n) {
    for (size_t k = 0; k < n; k++) {
        if (a[k]) {
            return true;
        }
    }
    return false;
}

inline bool get(const uint64_t *a, size_t bit) {
    return (a[bit >> 6] >> (bit & 63)) & 1;
}

inline void flip(uint64_t *a, size_t bit) {
    a[bit >> 6] ^= uint64_t{1} << (bit & 63);
}

inline void assign(uint64_t *a, size_t bit, bool value) {
    uint64_t m = uint64_t{1} << (bit & 63);
    if (value) {
        a[bit >> 6] |= m;
    } else {
        a[bit >> 6] &= ~m;
    }
}

/// Index of the lowest set bit, or `none` if all zero.
inline size_t first_one(const uint64_t *a, size_t n, size_t none) {
    for (size_t k = 0; k < n; k++) {
        if (a[k]) {
            return (k << 6) + std::countr_zero(a[k]);
        }
    }
    return none;
}

/// Calls f(bit_index) for each set bit in ascending order.
template <typename F>
inline void for_each_one(const uint64_t *a, size_t n, F &&f) {
    for (size_t k = 0; k < n; k++) {
        uint64_t w = a[k];
        while (w) {
            f((k << 6) + std::countr_zero(w));
            w &= w - 1;
        }
    }
}

}  // namespace words

/// Fixed-length packed bit string. Unused high bits of the last word stay zero.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits);
    static BitVec from_string(std::string_view bits);
    static BitVec unit(size_t num_bits, size_t k);

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool get(size_t k) const;
    void set(size_t k, bool value);
    void flip(size_t k);
    bool operator[](size_t k) const {
        return words::get(words_.data(), k);
    }

    uint64_t *data() {
        return words_.data();
    }
    const uint64_t *data() const {
        return words_.data();
    }
    std::span<uint64_t> word_span() {
        return words_;
    }
    std::span<const uint64_t> word_span() const {
        return words_;
    }

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    BitVec &operator|=(const BitVec &other);
    BitVec operator^(const BitVec &other) const;
    BitVec operator&(const BitVec &other) const;
    BitVec operator|(const BitVec &other) const;
    BitVec operator~() const;
    bool operator==(const BitVec &other) const = default;

    size_t popcount() const;
    bool any() const;
    bool none() const {
        return !any();
    }
    void clear();
    /// Lowest set bit, or size() if none.
    size_t first_one() const;
    std::vector<size_t> ones() const;

    /// Character k is bit k.
    std::string str() const;

   private:
    void clear_tail();
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Parity of the bitwise AND.
bool dot(const BitVec &a, const BitVec &b);

/// Dense row-major bit matrix; row r occupies words [r*stride, (r+1)*stride).
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);
    static BitMatrix identity(size_t n);
    static BitMatrix from_rows(const std::vector<std::string> &rows);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t stride() const {
        return stride_;
    }

    bool get(size_t r, size_t c) const;
    void set(size_t r, size_t c, bool value);
    void flip(size_t r, size_t c);
    bool bit(size_t r, size_t c) const {
        return words::get(row(r), c);
    }

    uint64_t *row(size_t r) {
        return data_.data() + r * stride_;
    }
    const uint64_t *row(size_t r) const {
        return data_.data() + r * stride_;
    }
    BitVec row_vec(size_t r) const;
    BitVec col_vec(size_t c) const;
    void set_row(size_t r, const BitVec &v);
    /// row(dst) ^= row(src)
    void xor_row(size_t dst, size_t src);

    BitMatrix transposed() const;
    bool is_symmetric() const;
    bool operator==(const BitMatrix &other) const = default;
    std::string str() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

BitMatrix matmul_f2(const BitMatrix &a, const BitMatrix &b);
/// y = A x
BitVec matvec_f2(const BitMatrix &a, const BitVec &x);
/// y = x A (XOR of the rows of A selected by x)
BitVec vecmat_f2(const BitVec &x, const BitMatrix &a);
size_t rank_f2(BitMatrix a);

/// Vector over Z4, entries kept reduced.
class PhaseVecZ4 {
   public:
    PhaseVecZ4() = default;
    explicit PhaseVecZ4(size_t n) : v_(n, 0) {
    }
    size_t size() const {
        return v_.size();
    }
    uint8_t operator[](size_t k) const {
        return v_[k];
    }
    uint8_t get(size_t k) const;
    void set(size_t k, int value);
    void add(size_t k, int delta) {
        v_[k] = (uint8_t)((v_[k] + delta) & 3);
    }
    const std::vector<uint8_t> &values() const {
        return v_;
    }
    bool operator==(const PhaseVecZ4 &other) const = default;

   private:
    std::vector<uint8_t> v_;
};

}  // namespace stabsim

#endif
