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

#include "stabsim/bits.h"

#include <stdexcept>

namespace stabsim {

namespace {

void require_same_size(size_t a, size_t b, const char *what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
    }
}

}  // namespace

BitVec::BitVec(size_t num_bits) : num_bits_(num_bits), words_(words_for_bits(num_bits), 0) {
}

BitVec BitVec::from_string(std::string_view bits) {
    BitVec result(bits.size());
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            result.flip(k);
        } else if (bits[k] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return result;
}

BitVec BitVec::unit(size_t num_bits, size_t k) {
    BitVec result(num_bits);
    result.set(k, true);
    return result;
}

bool BitVec::get(size_t k) const {
    if (k >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(k) + " out of range for length " +
                                std::to_string(num_bits_));
    }
    return words::get(words_.data(), k);
}

void BitVec::set(size_t k, bool value) {
    if (k >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(k) + " out of range for length " +
                                std::to_string(num_bits_));
    }
    words::assign(words_.data(), k, value);
}

void BitVec::flip(size_t k) {
    if (k >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(k) + " out of range for length " +
                                std::to_string(num_bits_));
    }
    words::flip(words_.data(), k);
}

BitVec &BitVec::operator^=(const BitVec &other) {
    require_same_size(num_bits_, other.num_bits_, "BitVec ^=");
    words::xor_into(words_.data(), other.words_.data(), words_.size());
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    require_same_size(num_bits_, other.num_bits_, "BitVec &=");
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] &= other.words_[k];
    }
    return *this;
}

BitVec &BitVec::operator|=(const BitVec &other) {
    require_same_size(num_bits_, other.num_bits_, "BitVec |=");
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] |= other.words_[k];
    }
    return *this;
}

BitVec BitVec::operator^(const BitVec &other) const {
    BitVec r = *this;
    r ^= other;
    return r;
}

BitVec BitVec::operator&(const BitVec &other) const {
    BitVec r = *this;
    r &= other;
    return r;
}

BitVec BitVec::operator|(const BitVec &other) const {
    BitVec r = *this;
    r |= other;
    return r;
}

BitVec BitVec::operator~() const {
    BitVec r = *this;
    for (auto &w : r.words_) {
        w = ~w;
    }
    r.clear_tail();
    return r;
}

void BitVec::clear_tail() {
    if (num_bits_ & 63) {
        words_.back() &= (uint64_t{1} << (num_bits_ & 63)) - 1;
    }
}

size_t BitVec::popcount() const {
    return words::popcount(words_.data(), words_.size());
}

bool BitVec::any() const {
    return words::any(words_.data(), words_.size());
}

void BitVec::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

size_t BitVec::first_one() const {
    return words::first_one(words_.data(), words_.size(), num_bits_);
}

std::vector<size_t> BitVec::ones() const {
    std::vector<size_t> result;
    words::for_each_one(words_.data(), words_.size(), [&](size_t k) {
        result.push_back(k);
    });
    return result;
}

std::string BitVec::str() const {
    std::string result(num_bits_, '0');
    for (size_t k = 0; k < num_bits_; k++) {
        if ((*this)[k]) {
            result[k] = '1';
        }
    }
    return result;
}

bool dot(const BitVec &a, const BitVec &b) {
    require_same_size(a.size(), b.size(), "dot");
    return words::and_parity(a.data(), b.data(), a.num_words());
}

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * words_for_bits(cols), 0) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix result(n, n);
    for (size_t k = 0; k < n; k++) {
        words::flip(result.row(k), k);
    }
    return result;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string> &rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix result(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        require_same_size(rows[r].size(), cols, "BitMatrix::from_rows");
        result.set_row(r, BitVec::from_string(rows[r]));
    }
    return result;
}

bool BitMatrix::get(size_t r, size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("matrix index out of range");
    }
    return bit(r, c);
}

void BitMatrix::set(size_t r, size_t c, bool value) {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("matrix index out of range");
    }
    words::assign(row(r), c, value);
}

void BitMatrix::flip(size_t r, size_t c) {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("matrix index out of range");
    }
    words::flip(row(r), c);
}

BitVec BitMatrix::row_vec(size_t r) const {
    if (r >= rows_) {
        throw std::out_of_range("row index out of range");
    }
    BitVec result(cols_);
    std::copy(row(r), row(r) + stride_, result.data());
    return result;
}

BitVec BitMatrix::col_vec(size_t c) const {
    if (c >= cols_) {
        throw std::out_of_range("column index out of range");
    }
    BitVec result(rows_);
    for (size_t r = 0; r < rows_; r++) {
        if (bit(r, c)) {
            words::flip(result.data(), r);
        }
    }
    return result;
}

void BitMatrix::set_row(size_t r, const BitVec &v) {
    if (r >= rows_) {
        throw std::out_of_range("row index out of range");
    }
    require_same_size(v.size(), cols_, "BitMatrix::set_row");
    std::copy(v.data(), v.data() + stride_, row(r));
}

void BitMatrix::xor_row(size_t dst, size_t src) {
    words::xor_into(row(dst), row(src), stride_);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix result(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        words::for_each_one(row(r), stride_, [&](size_t c) {
            words::flip(result.row(c), r);
        });
    }
    return result;
}

bool BitMatrix::is_symmetric() const {
    return rows_ == cols_ && transposed() == *this;
}

std::string BitMatrix::str() const {
    std::string result;
    for (size_t r = 0; r < rows_; r++) {
        result += row_vec(r).str();
        result += '\n';
    }
    return result;
}

BitMatrix matmul_f2(const BitMatrix &a, const BitMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul_f2: dimension mismatch");
    }
    BitMatrix result(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        uint64_t *out = result.row(r);
        words::for_each_one(a.row(r), a.stride(), [&](size_t k) {
            words::xor_into(out, b.row(k), b.stride());
        });
    }
    return result;
}

BitVec matvec_f2(const BitMatrix &a, const BitVec &x) {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("matvec_f2: dimension mismatch");
    }
    BitVec result(a.rows());
    for (size_t r = 0; r < a.rows(); r++) {
        if (words::and_parity(a.row(r), x.data(), a.stride())) {
            words::flip(result.data(), r);
        }
    }
    return result;
}

BitVec vecmat_f2(const BitVec &x, const BitMatrix &a) {
    if (a.rows() != x.size()) {
        throw std::invalid_argument("vecmat_f2: dimension mismatch");
    }
    BitVec result(a.cols());
    words::for_each_one(x.data(), x.num_words(), [&](size_t r) {
        words::xor_into(result.data(), a.row(r), a.stride());
    });
    return result;
}

size_t rank_f2(BitMatrix a) {
    size_t rank = 0;
    for (size_t c = 0; c < a.cols() && rank < a.rows(); c++) {
        size_t pivot = rank;
        while (pivot < a.rows() && !a.bit(pivot, c)) {
            pivot++;
        }
        if (pivot == a.rows()) {
            continue;
        }
        if (pivot != rank) {
            a.xor_row(rank, pivot);
        }
        for (size_t r = 0; r < a.rows(); r++) {
            if (r != rank && a.bit(r, c)) {
                a.xor_row(r, rank);
            }
        }
        rank++;
    }
    return rank;
}

uint8_t PhaseVecZ4::get(size_t k) const {
    if (k >= v_.size()) {
        throw std::out_of_range("phase index out of range");
    }
    return v_[k];
}

void PhaseVecZ4::set(size_t k, int value) {
    if (k >= v_.size()) {
        throw std::out_of_range("phase index out of range");
    }
    v_[k] = (uint8_t)(value & 3);
}

}  // namespace stabsim
