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

#include <gtest/gtest.h>

#include "stabsim/bits.h"
#include "stabsim/rng.h"

using namespace stabsim;

namespace {

BitMatrix random_matrix(size_t rows, size_t cols, Rng &rng) {
    BitMatrix a(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            a.set(r, c, rng() & 1);
        }
    }
    return a;
}

BitMatrix naive_matmul(const BitMatrix &a, const BitMatrix &b) {
    BitMatrix c(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < b.cols(); j++) {
            bool acc = false;
            for (size_t k = 0; k < a.cols(); k++) {
                acc ^= a.get(i, k) && b.get(k, j);
            }
            c.set(i, j, acc);
        }
    }
    return c;
}

// Independent elimination on a vector<vector<bool>> copy.
size_t naive_rank(const BitMatrix &a) {
    std::vector<std::vector<bool>> m(a.rows(), std::vector<bool>(a.cols()));
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            m[r][c] = a.get(r, c);
        }
    }
    size_t rank = 0;
    for (size_t c = 0; c < a.cols() && rank < a.rows(); c++) {
        size_t pivot = rank;
        while (pivot < a.rows() && !m[pivot][c]) {
            pivot++;
        }
        if (pivot == a.rows()) {
            continue;
        }
        std::swap(m[pivot], m[rank]);
        for (size_t r = 0; r < a.rows(); r++) {
            if (r != rank && m[r][c]) {
                for (size_t k = 0; k < a.cols(); k++) {
                    m[r][k] = m[r][k] ^ m[rank][k];
                }
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace

TEST(BitVec, BasicsAndBounds) {
    BitVec v(70);
    EXPECT_EQ(v.size(), 70u);
    EXPECT_TRUE(v.none());
    v.set(69, true);
    v.set(3, true);
    EXPECT_EQ(v.popcount(), 2u);
    EXPECT_EQ(v.first_one(), 3u);
    EXPECT_THROW(v.get(70), std::out_of_range);
    EXPECT_THROW(v.set(70, true), std::out_of_range);
    EXPECT_EQ((~v).popcount(), 68u);
    EXPECT_EQ(BitVec::from_string("0110").str(), "0110");
    EXPECT_THROW(v ^ BitVec(3), std::invalid_argument);
}

TEST(BitMatrix, IdentityProduct) {
    BitMatrix i4 = BitMatrix::identity(4);
    EXPECT_EQ(matmul_f2(i4, i4), i4);
}

TEST(BitMatrix, ParityProduct) {
    BitMatrix a = BitMatrix::from_rows({"11"});
    BitMatrix c = matmul_f2(a, a.transposed());
    EXPECT_EQ(c.rows(), 1u);
    EXPECT_FALSE(c.get(0, 0));
}

TEST(BitMatrix, RandomProductMatchesNaive) {
    Rng rng = derive_rng(1, 0, "matmul");
    for (int trial = 0; trial < 20; trial++) {
        BitMatrix a = random_matrix(8, 8, rng), b = random_matrix(8, 8, rng);
        EXPECT_EQ(matmul_f2(a, b), naive_matmul(a, b));
    }
    BitMatrix a = random_matrix(70, 130, rng), b = random_matrix(130, 65, rng);
    EXPECT_EQ(matmul_f2(a, b), naive_matmul(a, b));
    EXPECT_THROW(matmul_f2(a, a), std::invalid_argument);
}

TEST(BitMatrix, Associativity) {
    Rng rng = derive_rng(2, 0, "assoc");
    for (int trial = 0; trial < 20; trial++) {
        BitMatrix a = random_matrix(9, 12, rng), b = random_matrix(12, 7, rng), c = random_matrix(7, 5, rng);
        EXPECT_EQ(matmul_f2(matmul_f2(a, b), c), matmul_f2(a, matmul_f2(b, c)));
    }
}

TEST(BitMatrix, Matvec) {
    Rng rng = derive_rng(3, 0, "matvec");
    BitVec x(10);
    for (size_t k = 0; k < 10; k++) {
        x.set(k, rng() & 1);
    }
    EXPECT_EQ(matvec_f2(BitMatrix::identity(10), x), x);
    EXPECT_TRUE(matvec_f2(BitMatrix(10, 10), x).none());
    BitMatrix a = random_matrix(10, 10, rng);
    BitVec y = matvec_f2(a, x);
    for (size_t i = 0; i < 10; i++) {
        bool acc = false;
        for (size_t j = 0; j < 10; j++) {
            acc ^= a.get(i, j) && x[j];
        }
        EXPECT_EQ(y[i], acc);
    }
    for (size_t j = 0; j < 10; j++) {
        EXPECT_EQ(matvec_f2(a, BitVec::unit(10, j)), a.col_vec(j));
    }
    EXPECT_THROW(matvec_f2(a, BitVec(9)), std::invalid_argument);
}

TEST(BitMatrix, Rank) {
    EXPECT_EQ(rank_f2(BitMatrix::identity(5)), 5u);
    EXPECT_EQ(rank_f2(BitMatrix::from_rows({"111", "111", "111"})), 1u);
    Rng rng = derive_rng(4, 0, "rank");
    for (int trial = 0; trial < 50; trial++) {
        BitMatrix a = random_matrix(12, 12, rng);
        if (trial % 3 == 0) {
            a.set_row(5, a.row_vec(2) ^ a.row_vec(7));
        }
        EXPECT_EQ(rank_f2(a), naive_rank(a));
        EXPECT_EQ(rank_f2(a), rank_f2(a.transposed()));
    }
}

TEST(BitMatrix, TransposeInvolution) {
    Rng rng = derive_rng(5, 0, "transpose");
    BitMatrix a = random_matrix(67, 131, rng);
    EXPECT_EQ(a.transposed().transposed(), a);
}

TEST(PhaseVecZ4, ReducedMod4) {
    PhaseVecZ4 g(3);
    g.set(0, 7);
    g.set(1, -1);
    g.add(2, 6);
    EXPECT_EQ(g[0], 3);
    EXPECT_EQ(g[1], 3);
    EXPECT_EQ(g[2], 2);
}
