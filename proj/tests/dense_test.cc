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

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "test_util.h"

using namespace stabsim;
using namespace stabsim::testing;

namespace {

using cd = std::complex<double>;

}  // namespace

TEST(Dense, BellState) {
    Circuit c(2);
    c.append(Gate::H, {0});
    c.append(Gate::CX, {0, 1});
    DenseState s = dense_run(c);
    Amplitudes expect{std::sqrt(0.5), 0, 0, std::sqrt(0.5)};
    EXPECT_LT(max_abs_diff(s.amps, expect), 1e-15);
    std::vector<double> p = dense_distribution(s);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[3], 0.5, 1e-15);
}

TEST(Dense, TOnPlus) {
    Circuit c(1);
    c.append(Gate::H, {0});
    c.append(Gate::T, {0});
    DenseState s = dense_run(c);
    EXPECT_LT(max_abs_diff(s.amps, {std::sqrt(0.5), std::polar(std::sqrt(0.5), std::numbers::pi / 4)}), 1e-15);
}

TEST(Dense, ZeroStateIsPointMass) {
    DenseState s = DenseState::zero(5);
    std::vector<double> p = dense_distribution(s);
    EXPECT_EQ(p[0], 1.0);
    for (size_t i = 1; i < p.size(); i++) {
        EXPECT_EQ(p[i], 0.0);
    }
    EXPECT_EQ(dense_norm2(s), 1.0);
}

TEST(Dense, BasisIndexIsLittleEndian) {
    BitVec x = BitVec::from_string("0110");
    EXPECT_EQ(basis_index(x), 6u);
    EXPECT_EQ(index_bits(6, 4), x);
    DenseState s = DenseState::basis(x);
    EXPECT_EQ(s.amps[6], cd(1));
}

TEST(Dense, RandomCircuitsStayNormalized) {
    Rng rng = derive_rng(1, 0, "dense");
    std::uniform_real_distribution<double> angle(-4, 4);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 1 + uniform_below(rng, 10);
        Circuit c = random_t_circuit(n, 200, 20, rng);
        for (size_t j = 0; j < 10 && n >= 3; j++) {
            c.append(Gate::CCZ, {0, 1, 2});
            c.append(Gate::RZ, {uniform_below(rng, n)}, angle(rng));
            c.append(Gate::PHASE, {uniform_below(rng, n)}, angle(rng));
            c.append(Gate::H, {uniform_below(rng, n)});
        }
        EXPECT_NEAR(dense_norm2(dense_run(c)), 1.0, 1e-10);
    }
}

TEST(Dense, InnerProductByHand) {
    DenseState a{2, {cd(0.5, 0), cd(0, 0.5), cd(-0.5, 0), cd(0, -0.5)}};
    DenseState b{2, {cd(1, 0), cd(0, 0), cd(0, 0), cd(0, 1)}};
    // conj(a0) b0 + conj(a3) b3 = 0.5 + (0.5 i)(i) = 0.5 - 0.5 = 0
    EXPECT_NEAR(std::abs(dense_inner(a, b)), 0.0, 1e-15);
    DenseState c{2, {cd(0, 0), cd(1, 0), cd(0, 0), cd(0, 0)}};
    // conj(a1) = -0.5 i
    EXPECT_NEAR(std::abs(dense_inner(a, c) - cd(0, -0.5)), 0.0, 1e-15);
    EXPECT_NEAR(dense_inner(a, a).real(), dense_norm2(a), 1e-15);
    DenseState d = DenseState::zero(3);
    EXPECT_THROW(dense_inner(a, d), std::invalid_argument);
}

TEST(Dense, CapIsEnforced) {
    EXPECT_THROW(DenseState::zero(max_dense_qubits() + 1), std::invalid_argument);
    setenv("STABSIM_MAX_DENSE_QUBITS", "3", 1);
    EXPECT_EQ(max_dense_qubits(), 3u);
    EXPECT_THROW(dense_run(Circuit(4)), std::invalid_argument);
    unsetenv("STABSIM_MAX_DENSE_QUBITS");
    EXPECT_EQ(max_dense_qubits(), 14u);
}

TEST(Dense, UnitaryColumnsAreOrthonormal) {
    Rng rng = derive_rng(2, 0, "dense");
    Circuit c = random_t_circuit(3, 40, 5, rng);
    c.append(Gate::CCZ, {2, 0, 1});
    auto u = dense_unitary(c);
    for (size_t i = 0; i < u.size(); i++) {
        for (size_t j = 0; j < u.size(); j++) {
            cd dot = 0;
            for (size_t r = 0; r < u.size(); r++) {
                dot += std::conj(u[i][r]) * u[j][r];
            }
            EXPECT_NEAR(std::abs(dot - (i == j ? cd(1) : cd(0))), 0, 1e-12);
        }
    }
}
