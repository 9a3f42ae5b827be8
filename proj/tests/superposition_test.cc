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
#include <numbers>

#include "stabsim/superposition.h"
#include "test_util.h"

using namespace stabsim;
using namespace stabsim::testing;

namespace {

using cd = std::complex<double>;

}  // namespace

TEST(Equatorial, SingleQubitDiagonalUniform) {
    Rng rng = derive_rng(1, 0, "eq1");
    std::vector<int> counts(4, 0);
    const int draws = 10000;
    for (int k = 0; k < draws; k++) {
        counts[random_equatorial(1, rng).A.diag(0)]++;
    }
    double sigma = std::sqrt(draws * 0.25 * 0.75);
    for (int c : counts) {
        EXPECT_LT(std::abs(c - draws / 4.0), 3 * sigma);
    }
}

TEST(Equatorial, TwoQubitChiSquare) {
    Rng rng = derive_rng(2, 0, "eq2");
    std::vector<double> counts(32, 0);
    const int draws = 100000;
    for (int k = 0; k < draws; k++) {
        QuadFormZ4 a = random_equatorial(2, rng).A;
        counts[a.diag(0) + 4 * a.diag(1) + 16 * a.off(0, 1)] += 1;
    }
    double chi2 = 0, expected = draws / 32.0;
    for (double c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // 31 degrees of freedom, 1e-3 upper quantile is 61.1.
    EXPECT_LT(chi2, 61.1);
}

TEST(Equatorial, SeedReproducible) {
    Rng a = derive_rng(3, 0, "eq"), b = derive_rng(3, 0, "eq");
    EXPECT_EQ(random_equatorial(9, a).A.off_matrix(), random_equatorial(9, b).A.off_matrix());
}

TEST(InnerEquatorial, ZeroStateHasFlatOverlap) {
    Rng rng = derive_rng(4, 0, "flat");
    for (size_t n = 1; n <= 8; n++) {
        EquatorialState e = random_equatorial(n, rng);
        EXPECT_NEAR(std::abs(inner_equatorial(CHForm(n), e)), std::pow(2.0, -(double)n / 2), 1e-14);
    }
}

TEST(InnerEquatorial, SelfOverlapIsOne) {
    Rng rng = derive_rng(5, 0, "self");
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 1 + trial % 8;
        EquatorialState e = random_equatorial(n, rng);
        CHForm phi(n);
        for (size_t a = 0; a < n; a++) {
            phi.apply_h(a);
        }
        for (size_t a = 0; a < n; a++) {
            for (int r = 0; r < e.A.diag(a); r++) {
                phi.apply_s(a);
            }
            for (size_t b = a + 1; b < n; b++) {
                if (e.A.off(a, b)) {
                    phi.apply_cz(a, b);
                }
            }
        }
        cd z = inner_equatorial(phi, e);
        EXPECT_NEAR(std::abs(z - 1.0), 0, 1e-12);
    }
}

TEST(InnerEquatorial, MatchesDense) {
    Rng rng = derive_rng(6, 0, "dense");
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + trial % 8;
        Circuit c = random_clifford_circuit(n, 80, rng);
        CHForm phi = run_chform(c);
        EquatorialState e = random_equatorial(n, rng);
        cd expected = dense_inner(dense_run(c), equatorial_dense(e));
        EXPECT_NEAR(std::abs(inner_equatorial(phi, e) - expected), 0, 1e-12) << render_circuit(c);
    }
}

TEST(InnerEquatorial, InvariantUnderIdentitySequences) {
    Rng rng = derive_rng(7, 0, "ident");
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 6;
        CHForm phi = run_chform(random_clifford_circuit(n, 60, rng));
        CHForm other = phi;
        size_t q = uniform_below(rng, n), r = (q + 1) % n;
        // H H, S^4, CX CX, CZ CZ all act as the identity.
        other.apply_h(q);
        other.apply_h(q);
        for (int k = 0; k < 4; k++) {
            other.apply_s(r);
        }
        other.apply_cx(q, r);
        other.apply_cx(q, r);
        other.apply_cz(r, q);
        other.apply_cz(r, q);
        EquatorialState e = random_equatorial(n, rng);
        EXPECT_NEAR(std::abs(inner_equatorial(phi, e) - inner_equatorial(other, e)), 0, 1e-12);
    }
}

TEST(NormEstimate, BatchConstants) {
    EXPECT_EQ(norm_batch_size(0.1), 400u);
    EXPECT_EQ(norm_batch_size(0.2), 100u);
    EXPECT_EQ(norm_batch_count(0.05), 27u);
    EXPECT_EQ(norm_batch_count(0.5), 7u);
}

TEST(NormEstimate, SingleZeroState) {
    StabilizerSuperposition psi(3);
    psi.add(1.0, CHForm(3));
    int inside = 0;
    for (int trial = 0; trial < 200; trial++) {
        double eta = estimate_norm(psi, {0.1, 0.05}, 1000 + trial);
        inside += (eta >= 0.9 && eta <= 1.1);
    }
    EXPECT_GE(inside, 190);
}

TEST(NormEstimate, TwoBasisStates) {
    StabilizerSuperposition psi(1);
    CHForm one(1);
    one.apply_x(0);
    psi.add(1.0, CHForm(1));
    psi.add(1.0, one);
    int inside = 0;
    for (int trial = 0; trial < 200; trial++) {
        double eta = estimate_norm(psi, {0.1, 0.05}, 5000 + trial);
        inside += (eta >= 1.8 && eta <= 2.2);
    }
    EXPECT_GE(inside, 190);
}

TEST(NormEstimate, SampleMeanUnbiasedAndVarianceBounded) {
    Rng rng = derive_rng(8, 0, "unbiased");
    for (int trial = 0; trial < 5; trial++) {
        StabilizerSuperposition psi = random_superposition(6, 8, rng);
        double exact = dense_norm2(psi.to_dense());
        std::vector<double> eta = norm_samples(psi, 20000, 77 + trial);
        double mean = 0, var = 0;
        for (double x : eta) {
            mean += x;
        }
        mean /= (double)eta.size();
        for (double x : eta) {
            var += (x - mean) * (x - mean);
        }
        var /= (double)(eta.size() - 1);
        EXPECT_LT(std::abs(mean - exact), 4 * exact / std::sqrt((double)eta.size()));
        EXPECT_LT(var / (exact * exact), 1.1);
    }
}

TEST(Sparsify, CliffordOnlyIsExact) {
    Rng rng = derive_rng(9, 0, "cliff");
    DecompositionRegistry reg;
    Circuit c = random_clifford_circuit(5, 50, rng);
    StabilizerSuperposition omega = build_sparse_sum_over_cliffords(c, reg, 7, rng);
    EXPECT_EQ(omega.size(), 7u);
    cd total = 0;
    for (const auto &t : omega.terms()) {
        total += t.coeff;
    }
    EXPECT_NEAR(std::abs(total - 1.0), 0, 1e-12);
    EXPECT_LT(max_abs_diff(omega.to_dense().amps, dense_run(c).amps), 1e-12);
}

TEST(Sparsify, CoefficientMagnitudesExact) {
    Rng rng = derive_rng(10, 0, "mag");
    DecompositionRegistry reg;
    Circuit c = random_t_circuit(4, 30, 3, rng);
    StabilizerSuperposition omega = build_sparse_sum_over_cliffords(c, reg, 50, rng);
    double l1 = circuit_l1_norm(c, reg);
    for (const auto &t : omega.terms()) {
        EXPECT_NEAR(std::abs(t.coeff), l1 / 50, 1e-15);
    }
}

TEST(Sparsify, TChainL1) {
    Circuit c(1);
    c.append(Gate::H, {0});
    for (int k = 0; k < 6; k++) {
        c.append(Gate::T, {0});
    }
    DecompositionRegistry reg;
    double l1 = circuit_l1_norm(c, reg);
    EXPECT_NEAR(l1 * l1, std::pow(std::cos(std::numbers::pi / 8), -12), 1e-12);
}

TEST(Sparsify, ExactSumMatchesDense) {
    Rng rng = derive_rng(11, 0, "exact");
    DecompositionRegistry reg;
    for (int trial = 0; trial < 20; trial++) {
        Circuit c = random_t_circuit(4, 30, 3, rng);
        if (trial % 2) {
            c.append(Gate::CCZ, {0, 2, 3});
            c.append(Gate::RZ, {1}, 0.37);
            c.append(Gate::PHASE, {2}, -1.1);
        }
        StabilizerSuperposition psi = build_exact_sum_over_cliffords(c, reg);
        EXPECT_LT(max_abs_diff(psi.to_dense().amps, dense_run(c).amps), 1e-12);
        psi.compact();
        EXPECT_LT(max_abs_diff(psi.to_dense().amps, dense_run(c).amps), 1e-12);
    }
}

TEST(Sparsify, MeanSquaredErrorMatchesExpectation) {
    Rng rng = derive_rng(12, 0, "mse");
    DecompositionRegistry reg;
    Circuit c = random_t_circuit(4, 40, 2, rng);
    DenseState psi = dense_run(c);
    double l1 = circuit_l1_norm(c, reg);
    const size_t k = 5;
    std::vector<double> errs;
    for (int trial = 0; trial < 400; trial++) {
        DenseState omega = build_sparse_sum_over_cliffords(c, reg, k, rng).to_dense();
        double e = 0;
        for (size_t i = 0; i < psi.amps.size(); i++) {
            e += std::norm(psi.amps[i] - omega.amps[i]);
        }
        errs.push_back(e);
    }
    double mean = 0, var = 0;
    for (double e : errs) {
        mean += e;
    }
    mean /= (double)errs.size();
    for (double e : errs) {
        var += (e - mean) * (e - mean);
    }
    var /= (double)(errs.size() - 1);
    double expected = (l1 * l1 - 1) / k;
    EXPECT_LT(std::abs(mean - expected), 3 * std::sqrt(var / (double)errs.size()) + 1e-12);
}

TEST(ChooseK, Values) {
    EXPECT_EQ(choose_k(1.0, 0.5), 4u);
    EXPECT_EQ(choose_k(std::pow(4.0 / 3.0, 2), 0.3), 35u);
    double l1 = std::pow(std::cos(std::numbers::pi / 8), -16);
    EXPECT_EQ(choose_k(l1, 0.3), (size_t)std::floor(std::pow(l1 / 0.3, 2)));
}

TEST(TailCheck, ExactStateGivesDeltaSquared) {
    StabilizerSuperposition psi(2);
    psi.add(1.0, CHForm(2));
    double bound = tail_check(psi, 0.2, {0.05, 0.05}, 3);
    EXPECT_NEAR(bound, 0.04, 0.06);
}

TEST(Projector, AllTerms) {
    StabilizerSuperposition zero(3);
    zero.add(1.0, CHForm(3));
    StabilizerSuperposition a = zero, b = zero;
    a.apply_projector_all(1, false);
    EXPECT_EQ(a.size(), 1u);
    b.apply_projector_all(1, true);
    EXPECT_TRUE(b.empty());
    Rng rng = derive_rng(13, 0, "proj");
    for (int trial = 0; trial < 20; trial++) {
        StabilizerSuperposition psi = random_superposition(5, 6, rng);
        DenseState d = psi.to_dense();
        size_t q = uniform_below(rng, 5);
        bool bit = rng() & 1;
        psi.apply_projector_all(q, bit);
        for (size_t i = 0; i < d.amps.size(); i++) {
            if (((i >> q) & 1) != bit) {
                d.amps[i] = 0;
            }
        }
        EXPECT_NEAR(dense_norm2(psi.to_dense()), dense_norm2(d), 1e-12);
    }
}

TEST(InnerEquatorial, WordPathsAgree) {
    Rng rng = derive_rng(14, 0, "paths");
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 30 + uniform_below(rng, 34);
        CHForm phi = run_chform(random_clifford_circuit(n, 400, rng));
        PreparedTerm term(phi, {0.3, -0.7});
        EquatorialState e = random_equatorial(n, rng);
        EXPECT_EQ(term.overlap(e), term.overlap_reference(e));
    }
}

TEST(InnerEquatorial, WideStateUsesMultiWordPath) {
    // Product of a random 6-qubit state with |0> on the remaining qubits, probed by a block-diagonal A.
    Rng rng = derive_rng(15, 0, "wide");
    for (int trial = 0; trial < 10; trial++) {
        size_t n = 70;
        Circuit small = random_clifford_circuit(6, 60, rng);
        Circuit wide(n);
        wide.append(small);
        EquatorialState e = random_equatorial(n, rng);
        EquatorialState e6{QuadFormZ4(6)};
        for (size_t a = 0; a < n; a++) {
            for (size_t b = a + 1; b < n; b++) {
                if ((a < 6) != (b < 6)) {
                    e.A.set_off(a, b, false);
                } else if (b < 6) {
                    e6.A.set_off(a, b, e.A.off(a, b));
                }
            }
            if (a < 6) {
                e6.A.set_diag(a, e.A.diag(a));
            }
        }
        cd expected = dense_inner(dense_run(small), equatorial_dense(e6)) * std::pow(2.0, -(double)(n - 6) / 2);
        EXPECT_NEAR(std::abs(inner_equatorial(run_chform(wide), e) - expected), 0, 1e-14);
    }
}
