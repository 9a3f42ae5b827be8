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

#include <complex>

#include "stabsim/expsum.h"
#include "test_util.h"

using namespace stabsim;
using namespace stabsim::testing;

namespace {

std::complex<double> value(const GaussianPow2 &z) {
    return {z.re.value(), z.im.value()};
}

}  // namespace

TEST(ExpsumZ2, EmptyForm) {
    SignedPow2 r = expsum_z2(QuadFormZ2(0));
    EXPECT_EQ(r.sign, 1);
    EXPECT_EQ(r.power, 0);
}

TEST(ExpsumZ2, SingleProduct) {
    QuadFormZ2 q(2);
    q.M.set(0, 1, true);
    SignedPow2 r = expsum_z2(q);
    EXPECT_EQ(r.sign, 1);
    EXPECT_EQ(r.power, 1);
}

TEST(ExpsumZ2, RandomMatchesBruteForce) {
    Rng rng = derive_rng(11, 0, "z2");
    for (int trial = 0; trial < 3000; trial++) {
        size_t m = uniform_below(rng, 13);
        QuadFormZ2 q(m);
        for (size_t i = 0; i < m; i++) {
            q.L.set(i, rng() & 1);
            for (size_t j = 0; j < m; j++) {
                q.M.set(i, j, uniform_below(rng, 3) == 0);
            }
        }
        EXPECT_EQ(expsum_z2(q).value(), (double)brute_expsum_z2(q)) << "m=" << m;
    }
}

TEST(ExpsumZ4, SingleVariable) {
    const std::complex<double> expected[4] = {{2, 0}, {1, 1}, {0, 0}, {1, -1}};
    for (int d = 0; d < 4; d++) {
        QuadFormZ4 b(1);
        b.set_diag(0, d);
        EXPECT_EQ(value(expsum_z4(b)), expected[d]) << d;
    }
}

TEST(ExpsumZ4, ExhaustiveSmall) {
    for (size_t n = 1; n <= 3; n++) {
        size_t pairs = n * (n - 1) / 2;
        for (size_t code = 0; code < (size_t{1} << (pairs + 2 * n)); code++) {
            QuadFormZ4 b(n);
            size_t bit = 0;
            for (size_t i = 0; i < n; i++) {
                b.set_diag(i, (int)((code >> (2 * i)) & 3));
            }
            bit = 2 * n;
            for (size_t i = 0; i < n; i++) {
                for (size_t j = i + 1; j < n; j++) {
                    b.set_off(i, j, (code >> bit++) & 1);
                }
            }
            EXPECT_EQ(value(expsum_z4(b)), brute_expsum_z4(b));
        }
    }
}

TEST(ExpsumZ4, RandomMatchesBruteForceAndNormIsPowerOfTwo) {
    Rng rng = derive_rng(12, 0, "z4");
    for (int trial = 0; trial < 2000; trial++) {
        size_t n = 1 + uniform_below(rng, 10);
        QuadFormZ4 b = random_quadform_z4(n, rng);
        std::complex<double> z = value(expsum_z4(b));
        EXPECT_EQ(z, brute_expsum_z4(b));
        double norm = std::norm(z);
        if (norm != 0) {
            int e;
            double mant = std::frexp(norm, &e);
            EXPECT_EQ(mant, 0.5);
        }
    }
}

TEST(ExpsumZ4, RelabelingInvariance) {
    Rng rng = derive_rng(13, 0, "perm");
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 2 + uniform_below(rng, 9);
        QuadFormZ4 b = random_quadform_z4(n, rng);
        std::vector<size_t> perm(n);
        for (size_t k = 0; k < n; k++) {
            perm[k] = k;
        }
        std::shuffle(perm.begin(), perm.end(), rng);
        QuadFormZ4 c(n);
        for (size_t i = 0; i < n; i++) {
            c.set_diag(perm[i], b.diag(i));
            for (size_t j = i + 1; j < n; j++) {
                c.set_off(perm[i], perm[j], b.off(i, j));
            }
        }
        EXPECT_EQ(value(expsum_z4(b)), value(expsum_z4(c)));
    }
}

TEST(ExpsumZ4, MaskedMatchesRestriction) {
    Rng rng = derive_rng(14, 0, "mask");
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + uniform_below(rng, 10);
        QuadFormZ4 b = random_quadform_z4(n, rng);
        BitVec active(n);
        std::vector<size_t> keep;
        for (size_t k = 0; k < n; k++) {
            if (rng() & 1) {
                active.set(k, true);
                keep.push_back(k);
            }
        }
        QuadFormZ4 r(keep.size());
        for (size_t i = 0; i < keep.size(); i++) {
            r.set_diag(i, b.diag(keep[i]));
            for (size_t j = i + 1; j < keep.size(); j++) {
                r.set_off(i, j, b.off(keep[i], keep[j]));
            }
        }
        auto masked = expsum_detail::expsum_z4_masked(b.off_matrix(), b.diag_vector().values(), active);
        EXPECT_EQ(value(masked), brute_expsum_z4(r));
    }
}

TEST(ExpsumZ4, WideMaskedMatchesRestriction) {
    Rng rng = derive_rng(15, 0, "wide");
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 64 + uniform_below(rng, 80);
        QuadFormZ4 b = random_quadform_z4(n, rng);
        BitVec active(n);
        std::vector<size_t> keep;
        for (size_t k = 0; k < 10; k++) {
            size_t a = uniform_below(rng, n);
            if (!active[a]) {
                active.set(a, true);
            }
        }
        keep = active.ones();
        QuadFormZ4 r(keep.size());
        for (size_t i = 0; i < keep.size(); i++) {
            r.set_diag(i, b.diag(keep[i]));
            for (size_t j = i + 1; j < keep.size(); j++) {
                r.set_off(i, j, b.off(keep[i], keep[j]));
            }
        }
        auto masked = expsum_detail::expsum_z4_masked(b.off_matrix(), b.diag_vector().values(), active);
        EXPECT_EQ(value(masked), brute_expsum_z4(r));
    }
}
