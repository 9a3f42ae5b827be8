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

#ifndef STABSIM_EXPSUM_H
#define STABSIM_EXPSUM_H

#include <complex>
#include <cstddef>
#include <vector>

#include "stabsim/bits.h"

namespace stabsim {

/// Symmetric matrix with off-diagonal bits and diagonal in Z4; q(x) = x B x^T mod 4.
class QuadFormZ4 {
   public:
    QuadFormZ4() = default;
    explicit QuadFormZ4(size_t n) : off_(n, n), diag_(n) {
    }

    size_t size() const {
        return diag_.size();
    }
    /// Off-diagonal bit (a != b); symmetric.
    bool off(size_t a, size_t b) const {
        return off_.bit(a, b);
    }
    void set_off(size_t a, size_t b, bool value);
    uint8_t diag(size_t a) const {
        return diag_[a];
    }
    void set_diag(size_t a, int value) {
        diag_.set(a, value);
    }
    /// x B x^T mod 4.
    int value(const BitVec &x) const;

    /// Full symmetric off-diagonal bit matrix with zero diagonal.
    const BitMatrix &off_matrix() const {
        return off_;
    }
    const PhaseVecZ4 &diag_vector() const {
        return diag_;
    }
    bool operator==(const QuadFormZ4 &other) const = default;

   private:
    BitMatrix off_;
    PhaseVecZ4 diag_;
};

/// Q(x) = x M x^T + L x over F2 with arbitrary (not necessarily symmetric) M.
struct QuadFormZ2 {
    BitMatrix M;
    BitVec L;

    QuadFormZ2() = default;
    explicit QuadFormZ2(size_t m) : M(m, m), L(m) {
    }
    size_t size() const {
        return L.size();
    }
    bool value(const BitVec &x) const;
};

/// sign * 2^power, sign in {-1, 0, 1}.
struct SignedPow2 {
    int sign = 0;
    int power = 0;

    double value() const;
    bool operator==(const SignedPow2 &other) const = default;
};

/// a 2^p + i b 2^q with a, b in {-1, 0, 1}.
struct GaussianPow2 {
    SignedPow2 re;
    SignedPow2 im;

    std::complex<double> value() const {
        return {re.value(), im.value()};
    }
    bool operator==(const GaussianPow2 &other) const = default;
};

/// sum_x (-1)^{Q(x)}
SignedPow2 expsum_z2(const QuadFormZ2 &q);
/// sum_x i^{x B x^T}
GaussianPow2 expsum_z4(const QuadFormZ4 &b);

namespace expsum_detail {

/// Core kernel. S: symmetric bit matrix with zero diagonal holding the x_a x_b coefficients among the
/// variables in `active`; each entry of `linear` is a linear part. S and linear are consumed.
/// Writes sum_{x over active} (-1)^{x S_upper x^T + L x} for every linear part.
void eliminate(BitMatrix &S, BitVec active, std::vector<BitVec> &linear, std::vector<SignedPow2> &out);

/// Z(B) restricted to the variables in `active`, from the off-diagonal bits `off` (symmetric, diagonal ignored)
/// and the diagonal `diag` (Z4). Scratch space is reused across calls.
GaussianPow2 expsum_z4_masked(const BitMatrix &off, const std::vector<uint8_t> &diag, const BitVec &active);

}  // namespace expsum_detail

}  // namespace stabsim

#endif
