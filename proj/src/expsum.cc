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

#include "stabsim/expsum.h"

#include <cmath>
#include <stdexcept>

namespace stabsim {

void QuadFormZ4::set_off(size_t a, size_t b, bool value) {
    if (a == b) {
        throw std::invalid_argument("off-diagonal entry needs a != b");
    }
    off_.set(a, b, value);
    off_.set(b, a, value);
}

int QuadFormZ4::value(const BitVec &x) const {
    if (x.size() != size()) {
        throw std::invalid_argument("QuadFormZ4::value: length mismatch");
    }
    int total = 0;
    size_t w = off_.stride();
    words::for_each_one(x.data(), w, [&](size_t a) {
        total += diag_[a] + (int)words::and_popcount(off_.row(a), x.data(), w);
    });
    return total & 3;
}

bool QuadFormZ2::value(const BitVec &x) const {
    if (x.size() != size()) {
        throw std::invalid_argument("QuadFormZ2::value: length mismatch");
    }
    bool total = dot(L, x);
    words::for_each_one(x.data(), x.num_words(), [&](size_t a) {
        total ^= words::and_parity(M.row(a), x.data(), x.num_words());
    });
    return total;
}

double SignedPow2::value() const {
    return sign == 0 ? 0.0 : sign * std::ldexp(1.0, power);
}

namespace expsum_detail {

void eliminate(BitMatrix &S, BitVec active, std::vector<BitVec> &linear, std::vector<SignedPow2> &out) {
    const size_t n = S.rows();
    const size_t w = S.stride();
    const size_t nl = linear.size();
    std::vector<int> sign(nl, 1);
    int power = 0;
    std::vector<uint64_t> m1(w), m2(w);

    while (true) {
        size_t i = n, j = n;
        words::for_each_one(active.data(), w, [&](size_t a) {
            if (i != n) {
                return;
            }
            const uint64_t *row = S.row(a);
            for (size_t k = 0; k < w; k++) {
                uint64_t hit = row[k] & active.data()[k];
                if (hit) {
                    i = a;
                    j = (k << 6) + std::countr_zero(hit);
                    return;
                }
            }
        });
        if (i == n) {
            break;
        }
        for (size_t k = 0; k < w; k++) {
            m1[k] = S.row(i)[k] & active.data()[k];
            m2[k] = S.row(j)[k] & active.data()[k];
        }
        words::assign(m1.data(), i, false);
        words::assign(m1.data(), j, false);
        words::assign(m2.data(), i, false);
        words::assign(m2.data(), j, false);
        power++;
        for (size_t l = 0; l < nl; l++) {
            uint64_t *L = linear[l].data();
            bool c1 = words::get(L, i), c2 = words::get(L, j);
            if (c1 && c2) {
                sign[l] = -sign[l];
            }
            for (size_t k = 0; k < w; k++) {
                L[k] ^= (m1[k] & m2[k]) ^ (c1 ? m2[k] : 0) ^ (c2 ? m1[k] : 0);
            }
        }
        words::for_each_one(m1.data(), w, [&](size_t a) {
            words::xor_into(S.row(a), m2.data(), w);
        });
        words::for_each_one(m2.data(), w, [&](size_t a) {
            words::xor_into(S.row(a), m1.data(), w);
        });
        words::assign(active.data(), i, false);
        words::assign(active.data(), j, false);
    }

    int remaining = (int)active.popcount();
    out.assign(nl, SignedPow2{});
    for (size_t l = 0; l < nl; l++) {
        bool live = false;
        for (size_t k = 0; k < w; k++) {
            live |= (linear[l].data()[k] & active.data()[k]) != 0;
        }
        if (!live) {
            out[l] = {sign[l], power + remaining};
        }
    }
}

namespace {

// Same elimination for at most 64 variables, one machine word per row.
void eliminate_small(uint64_t *S, uint64_t active, uint64_t *linear, size_t nl, int *sign, int &power) {
    power = 0;
    for (size_t l = 0; l < nl; l++) {
        sign[l] = 1;
    }
    while (true) {
        uint64_t scan = active;
        size_t i = 64, j = 64;
        while (scan) {
            size_t a = (size_t)std::countr_zero(scan);
            uint64_t hit = S[a] & active;
            if (hit) {
                i = a;
                j = (size_t)std::countr_zero(hit);
                break;
            }
            scan &= scan - 1;
        }
        if (i == 64) {
            break;
        }
        uint64_t clear = ~((uint64_t{1} << i) | (uint64_t{1} << j));
        uint64_t m1 = S[i] & active & clear;
        uint64_t m2 = S[j] & active & clear;
        power++;
        for (size_t l = 0; l < nl; l++) {
            uint64_t L = linear[l];
            bool c1 = (L >> i) & 1, c2 = (L >> j) & 1;
            if (c1 && c2) {
                sign[l] = -sign[l];
            }
            linear[l] = L ^ (m1 & m2) ^ (c1 ? m2 : 0) ^ (c2 ? m1 : 0);
        }
        for (uint64_t r = m1; r; r &= r - 1) {
            S[std::countr_zero(r)] ^= m2;
        }
        for (uint64_t r = m2; r; r &= r - 1) {
            S[std::countr_zero(r)] ^= m1;
        }
        active &= clear;
    }
    power += std::popcount(active);
    for (size_t l = 0; l < nl; l++) {
        if (linear[l] & active) {
            sign[l] = 0;
        }
    }
}

GaussianPow2 expsum_z4_small(const BitMatrix &off, const std::vector<uint8_t> &diag, const BitVec &active) {
    const size_t n = diag.size();
    const uint64_t act = n ? active.data()[0] : 0;
    uint64_t kappa = 0, lin = 0;
    for (uint64_t r = act; r; r &= r - 1) {
        size_t a = (size_t)std::countr_zero(r);
        kappa |= (uint64_t)(diag[a] & 1) << a;
        lin |= (uint64_t)((diag[a] >> 1) & 1) << a;
    }
    uint64_t S[64];
    const uint64_t extra = uint64_t{1} << n;
    for (uint64_t r = act; r; r &= r - 1) {
        size_t a = (size_t)std::countr_zero(r);
        uint64_t row = off.row(a)[0];
        if ((kappa >> a) & 1) {
            row ^= kappa | extra;
        }
        S[a] = row & ~(uint64_t{1} << a);
    }
    S[n] = kappa;
    uint64_t linear[2] = {lin, lin | extra};
    int sign[2];
    int power;
    eliminate_small(S, act | extra, linear, 2, sign, power);
    GaussianPow2 result;
    SignedPow2 *parts[2] = {&result.re, &result.im};
    for (int part = 0; part < 2; part++) {
        if (sign[part] != 0) {
            if (power == 0) {
                throw std::logic_error("exponential sum produced a half-integer");
            }
            *parts[part] = {sign[part], power - 1};
        }
    }
    return result;
}

}  // namespace

GaussianPow2 expsum_z4_masked(const BitMatrix &off, const std::vector<uint8_t> &diag, const BitVec &active) {
    const size_t n = diag.size();
    if (n < 64) {
        return expsum_z4_small(off, diag, active);
    }
    const size_t extra = n;
    BitMatrix S(n + 1, n + 1);
    BitVec act(n + 1);
    BitVec kappa(n + 1);
    BitVec lin(n + 1);
    const size_t w_in = off.stride();
    for (size_t a = 0; a < n; a++) {
        if (!active[a]) {
            continue;
        }
        act.set(a, true);
        if (diag[a] & 1) {
            kappa.set(a, true);
        }
        if (diag[a] & 2) {
            lin.set(a, true);
        }
    }
    const size_t w = S.stride();
    for (size_t a = 0; a < n; a++) {
        if (!active[a]) {
            continue;
        }
        uint64_t *row = S.row(a);
        std::copy(off.row(a), off.row(a) + w_in, row);
        if (kappa[a]) {
            words::xor_into(row, kappa.data(), w);
            words::flip(row, extra);
        }
        words::assign(row, a, false);
    }
    std::copy(kappa.data(), kappa.data() + w, S.row(extra));
    act.set(extra, true);

    std::vector<BitVec> linear{lin, lin};
    linear[1].set(extra, true);
    std::vector<SignedPow2> sums;
    eliminate(S, act, linear, sums);

    GaussianPow2 result;
    for (int part = 0; part < 2; part++) {
        SignedPow2 half = sums[part];
        if (half.sign != 0) {
            if (half.power == 0) {
                throw std::logic_error("exponential sum produced a half-integer");
            }
            half.power--;
        }
        (part == 0 ? result.re : result.im) = half;
    }
    return result;
}

}  // namespace expsum_detail

SignedPow2 expsum_z2(const QuadFormZ2 &q) {
    const size_t m = q.size();
    if (q.M.rows() != m || q.M.cols() != m) {
        throw std::invalid_argument("expsum_z2: quadratic part must be m x m");
    }
    if (m == 0) {
        return {1, 0};
    }
    BitMatrix S = q.M.transposed();
    for (size_t a = 0; a < m; a++) {
        words::xor_into(S.row(a), q.M.row(a), S.stride());
    }
    BitVec L = q.L;
    for (size_t a = 0; a < m; a++) {
        if (q.M.bit(a, a)) {
            L.flip(a);
        }
        words::assign(S.row(a), a, false);
    }
    BitVec active = ~BitVec(m);
    std::vector<BitVec> linear{L};
    std::vector<SignedPow2> out;
    expsum_detail::eliminate(S, active, linear, out);
    return out[0];
}

GaussianPow2 expsum_z4(const QuadFormZ4 &b) {
    if (b.size() == 0) {
        return {{1, 0}, {0, 0}};
    }
    return expsum_detail::expsum_z4_masked(b.off_matrix(), b.diag_vector().values(), ~BitVec(b.size()));
}

}  // namespace stabsim
