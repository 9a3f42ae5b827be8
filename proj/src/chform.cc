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

#include "stabsim/chform.h"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stabsim {

std::complex<double> GlobalPhase::value() const {
    if (zero) {
        return 0.0;
    }
    static const std::array<std::complex<double>, 8> roots = [] {
        std::array<std::complex<double>, 8> r;
        double h = std::numbers::sqrt2 / 2;
        r = {{{1, 0}, {h, h}, {0, 1}, {-h, h}, {-1, 0}, {-h, -h}, {0, -1}, {h, -h}}};
        return r;
    }();
    double magnitude = std::ldexp(1.0, p / 2);
    if (p & 1) {
        magnitude *= (p > 0) ? std::numbers::sqrt2 : std::numbers::sqrt2 / 2;
    }
    return roots[q] * magnitude;
}

GlobalPhase GlobalPhase::conj() const {
    GlobalPhase r = *this;
    r.q = (uint8_t)((8 - q) & 7);
    return r;
}

GlobalPhase &GlobalPhase::operator*=(const GlobalPhase &other) {
    if (zero || other.zero) {
        set_zero();
    } else {
        q = (uint8_t)((q + other.q) & 7);
        p += other.p;
    }
    return *this;
}

GlobalPhase GlobalPhase::operator*(const GlobalPhase &other) const {
    GlobalPhase r = *this;
    r *= other;
    return r;
}

std::string GlobalPhase::str() const {
    if (zero) {
        return "0";
    }
    return "exp(i*pi*" + std::to_string(q) + "/4)*2^(" + std::to_string(p) + "/2)";
}

PauliString PauliString::parse(std::string_view text) {
    uint8_t phase = 0;
    size_t k = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        if (text[k] == '-') {
            phase = 2;
        }
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        phase += 1;
        k++;
    }
    PauliString result(text.size() - k);
    result.phase = phase;
    for (size_t q = 0; k < text.size(); k++, q++) {
        switch (text[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                result.x.set(q, true);
                break;
            case 'Z':
                result.z.set(q, true);
                break;
            case 'Y':
                result.x.set(q, true);
                result.z.set(q, true);
                result.phase += 1;
                break;
            default:
                throw std::invalid_argument("bad Pauli character '" + std::string(1, text[k]) + "'");
        }
    }
    result.phase &= 3;
    return result;
}

PauliString PauliString::single(size_t n, size_t q, char pauli) {
    std::string text(n, 'I');
    if (q >= n) {
        throw std::out_of_range("Pauli qubit out of range");
    }
    text[q] = pauli;
    return parse(text);
}

PauliString &PauliString::operator*=(const PauliString &other) {
    bool sign = dot(z, other.x);
    phase = (uint8_t)((phase + other.phase + 2 * sign) & 3);
    x ^= other.x;
    z ^= other.z;
    return *this;
}

bool PauliString::is_hermitian() const {
    return (phase & 1) == (uint8_t)((x & z).popcount() & 1);
}

std::string PauliString::str() const {
    int e = phase;
    std::string body(size(), 'I');
    for (size_t q = 0; q < size(); q++) {
        if (x[q] && z[q]) {
            body[q] = 'Y';
            e -= 1;
        } else if (x[q]) {
            body[q] = 'X';
        } else if (z[q]) {
            body[q] = 'Z';
        }
    }
    static const char *prefixes[] = {"+", "+i", "-", "-i"};
    return prefixes[e & 3] + body;
}

CHForm::CHForm(size_t n)
    : n_(n),
      F_(BitMatrix::identity(n)),
      G_(BitMatrix::identity(n)),
      M_(n, n),
      gamma_(n),
      v_(n),
      s_(n),
      omega_(GlobalPhase::one()) {
    if (n == 0) {
        throw std::invalid_argument("CHForm needs at least one qubit");
    }
}

void CHForm::check_qubit(size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                " qubits");
    }
}

void CHForm::apply_gate(Gate gate, std::span<const size_t> qubits) {
    if (qubits.size() != gate_arity(gate)) {
        throw std::invalid_argument(std::string(gate_name(gate)) + " expects " +
                                    std::to_string(gate_arity(gate)) + " qubits");
    }
    for (size_t k = 0; k < qubits.size(); k++) {
        check_qubit(qubits[k]);
        for (size_t j = 0; j < k; j++) {
            if (qubits[j] == qubits[k]) {
                throw std::invalid_argument("repeated qubit in " + std::string(gate_name(gate)));
            }
        }
    }
    switch (gate) {
        case Gate::I:
            return;
        case Gate::X:
            return apply_x(qubits[0]);
        case Gate::Y:
            return apply_y(qubits[0]);
        case Gate::Z:
            return apply_z(qubits[0]);
        case Gate::H:
            return apply_h(qubits[0]);
        case Gate::S:
            return apply_s(qubits[0]);
        case Gate::SDG:
            return apply_sdg(qubits[0]);
        case Gate::CX:
            return apply_cx(qubits[0], qubits[1]);
        case Gate::CZ:
            return apply_cz(qubits[0], qubits[1]);
        default:
            throw std::invalid_argument(std::string(gate_name(gate)) + " is not a native Clifford gate");
    }
}

void CHForm::apply_s(size_t q) {
    check_qubit(q);
    words::xor_into(M_.row(q), G_.row(q), M_.stride());
    gamma_.add(q, -1);
}

void CHForm::apply_sdg(size_t q) {
    check_qubit(q);
    words::xor_into(M_.row(q), G_.row(q), M_.stride());
    gamma_.add(q, 1);
}

void CHForm::apply_z(size_t q) {
    check_qubit(q);
    gamma_.add(q, 2);
}

void CHForm::apply_x(size_t q) {
    check_qubit(q);
    apply_pauli(PauliString::single(n_, q, 'X'));
}

void CHForm::apply_y(size_t q) {
    check_qubit(q);
    apply_pauli(PauliString::single(n_, q, 'Y'));
}

void CHForm::apply_cz(size_t a, size_t b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    words::xor_into(M_.row(a), G_.row(b), M_.stride());
    words::xor_into(M_.row(b), G_.row(a), M_.stride());
}

void CHForm::apply_cx(size_t q, size_t r) {
    check_qubit(q);
    check_qubit(r);
    if (q == r) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    bool mf = words::and_parity(M_.row(q), F_.row(r), F_.stride());
    gamma_.add(q, gamma_[r] + 2 * mf);
    G_.xor_row(r, q);
    F_.xor_row(q, r);
    M_.xor_row(q, r);
}

void CHForm::right_s(size_t q) {
    for (size_t p = 0; p < n_; p++) {
        if (F_.bit(p, q)) {
            words::flip(M_.row(p), q);
            gamma_.add(p, -1);
        }
    }
}

void CHForm::right_cx_fanout(size_t q, const BitVec &targets) {
    size_t w = F_.stride();
    for (size_t p = 0; p < n_; p++) {
        if (words::and_parity(G_.row(p), targets.data(), w)) {
            words::flip(G_.row(p), q);
        }
        if (words::and_parity(M_.row(p), targets.data(), w)) {
            words::flip(M_.row(p), q);
        }
        if (F_.bit(p, q)) {
            words::xor_into(F_.row(p), targets.data(), w);
        }
    }
}

void CHForm::right_cz_fanout(size_t q, const BitVec &others) {
    size_t w = F_.stride();
    for (size_t p = 0; p < n_; p++) {
        size_t overlap = words::and_popcount(F_.row(p), others.data(), w);
        if (overlap & 1) {
            words::flip(M_.row(p), q);
        }
        if (F_.bit(p, q)) {
            words::xor_into(M_.row(p), others.data(), w);
            gamma_.add(p, 2 * (int)(overlap & 1));
        }
    }
}

void CHForm::right_cx_fanin(const BitVec &controls, size_t q) {
    size_t w = F_.stride();
    for (size_t p = 0; p < n_; p++) {
        if (G_.bit(p, q)) {
            words::xor_into(G_.row(p), controls.data(), w);
        }
        if (words::and_parity(F_.row(p), controls.data(), w)) {
            words::flip(F_.row(p), q);
        }
        if (M_.bit(p, q)) {
            words::xor_into(M_.row(p), controls.data(), w);
        }
    }
}

namespace {

/// H^{v} (|y> + i^delta |1-y>) = omega S^a H^b |c>, indexed by y*8 + delta*2 + v.
struct QubitIdentity {
    uint8_t eighths;
    uint8_t a, b, c;
};

constexpr std::array<QubitIdentity, 16> kQubitIdentities{{
    // y = 0
    {0, 0, 1, 0},
    {0, 0, 0, 0},
    {0, 1, 1, 0},
    {1, 1, 1, 1},
    {0, 0, 1, 1},
    {0, 0, 0, 1},
    {0, 1, 1, 1},
    {7, 1, 1, 0},
    // y = 1
    {0, 0, 1, 0},
    {0, 0, 0, 0},
    {2, 1, 1, 1},
    {1, 1, 1, 0},
    {4, 0, 1, 1},
    {4, 0, 0, 1},
    {6, 1, 1, 0},
    {7, 1, 1, 1},
}};

}  // namespace

void CHForm::absorb_pair(const BitVec &t, const BitVec &u, int delta) {
    delta &= 3;
    if (t == u) {
        s_ = t;
        switch (delta) {
            case 0:
                omega_.mul_sqrt2(2);
                break;
            case 1:
                omega_.mul_sqrt2(1);
                omega_.mul_eighth(1);
                break;
            case 2:
                omega_.set_zero();
                break;
            default:
                omega_.mul_sqrt2(1);
                omega_.mul_eighth(-1);
                break;
        }
        return;
    }

    BitVec diff = t ^ u;
    BitVec v0 = diff & ~v_;
    BitVec v1 = diff & v_;
    size_t q;
    if (v0.any()) {
        q = v0.first_one();
        v0.flip(q);
        if (v0.any()) {
            right_cx_fanout(q, v0);
        }
        if (v1.any()) {
            right_cz_fanout(q, v1);
        }
    } else {
        q = v1.first_one();
        v1.flip(q);
        if (v1.any()) {
            right_cx_fanin(v1, q);
        }
    }

    BitVec y = t[q] ? u : t;
    if (t[q]) {
        y.flip(q);
    }
    bool yq = t[q];
    const QubitIdentity &id = kQubitIdentities[yq * 8 + delta * 2 + v_[q]];
    if (id.a) {
        right_s(q);
    }
    omega_.mul_eighth(id.eighths);
    omega_.mul_sqrt2(1);
    y.set(q, id.c);
    s_ = std::move(y);
    v_.set(q, id.b);
}

void CHForm::apply_h(size_t p) {
    check_qubit(p);
    if (omega_.zero) {
        return;
    }
    size_t w = F_.stride();
    BitVec not_v = ~v_;

    BitVec t = s_;
    words::xor_into_masked(t.data(), G_.row(p), v_.data(), w);
    BitVec u = s_;
    words::xor_into_masked(u.data(), F_.row(p), not_v.data(), w);
    words::xor_into_masked(u.data(), M_.row(p), v_.data(), w);

    BitVec sv = s_ & not_v;
    BitVec fv = s_ & v_;
    bool alpha = words::and_parity(G_.row(p), sv.data(), w);
    bool beta = words::and_parity(M_.row(p), sv.data(), w) ^ words::and_parity(F_.row(p), fv.data(), w);
    uint64_t acc = 0;
    for (size_t k = 0; k < w; k++) {
        acc ^= F_.row(p)[k] & M_.row(p)[k] & v_.data()[k];
    }
    beta ^= std::popcount(acc) & 1;

    int delta = gamma_[p] + 2 * ((int)alpha + (int)beta);
    omega_.mul_eighth(4 * alpha);
    omega_.mul_sqrt2(-1);
    absorb_pair(t, u, delta);
}

PauliString CHForm::conjugated_x(size_t p) const {
    check_qubit(p);
    PauliString r(n_);
    std::copy(F_.row(p), F_.row(p) + F_.stride(), r.x.data());
    std::copy(M_.row(p), M_.row(p) + M_.stride(), r.z.data());
    r.phase = gamma_[p];
    return r;
}

PauliString CHForm::conjugate_through_c(const PauliString &pauli) const {
    if (pauli.size() != n_) {
        throw std::invalid_argument("Pauli length does not match qubit count");
    }
    size_t w = F_.stride();
    PauliString r(n_);
    r.phase = pauli.phase;
    words::for_each_one(pauli.x.data(), w, [&](size_t p) {
        bool sign = words::and_parity(r.z.data(), F_.row(p), w);
        r.phase = (uint8_t)((r.phase + gamma_[p] + 2 * sign) & 3);
        words::xor_into(r.x.data(), F_.row(p), w);
        words::xor_into(r.z.data(), M_.row(p), w);
    });
    words::for_each_one(pauli.z.data(), w, [&](size_t p) {
        words::xor_into(r.z.data(), G_.row(p), w);
    });
    return r;
}

int CHForm::pauli_on_s(const PauliString &c, BitVec &flip) const {
    BitVec not_v = ~v_;
    BitVec a = (c.x & not_v) | (c.z & v_);
    BitVec b = (c.z & not_v) | (c.x & v_);
    int e = c.phase + 2 * (int)((c.x & c.z & v_).popcount() & 1) + 2 * (int)dot(b, s_);
    flip = std::move(a);
    return e & 3;
}

void CHForm::apply_pauli(const PauliString &pauli) {
    if (omega_.zero) {
        return;
    }
    BitVec flip;
    int e = pauli_on_s(conjugate_through_c(pauli), flip);
    s_ ^= flip;
    omega_.mul_eighth(2 * e);
}

void CHForm::apply_projector(const PauliString &pauli, int sign) {
    if (!pauli.is_hermitian()) {
        throw std::invalid_argument("projector needs a Hermitian Pauli");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("projector sign must be +1 or -1");
    }
    if (omega_.zero) {
        return;
    }
    BitVec flip;
    int e = pauli_on_s(conjugate_through_c(pauli), flip);
    if (sign < 0) {
        e += 2;
    }
    BitVec t = s_;
    BitVec u = s_ ^ flip;
    omega_.mul_sqrt2(-2);
    absorb_pair(t, u, e);
}

GlobalPhase CHForm::amplitude(const BitVec &x) const {
    if (x.size() != n_) {
        throw std::invalid_argument("amplitude: bit string length does not match qubit count");
    }
    if (omega_.zero) {
        return GlobalPhase::zero_value();
    }
    size_t w = F_.stride();
    BitVec a(n_), b(n_);
    int mu = 0;
    words::for_each_one(x.data(), w, [&](size_t p) {
        mu += gamma_[p] + 2 * (int)words::and_parity(b.data(), F_.row(p), w);
        words::xor_into(a.data(), F_.row(p), w);
        words::xor_into(b.data(), M_.row(p), w);
    });
    BitVec mismatch = (a ^ s_) & ~v_;
    if (mismatch.any()) {
        return GlobalPhase::zero_value();
    }
    mu += 2 * (int)dot(a, b) + 2 * (int)words::and_parity((a & v_).data(), s_.data(), w);
    GlobalPhase r = omega_;
    r.mul_eighth(2 * mu);
    r.mul_sqrt2(-(int)v_.popcount());
    return r;
}

BitVec CHForm::sample_basis(Rng &rng) const {
    if (omega_.zero) {
        throw std::invalid_argument("cannot sample from the zero state");
    }
    BitVec w = s_;
    size_t nw = w.num_words();
    for (size_t k = 0; k < nw; k++) {
        w.data()[k] ^= rng() & v_.data()[k];
    }
    BitVec x(n_);
    for (size_t i = 0; i < n_; i++) {
        if (words::and_parity(G_.row(i), w.data(), nw)) {
            words::flip(x.data(), i);
        }
    }
    return x;
}

bool CHForm::invariants_hold() const {
    if (matmul_f2(F_, G_.transposed()) != BitMatrix::identity(n_)) {
        return false;
    }
    return matmul_f2(M_, F_.transposed()).is_symmetric();
}

namespace {

std::string row_to_hex(const BitMatrix &m, size_t r) {
    static const char *digits = "0123456789abcdef";
    std::string out;
    for (size_t c = 0; c < m.cols(); c += 4) {
        int nibble = 0;
        for (size_t k = 0; k < 4; k++) {
            nibble <<= 1;
            if (c + k < m.cols() && m.bit(r, c + k)) {
                nibble |= 1;
            }
        }
        out += digits[nibble];
    }
    return out;
}

BitMatrix matrix_from_hex(const nlohmann::json &rows, size_t n) {
    if (!rows.is_array() || rows.size() != n) {
        throw std::invalid_argument("CH-form JSON: matrix must have n rows");
    }
    BitMatrix m(n, n);
    for (size_t r = 0; r < n; r++) {
        std::string hex = rows[r].get<std::string>();
        if (hex.size() != (n + 3) / 4) {
            throw std::invalid_argument("CH-form JSON: bad row length");
        }
        for (size_t d = 0; d < hex.size(); d++) {
            int nibble = std::stoi(std::string(1, hex[d]), nullptr, 16);
            for (size_t k = 0; k < 4; k++) {
                size_t c = 4 * d + k;
                if ((nibble >> (3 - k)) & 1) {
                    if (c >= n) {
                        throw std::invalid_argument("CH-form JSON: padding bits must be zero");
                    }
                    m.set(r, c, true);
                }
            }
        }
    }
    return m;
}

}  // namespace

nlohmann::json CHForm::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    for (auto [key, mat] : {std::pair{"F", &F_}, std::pair{"G", &G_}, std::pair{"M", &M_}}) {
        auto rows = nlohmann::json::array();
        for (size_t r = 0; r < n_; r++) {
            rows.push_back(row_to_hex(*mat, r));
        }
        j[key] = rows;
    }
    j["gamma"] = gamma_.values();
    j["v"] = v_.str();
    j["s"] = s_.str();
    j["omega"] = {{"q", omega_.q}, {"p", omega_.p}, {"zero", omega_.zero}};
    return j;
}

CHForm CHForm::from_json(const nlohmann::json &j) {
    size_t n = j.at("n").get<size_t>();
    CHForm r(n);
    r.F_ = matrix_from_hex(j.at("F"), n);
    r.G_ = matrix_from_hex(j.at("G"), n);
    r.M_ = matrix_from_hex(j.at("M"), n);
    auto gamma = j.at("gamma").get<std::vector<int>>();
    if (gamma.size() != n) {
        throw std::invalid_argument("CH-form JSON: gamma must have n entries");
    }
    for (size_t k = 0; k < n; k++) {
        r.gamma_.set(k, gamma[k]);
    }
    r.v_ = BitVec::from_string(j.at("v").get<std::string>());
    r.s_ = BitVec::from_string(j.at("s").get<std::string>());
    if (r.v_.size() != n || r.s_.size() != n) {
        throw std::invalid_argument("CH-form JSON: v and s must have n bits");
    }
    const auto &w = j.at("omega");
    r.omega_.zero = w.at("zero").get<bool>();
    r.omega_.q = (uint8_t)(w.at("q").get<int>() & 7);
    r.omega_.p = w.at("p").get<int>();
    return r;
}

}  // namespace stabsim
