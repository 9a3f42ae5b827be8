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

#ifndef STABSIM_CHFORM_H
#define STABSIM_CHFORM_H

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "stabsim/bits.h"
#include "stabsim/gates.h"
#include "stabsim/rng.h"

namespace stabsim {

/// Exact scalar e^{i pi q/4} * 2^{p/2}, or zero.
struct GlobalPhase {
    bool zero = false;
    uint8_t q = 0;
    int p = 0;

    static GlobalPhase one() {
        return {};
    }
    static GlobalPhase zero_value() {
        return {true, 0, 0};
    }
    static GlobalPhase from(int eighths, int sqrt2_power) {
        return {false, (uint8_t)(eighths & 7), sqrt2_power};
    }

    std::complex<double> value() const;
    GlobalPhase conj() const;
    void mul_eighth(int k) {
        if (!zero) {
            q = (uint8_t)((q + k) & 7);
        }
    }
    void mul_sqrt2(int k) {
        if (!zero) {
            p += k;
        }
    }
    void set_zero() {
        *this = zero_value();
    }
    GlobalPhase &operator*=(const GlobalPhase &other);
    GlobalPhase operator*(const GlobalPhase &other) const;
    bool operator==(const GlobalPhase &other) const = default;
    std::string str() const;
};

/// i^phase X(x) Z(z), with the X-part to the left of the Z-part.
struct PauliString {
    BitVec x;
    BitVec z;
    uint8_t phase = 0;

    PauliString() = default;
    explicit PauliString(size_t n) : x(n), z(n) {
    }
    /// Parses "+XIZY", "-iZZ", "XX" (character k acts on qubit k).
    static PauliString parse(std::string_view text);
    static PauliString single(size_t n, size_t q, char pauli);

    size_t size() const {
        return x.size();
    }
    /// this <- this * other
    PauliString &operator*=(const PauliString &other);
    bool is_hermitian() const;
    bool operator==(const PauliString &other) const = default;
    std::string str() const;
};

/// Phase-sensitive stabilizer state omega * U_C * U_H |s>.
///
/// U_C fixes |0^n> and is described by its conjugation tableau:
///   U_C^-1 Z_p U_C = prod_j Z_j^{G_pj}
///   U_C^-1 X_p U_C = i^{gamma_p} prod_j X_j^{F_pj} Z_j^{M_pj}
/// U_H is a layer of Hadamards on the qubits j with v_j = 1.
class CHForm {
   public:
    CHForm() = default;
    explicit CHForm(size_t n);
    static CHForm init_zero(size_t n) {
        return CHForm(n);
    }

    size_t num_qubits() const {
        return n_;
    }
    bool is_zero() const {
        return omega_.zero;
    }

    void apply_gate(Gate gate, std::span<const size_t> qubits);
    void apply_gate(Gate gate, std::initializer_list<size_t> qubits) {
        apply_gate(gate, std::span<const size_t>(qubits.begin(), qubits.size()));
    }
    void apply_h(size_t q);
    void apply_s(size_t q);
    void apply_sdg(size_t q);
    void apply_z(size_t q);
    void apply_x(size_t q);
    void apply_y(size_t q);
    void apply_cx(size_t control, size_t target);
    void apply_cz(size_t a, size_t b);

    void apply_pauli(const PauliString &pauli);
    /// this <- (I + sign * P)/2 this. Sets the zero flag if the result vanishes.
    void apply_projector(const PauliString &pauli, int sign);
    /// Multiplies the state by an exact scalar.
    void scale(const GlobalPhase &factor) {
        omega_ *= factor;
    }

    GlobalPhase amplitude(const BitVec &x) const;
    BitVec sample_basis(Rng &rng) const;

    /// U_C^-1 X_p U_C as a Pauli string.
    PauliString conjugated_x(size_t p) const;
    /// U_C^-1 P U_C.
    PauliString conjugate_through_c(const PauliString &pauli) const;

    const BitMatrix &F() const {
        return F_;
    }
    const BitMatrix &G() const {
        return G_;
    }
    const BitMatrix &M() const {
        return M_;
    }
    const PhaseVecZ4 &gamma() const {
        return gamma_;
    }
    const BitVec &v() const {
        return v_;
    }
    const BitVec &s() const {
        return s_;
    }
    const GlobalPhase &omega() const {
        return omega_;
    }

    /// FG^T = I and MF^T symmetric.
    bool invariants_hold() const;
    bool operator==(const CHForm &other) const = default;

    nlohmann::json to_json() const;
    static CHForm from_json(const nlohmann::json &j);

   private:
    void check_qubit(size_t q) const;

    void right_s(size_t q);
    void right_cx_fanout(size_t control, const BitVec &targets);
    void right_cx_fanin(const BitVec &controls, size_t target);
    void right_cz_fanout(size_t q, const BitVec &others);

    /// U_C U_H (|t> + i^delta |u>) = omega' U_C' U_H' |s'>; updates everything except the prefactor bookkeeping
    /// outside the returned phase, which is multiplied into omega.
    void absorb_pair(const BitVec &t, const BitVec &u, int delta);

    /// Applies U_H (U_C^-1 P U_C) U_H to |s> : returns phase exponent (of i) and the flip mask.
    int pauli_on_s(const PauliString &conjugated, BitVec &flip) const;

    size_t n_ = 0;
    BitMatrix F_, G_, M_;
    PhaseVecZ4 gamma_;
    BitVec v_, s_;
    GlobalPhase omega_;
};

}  // namespace stabsim

#endif
