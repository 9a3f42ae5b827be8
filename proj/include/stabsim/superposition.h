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

#ifndef STABSIM_SUPERPOSITION_H
#define STABSIM_SUPERPOSITION_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabsim/chform.h"
#include "stabsim/circuit.h"
#include "stabsim/decompose.h"
#include "stabsim/dense.h"
#include "stabsim/expsum.h"
#include "stabsim/rng.h"

namespace stabsim {

struct SuperpositionTerm {
    std::complex<double> coeff;
    CHForm state;
};

/// sum_alpha b_alpha |phi_alpha>.
class StabilizerSuperposition {
   public:
    StabilizerSuperposition() = default;
    explicit StabilizerSuperposition(size_t n) : n_(n) {
    }

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<SuperpositionTerm> &terms() const {
        return terms_;
    }
    size_t size() const {
        return terms_.size();
    }
    bool empty() const {
        return terms_.empty();
    }

    /// Zero-flagged states and zero coefficients are dropped.
    void add(std::complex<double> coeff, CHForm state);

    /// ||c||_1 of the decomposition this superposition was sampled from.
    double l1_norm = 1;
    /// Target sparsification error, 0 when exact.
    double delta = 0;

    /// Applies (I + (-1)^bit Z_q)/2 to every term and drops vanishing ones.
    void apply_projector_all(size_t q, bool bit);
    /// Applies a native Clifford gate to every term.
    void apply_gate_all(Gate gate, std::span<const size_t> qubits);

    /// Folds omega into the coefficient and merges terms whose tableaux coincide.
    /// Represents the same vector with fewer terms.
    void compact();

    /// Statevector of the superposition (oracle-sized n only).
    DenseState to_dense() const;

   private:
    size_t n_ = 0;
    std::vector<SuperpositionTerm> terms_;
};

/// 2^{-n/2} sum_x i^{x A x^T} |x>.
struct EquatorialState {
    QuadFormZ4 A;
};

EquatorialState random_equatorial(size_t n, Rng &rng);

/// Statevector of an equatorial state (oracle-sized n only).
DenseState equatorial_dense(const EquatorialState &e);

/// Term data reused across many equatorial probes.
class PreparedTerm {
   public:
    PreparedTerm() = default;
    PreparedTerm(const CHForm &state, std::complex<double> coeff = 1.0);

    /// <phi|phi_A> times conj(coeff).
    std::complex<double> overlap(const EquatorialState &e) const;
    /// Same value through the multi-word path used above 63 qubits.
    std::complex<double> overlap_reference(const EquatorialState &e) const;

    size_t num_qubits() const {
        return n_;
    }

   private:
    std::complex<double> overlap_small(const EquatorialState &e) const;
    static BitMatrix &scratch_koff(size_t n);
    static std::vector<uint8_t> &scratch_diag(size_t n);

    size_t n_ = 0;
    BitMatrix g_;
    BitMatrix gt_;
    /// M F^T with zero diagonal.
    BitMatrix j_;
    std::vector<uint8_t> gamma_;
    BitVec v_;
    BitVec s_;
    /// conj(coeff * omega) 2^{-(n+|v|)/2} (-1)^{s.v}
    std::complex<double> prefactor_;
};

/// <phi|phi_A>.
std::complex<double> inner_equatorial(const CHForm &phi, const EquatorialState &e);

struct NormOptions {
    double eps = 0.1;
    double p_fail = 0.05;
    size_t workers = 1;
    /// Overrides the batch count derived from p_fail when nonzero.
    size_t batches = 0;
    /// Overrides the batch size derived from eps when nonzero.
    size_t batch_size = 0;
};

/// ceil(4 / eps^2)
size_t norm_batch_size(double eps);
/// 2 ceil(3 log2(1/p_fail)) + 1
size_t norm_batch_count(double p_fail);

/// Median over batches of the mean of 2^n |<phi_A|psi>|^2.
double estimate_norm(const StabilizerSuperposition &psi, const NormOptions &options, uint64_t seed);

/// Raw unbiased samples 2^n |<phi_A|psi>|^2 for independent random A.
std::vector<double> norm_samples(const StabilizerSuperposition &psi, size_t count, uint64_t seed);

/// Applies a Clifford-only circuit, qubit j of the circuit acting on qubits[j].
void apply_clifford(CHForm &state, const Circuit &circuit, std::span<const size_t> qubits);
void apply_clifford(CHForm &state, const Circuit &circuit);

/// Omega = (||c||_1 / k) sum_alpha |omega_alpha>, one independent Clifford path per term.
StabilizerSuperposition build_sparse_sum_over_cliffords(const Circuit &circuit, const DecompositionRegistry &registry,
                                                        size_t k, Rng &rng);

/// Exact sum over all Clifford paths (exponential in the non-Clifford count).
StabilizerSuperposition build_exact_sum_over_cliffords(const Circuit &circuit, const DecompositionRegistry &registry);

/// prod_p ||c^{(p)}||_1 over the non-Clifford gates.
double circuit_l1_norm(const Circuit &circuit, const DecompositionRegistry &registry);

/// k = max(1, floor((l1 / delta)^2)).
size_t choose_k(double l1_norm, double delta);

/// Upper bound estimate <Omega|Omega> - 1 + delta^2 on ||psi - Omega||^2.
double tail_check(const StabilizerSuperposition &omega, double delta, const NormOptions &options, uint64_t seed);

}  // namespace stabsim

#endif
