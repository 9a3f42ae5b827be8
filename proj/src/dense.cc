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

#include "stabsim/dense.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stabsim {

using cd = std::complex<double>;

size_t max_dense_qubits() {
    const char *env = std::getenv("STABSIM_MAX_DENSE_QUBITS");
    if (env != nullptr && *env != '\0') {
        return (size_t)std::stoul(env);
    }
    return 14;
}

DenseState DenseState::zero(size_t n) {
    if (n > max_dense_qubits()) {
        throw std::invalid_argument("dense oracle capped at " + std::to_string(max_dense_qubits()) +
                                    " qubits (requested " + std::to_string(n) + ")");
    }
    DenseState s{n, Amplitudes(size_t{1} << n, 0.0)};
    s.amps[0] = 1.0;
    return s;
}

DenseState DenseState::basis(const BitVec &x) {
    DenseState s = zero(x.size());
    s.amps[0] = 0.0;
    s.amps[basis_index(x)] = 1.0;
    return s;
}

std::complex<double> DenseState::amplitude(const BitVec &x) const {
    if (x.size() != n) {
        throw std::invalid_argument("dense amplitude: length mismatch");
    }
    return amps[basis_index(x)];
}

size_t basis_index(const BitVec &x) {
    size_t index = 0;
    for (size_t j = 0; j < x.size(); j++) {
        if (x[j]) {
            index |= size_t{1} << j;
        }
    }
    return index;
}

BitVec index_bits(size_t index, size_t n) {
    BitVec x(n);
    for (size_t j = 0; j < n; j++) {
        if ((index >> j) & 1) {
            x.set(j, true);
        }
    }
    return x;
}

void dense_apply_1q(DenseState &state, size_t q, const cd m[4]) {
    size_t bit = size_t{1} << q;
    for (size_t i = 0; i < state.amps.size(); i++) {
        if (i & bit) {
            continue;
        }
        cd a0 = state.amps[i];
        cd a1 = state.amps[i | bit];
        state.amps[i] = m[0] * a0 + m[1] * a1;
        state.amps[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

namespace {

void apply_diag(DenseState &state, size_t q, cd d0, cd d1) {
    size_t bit = size_t{1} << q;
    for (size_t i = 0; i < state.amps.size(); i++) {
        state.amps[i] *= (i & bit) ? d1 : d0;
    }
}

}  // namespace

void dense_apply(DenseState &state, const Op &op) {
    for (size_t q : op.qubits) {
        if (q >= state.n) {
            throw std::out_of_range("dense oracle: qubit out of range");
        }
    }
    const double h = std::numbers::sqrt2 / 2;
    const cd I(0, 1);
    size_t q0 = op.qubits.empty() ? 0 : op.qubits[0];
    switch (op.gate) {
        case Gate::I:
            return;
        case Gate::X: {
            cd m[4] = {0, 1, 1, 0};
            return dense_apply_1q(state, q0, m);
        }
        case Gate::Y: {
            cd m[4] = {0, -I, I, 0};
            return dense_apply_1q(state, q0, m);
        }
        case Gate::Z:
            return apply_diag(state, q0, 1, -1);
        case Gate::H: {
            cd m[4] = {h, h, h, -h};
            return dense_apply_1q(state, q0, m);
        }
        case Gate::S:
            return apply_diag(state, q0, 1, I);
        case Gate::SDG:
            return apply_diag(state, q0, 1, -I);
        case Gate::T:
            return apply_diag(state, q0, 1, std::polar(1.0, std::numbers::pi / 4));
        case Gate::TDG:
            return apply_diag(state, q0, 1, std::polar(1.0, -std::numbers::pi / 4));
        case Gate::RZ:
            return apply_diag(state, q0, std::polar(1.0, -op.angle / 2), std::polar(1.0, op.angle / 2));
        case Gate::PHASE:
            return apply_diag(state, q0, 1, std::polar(1.0, op.angle));
        case Gate::CX: {
            size_t c = size_t{1} << op.qubits[0], t = size_t{1} << op.qubits[1];
            for (size_t i = 0; i < state.amps.size(); i++) {
                if ((i & c) && !(i & t)) {
                    std::swap(state.amps[i], state.amps[i | t]);
                }
            }
            return;
        }
        case Gate::CZ: {
            size_t mask = (size_t{1} << op.qubits[0]) | (size_t{1} << op.qubits[1]);
            for (size_t i = 0; i < state.amps.size(); i++) {
                if ((i & mask) == mask) {
                    state.amps[i] = -state.amps[i];
                }
            }
            return;
        }
        case Gate::CCZ: {
            size_t mask = (size_t{1} << op.qubits[0]) | (size_t{1} << op.qubits[1]) | (size_t{1} << op.qubits[2]);
            for (size_t i = 0; i < state.amps.size(); i++) {
                if ((i & mask) == mask) {
                    state.amps[i] = -state.amps[i];
                }
            }
            return;
        }
        case Gate::CCX: {
            size_t c = (size_t{1} << op.qubits[0]) | (size_t{1} << op.qubits[1]);
            size_t t = size_t{1} << op.qubits[2];
            for (size_t i = 0; i < state.amps.size(); i++) {
                if ((i & c) == c && !(i & t)) {
                    std::swap(state.amps[i], state.amps[i | t]);
                }
            }
            return;
        }
    }
}

void dense_apply(DenseState &state, const Circuit &circuit) {
    if (circuit.num_qubits() != state.n) {
        throw std::invalid_argument("dense oracle: circuit and state sizes differ");
    }
    for (const auto &op : circuit.ops()) {
        dense_apply(state, op);
    }
}

DenseState dense_run(const Circuit &circuit) {
    DenseState state = DenseState::zero(circuit.num_qubits());
    dense_apply(state, circuit);
    return state;
}

std::vector<double> dense_distribution(const DenseState &state) {
    std::vector<double> p(state.amps.size());
    for (size_t i = 0; i < p.size(); i++) {
        p[i] = std::norm(state.amps[i]);
    }
    return p;
}

double dense_norm2(const DenseState &state) {
    double total = 0;
    for (const auto &a : state.amps) {
        total += std::norm(a);
    }
    return total;
}

std::complex<double> dense_inner(const DenseState &a, const DenseState &b) {
    if (a.n != b.n) {
        throw std::invalid_argument("dense_inner: dimension mismatch");
    }
    cd total = 0;
    for (size_t i = 0; i < a.amps.size(); i++) {
        total += std::conj(a.amps[i]) * b.amps[i];
    }
    return total;
}

std::vector<Amplitudes> dense_unitary(const Circuit &circuit) {
    size_t n = circuit.num_qubits();
    std::vector<Amplitudes> columns;
    for (size_t k = 0; k < (size_t{1} << n); k++) {
        DenseState s = DenseState::basis(index_bits(k, n));
        dense_apply(s, circuit);
        columns.push_back(std::move(s.amps));
    }
    return columns;
}

}  // namespace stabsim
