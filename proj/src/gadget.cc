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

#include "stabsim/gadget.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stabsim {

using cd = std::complex<double>;

double GadgetizedCircuit::renormalization() const {
    return std::pow(2.0, (double)tau / 2);
}

double GadgetizedCircuit::l1_norm() const {
    double l1 = 1;
    for (const auto &g : gadgets) {
        l1 *= g.decomposition.l1_norm();
    }
    return l1;
}

namespace {

bool is_diagonal(Gate gate, double angle) {
    auto columns = gate_matrix(gate, angle);
    for (size_t c = 0; c < columns.size(); c++) {
        for (size_t r = 0; r < columns[c].size(); r++) {
            if (r != c && std::abs(columns[c][r]) > 1e-12) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

GadgetizedCircuit gadgetize(const Circuit &circuit, const DecompositionRegistry &registry) {
    const size_t n = circuit.num_qubits();
    size_t tau = 0;
    std::vector<std::optional<GateDecomposition>> found;
    for (const auto &op : circuit.ops()) {
        auto d = registry.lookup(op);
        if (d && !d->is_clifford()) {
            if (!is_diagonal(op.gate, op.angle)) {
                throw std::invalid_argument(std::string("gate ") + std::string(gate_name(op.gate)) +
                                            " is not diagonal and cannot be gadgetized");
            }
            tau += op.qubits.size();
        } else if (!d && !gate_is_native_clifford(op.gate)) {
            throw std::invalid_argument(std::string("no decomposition registered for ") +
                                        std::string(gate_name(op.gate)));
        }
        found.push_back(std::move(d));
    }
    GadgetizedCircuit g;
    g.num_data = n;
    g.tau = tau;
    g.clifford = Circuit(n + tau);
    size_t next = n;
    for (size_t i = 0; i < circuit.size(); i++) {
        const Op &op = circuit.ops()[i];
        if (!found[i]) {
            g.clifford.append(op);
            continue;
        }
        const GateDecomposition &d = *found[i];
        if (d.is_clifford()) {
            g.phase *= d.terms[0].coeff;
            for (const auto &local : d.terms[0].clifford.ops()) {
                std::vector<size_t> qubits;
                for (size_t q : local.qubits) {
                    qubits.push_back(op.qubits[q]);
                }
                g.clifford.append(local.gate, qubits, local.angle);
            }
            continue;
        }
        Gadget gadget{op, {}, d};
        for (size_t q : op.qubits) {
            gadget.ancillas.push_back(next);
            g.clifford.append(Gate::CX, {q, next});
            next++;
        }
        g.gadgets.push_back(std::move(gadget));
    }
    return g;
}

namespace {

// Resource states for every gadget, one Clifford path per term (or all paths when exact).
void prepare_resource(CHForm &state, const Gadget &gadget, size_t j) {
    for (size_t a : gadget.ancillas) {
        state.apply_h(a);
    }
    apply_clifford(state, gadget.decomposition.terms[j].clifford, gadget.ancillas);
}

}  // namespace

StabilizerSuperposition gadget_superposition(const GadgetizedCircuit &g, size_t k, Rng &rng) {
    const size_t total = g.num_data + g.tau;
    std::vector<SuperpositionTerm> terms;
    double l1 = g.l1_norm();
    if (k == 0) {
        terms.push_back({g.phase, CHForm(total)});
        for (const auto &gadget : g.gadgets) {
            std::vector<SuperpositionTerm> next;
            for (const auto &t : terms) {
                for (size_t j = 0; j < gadget.decomposition.terms.size(); j++) {
                    SuperpositionTerm u{t.coeff * gadget.decomposition.terms[j].coeff, t.state};
                    prepare_resource(u.state, gadget, j);
                    next.push_back(std::move(u));
                }
            }
            terms = std::move(next);
        }
    } else {
        std::vector<std::vector<double>> cumulative;
        for (const auto &gadget : g.gadgets) {
            std::vector<double> c;
            double acc = 0;
            for (const auto &t : gadget.decomposition.terms) {
                acc += std::abs(t.coeff);
                c.push_back(acc);
            }
            cumulative.push_back(std::move(c));
        }
        for (size_t alpha = 0; alpha < k; alpha++) {
            SuperpositionTerm t{g.phase * (l1 / (double)k), CHForm(total)};
            for (size_t p = 0; p < g.gadgets.size(); p++) {
                const auto &c = cumulative[p];
                double r = uniform01(rng) * c.back();
                size_t j = (size_t)(std::upper_bound(c.begin(), c.end(), r) - c.begin());
                j = std::min(j, c.size() - 1);
                cd coeff = g.gadgets[p].decomposition.terms[j].coeff;
                t.coeff *= coeff / std::abs(coeff);
                prepare_resource(t.state, g.gadgets[p], j);
            }
            terms.push_back(std::move(t));
        }
    }
    StabilizerSuperposition out(total);
    out.l1_norm = l1;
    const double scale = g.renormalization();
    for (auto &t : terms) {
        apply_clifford(t.state, g.clifford);
        PauliString z(total);
        for (size_t a = g.num_data; a < total; a++) {
            z = PauliString::single(total, a, 'Z');
            t.state.apply_projector(z, 1);
            if (t.state.is_zero()) {
                break;
            }
        }
        out.add(t.coeff * scale, std::move(t.state));
    }
    return out;
}

}  // namespace stabsim
