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

#include "stabsim/decompose.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace stabsim {

using cd = std::complex<double>;

double GateDecomposition::l1_norm() const {
    double total = 0;
    for (const auto &t : terms) {
        total += std::abs(t.coeff);
    }
    return total;
}

namespace {

constexpr double kPi = std::numbers::pi;

/// Writes K = diag(i^{x A x^T}) as S powers and CZs.
Circuit diagonal_clifford(size_t t, const std::vector<int> &diag, const std::vector<std::pair<size_t, size_t>> &cz) {
    Circuit c(t);
    for (size_t a = 0; a < t; a++) {
        switch (diag[a] & 3) {
            case 1:
                c.append(Gate::S, {a});
                break;
            case 2:
                c.append(Gate::Z, {a});
                break;
            case 3:
                c.append(Gate::SDG, {a});
                break;
            default:
                break;
        }
    }
    for (auto [a, b] : cz) {
        c.append(Gate::CZ, {a, b});
    }
    return c;
}

/// Power of i closest to z/|z|, or -1 if none is within tolerance.
int nearest_quarter_turn(cd z) {
    static const cd powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    double r = std::abs(z);
    for (int k = 0; k < 4; k++) {
        if (std::abs(z / r - powers[k]) < 1e-9) {
            return k;
        }
    }
    return -1;
}

Amplitudes apply_to_plus(const Circuit &k) {
    Circuit prep(k.num_qubits());
    for (size_t q = 0; q < k.num_qubits(); q++) {
        prep.append(Gate::H, {q});
    }
    prep.append(k);
    return dense_run(prep).amps;
}

}  // namespace

GateDecomposition lift(const StateDecomposition &states, std::string name) {
    if (states.empty()) {
        throw std::invalid_argument("lift: empty decomposition");
    }
    size_t dim = states[0].second.size();
    size_t t = (size_t)std::countr_zero(dim);
    if (dim == 0 || (size_t{1} << t) != dim || t == 0) {
        throw std::invalid_argument("lift: state dimension must be 2^t with t >= 1");
    }
    GateDecomposition result;
    result.name = std::move(name);
    result.arity = t;
    const double expected = std::pow(2.0, -(double)t / 2);
    for (const auto &[c, amps] : states) {
        if (amps.size() != dim) {
            throw std::invalid_argument("lift: states have different dimensions");
        }
        for (const auto &a : amps) {
            if (std::abs(std::abs(a) - expected) > 1e-9) {
                throw std::invalid_argument("lift: input state is not equatorial");
            }
        }
        cd base = amps[0] / expected;
        std::vector<int> diag(t);
        for (size_t a = 0; a < t; a++) {
            int k = nearest_quarter_turn(amps[size_t{1} << a] / amps[0]);
            if (k < 0) {
                throw std::invalid_argument("lift: input state is not equatorial");
            }
            diag[a] = k;
        }
        std::vector<std::pair<size_t, size_t>> cz;
        for (size_t a = 0; a < t; a++) {
            for (size_t b = a + 1; b < t; b++) {
                size_t x = (size_t{1} << a) | (size_t{1} << b);
                int k = nearest_quarter_turn(amps[x] / amps[0]);
                int expect = (diag[a] + diag[b]) & 3;
                if (k == ((expect + 2) & 3)) {
                    cz.push_back({a, b});
                } else if (k != expect) {
                    throw std::invalid_argument("lift: input state is not equatorial");
                }
            }
        }
        Circuit k = diagonal_clifford(t, diag, cz);
        Amplitudes check = apply_to_plus(k);
        for (size_t x = 0; x < dim; x++) {
            if (std::abs(check[x] * base - amps[x]) > 1e-9) {
                throw std::invalid_argument("lift: input state is not equatorial");
            }
        }
        result.terms.push_back({c * base, std::move(k)});
    }
    return result;
}

GateDecomposition decomp_rz(double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("decomp_rz: angle must be finite");
    }
    double quarter = kPi / 2;
    double j = std::floor(theta / quarter);
    double residual = theta - j * quarter;
    if (residual > quarter - 1e-12) {
        j += 1;
        residual = 0;
    }
    if (residual < 1e-12) {
        residual = 0;
    }
    long long turns = (long long)j;
    int s_power = (int)(((turns % 4) + 4) % 4);
    cd reduction_phase = std::polar(1.0, -kPi * (double)(((turns % 8) + 8) % 8) / 4);

    double c0 = std::cos(residual / 2) - std::sin(residual / 2);
    cd c1 = std::numbers::sqrt2 * std::polar(1.0, -kPi / 4) * std::sin(residual / 2);
    StateDecomposition states;
    Circuit plus(1);
    Circuit splus(1);
    splus.append(Gate::S, {0});
    if (std::abs(c0) > 1e-15) {
        states.push_back({c0, apply_to_plus(plus)});
    }
    if (std::abs(c1) > 1e-15) {
        states.push_back({c1, apply_to_plus(splus)});
    }
    GateDecomposition d = lift(states, "RZ");

    static const Gate s_gates[4] = {Gate::I, Gate::S, Gate::Z, Gate::SDG};
    for (auto &term : d.terms) {
        term.coeff *= reduction_phase;
        if (s_power != 0) {
            term.clifford.append(s_gates[s_power], {0});
        }
    }
    d.extent = d.l1_norm() * d.l1_norm();
    return d;
}

GateDecomposition decomp_phase(double theta) {
    GateDecomposition d = decomp_rz(theta);
    d.name = "PHASE";
    cd phase = std::polar(1.0, theta / 2);
    for (auto &term : d.terms) {
        term.coeff *= phase;
    }
    return d;
}

GateDecomposition decomp_ccz() {
    // CCZ|+++> as a combination of equatorial states K_j|+++>.
    struct Part {
        double sign;
        std::vector<std::pair<size_t, size_t>> cz;
        std::vector<size_t> z;
    };
    const std::vector<Part> parts = {
        {1, {}, {}},
        {1, {{0, 1}}, {}},
        {1, {{0, 2}}, {}},
        {1, {{1, 2}}, {}},
        {1, {{0, 1}, {0, 2}}, {0}},
        {1, {{0, 1}, {1, 2}}, {1}},
        {1, {{0, 2}, {1, 2}}, {2}},
        {-1, {{0, 1}, {0, 2}, {1, 2}}, {0, 1, 2}},
    };
    StateDecomposition states;
    for (const auto &part : parts) {
        Circuit k(3);
        for (size_t q : part.z) {
            k.append(Gate::Z, {q});
        }
        for (auto [a, b] : part.cz) {
            k.append(Gate::CZ, {a, b});
        }
        states.push_back({part.sign / 6.0, apply_to_plus(k)});
    }
    GateDecomposition d = lift(states, "CCZ");
    d.extent = d.l1_norm() * d.l1_norm();
    return d;
}

std::vector<Amplitudes> decomposition_matrix(const GateDecomposition &d) {
    size_t dim = size_t{1} << d.arity;
    std::vector<Amplitudes> result(dim, Amplitudes(dim, 0.0));
    for (const auto &term : d.terms) {
        auto columns = dense_unitary(term.clifford);
        for (size_t c = 0; c < dim; c++) {
            for (size_t r = 0; r < dim; r++) {
                result[c][r] += term.coeff * columns[c][r];
            }
        }
    }
    return result;
}

std::vector<Amplitudes> gate_matrix(Gate gate, double angle) {
    size_t t = gate_arity(gate);
    Circuit c(t);
    std::vector<size_t> qubits(t);
    for (size_t k = 0; k < t; k++) {
        qubits[k] = k;
    }
    c.append(gate, qubits, angle);
    return dense_unitary(c);
}

double decomposition_error(const GateDecomposition &d, Gate gate, double angle) {
    if (d.arity != gate_arity(gate)) {
        return INFINITY;
    }
    auto a = decomposition_matrix(d);
    auto b = gate_matrix(gate, angle);
    double worst = 0;
    for (size_t c = 0; c < a.size(); c++) {
        for (size_t r = 0; r < a.size(); r++) {
            worst = std::max(worst, std::abs(a[c][r] - b[c][r]));
        }
    }
    return worst;
}

std::optional<GateDecomposition> DecompositionRegistry::lookup(const Op &op) const {
    for (const auto &e : overrides_) {
        if (e.gate == op.gate && (!e.angle.has_value() || std::abs(*e.angle - op.angle) < 1e-12)) {
            return e.decomposition;
        }
    }
    if (gate_is_native_clifford(op.gate)) {
        return std::nullopt;
    }
    switch (op.gate) {
        case Gate::T:
            return decomp_phase(kPi / 4);
        case Gate::TDG:
            return decomp_phase(-kPi / 4);
        case Gate::RZ:
            return decomp_rz(op.angle);
        case Gate::PHASE:
            return decomp_phase(op.angle);
        case Gate::CCZ:
            return decomp_ccz();
        default:
            throw std::invalid_argument("no decomposition registered for " + std::string(gate_name(op.gate)));
    }
}

bool DecompositionRegistry::is_clifford(const Op &op) const {
    auto d = lookup(op);
    return !d.has_value() || d->is_clifford();
}

void DecompositionRegistry::add(Gate gate, std::optional<double> angle, GateDecomposition d) {
    if (gate_takes_angle(gate) && !angle.has_value()) {
        throw std::invalid_argument("decomposition for " + std::string(gate_name(gate)) + " needs an angle");
    }
    for (const auto &term : d.terms) {
        if (term.clifford.num_qubits() != d.arity) {
            throw std::invalid_argument("decomposition term has the wrong arity");
        }
        for (const auto &op : term.clifford.ops()) {
            if (!gate_is_native_clifford(op.gate)) {
                throw std::invalid_argument("decomposition term contains non-Clifford gate " +
                                            std::string(gate_name(op.gate)));
            }
        }
    }
    double err = decomposition_error(d, gate, angle.value_or(0));
    if (!(err < 1e-9)) {
        throw std::invalid_argument("decomposition for " + std::string(gate_name(gate)) +
                                    " does not reproduce the gate (max deviation " + std::to_string(err) + ")");
    }
    std::erase_if(overrides_, [&](const Entry &e) {
        return e.gate == gate && e.angle == angle;
    });
    overrides_.push_back({gate, angle, std::move(d)});
}

void DecompositionRegistry::load_json(const nlohmann::json &j) {
    if (j.is_array()) {
        for (const auto &item : j) {
            load_json(item);
        }
        return;
    }
    std::string name = j.at("gate").get<std::string>();
    auto gate = gate_from_name(name);
    if (!gate.has_value()) {
        throw std::invalid_argument("unknown gate '" + name + "' in decomposition file");
    }
    size_t arity = j.at("arity").get<size_t>();
    if (arity != gate_arity(*gate)) {
        throw std::invalid_argument("arity mismatch for " + name);
    }
    std::optional<double> angle;
    if (j.contains("angle")) {
        const auto &a = j.at("angle");
        angle = a.is_string() ? parse_angle(a.get<std::string>()) : a.get<double>();
    }
    GateDecomposition d;
    d.name = gate_name(*gate);
    d.arity = arity;
    for (const auto &term : j.at("terms")) {
        std::string text = "qubits " + std::to_string(arity) + "\n";
        for (const auto &line : term.at("clifford")) {
            text += line.get<std::string>() + "\n";
        }
        d.terms.push_back({cd(term.at("re").get<double>(), term.at("im").get<double>()), parse_circuit(text)});
    }
    if (d.terms.empty()) {
        throw std::invalid_argument("decomposition for " + name + " has no terms");
    }
    add(*gate, angle, std::move(d));
}

void DecompositionRegistry::load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open decomposition file '" + path + "'");
    }
    load_json(nlohmann::json::parse(in));
}

double extent_product_bound(const Circuit &circuit, const DecompositionRegistry &registry) {
    double bound = 1;
    for (const auto &op : circuit.ops()) {
        auto d = registry.lookup(op);
        if (d.has_value()) {
            double l1 = d->l1_norm();
            bound *= d->extent.value_or(l1 * l1);
        }
    }
    return bound;
}

}  // namespace stabsim
