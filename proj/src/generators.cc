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

#include "stabsim/generators.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <stdexcept>

#include "stabsim/rng.h"

namespace stabsim {

namespace {

// Appends CCZ(a, b, c) using a clean ancilla: relative-phase Toffoli onto the ancilla, CZ, then its inverse.
void emit_ccz_via_ancilla(Circuit &c, size_t a, size_t b, size_t target, size_t anc) {
    const std::vector<Op> compute = {
        {Gate::H, {anc}, 0},      {Gate::T, {anc}, 0},  {Gate::CX, {b, anc}, 0}, {Gate::TDG, {anc}, 0},
        {Gate::CX, {a, anc}, 0},  {Gate::T, {anc}, 0},  {Gate::CX, {b, anc}, 0}, {Gate::TDG, {anc}, 0},
        {Gate::H, {anc}, 0},
    };
    for (const auto &op : compute) {
        c.append(op);
    }
    c.append(Gate::CZ, {anc, target});
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) {
        Op op = *it;
        if (op.gate == Gate::T) {
            op.gate = Gate::TDG;
        } else if (op.gate == Gate::TDG) {
            op.gate = Gate::T;
        }
        c.append(op);
    }
}

struct Polynomial {
    std::vector<std::array<size_t, 3>> cubic;
    std::vector<std::pair<size_t, size_t>> quadratic;
    std::vector<size_t> linear;
};

// Emits the phase oracle (-1)^{poly} where variable j sits on qubit map[j].
void emit_polynomial(Circuit &c, const Polynomial &poly, const std::vector<size_t> &map, HiddenShiftStyle style,
                     size_t anc) {
    for (const auto &t : poly.cubic) {
        if (style == HiddenShiftStyle::CCZ) {
            c.append(Gate::CCZ, {map[t[0]], map[t[1]], map[t[2]]});
        } else {
            emit_ccz_via_ancilla(c, map[t[0]], map[t[1]], map[t[2]], anc);
        }
    }
    for (auto [a, b] : poly.quadratic) {
        c.append(Gate::CZ, {map[a], map[b]});
    }
    for (size_t a : poly.linear) {
        c.append(Gate::Z, {map[a]});
    }
}

}  // namespace

BitVec HiddenShiftInstance::expected_output() const {
    BitVec out(circuit.num_qubits());
    for (size_t j = 0; j < shift.size(); j++) {
        out.set(j, shift[j]);
    }
    return out;
}

HiddenShiftInstance gen_hidden_shift(size_t n, size_t ccz_count, uint64_t seed, HiddenShiftStyle style) {
    if (n == 0 || n % 2 != 0) {
        throw std::invalid_argument("hidden shift needs a positive even qubit count");
    }
    if (ccz_count % 2 != 0) {
        throw std::invalid_argument("hidden shift needs an even CCZ count");
    }
    const size_t m = n / 2;
    const size_t cubic = ccz_count / 2;
    const size_t max_cubic = m >= 3 ? m * (m - 1) * (m - 2) / 6 : 0;
    if (cubic > max_cubic) {
        throw std::invalid_argument("too many CCZ gates for " + std::to_string(n) + " qubits");
    }
    Rng rng = derive_rng(seed, 0, "hidden-shift");

    // f(x, y) = x . phi(y) + h(y) with phi(y)_i = y_{perm[i]}.
    std::vector<size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<size_t> inv(m);
    for (size_t i = 0; i < m; i++) {
        inv[perm[i]] = i;
    }

    Polynomial h;
    std::set<std::array<size_t, 3>> triples;
    while (triples.size() < cubic) {
        std::array<size_t, 3> t{uniform_below(rng, m), uniform_below(rng, m), uniform_below(rng, m)};
        std::sort(t.begin(), t.end());
        if (t[0] != t[1] && t[1] != t[2]) {
            triples.insert(t);
        }
    }
    h.cubic.assign(triples.begin(), triples.end());
    std::shuffle(h.cubic.begin(), h.cubic.end(), rng);
    if (m >= 2) {
        std::set<std::pair<size_t, size_t>> pairs;
        for (size_t r = 0; r < m; r++) {
            size_t a = uniform_below(rng, m), b = uniform_below(rng, m);
            if (a != b) {
                pairs.insert({std::min(a, b), std::max(a, b)});
            }
        }
        h.quadratic.assign(pairs.begin(), pairs.end());
    }
    for (size_t j = 0; j < m; j++) {
        if (rng() & 1) {
            h.linear.push_back(j);
        }
    }

    // The dual is h(phi^{-1}(a)) + b . phi^{-1}(a): same pairing, variable y_j renamed to a_{inv[j]}.
    Polynomial h_dual;
    for (auto t : h.cubic) {
        h_dual.cubic.push_back({inv[t[0]], inv[t[1]], inv[t[2]]});
    }
    for (auto [a, b] : h.quadratic) {
        h_dual.quadratic.push_back({inv[a], inv[b]});
    }
    for (size_t a : h.linear) {
        h_dual.linear.push_back(inv[a]);
    }

    std::vector<size_t> layout(n);
    std::iota(layout.begin(), layout.end(), 0);
    std::shuffle(layout.begin(), layout.end(), rng);
    std::vector<size_t> x_reg(m), y_reg(m);
    for (size_t i = 0; i < m; i++) {
        x_reg[i] = layout[i];
        y_reg[i] = layout[m + i];
    }

    BitVec shift(n);
    for (size_t q = 0; q < n; q++) {
        shift.set(q, rng() & 1);
    }

    const bool use_ancilla = style == HiddenShiftStyle::T && cubic > 0;
    const size_t anc = n;
    Circuit c(use_ancilla ? n + 1 : n);
    auto hadamards = [&] {
        for (size_t q = 0; q < n; q++) {
            c.append(Gate::H, {q});
        }
    };
    auto shift_layer = [&] {
        for (size_t q = 0; q < n; q++) {
            if (shift[q]) {
                c.append(Gate::X, {q});
            }
        }
    };
    auto pairing = [&] {
        for (size_t i = 0; i < m; i++) {
            c.append(Gate::CZ, {x_reg[i], y_reg[perm[i]]});
        }
    };

    hadamards();
    shift_layer();
    pairing();
    emit_polynomial(c, h, y_reg, style, anc);
    shift_layer();
    hadamards();
    pairing();
    emit_polynomial(c, h_dual, x_reg, style, anc);
    hadamards();

    HiddenShiftInstance inst{std::move(c), std::move(shift)};
    if (inst.circuit.num_qubits() <= max_dense_qubits()) {
        DenseState out = dense_run(inst.circuit);
        double p = std::norm(out.amplitude(inst.expected_output()));
        if (!(std::abs(p - 1) < 1e-9)) {
            throw std::logic_error("hidden shift self-check failed: P(s) = " + std::to_string(p));
        }
    }
    return inst;
}

nlohmann::json E3Lin2Instance::to_json() const {
    nlohmann::json t = nlohmann::json::array();
    for (const auto &term : terms) {
        t.push_back({term.u, term.v, term.w, term.d});
    }
    return {{"n", n}, {"D", D}, {"terms", t}};
}

E3Lin2Instance E3Lin2Instance::from_json(const nlohmann::json &j) {
    E3Lin2Instance inst;
    inst.n = j.at("n").get<size_t>();
    inst.D = j.at("D").get<size_t>();
    for (const auto &t : j.at("terms")) {
        if (!t.is_array() || t.size() != 4) {
            throw std::invalid_argument("E3LIN2 term must be [u, v, w, d]");
        }
        E3Lin2Term term{t[0].get<size_t>(), t[1].get<size_t>(), t[2].get<size_t>(), t[3].get<int>()};
        if (term.u >= inst.n || term.v >= inst.n || term.w >= inst.n) {
            throw std::invalid_argument("E3LIN2 term index out of range");
        }
        if (term.u == term.v || term.u == term.w || term.v == term.w) {
            throw std::invalid_argument("E3LIN2 term needs three distinct variables");
        }
        if (term.d != 1 && term.d != -1) {
            throw std::invalid_argument("E3LIN2 coefficient must be +1 or -1");
        }
        inst.terms.push_back(term);
    }
    return inst;
}

E3Lin2Instance random_e3lin2(size_t n, size_t D, uint64_t seed) {
    if (n < 3 || D == 0) {
        throw std::invalid_argument("E3LIN2 instance needs n >= 3 and D >= 1");
    }
    const size_t drop = (n * D) % 3;
    if (drop > D) {
        throw std::invalid_argument("infeasible (n, D) combination");
    }
    Rng rng = derive_rng(seed, 0, "e3lin2");
    const size_t short_var = uniform_below(rng, n);
    std::vector<size_t> stubs;
    for (size_t v = 0; v < n; v++) {
        size_t count = v == short_var ? D - drop : D;
        stubs.insert(stubs.end(), count, v);
    }
    const size_t m = stubs.size() / 3;
    for (int attempt = 0; attempt < 1000000; attempt++) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::set<std::array<size_t, 3>> seen;
        bool ok = true;
        for (size_t t = 0; t < m && ok; t++) {
            std::array<size_t, 3> tr{stubs[3 * t], stubs[3 * t + 1], stubs[3 * t + 2]};
            std::sort(tr.begin(), tr.end());
            ok = tr[0] != tr[1] && tr[1] != tr[2] && seen.insert(tr).second;
        }
        if (!ok) {
            continue;
        }
        E3Lin2Instance inst{n, D, {}};
        for (const auto &tr : seen) {
            inst.terms.push_back({tr[0], tr[1], tr[2], (rng() & 1) ? 1 : -1});
        }
        return inst;
    }
    throw std::invalid_argument("infeasible (n, D) combination");
}

Circuit qaoa_circuit(const E3Lin2Instance &instance, double gamma) {
    Circuit c(instance.n);
    for (size_t q = 0; q < instance.n; q++) {
        c.append(Gate::H, {q});
    }
    for (const auto &t : instance.terms) {
        c.append(Gate::CX, {t.u, t.w});
        c.append(Gate::CX, {t.v, t.w});
        c.append(Gate::RZ, {t.w}, gamma * t.d);
        c.append(Gate::CX, {t.v, t.w});
        c.append(Gate::CX, {t.u, t.w});
    }
    const double half_pi = std::acos(-1.0) / 2;
    for (size_t q = 0; q < instance.n; q++) {
        c.append(Gate::H, {q});
        c.append(Gate::RZ, {q}, half_pi);
        c.append(Gate::H, {q});
    }
    return c;
}

QaoaInstance gen_qaoa_e3lin2(size_t n, size_t D, double gamma, uint64_t seed) {
    QaoaInstance q{random_e3lin2(n, D, seed), Circuit()};
    q.circuit = qaoa_circuit(q.instance, gamma);
    return q;
}

double cost_e3lin2(const E3Lin2Instance &instance, const std::vector<int> &z) {
    if (z.size() != instance.n) {
        throw std::invalid_argument("cost_e3lin2: length mismatch");
    }
    double total = 0;
    for (const auto &t : instance.terms) {
        total += t.d * z[t.u] * z[t.v] * z[t.w];
    }
    return total / 2;
}

double cost_e3lin2_bits(const E3Lin2Instance &instance, const BitVec &x) {
    if (x.size() != instance.n) {
        throw std::invalid_argument("cost_e3lin2_bits: length mismatch");
    }
    double total = 0;
    for (const auto &t : instance.terms) {
        bool odd = x[t.u] ^ x[t.v] ^ x[t.w];
        total += odd ? -t.d : t.d;
    }
    return total / 2;
}

double qaoa_energy_dense(const E3Lin2Instance &instance, const DenseState &state) {
    if (state.n != instance.n) {
        throw std::invalid_argument("qaoa_energy_dense: qubit count mismatch");
    }
    double e = 0;
    for (size_t idx = 0; idx < state.amps.size(); idx++) {
        double p = std::norm(state.amps[idx]);
        if (p > 0) {
            e += p * cost_e3lin2_bits(instance, index_bits(idx, instance.n));
        }
    }
    return e;
}

MonteCarloEstimate qaoa_energy_monte_carlo(const E3Lin2Instance &instance, double gamma, size_t samples,
                                           uint64_t seed) {
    if (samples < 2) {
        throw std::invalid_argument("Monte Carlo estimate needs at least two samples");
    }
    const size_t m = instance.terms.size();
    auto members = [&](size_t t) {
        const auto &a = instance.terms[t];
        return std::array<size_t, 3>{a.u, a.v, a.w};
    };
    // Terms whose sign flips when the variables of term t are flipped.
    std::vector<std::vector<size_t>> odd(m);
    for (size_t t = 0; t < m; t++) {
        auto a = members(t);
        for (size_t r = 0; r < m; r++) {
            auto b = members(r);
            int shared = 0;
            for (size_t p : a) {
                shared += (int)std::count(b.begin(), b.end(), p);
            }
            if (shared % 2 == 1) {
                odd[t].push_back(r);
            }
        }
    }
    Rng rng = derive_rng(seed, 0, "qaoa-monte-carlo");
    std::vector<uint8_t> x(instance.n);
    std::vector<int> zt(m);
    double sum = 0, sum2 = 0;
    const std::complex<double> i_unit(0, 1);
    for (size_t s = 0; s < samples; s++) {
        for (auto &b : x) {
            b = (uint8_t)(rng() & 1);
        }
        for (size_t t = 0; t < m; t++) {
            const auto &a = instance.terms[t];
            zt[t] = ((x[a.u] ^ x[a.v] ^ x[a.w]) ? -1 : 1) * a.d;
        }
        std::complex<double> value = 0;
        for (size_t t = 0; t < m; t++) {
            // C(x) - C(x ^ e_t) = sum over odd-overlap terms of d z.
            double delta = 0;
            for (size_t r : odd[t]) {
                delta += zt[r];
            }
            auto a = members(t);
            int ones = x[a[0]] + x[a[1]] + x[a[2]];
            // <x|Y Y Y|x ^ e_t> = i^{ones} (-i)^{3 - ones}
            std::complex<double> y = std::pow(i_unit, ones) * std::pow(-i_unit, 3 - ones);
            value += 0.5 * instance.terms[t].d * y * std::polar(1.0, gamma * delta);
        }
        double r = value.real();
        sum += r;
        sum2 += r * r;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = sum / (double)samples;
    double var = (sum2 - (double)samples * est.mean * est.mean) / (double)(samples - 1);
    est.std_error = std::sqrt(std::max(var, 0.0) / (double)samples);
    return est;
}

}  // namespace stabsim
