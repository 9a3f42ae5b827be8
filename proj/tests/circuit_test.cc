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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stabsim/gadget.h"
#include "stabsim/generators.h"
#include "test_util.h"

using namespace stabsim;
using namespace stabsim::testing;

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Circuit random_circuit_any_gate(size_t n, size_t gates, Rng &rng) {
    Circuit c(n);
    const Gate all[] = {Gate::I,  Gate::X,  Gate::Y,   Gate::Z,   Gate::H,  Gate::S,  Gate::SDG,  Gate::T,
                        Gate::TDG, Gate::CX, Gate::CZ, Gate::CCZ, Gate::RZ, Gate::PHASE};
    std::uniform_real_distribution<double> angle(-7, 7);
    while (c.size() < gates) {
        Gate g = all[uniform_below(rng, std::size(all))];
        size_t arity = gate_arity(g);
        if (arity > n) {
            continue;
        }
        std::vector<size_t> qubits;
        while (qubits.size() < arity) {
            size_t q = uniform_below(rng, n);
            if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
                qubits.push_back(q);
            }
        }
        c.append(g, qubits, gate_takes_angle(g) ? angle(rng) : 0.0);
    }
    return c;
}

void expect_parse_error(const std::string &text, size_t line, size_t column) {
    try {
        parse_circuit(text);
        FAIL() << "no error for: " << text;
    } catch (const CircuitParseError &e) {
        EXPECT_EQ(e.line, line) << e.what();
        EXPECT_EQ(e.column, column) << e.what();
    }
}

}  // namespace

TEST(Parse, BellPair) {
    Circuit c = parse_circuit("qubits 2\nH 0\nCX 0 1");
    ASSERT_EQ(c.num_qubits(), 2u);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.ops()[0], (Op{Gate::H, {0}, 0}));
    EXPECT_EQ(c.ops()[1], (Op{Gate::CX, {0, 1}, 0}));
    DenseState s = dense_run(c);
    EXPECT_NEAR(std::abs(s.amps[0] - cd(std::sqrt(0.5))), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.amps[3] - cd(std::sqrt(0.5))), 0, 1e-15);
}

TEST(Parse, AngleForms) {
    Circuit c = parse_circuit("qubits 1\nRZ pi/4 0");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.ops()[0].gate, Gate::RZ);
    EXPECT_DOUBLE_EQ(c.ops()[0].angle, kPi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("3pi/8"), 3 * kPi / 8);
    EXPECT_DOUBLE_EQ(parse_angle("-pi"), -kPi);
    EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
    EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
    EXPECT_DOUBLE_EQ(parse_angle("-1e-3"), -1e-3);
    for (const char *bad : {"pi/0", "pi/x", "2.5pi", "abc", "", "pi/-2", "nan"}) {
        EXPECT_THROW(parse_angle(bad), std::invalid_argument) << bad;
    }
}

TEST(Parse, CaseInsensitiveWithComments) {
    Circuit c = parse_circuit("# header comment\n\nQUBITS 3\n  # indented comment\nh 0\ncCz 0 1 2\nPhase -pi/2 1\n");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.ops()[1].gate, Gate::CCZ);
    EXPECT_EQ(c.ops()[2].gate, Gate::PHASE);
    EXPECT_DOUBLE_EQ(c.ops()[2].angle, -kPi / 2);
}

TEST(Parse, ErrorsCarryLineAndColumn) {
    expect_parse_error("H 0\n", 1, 1);
    expect_parse_error("qubits 2\nH 0\nFOO 1\n", 3, 1);
    expect_parse_error("qubits 2\nCX 0 2\n", 2, 6);
    expect_parse_error("qubits 2\nRZ pi/q 0\n", 2, 4);
    expect_parse_error("qubits 2\nRZ\n", 2, 3);
    expect_parse_error("qubits 2\nH x\n", 2, 3);
    expect_parse_error("qubits 0\n", 1, 8);
    expect_parse_error("qubits 2\nCX 1 1\n", 2, 6);
    expect_parse_error("qubits 2\nCX 1\n", 2, 4);
    expect_parse_error("# only a comment", 1, 1);
}

TEST(Parse, RoundTripRandomCircuits) {
    Rng rng = derive_rng(1, 0, "roundtrip");
    for (int trial = 0; trial < 500; trial++) {
        size_t n = 1 + uniform_below(rng, 8);
        Circuit c = random_circuit_any_gate(n, 1 + uniform_below(rng, 40), rng);
        Circuit back = parse_circuit(render_circuit(c));
        ASSERT_EQ(back, c) << render_circuit(c);
    }
}

TEST(Parse, CcxBecomesHadamardConjugatedCcz) {
    Circuit c = parse_circuit("qubits 3\nCCX 0 1 2\n");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.ops()[0], (Op{Gate::H, {2}, 0}));
    EXPECT_EQ(c.ops()[1], (Op{Gate::CCZ, {0, 1, 2}, 0}));
    EXPECT_EQ(c.ops()[2], (Op{Gate::H, {2}, 0}));
    // Toffoli matrix: swaps |011> and |111> (qubit 0 is the low bit).
    auto u = dense_unitary(c);
    for (size_t col = 0; col < 8; col++) {
        size_t target = (col & 3) == 3 ? col ^ 4 : col;
        for (size_t row = 0; row < 8; row++) {
            EXPECT_NEAR(std::abs(u[col][row] - (row == target ? cd(1) : cd(0))), 0, 1e-12);
        }
    }
}

TEST(Classify, PartitionsByRegistry) {
    DecompositionRegistry registry;
    Circuit cliff = parse_circuit("qubits 2\nH 0\nS 1\nCZ 0 1\nRZ pi/2 0\nPHASE pi 1\n");
    Classification a = classify(cliff, registry);
    EXPECT_TRUE(a.non_clifford.empty());
    EXPECT_EQ(a.clifford_count, 5u);

    Classification b = classify(parse_circuit("qubits 3\nCCX 0 1 2\nT 0\n"), registry);
    ASSERT_EQ(b.non_clifford.size(), 2u);
    EXPECT_EQ(b.non_clifford[0].gate, Gate::CCZ);
    EXPECT_EQ(b.non_clifford[0].arity, 3u);
    EXPECT_EQ(b.non_clifford[1].gate, Gate::T);
    EXPECT_EQ(b.clifford_count, 2u);
}

TEST(Classify, SixteenTHiddenShift) {
    DecompositionRegistry registry;
    for (uint64_t seed = 1; seed <= 3; seed++) {
        HiddenShiftInstance hs = gen_hidden_shift(40, 2, seed, HiddenShiftStyle::T);
        Classification c = classify(hs.circuit, registry);
        EXPECT_EQ(c.non_clifford.size(), 16u);
        for (const auto &e : c.non_clifford) {
            EXPECT_TRUE(e.gate == Gate::T || e.gate == Gate::TDG);
        }
    }
}

TEST(Gadget, SingleT) {
    DecompositionRegistry registry;
    Circuit c = parse_circuit("qubits 1\nH 0\nT 0\n");
    GadgetizedCircuit g = gadgetize(c, registry);
    EXPECT_EQ(g.tau, 1u);
    EXPECT_DOUBLE_EQ(g.renormalization(), std::sqrt(2.0));
    Rng rng = derive_rng(1, 0, "g");
    DenseState out = gadget_superposition(g, 0, rng).to_dense();
    EXPECT_NEAR(std::abs(out.amps[0] - cd(std::sqrt(0.5))), 0, 1e-12);
    EXPECT_NEAR(std::abs(out.amps[1] - std::polar(std::sqrt(0.5), kPi / 4)), 0, 1e-12);
    EXPECT_NEAR(std::abs(out.amps[2]) + std::abs(out.amps[3]), 0, 1e-12);
}

TEST(Gadget, CczAndClifford) {
    DecompositionRegistry registry;
    GadgetizedCircuit g = gadgetize(parse_circuit("qubits 3\nH 0\nH 1\nH 2\nCCZ 0 1 2\n"), registry);
    EXPECT_EQ(g.tau, 3u);
    ASSERT_EQ(g.gadgets.size(), 1u);
    EXPECT_NEAR(g.gadgets[0].decomposition.l1_norm(), 4.0 / 3.0, 1e-12);

    Circuit cliff = parse_circuit("qubits 2\nH 0\nCX 0 1\nS 1\n");
    GadgetizedCircuit h = gadgetize(cliff, registry);
    EXPECT_EQ(h.tau, 0u);
    EXPECT_TRUE(h.gadgets.empty());
    Rng rng = derive_rng(2, 0, "g");
    EXPECT_LT(max_abs_diff(gadget_superposition(h, 0, rng).to_dense().amps, dense_run(cliff).amps), 1e-12);
}

TEST(Gadget, PreservesAmplitudes) {
    DecompositionRegistry registry;
    Rng rng = derive_rng(3, 0, "g");
    std::uniform_real_distribution<double> angle(-3, 3);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 3 + uniform_below(rng, 4);
        Circuit c = random_clifford_circuit(n, 30, rng);
        size_t extra = 1 + uniform_below(rng, 3);
        for (size_t j = 0; j < extra; j++) {
            Circuit tail = random_clifford_circuit(n, 10, rng);
            switch (uniform_below(rng, 4)) {
                case 0:
                    c.append(Gate::T, {uniform_below(rng, n)});
                    break;
                case 1:
                    c.append(Gate::RZ, {uniform_below(rng, n)}, angle(rng));
                    break;
                case 2:
                    c.append(Gate::PHASE, {uniform_below(rng, n)}, angle(rng));
                    break;
                default:
                    c.append(Gate::CCZ, {0, 1, 2});
            }
            c.append(tail);
        }
        GadgetizedCircuit g = gadgetize(c, registry);
        ASSERT_LE(n + g.tau, 14u);
        DenseState big = gadget_superposition(g, 0, rng).to_dense();
        Amplitudes data(size_t{1} << n);
        for (size_t idx = 0; idx < data.size(); idx++) {
            data[idx] = big.amps[idx];
        }
        EXPECT_LT(max_abs_diff(data, dense_run(c).amps), 1e-10) << render_circuit(c);
    }
}

TEST(HiddenShift, CliffordInstanceIsExactAtScale) {
    for (uint64_t seed = 1; seed <= 5; seed++) {
        HiddenShiftInstance hs = gen_hidden_shift(40, 0, seed);
        CHForm state = run_chform(hs.circuit);
        EXPECT_TRUE(state.v().none());
        GlobalPhase amp = state.amplitude(hs.shift);
        ASSERT_FALSE(amp.zero);
        EXPECT_NEAR(std::abs(amp.value()), 1.0, 1e-12);
        Rng rng = derive_rng(seed, 0, "hs");
        EXPECT_EQ(state.sample_basis(rng), hs.shift);
    }
}

TEST(HiddenShift, DenseOracleSeesPointMass) {
    for (uint64_t seed = 1; seed <= 4; seed++) {
        for (size_t ccz : {0, 2, 4}) {
            HiddenShiftInstance hs = gen_hidden_shift(12, ccz, seed);
            DenseState out = dense_run(hs.circuit);
            EXPECT_NEAR(std::norm(out.amplitude(hs.expected_output())), 1.0, 1e-10);
            DecompositionRegistry registry;
            EXPECT_EQ(classify(hs.circuit, registry).non_clifford.size(), ccz);
        }
        HiddenShiftInstance t = gen_hidden_shift(10, 2, seed, HiddenShiftStyle::T);
        EXPECT_EQ(t.circuit.num_qubits(), 11u);
        EXPECT_NEAR(std::norm(dense_run(t.circuit).amplitude(t.expected_output())), 1.0, 1e-10);
    }
}

TEST(HiddenShift, DeterministicAndValidated) {
    EXPECT_EQ(gen_hidden_shift(20, 4, 9).circuit, gen_hidden_shift(20, 4, 9).circuit);
    EXPECT_NE(gen_hidden_shift(20, 4, 9).circuit, gen_hidden_shift(20, 4, 10).circuit);
    EXPECT_THROW(gen_hidden_shift(7, 2, 1), std::invalid_argument);
    EXPECT_THROW(gen_hidden_shift(8, 3, 1), std::invalid_argument);
    EXPECT_THROW(gen_hidden_shift(4, 2, 1), std::invalid_argument);
}

TEST(Qaoa, InstanceShape) {
    for (auto [n, D] : {std::pair<size_t, size_t>{14, 4}, {50, 4}, {10, 3}, {11, 5}}) {
        E3Lin2Instance inst = random_e3lin2(n, D, 3);
        EXPECT_EQ(inst.terms.size(), n * D / 3);
        std::vector<size_t> degree(n, 0);
        for (const auto &t : inst.terms) {
            degree[t.u]++;
            degree[t.v]++;
            degree[t.w]++;
            EXPECT_TRUE(t.d == 1 || t.d == -1);
        }
        size_t short_count = 0;
        for (size_t d : degree) {
            EXPECT_LE(d, D);
            short_count += d < D;
        }
        EXPECT_LE(short_count, 1u);
        EXPECT_EQ(E3Lin2Instance::from_json(inst.to_json()), inst);
    }
    EXPECT_THROW(random_e3lin2(2, 3, 1), std::invalid_argument);
    EXPECT_THROW(random_e3lin2(5, 1, 1), std::invalid_argument);
}

TEST(Qaoa, NonCliffordCountEqualsTermCount) {
    DecompositionRegistry registry;
    QaoaInstance q = gen_qaoa_e3lin2(14, 4, 0.3, 5);
    EXPECT_EQ(classify(q.circuit, registry).non_clifford.size(), q.instance.terms.size());
    QaoaInstance clifford = gen_qaoa_e3lin2(14, 4, kPi / 2, 5);
    EXPECT_TRUE(classify(clifford.circuit, registry).non_clifford.empty());
    EXPECT_DOUBLE_EQ(extent_product_bound(clifford.circuit, registry), 1.0);
}

TEST(Qaoa, CostFunction) {
    E3Lin2Instance one{3, 1, {{0, 1, 2, 1}}};
    EXPECT_DOUBLE_EQ(cost_e3lin2(one, {1, 1, 1}), 0.5);
    EXPECT_DOUBLE_EQ(cost_e3lin2_bits(one, BitVec(3)), 0.5);
    E3Lin2Instance inst = random_e3lin2(12, 4, 8);
    Rng rng = derive_rng(1, 0, "z");
    for (int trial = 0; trial < 100; trial++) {
        std::vector<int> z(12), mz(12);
        BitVec x(12);
        for (size_t j = 0; j < 12; j++) {
            bool b = rng() & 1;
            x.set(j, b);
            z[j] = b ? -1 : 1;
            mz[j] = -z[j];
        }
        EXPECT_DOUBLE_EQ(cost_e3lin2(inst, mz), -cost_e3lin2(inst, z));
        EXPECT_DOUBLE_EQ(cost_e3lin2_bits(inst, x), cost_e3lin2(inst, z));
    }
}

TEST(Qaoa, DenseEnergySymmetries) {
    E3Lin2Instance inst = random_e3lin2(10, 4, 2);
    EXPECT_NEAR(qaoa_energy_dense(inst, dense_run(qaoa_circuit(inst, 0.0))), 0.0, 1e-12);
    for (double g : {0.1, 0.35, 0.8}) {
        double plus = qaoa_energy_dense(inst, dense_run(qaoa_circuit(inst, g)));
        double minus = qaoa_energy_dense(inst, dense_run(qaoa_circuit(inst, -g)));
        EXPECT_NEAR(plus, -minus, 1e-12);
    }
}

TEST(Qaoa, MonteCarloMatchesDense) {
    E3Lin2Instance inst = random_e3lin2(10, 4, 6);
    for (double g : {-0.5, 0.2, 0.6}) {
        double exact = qaoa_energy_dense(inst, dense_run(qaoa_circuit(inst, g)));
        MonteCarloEstimate mc = qaoa_energy_monte_carlo(inst, g, 200000, 4);
        EXPECT_LT(std::abs(mc.mean - exact), 4 * mc.std_error) << "gamma " << g;
    }
}
