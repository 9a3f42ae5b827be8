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

#include "stabsim/superposition.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace stabsim {

using cd = std::complex<double>;

void StabilizerSuperposition::add(cd coeff, CHForm state) {
    if (state.num_qubits() != n_) {
        throw std::invalid_argument("superposition term has the wrong qubit count");
    }
    if (state.is_zero() || coeff == cd(0)) {
        return;
    }
    terms_.push_back({coeff, std::move(state)});
}

void StabilizerSuperposition::apply_projector_all(size_t q, bool bit) {
    if (q >= n_) {
        throw std::out_of_range("projector qubit out of range");
    }
    PauliString z = PauliString::single(n_, q, 'Z');
    size_t kept = 0;
    for (size_t k = 0; k < terms_.size(); k++) {
        terms_[k].state.apply_projector(z, bit ? -1 : 1);
        if (!terms_[k].state.is_zero()) {
            if (kept != k) {
                terms_[kept] = std::move(terms_[k]);
            }
            kept++;
        }
    }
    terms_.resize(kept);
}

void StabilizerSuperposition::apply_gate_all(Gate gate, std::span<const size_t> qubits) {
    for (auto &term : terms_) {
        term.state.apply_gate(gate, qubits);
    }
}

namespace {

std::string tableau_key(const CHForm &s) {
    std::string key;
    auto put = [&](const uint64_t *p, size_t count) {
        key.append(reinterpret_cast<const char *>(p), count * sizeof(uint64_t));
    };
    size_t cells = s.F().rows() * s.F().stride();
    put(s.F().row(0), cells);
    put(s.G().row(0), cells);
    put(s.M().row(0), cells);
    put(s.v().data(), s.v().num_words());
    put(s.s().data(), s.s().num_words());
    const auto &g = s.gamma().values();
    key.append(reinterpret_cast<const char *>(g.data()), g.size());
    return key;
}

}  // namespace

void StabilizerSuperposition::compact() {
    std::unordered_map<std::string, size_t> index;
    std::vector<SuperpositionTerm> merged;
    double scale = 0;
    for (auto &term : terms_) {
        cd c = term.coeff * term.state.omega().value();
        scale += std::abs(c);
        const GlobalPhase &w = term.state.omega();
        term.state.scale(GlobalPhase::from(-(int)w.q, -w.p));
        auto [it, fresh] = index.emplace(tableau_key(term.state), merged.size());
        if (fresh) {
            merged.push_back({c, std::move(term.state)});
        } else {
            merged[it->second].coeff += c;
        }
    }
    terms_.clear();
    for (auto &term : merged) {
        if (std::abs(term.coeff) > 1e-15 * scale) {
            terms_.push_back(std::move(term));
        }
    }
}

DenseState StabilizerSuperposition::to_dense() const {
    DenseState out = DenseState::zero(n_);
    out.amps[0] = 0;
    for (size_t k = 0; k < out.amps.size(); k++) {
        BitVec x = index_bits(k, n_);
        for (const auto &term : terms_) {
            GlobalPhase a = term.state.amplitude(x);
            if (!a.zero) {
                out.amps[k] += term.coeff * a.value();
            }
        }
    }
    return out;
}

EquatorialState random_equatorial(size_t n, Rng &rng) {
    EquatorialState e{QuadFormZ4(n)};
    uint64_t pool = 0;
    int left = 0;
    auto bits = [&](int count) {
        if (left < count) {
            pool = rng();
            left = 64;
        }
        uint64_t r = pool & ((uint64_t{1} << count) - 1);
        pool >>= count;
        left -= count;
        return r;
    };
    for (size_t a = 0; a < n; a++) {
        e.A.set_diag(a, (int)bits(2));
        for (size_t b = a + 1; b < n; b++) {
            e.A.set_off(a, b, bits(1));
        }
    }
    return e;
}

DenseState equatorial_dense(const EquatorialState &e) {
    static const cd powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    size_t n = e.A.size();
    DenseState out = DenseState::zero(n);
    double scale = std::pow(2.0, -(double)n / 2);
    for (size_t k = 0; k < out.amps.size(); k++) {
        out.amps[k] = powers[e.A.value(index_bits(k, n))] * scale;
    }
    return out;
}

PreparedTerm::PreparedTerm(const CHForm &state, cd coeff)
    : n_(state.num_qubits()), gt_(state.G().transposed()), gamma_(state.gamma().values()), v_(state.v()), s_(state.s()) {
    if (state.is_zero()) {
        throw std::invalid_argument("cannot prepare the zero state");
    }
    BitMatrix mft = matmul_f2(state.M(), state.F().transposed());
    for (size_t a = 0; a < n_; a++) {
        words::assign(mft.row(a), a, false);
    }
    j_ = std::move(mft);
    g_ = state.G();
    int sv = (int)words::and_parity(s_.data(), v_.data(), s_.num_words());
    cd omega = state.omega().value();
    prefactor_ = std::conj(coeff * omega) * std::pow(2.0, -((double)n_ + (double)v_.popcount()) / 2) *
                 (sv ? -1.0 : 1.0);
}

namespace {

const cd kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

cd PreparedTerm::overlap_small(const EquatorialState &e) const {
    const size_t n = n_;
    const BitMatrix &aoff = e.A.off_matrix();
    uint64_t W[64], P[64];
    uint8_t wd[64];
    for (size_t i = 0; i < n; i++) {
        wd[i] = (uint8_t)((e.A.diag(i) + gamma_[i]) & 3);
        W[i] = aoff.row(i)[0] ^ j_.row(i)[0] ^ ((uint64_t)(wd[i] & 1) << i);
    }
    for (size_t i = 0; i < n; i++) {
        uint64_t acc = 0;
        for (uint64_t r = W[i]; r; r &= r - 1) {
            acc ^= g_.row((size_t)std::countr_zero(r))[0];
        }
        P[i] = acc;
    }
    const uint64_t sbits = s_.data()[0];
    BitMatrix &koff = scratch_koff(n);
    std::vector<uint8_t> &bdiag = scratch_diag(n);
    int qs = 0;
    for (size_t a = 0; a < n; a++) {
        const uint64_t g = gt_.row(a)[0];
        uint64_t k = 0;
        int diag = 0;
        for (uint64_t r = g; r; r &= r - 1) {
            size_t i = (size_t)std::countr_zero(r);
            k ^= P[i];
            diag += wd[i] + std::popcount(W[i] & g) - (wd[i] & 1);
        }
        diag &= 3;
        koff.row(a)[0] = k;
        bool sa = (sbits >> a) & 1;
        if (sa) {
            qs += diag + std::popcount(k & sbits) - (diag & 1);
        }
        bdiag[a] = (uint8_t)((diag + 2 * ((int)sa + (std::popcount(k & sbits) & 1))) & 3);
    }
    GaussianPow2 z = expsum_detail::expsum_z4_masked(koff, bdiag, v_);
    return prefactor_ * kPowersOfI[qs & 3] * cd(z.re.value(), z.im.value());
}

BitMatrix &PreparedTerm::scratch_koff(size_t n) {
    thread_local BitMatrix koff;
    if (koff.rows() != n) {
        koff = BitMatrix(n, n);
    }
    return koff;
}

std::vector<uint8_t> &PreparedTerm::scratch_diag(size_t n) {
    thread_local std::vector<uint8_t> diag;
    diag.assign(n, 0);
    return diag;
}

cd PreparedTerm::overlap(const EquatorialState &e) const {
    if (e.A.size() != n_) {
        throw std::invalid_argument("equatorial state has the wrong qubit count");
    }
    if (n_ < 64) {
        return overlap_small(e);
    }
    return overlap_reference(e);
}

cd PreparedTerm::overlap_reference(const EquatorialState &e) const {
    const cd *powers = kPowersOfI;
    if (e.A.size() != n_) {
        throw std::invalid_argument("equatorial state has the wrong qubit count");
    }
    const size_t n = n_;
    const size_t w = gt_.stride();
    thread_local std::vector<uint64_t> wrows, prows, krows;
    thread_local std::vector<uint8_t> wdiag, kdiag;
    wrows.assign(n * w, 0);
    prows.assign(n * w, 0);
    wdiag.resize(n);
    kdiag.resize(n);

    // W = A + J: off-diagonal bits XOR, diagonal in Z4 (diagonal bit of each row holds its parity).
    const BitMatrix &aoff = e.A.off_matrix();
    for (size_t i = 0; i < n; i++) {
        uint64_t *row = wrows.data() + i * w;
        const uint64_t *arow = aoff.row(i);
        const uint64_t *jrow = j_.row(i);
        for (size_t k = 0; k < w; k++) {
            row[k] = arow[k] ^ jrow[k];
        }
        wdiag[i] = (uint8_t)((e.A.diag(i) + gamma_[i]) & 3);
        words::assign(row, i, wdiag[i] & 1);
    }
    // P = W G
    for (size_t i = 0; i < n; i++) {
        uint64_t *prow = prows.data() + i * w;
        words::for_each_one(wrows.data() + i * w, w, [&](size_t j) { words::xor_into(prow, g_.row(j), w); });
    }
    // K = G^T P (mod 2); diagonal of K in Z4 from the columns of G.
    krows.assign(n * w, 0);
    for (size_t a = 0; a < n; a++) {
        uint64_t *krow = krows.data() + a * w;
        const uint64_t *g = gt_.row(a);
        int diag = 0;
        words::for_each_one(g, w, [&](size_t i) {
            words::xor_into(krow, prows.data() + i * w, w);
            const uint64_t *wr = wrows.data() + i * w;
            diag += wdiag[i];
            // Off-diagonal pairs inside g, each counted once per endpoint.
            diag += (int)words::and_popcount(wr, g, w) - (int)(wdiag[i] & 1);
        });
        kdiag[a] = (uint8_t)(diag & 3);
    }

    // q(s) = s K s^T in Z4, and the diagonal shift 2 (s + s K).
    int qs = 0;
    const uint64_t *sd = s_.data();
    std::vector<uint8_t> &bdiag = scratch_diag(n);
    for (size_t a = 0; a < n; a++) {
        const uint64_t *krow = krows.data() + a * w;
        bool sk = words::and_parity(krow, sd, w);
        if (words::get(sd, a)) {
            qs += kdiag[a] + (int)words::and_popcount(krow, sd, w) - (kdiag[a] & 1);
        }
        bdiag[a] = (uint8_t)((kdiag[a] + 2 * ((int)words::get(sd, a) + (int)sk)) & 3);
    }
    GaussianPow2 z;
    {
        BitMatrix &koff = scratch_koff(n);
        for (size_t a = 0; a < n; a++) {
            std::copy(krows.data() + a * w, krows.data() + (a + 1) * w, koff.row(a));
        }
        z = expsum_detail::expsum_z4_masked(koff, bdiag, v_);
    }
    cd sum(z.re.value(), z.im.value());
    return prefactor_ * powers[qs & 3] * sum;
}

cd inner_equatorial(const CHForm &phi, const EquatorialState &e) {
    return PreparedTerm(phi).overlap(e);
}

size_t norm_batch_size(double eps) {
    if (!(eps > 0 && eps < 1)) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
    return (size_t)std::ceil(4.0 / (eps * eps) - 1e-9);
}

size_t norm_batch_count(double p_fail) {
    if (!(p_fail > 0 && p_fail < 1)) {
        throw std::invalid_argument("p_fail must lie in (0, 1)");
    }
    return 2 * (size_t)std::ceil(3.0 * std::log2(1.0 / p_fail) - 1e-9) + 1;
}

namespace {

std::vector<PreparedTerm> prepare(const StabilizerSuperposition &psi) {
    std::vector<PreparedTerm> prepared;
    prepared.reserve(psi.size());
    for (const auto &term : psi.terms()) {
        prepared.emplace_back(term.state, term.coeff);
    }
    return prepared;
}

std::vector<double> sample_eta(const StabilizerSuperposition &psi, size_t count, size_t workers, uint64_t seed) {
    std::vector<double> out(count, 0.0);
    if (psi.empty() || count == 0) {
        return out;
    }
    std::vector<PreparedTerm> prepared = prepare(psi);
    const size_t n = psi.num_qubits();
    const double dim = std::ldexp(1.0, (int)n);
    workers = std::max<size_t>(1, std::min(workers, count));
    auto run = [&](size_t worker) {
        Rng rng = derive_rng(seed, worker, "equatorial");
        size_t begin = count * worker / workers, end = count * (worker + 1) / workers;
        for (size_t i = begin; i < end; i++) {
            EquatorialState e = random_equatorial(n, rng);
            cd total = 0;
            for (const auto &term : prepared) {
                total += term.overlap(e);
            }
            out[i] = dim * std::norm(total);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (size_t w = 0; w < workers; w++) {
            threads.emplace_back(run, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    return out;
}

}  // namespace

std::vector<double> norm_samples(const StabilizerSuperposition &psi, size_t count, uint64_t seed) {
    return sample_eta(psi, count, 1, seed);
}

double estimate_norm(const StabilizerSuperposition &psi, const NormOptions &options, uint64_t seed) {
    size_t batch = options.batch_size ? options.batch_size : norm_batch_size(options.eps);
    size_t batches = options.batches ? options.batches : norm_batch_count(options.p_fail);
    if (psi.empty()) {
        return 0.0;
    }
    std::vector<double> eta = sample_eta(psi, batch * batches, options.workers, seed);
    std::vector<double> means(batches, 0.0);
    for (size_t b = 0; b < batches; b++) {
        double total = 0;
        for (size_t i = 0; i < batch; i++) {
            total += eta[b * batch + i];
        }
        means[b] = total / (double)batch;
    }
    std::nth_element(means.begin(), means.begin() + (long)(batches / 2), means.end());
    return means[batches / 2];
}

void apply_clifford(CHForm &state, const Circuit &circuit, std::span<const size_t> qubits) {
    if (qubits.size() != circuit.num_qubits()) {
        throw std::invalid_argument("qubit map does not match the fragment size");
    }
    size_t mapped[3];
    for (const auto &op : circuit.ops()) {
        if (!gate_is_native_clifford(op.gate)) {
            throw std::invalid_argument(std::string("fragment gate ") + std::string(gate_name(op.gate)) +
                                        " is not Clifford");
        }
        for (size_t k = 0; k < op.qubits.size(); k++) {
            mapped[k] = qubits[op.qubits[k]];
        }
        state.apply_gate(op.gate, std::span<const size_t>(mapped, op.qubits.size()));
    }
}

void apply_clifford(CHForm &state, const Circuit &circuit) {
    for (const auto &op : circuit.ops()) {
        if (!gate_is_native_clifford(op.gate)) {
            throw std::invalid_argument(std::string("gate ") + std::string(gate_name(op.gate)) + " is not Clifford");
        }
        state.apply_gate(op.gate, op.qubits);
    }
}

namespace {

struct PlannedOp {
    const Op *op;
    std::optional<GateDecomposition> decomposition;
    std::vector<double> cumulative;
};

std::vector<PlannedOp> plan(const Circuit &circuit, const DecompositionRegistry &registry) {
    std::vector<PlannedOp> planned;
    planned.reserve(circuit.size());
    for (const auto &op : circuit.ops()) {
        PlannedOp p{&op, registry.lookup(op), {}};
        if (!p.decomposition.has_value() && !gate_is_native_clifford(op.gate)) {
            throw std::invalid_argument(std::string("no decomposition registered for ") +
                                        std::string(gate_name(op.gate)));
        }
        if (p.decomposition) {
            double total = 0;
            for (const auto &t : p.decomposition->terms) {
                total += std::abs(t.coeff);
                p.cumulative.push_back(total);
            }
        }
        planned.push_back(std::move(p));
    }
    return planned;
}

void apply_planned_term(CHForm &state, const PlannedOp &p, size_t j) {
    apply_clifford(state, p.decomposition->terms[j].clifford, p.op->qubits);
}

}  // namespace

double circuit_l1_norm(const Circuit &circuit, const DecompositionRegistry &registry) {
    double l1 = 1;
    for (const auto &op : circuit.ops()) {
        auto d = registry.lookup(op);
        if (d) {
            l1 *= d->l1_norm();
        } else if (!gate_is_native_clifford(op.gate)) {
            throw std::invalid_argument(std::string("no decomposition registered for ") +
                                        std::string(gate_name(op.gate)));
        }
    }
    return l1;
}

size_t choose_k(double l1_norm, double delta) {
    if (!(delta > 0)) {
        throw std::invalid_argument("delta must be positive");
    }
    if (!(l1_norm > 0)) {
        throw std::invalid_argument("l1 norm must be positive");
    }
    double r = l1_norm / delta;
    double k = std::floor(r * r + 1e-9);
    return std::max<size_t>(1, (size_t)k);
}

StabilizerSuperposition build_sparse_sum_over_cliffords(const Circuit &circuit, const DecompositionRegistry &registry,
                                                        size_t k, Rng &rng) {
    if (k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
    const size_t n = circuit.num_qubits();
    std::vector<PlannedOp> planned = plan(circuit, registry);
    double l1 = 1;
    for (const auto &p : planned) {
        if (p.decomposition) {
            l1 *= p.cumulative.back();
        }
    }
    // Shared Clifford prefix.
    CHForm base(n);
    size_t first = 0;
    while (first < planned.size() && !planned[first].decomposition) {
        base.apply_gate(planned[first].op->gate, planned[first].op->qubits);
        first++;
    }
    StabilizerSuperposition out(n);
    out.l1_norm = l1;
    const double magnitude = l1 / (double)k;
    for (size_t alpha = 0; alpha < k; alpha++) {
        CHForm state = base;
        cd phase = 1.0;
        for (size_t i = first; i < planned.size(); i++) {
            const PlannedOp &p = planned[i];
            if (!p.decomposition) {
                state.apply_gate(p.op->gate, p.op->qubits);
                continue;
            }
            double r = uniform01(rng) * p.cumulative.back();
            size_t j = (size_t)(std::upper_bound(p.cumulative.begin(), p.cumulative.end(), r) - p.cumulative.begin());
            j = std::min(j, p.cumulative.size() - 1);
            cd c = p.decomposition->terms[j].coeff;
            phase *= c / std::abs(c);
            apply_planned_term(state, p, j);
        }
        out.add(magnitude * phase, std::move(state));
    }
    return out;
}

StabilizerSuperposition build_exact_sum_over_cliffords(const Circuit &circuit, const DecompositionRegistry &registry) {
    const size_t n = circuit.num_qubits();
    std::vector<PlannedOp> planned = plan(circuit, registry);
    std::vector<SuperpositionTerm> current{{1.0, CHForm(n)}};
    for (const auto &p : planned) {
        if (!p.decomposition) {
            for (auto &t : current) {
                t.state.apply_gate(p.op->gate, p.op->qubits);
            }
            continue;
        }
        std::vector<SuperpositionTerm> next;
        next.reserve(current.size() * p.decomposition->terms.size());
        for (const auto &t : current) {
            for (size_t j = 0; j < p.decomposition->terms.size(); j++) {
                SuperpositionTerm u{t.coeff * p.decomposition->terms[j].coeff, t.state};
                apply_planned_term(u.state, p, j);
                next.push_back(std::move(u));
            }
        }
        current = std::move(next);
    }
    StabilizerSuperposition out(n);
    double l1 = 1;
    for (const auto &p : planned) {
        if (p.decomposition) {
            l1 *= p.cumulative.back();
        }
    }
    out.l1_norm = l1;
    for (auto &t : current) {
        out.add(t.coeff, std::move(t.state));
    }
    return out;
}

double tail_check(const StabilizerSuperposition &omega, double delta, const NormOptions &options, uint64_t seed) {
    return estimate_norm(omega, options, seed) - 1.0 + delta * delta;
}

}  // namespace stabsim
