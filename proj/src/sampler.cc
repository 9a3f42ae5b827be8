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

#include "stabsim/sampler.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabsim {

using cd = std::complex<double>;

namespace {

const cd kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

MetropolisChain::MetropolisChain(const StabilizerSuperposition &psi, Rng &rng, size_t max_start_retries)
    : n_(psi.num_qubits()), k_(psi.size()), w_(words_for_bits(psi.num_qubits())), psi_(&psi) {
    if (psi.empty()) {
        throw std::invalid_argument("cannot run a Metropolis chain on the zero vector");
    }
    const size_t block = n_ * w_;
    f_.resize(k_ * block);
    m_.resize(k_ * block);
    s_.resize(k_ * w_);
    v_.resize(k_ * w_);
    gamma_.resize(k_ * n_);
    weight_.resize(k_);
    std::vector<double> cumulative(k_);
    double acc = 0;
    for (size_t t = 0; t < k_; t++) {
        const auto &term = psi.terms()[t];
        const CHForm &st = term.state;
        for (size_t p = 0; p < n_; p++) {
            std::copy(st.F().row(p), st.F().row(p) + w_, f_.data() + t * block + p * w_);
            std::copy(st.M().row(p), st.M().row(p) + w_, m_.data() + t * block + p * w_);
            gamma_[t * n_ + p] = st.gamma()[p];
        }
        std::copy(st.s().data(), st.s().data() + w_, s_.data() + t * w_);
        std::copy(st.v().data(), st.v().data() + w_, v_.data() + t * w_);
        weight_[t] = term.coeff * st.omega().value() * std::pow(2.0, -(double)st.v().popcount() / 2);
        acc += std::norm(term.coeff * st.omega().value());
        cumulative[t] = acc;
    }
    a_.assign(k_ * w_, 0);
    b_.assign(k_ * w_, 0);
    a_next_.assign(k_ * w_, 0);
    b_next_.assign(k_ * w_, 0);
    mu_.assign(k_, 0);
    mu_next_.assign(k_, 0);

    for (size_t attempt = 0; attempt < max_start_retries; attempt++) {
        double r = uniform01(rng) * acc;
        size_t t = (size_t)(std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
        t = std::min(t, k_ - 1);
        reset_to(psi.terms()[t].state.sample_basis(rng));
        if (std::norm(amp_) > 0) {
            return;
        }
    }
    throw std::runtime_error("no starting point with nonzero probability found");
}

void MetropolisChain::reset_to(const BitVec &x) {
    x_ = x;
    std::fill(a_.begin(), a_.end(), 0);
    std::fill(b_.begin(), b_.end(), 0);
    const size_t block = n_ * w_;
    for (size_t t = 0; t < k_; t++) {
        uint64_t *a = a_.data() + t * w_;
        uint64_t *b = b_.data() + t * w_;
        int mu = 0;
        words::for_each_one(x.data(), w_, [&](size_t p) {
            const uint64_t *frow = f_.data() + t * block + p * w_;
            mu += gamma_[t * n_ + p] + 2 * (int)words::and_parity(b, frow, w_);
            words::xor_into(a, frow, w_);
            words::xor_into(b, m_.data() + t * block + p * w_, w_);
        });
        mu_[t] = (uint8_t)(mu & 3);
    }
    amp_ = evaluate(a_.data(), b_.data(), mu_.data());
}

cd MetropolisChain::evaluate(const uint64_t *a, const uint64_t *b, const uint8_t *mu) const {
    cd total = 0;
    for (size_t t = 0; t < k_; t++) {
        const uint64_t *at = a + t * w_;
        const uint64_t *bt = b + t * w_;
        const uint64_t *st = s_.data() + t * w_;
        const uint64_t *vt = v_.data() + t * w_;
        bool ok = true;
        uint64_t ab = 0, avs = 0;
        for (size_t k = 0; k < w_; k++) {
            if ((at[k] ^ st[k]) & ~vt[k]) {
                ok = false;
                break;
            }
            ab ^= at[k] & bt[k];
            avs ^= at[k] & vt[k] & st[k];
        }
        if (!ok) {
            continue;
        }
        int e = mu[t] + 2 * (std::popcount(ab) & 1) + 2 * (std::popcount(avs) & 1);
        total += weight_[t] * kPowersOfI[e & 3];
    }
    return total;
}

cd MetropolisChain::flipped_amplitude(size_t q) const {
    const size_t block = n_ * w_;
    for (size_t t = 0; t < k_; t++) {
        const uint64_t *frow = f_.data() + t * block + q * w_;
        const uint64_t *mrow = m_.data() + t * block + q * w_;
        const uint64_t *a = a_.data() + t * w_;
        const uint64_t *b = b_.data() + t * w_;
        uint64_t *an = a_next_.data() + t * w_;
        uint64_t *bn = b_next_.data() + t * w_;
        uint64_t par = 0;
        for (size_t k = 0; k < w_; k++) {
            par ^= b[k] & frow[k];
            an[k] = a[k] ^ frow[k];
            bn[k] = b[k] ^ mrow[k];
        }
        mu_next_[t] = (uint8_t)((mu_[t] + gamma_[t * n_ + q] + 2 * (std::popcount(par) & 1)) & 3);
    }
    return evaluate(a_next_.data(), b_next_.data(), mu_next_.data());
}

bool MetropolisChain::step(Rng &rng) {
    size_t q = uniform_below(rng, n_);
    cd next = flipped_amplitude(q);
    proposed_++;
    double ratio = std::norm(next) / std::norm(amp_);
    if (ratio >= 1 || uniform01(rng) < ratio) {
        std::swap(a_, a_next_);
        std::swap(b_, b_next_);
        std::swap(mu_, mu_next_);
        x_.flip(q);
        amp_ = next;
        accepted_++;
#ifdef STABSIM_CHECK_CACHE
        if (std::abs(recompute_amplitude() - amp_) > 1e-9) {
            throw std::logic_error("cached amplitude diverged from the tableau amplitude");
        }
#endif
        return true;
    }
    return false;
}

cd MetropolisChain::recompute_amplitude() const {
    cd total = 0;
    for (const auto &term : psi_->terms()) {
        GlobalPhase a = term.state.amplitude(x_);
        if (!a.zero) {
            total += term.coeff * a.value();
        }
    }
    return total;
}

MetropolisResult metropolis_sample(const StabilizerSuperposition &psi, size_t steps, size_t burn_in, Rng &rng) {
    MetropolisChain chain(psi, rng);
    for (size_t i = 0; i < burn_in; i++) {
        chain.step(rng);
    }
    MetropolisResult result;
    result.samples.reserve(steps);
    for (size_t i = 0; i < steps; i++) {
        chain.step(rng);
        result.samples.push_back(chain.current());
    }
    result.accepted = chain.accepted();
    result.proposed = chain.proposed();
    return result;
}

ChainRuleSampler::ChainRuleSampler(const StabilizerSuperposition &psi, ChainRuleOptions options, uint64_t seed)
    : ChainRuleSampler(psi, options, seed, nullptr) {
}

ChainRuleSampler::ChainRuleSampler(const StabilizerSuperposition &psi, ChainRuleOptions options, uint64_t seed,
                                   NormFunction norm)
    : n_(psi.num_qubits()), options_(options), seed_(seed), norm_(std::move(norm)) {
    if (options_.w == 0 || options_.w > n_) {
        throw std::invalid_argument("chain-rule sampler needs 1 <= w <= n");
    }
    eps_ = options_.eps_norm > 0 ? options_.eps_norm : std::min(0.1, 1.0 / (4.0 * (double)options_.w));
    if (!norm_) {
        NormOptions no{eps_, options_.p_fail, options_.workers};
        norm_ = [no](const StabilizerSuperposition &s, uint64_t sd) { return estimate_norm(s, no, sd); };
    }
    Node root{psi, 0};
    if (options_.compact) {
        root.state.compact();
    }
    root.norm = root.state.empty() ? 0.0 : norm_(root.state, derive_rng(seed_, 0, "prefix:")());
    evaluations_++;
    nodes_.emplace("", std::move(root));
}

ChainRuleSampler::Node &ChainRuleSampler::node(const std::string &prefix) {
    auto it = nodes_.find(prefix);
    if (it != nodes_.end()) {
        return it->second;
    }
    const Node &parent = node(prefix.substr(0, prefix.size() - 1));
    Node child{parent.state, 0};
    child.state.apply_projector_all(prefix.size() - 1, prefix.back() == '1');
    if (options_.compact) {
        child.state.compact();
    }
    if (!child.state.empty()) {
        child.norm = norm_(child.state, derive_rng(seed_, prefix.size(), "prefix:" + prefix)());
        evaluations_++;
    }
    return nodes_.emplace(prefix, std::move(child)).first->second;
}

BitVec ChainRuleSampler::sample(Rng &rng) {
    if (!(node("").norm > 0)) {
        throw std::runtime_error("chain-rule sampler: the state has zero estimated norm");
    }
    for (size_t attempt = 0; attempt < options_.max_retries; attempt++) {
        std::string prefix;
        bool restart = false;
        for (size_t j = 0; j < options_.w; j++) {
            double parent = node(prefix).norm;
            double n0 = std::max(0.0, node(prefix + '0').norm);
            double n1 = std::max(0.0, node(prefix + '1').norm);
            if (n0 < 1e-3 * parent && n1 < 1e-3 * parent) {
                restart = true;
                break;
            }
            prefix += (uniform01(rng) * (n0 + n1) < n1) ? '1' : '0';
        }
        if (!restart) {
            return BitVec::from_string(prefix);
        }
    }
    throw std::runtime_error("chain-rule sampler: every prefix vanished within the retry budget");
}

double ChainRuleSampler::prefix_probability(const BitVec &prefix) {
    if (prefix.size() != options_.w) {
        throw std::invalid_argument("prefix length must equal w");
    }
    double p = 1;
    std::string s;
    for (size_t j = 0; j < options_.w; j++) {
        double n0 = std::max(0.0, node(s + '0').norm);
        double n1 = std::max(0.0, node(s + '1').norm);
        if (n0 + n1 <= 0) {
            return 0;
        }
        bool bit = prefix[j];
        p *= (bit ? n1 : n0) / (n0 + n1);
        s += bit ? '1' : '0';
        if (p == 0) {
            return 0;
        }
    }
    return p;
}

std::vector<BitVec> chain_rule_sample(const StabilizerSuperposition &psi, size_t count, ChainRuleOptions options,
                                      uint64_t seed) {
    ChainRuleSampler sampler(psi, options, seed);
    Rng rng = derive_rng(seed, 0, "chain-rule-draws");
    std::vector<BitVec> out;
    out.reserve(count);
    for (size_t i = 0; i < count; i++) {
        out.push_back(sampler.sample(rng));
    }
    return out;
}

ProbabilityEstimate estimate_output_probability(const StabilizerSuperposition &psi, const Assignment &assignment,
                                                double eps, double p_fail, uint64_t seed, size_t workers) {
    if (!(eps > 0 && eps < 1) || !(p_fail > 0 && p_fail < 1)) {
        throw std::invalid_argument("eps and p_fail must lie in (0, 1)");
    }
    // Merging identical tableaux keeps both vectors and shortens the estimates.
    StabilizerSuperposition whole = psi;
    whole.compact();
    StabilizerSuperposition projected = whole;
    for (const auto &[q, bit] : assignment) {
        if (q >= psi.num_qubits()) {
            throw std::out_of_range("assignment qubit out of range");
        }
        projected.apply_projector_all(q, bit);
    }
    projected.compact();
    NormOptions options{eps / 3, p_fail / 2, workers};
    ProbabilityEstimate r;
    r.denominator = estimate_norm(whole, options, derive_rng(seed, 0, "probability:denominator")());
    if (!(r.denominator > 0)) {
        throw std::runtime_error("norm estimate of the state vanished");
    }
    r.numerator = estimate_norm(projected, options, derive_rng(seed, 0, "probability:numerator")());
    r.probability = r.numerator / r.denominator;
    return r;
}

std::vector<double> estimate_marginals(const StabilizerSuperposition &psi, size_t count, const NormOptions &options,
                                       uint64_t seed) {
    if (count > psi.num_qubits()) {
        throw std::invalid_argument("more marginals requested than qubits");
    }
    double total = estimate_norm(psi, options, derive_rng(seed, 0, "marginal:total")());
    if (!(total > 0)) {
        throw std::runtime_error("norm estimate of the state vanished");
    }
    std::vector<double> out(count);
    for (size_t j = 0; j < count; j++) {
        StabilizerSuperposition projected = psi;
        projected.apply_projector_all(j, true);
        out[j] = estimate_norm(projected, options, derive_rng(seed, j + 1, "marginal")()) / total;
    }
    return out;
}

double batch_means_stderr(const std::vector<double> &series, size_t batches) {
    if (batches < 2 || series.size() < batches) {
        throw std::invalid_argument("not enough data for batch means");
    }
    size_t size = series.size() / batches;
    std::vector<double> means(batches, 0);
    for (size_t b = 0; b < batches; b++) {
        for (size_t i = 0; i < size; i++) {
            means[b] += series[b * size + i];
        }
        means[b] /= (double)size;
    }
    double mean = 0;
    for (double m : means) {
        mean += m;
    }
    mean /= (double)batches;
    double var = 0;
    for (double m : means) {
        var += (m - mean) * (m - mean);
    }
    var /= (double)(batches - 1);
    return std::sqrt(var / (double)batches);
}

}  // namespace stabsim
