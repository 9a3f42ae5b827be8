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

#include "stabsim/cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "stabsim/extent.h"
#include "stabsim/gadget.h"
#include "stabsim/generators.h"

namespace stabsim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string bits_string(const BitVec &x, size_t count) {
    std::string s(count, '0');
    for (size_t j = 0; j < count; j++) {
        if (x[j]) {
            s[j] = '1';
        }
    }
    return s;
}

void write_sample(std::ostream &out, OutputFormat format, const std::string &bits, size_t index) {
    if (format == OutputFormat::Bits) {
        out << bits << '\n';
    } else {
        out << nlohmann::json{{"sample", bits}, {"step_index", index}}.dump() << '\n';
    }
}

std::vector<std::string> metropolis_stream(const StabilizerSuperposition &psi, size_t num_data, size_t count,
                                           size_t burn_in, size_t thin, uint64_t seed, size_t worker,
                                           std::vector<size_t> &steps) {
    Rng rng = derive_rng(seed, worker, "metropolis");
    MetropolisChain chain(psi, rng);
    for (size_t i = 0; i < burn_in; i++) {
        chain.step(rng);
    }
    std::vector<std::string> out;
    out.reserve(count);
    size_t step = burn_in;
    for (size_t i = 0; i < count; i++) {
        for (size_t t = 0; t < thin; t++) {
            chain.step(rng);
        }
        step += thin;
        out.push_back(bits_string(chain.current(), num_data));
        steps.push_back(step);
    }
    return out;
}

Amplitudes magic_state(const std::vector<Amplitudes> &matrix) {
    size_t dim = matrix.size();
    Amplitudes psi(dim, 0.0);
    double scale = 1 / std::sqrt((double)dim);
    for (size_t c = 0; c < dim; c++) {
        for (size_t r = 0; r < dim; r++) {
            psi[r] += matrix[c][r] * scale;
        }
    }
    return psi;
}

std::vector<size_t> parse_size_list(const std::string &text) {
    std::vector<size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back((size_t)std::stoul(item));
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(parse_angle(item));
        }
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("--delta must lie in (0, 1)");
    }
    if (!(eps > 0 && eps < 1)) {
        throw std::invalid_argument("--eps must lie in (0, 1)");
    }
    if (!(p_fail > 0 && p_fail < 1)) {
        throw std::invalid_argument("--pfail must lie in (0, 1)");
    }
    if (workers == 0) {
        throw std::invalid_argument("--workers must be positive");
    }
    if (steps == 0) {
        throw std::invalid_argument("--steps must be positive");
    }
}

PreparedRun prepare_run(const RunConfig &config, const Circuit &circuit, const DecompositionRegistry &registry) {
    config.validate();
    PreparedRun run;
    run.num_data = circuit.num_qubits();
    run.extent_bound = extent_product_bound(circuit, registry);
    Rng rng = derive_rng(config.seed, 0, "build");
    if (config.method == Method::SumOverCliffords) {
        run.l1_norm = circuit_l1_norm(circuit, registry);
        bool exact = true;
        for (const auto &entry : classify(circuit, registry).non_clifford) {
            auto d = registry.lookup(circuit.ops()[entry.index]);
            exact &= !d.has_value() || d->is_clifford();
        }
        run.k = exact ? 1 : choose_k(run.l1_norm, config.delta);
        run.state = build_sparse_sum_over_cliffords(circuit, registry, run.k, rng);
    } else {
        GadgetizedCircuit g = gadgetize(circuit, registry);
        run.tau = g.tau;
        run.l1_norm = g.l1_norm();
        run.k = g.gadgets.empty() ? 1 : choose_k(run.l1_norm, config.delta);
        run.state = gadget_superposition(g, run.k, rng);
        run.state.l1_norm = run.l1_norm;
        run.state.delta = g.gadgets.empty() ? 0.0 : config.delta;
    }
    return run;
}

nlohmann::json cmd_simulate(const RunConfig &config, const Circuit &circuit, const DecompositionRegistry &registry,
                            std::ostream &samples_out) {
    auto start = Clock::now();
    PreparedRun run = prepare_run(config, circuit, registry);
    nlohmann::json summary{{"k", run.k},
                           {"extent_bound", run.extent_bound},
                           {"l1_norm", run.l1_norm},
                           {"delta", config.delta},
                           {"seed", config.seed},
                           {"method", config.method == Method::SumOverCliffords ? "sum-over-cliffords" : "gadget-fixed"},
                           {"tau", run.tau},
                           {"samples", config.samples},
                           {"workers", config.workers}};
    if (run.state.empty()) {
        throw std::runtime_error("sparsified state vanished; nothing to sample");
    }
    if (config.sampler == SamplerKind::Metropolis) {
        summary["sampler"] = "metropolis";
        summary["burn_in"] = config.burn_in;
        summary["steps"] = config.steps;
        std::vector<std::vector<std::string>> chunks(config.workers);
        std::vector<std::vector<size_t>> steps(config.workers);
        std::vector<std::exception_ptr> errors(config.workers);
        std::vector<std::thread> threads;
        for (size_t wk = 0; wk < config.workers; wk++) {
            size_t count = config.samples / config.workers + (wk < config.samples % config.workers ? 1 : 0);
            auto job = [&, wk, count] {
                try {
                    chunks[wk] = metropolis_stream(run.state, run.num_data, count, config.burn_in, config.steps,
                                                   config.seed, wk, steps[wk]);
                } catch (...) {
                    errors[wk] = std::current_exception();
                }
            };
            if (config.workers == 1) {
                job();
            } else {
                threads.emplace_back(job);
            }
        }
        for (auto &t : threads) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
        for (size_t wk = 0; wk < config.workers; wk++) {
            for (size_t i = 0; i < chunks[wk].size(); i++) {
                write_sample(samples_out, config.format, chunks[wk][i], steps[wk][i]);
            }
        }
    } else {
        summary["sampler"] = "chain-rule";
        ChainRuleOptions options;
        options.w = config.width == 0 ? run.num_data : config.width;
        if (options.w > run.num_data) {
            throw std::invalid_argument("--width exceeds the number of data qubits");
        }
        options.eps_norm = config.eps_given ? config.eps : 0.0;
        options.p_fail = config.p_fail;
        options.workers = config.workers;
        ChainRuleSampler sampler(run.state, options, config.seed);
        Rng rng = derive_rng(config.seed, 0, "chain-rule-draws");
        for (size_t i = 0; i < config.samples; i++) {
            write_sample(samples_out, config.format, bits_string(sampler.sample(rng), options.w), i);
        }
        summary["width"] = options.w;
        summary["eps_norm"] = sampler.eps_norm();
        summary["norm_evaluations"] = sampler.norm_evaluations();
    }
    summary["wall_time"] = seconds_since(start);
    return summary;
}

Assignment parse_assignment(const std::string &pattern, size_t n) {
    if (pattern.size() > n) {
        throw std::invalid_argument("bit pattern longer than the qubit count");
    }
    Assignment a;
    for (size_t j = 0; j < pattern.size(); j++) {
        char c = pattern[j];
        if (c == '0' || c == '1') {
            a.push_back({j, c == '1'});
        } else if (c != '*' && c != 'x' && c != 'X') {
            throw std::invalid_argument(std::string("bit pattern character '") + c + "' is not 0, 1 or *");
        }
    }
    return a;
}

nlohmann::json cmd_probability(const RunConfig &config, const Circuit &circuit, const DecompositionRegistry &registry,
                               const std::string &pattern) {
    auto start = Clock::now();
    Assignment assignment = parse_assignment(pattern, circuit.num_qubits());
    PreparedRun run = prepare_run(config, circuit, registry);
    if (run.state.empty()) {
        throw std::runtime_error("sparsified state vanished");
    }
    ProbabilityEstimate est =
        estimate_output_probability(run.state, assignment, config.eps, config.p_fail, config.seed, config.workers);
    return {{"probability", est.probability},
            {"numerator", est.numerator},
            {"denominator", est.denominator},
            {"pattern", pattern},
            {"eps", config.eps},
            {"p_fail", config.p_fail},
            {"k", run.k},
            {"extent_bound", run.extent_bound},
            {"delta", config.delta},
            {"seed", config.seed},
            {"tau", run.tau},
            {"renormalization", std::pow(2.0, (double)run.tau / 2)},
            {"method", config.method == Method::SumOverCliffords ? "sum-over-cliffords" : "gadget-fixed"},
            {"wall_time", seconds_since(start)}};
}

nlohmann::json cmd_extent_amplitudes(const Amplitudes &psi, double tol) {
    ExtentResult r = solve_extent(psi, tol);
    return {{"extent", r.extent},
            {"lower_bound", r.lower_bound},
            {"gap", r.gap},
            {"fidelity", stabilizer_fidelity(psi)},
            {"qubits", std::countr_zero(psi.size())}};
}

nlohmann::json cmd_extent(const std::string &target, double tol) {
    std::string name = target;
    std::string angle;
    if (auto colon = target.find(':'); colon != std::string::npos) {
        name = target.substr(0, colon);
        angle = target.substr(colon + 1);
    }
    for (auto &c : name) {
        c = (char)std::toupper((unsigned char)c);
    }
    Amplitudes psi;
    if (name == "ZERO") {
        psi = {1.0, 0.0};
    } else if (name == "PLUS") {
        psi = {std::sqrt(0.5), std::sqrt(0.5)};
    } else if (name == "FACE") {
        double theta = std::acos(1 / std::sqrt(3.0));
        psi = {std::cos(theta / 2), std::polar(std::sin(theta / 2), std::numbers::pi / 4)};
    } else {
        auto gate = gate_from_name(name);
        if (!gate) {
            throw std::invalid_argument("unknown extent target '" + target + "'");
        }
        if (gate_takes_angle(*gate) && angle.empty()) {
            throw std::invalid_argument(name + " needs an angle, e.g. " + name + ":pi/8");
        }
        psi = magic_state(gate_matrix(*gate, angle.empty() ? 0.0 : parse_angle(angle)));
    }
    nlohmann::json j = cmd_extent_amplitudes(psi, tol);
    j["target"] = target;
    return j;
}

void cmd_bench(const std::string &suite, const BenchParams &params, std::ostream &csv) {
    csv << kBenchHeader << '\n';
    csv << std::setprecision(10);
    DecompositionRegistry registry;
    if (suite == "hidden-shift") {
        size_t instance = 0;
        for (size_t ccz : params.ccz_counts) {
            for (size_t s = 0; s < params.seeds; s++) {
                uint64_t seed = params.seed + s;
                auto start = Clock::now();
                HiddenShiftInstance hs = gen_hidden_shift(params.n, ccz, seed);
                RunConfig config;
                config.delta = params.delta;
                config.seed = seed;
                PreparedRun run = prepare_run(config, hs.circuit, registry);
                NormOptions options{params.eps, params.p_fail, params.workers};
                auto marginals = estimate_marginals(run.state, params.n, options, seed);
                size_t wrong = 0;
                for (size_t j = 0; j < params.n; j++) {
                    wrong += (marginals[j] > 0.5) != hs.shift[j];
                }
                csv << "hidden-shift," << instance++ << ',' << params.n << ',' << ccz << ',' << seed << ',' << run.k
                    << ',' << run.extent_bound << ',' << seconds_since(start) << ','
                    << (double)wrong / (double)params.n << '\n';
            }
        }
    } else if (suite == "qaoa") {
        size_t instance = 0;
        for (size_t s = 0; s < params.seeds; s++) {
            uint64_t seed = params.seed + s;
            E3Lin2Instance inst = random_e3lin2(params.n, params.D, seed);
            for (double gamma : params.gammas) {
                auto start = Clock::now();
                Circuit c = qaoa_circuit(inst, gamma);
                RunConfig config;
                config.delta = params.delta;
                config.seed = seed;
                PreparedRun run = prepare_run(config, c, registry);
                Rng rng = derive_rng(seed, 0, "bench-metropolis");
                MetropolisResult mr = metropolis_sample(run.state, params.samples, params.burn_in, rng);
                double e_sim = 0;
                for (const auto &x : mr.samples) {
                    e_sim += cost_e3lin2_bits(inst, x);
                }
                e_sim /= (double)mr.samples.size();
                double runtime = seconds_since(start);
                double reference;
                if (params.n <= max_dense_qubits()) {
                    reference = qaoa_energy_dense(inst, dense_run(c));
                } else {
                    reference = qaoa_energy_monte_carlo(inst, gamma, 100000, seed).mean;
                }
                csv << "qaoa," << instance++ << ',' << params.n << ',' << gamma << ',' << seed << ',' << run.k << ','
                    << run.extent_bound << ',' << runtime << ',' << std::abs(e_sim - reference) << '\n';
            }
        }
    } else {
        throw std::invalid_argument("unknown bench suite '" + suite + "' (expected hidden-shift or qaoa)");
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Near-Clifford circuit simulator based on stabilizer-state superpositions"};
    app.require_subcommand(1);

    RunConfig config;
    std::string method = "sum-over-cliffords";
    std::string sampler = "metropolis";
    std::string format = "bits";
    std::string circuit_path;
    std::string decompositions;
    std::string summary_path;
    std::string pattern;

    auto add_run_flags = [&](CLI::App *cmd) {
        cmd->add_option("circuit", circuit_path, "Circuit file")->required();
        cmd->add_option("--method", method, "sum-over-cliffords or gadget-fixed")
            ->check(CLI::IsMember({"sum-over-cliffords", "gadget-fixed"}));
        cmd->add_option("--delta", config.delta, "Sparsification error");
        cmd->add_option("--eps", config.eps, "Relative error of norm estimates");
        cmd->add_option("--pfail", config.p_fail, "Failure probability of norm estimates");
        cmd->add_option("--seed", config.seed, "Master seed");
        cmd->add_option("--workers", config.workers, "Worker threads");
        cmd->add_option("--decompositions", decompositions, "JSON file with extra gate decompositions");
    };

    CLI::App *simulate = app.add_subcommand("simulate", "Sample output bit strings");
    add_run_flags(simulate);
    simulate->add_option("--sampler", sampler, "metropolis or chain-rule")
        ->check(CLI::IsMember({"metropolis", "chain-rule"}));
    simulate->add_option("--steps", config.steps, "Metropolis steps between emitted samples");
    simulate->add_option("--burnin", config.burn_in, "Metropolis burn-in steps");
    simulate->add_option("--samples", config.samples, "Number of samples");
    simulate->add_option("--width", config.width, "Chain-rule bits per sample (default: all qubits)");
    simulate->add_option("--out", config.out, "Sample output file (default: stdout)");
    simulate->add_option("--format", format, "bits or jsonl")->check(CLI::IsMember({"bits", "jsonl"}));
    simulate->add_option("--summary", summary_path, "Summary JSON file (default: stderr)");

    CLI::App *probability = app.add_subcommand("probability", "Estimate an output or marginal probability");
    add_run_flags(probability);
    probability->add_option("--bits", pattern, "Pattern over 0, 1 and * for qubits 0, 1, ...")->required();

    std::string extent_target;
    std::string amplitudes_path;
    double tol = 1e-7;
    CLI::App *extent = app.add_subcommand("extent", "Stabilizer extent and fidelity of a small state");
    extent->add_option("target", extent_target, "T, TDG, CCZ, RZ:<angle>, PHASE:<angle>, zero, plus or face");
    extent->add_option("--amplitudes", amplitudes_path, "JSON file with [[re, im], ...] amplitudes");
    extent->add_option("--tol", tol, "Duality gap tolerance");

    BenchParams bench_params;
    std::string suite;
    std::string ccz_list = "2,4,6";
    std::string gamma_list = "-0.6,-0.4,-0.2,-0.1,0.1,0.2,0.4,0.6";
    std::string bench_out;
    CLI::App *bench = app.add_subcommand("bench", "Benchmark suites as CSV");
    bench->add_option("suite", suite, "hidden-shift or qaoa")->required();
    bench->add_option("--n", bench_params.n, "Qubit count");
    bench->add_option("--D", bench_params.D, "QAOA variable degree");
    bench->add_option("--ccz", ccz_list, "Comma-separated CCZ counts");
    bench->add_option("--gammas", gamma_list, "Comma-separated QAOA angles");
    bench->add_option("--delta", bench_params.delta, "Sparsification error");
    bench->add_option("--eps", bench_params.eps, "Relative error of norm estimates");
    bench->add_option("--pfail", bench_params.p_fail, "Failure probability of norm estimates");
    bench->add_option("--seeds", bench_params.seeds, "Instances per parameter");
    bench->add_option("--samples", bench_params.samples, "Metropolis samples per QAOA point");
    bench->add_option("--burnin", bench_params.burn_in, "Metropolis burn-in per QAOA point");
    bench->add_option("--seed", bench_params.seed, "First instance seed");
    bench->add_option("--workers", bench_params.workers, "Worker threads");
    bench->add_option("--out", bench_out, "CSV output file (default: stdout)");

    std::vector<std::string> storage;
    storage.push_back("stabsim");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : storage) {
        argv.push_back(s.data());
    }
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        config.method = method == "gadget-fixed" ? Method::GadgetFixed : Method::SumOverCliffords;
        config.sampler = sampler == "chain-rule" ? SamplerKind::ChainRule : SamplerKind::Metropolis;
        config.format = format == "jsonl" ? OutputFormat::Jsonl : OutputFormat::Bits;
        if (simulate->parsed()) {
            config.eps_given = simulate->count("--eps") > 0;
        }
        DecompositionRegistry registry;
        if (!decompositions.empty()) {
            registry.load_file(decompositions);
        }

        if (simulate->parsed()) {
            Circuit circuit = read_circuit_file(circuit_path);
            nlohmann::json summary;
            if (config.out.empty()) {
                summary = cmd_simulate(config, circuit, registry, out);
            } else {
                std::ofstream file(config.out);
                if (!file) {
                    throw std::runtime_error("cannot open " + config.out);
                }
                summary = cmd_simulate(config, circuit, registry, file);
            }
            if (summary_path.empty()) {
                err << summary.dump() << '\n';
            } else {
                std::ofstream file(summary_path);
                file << summary.dump(2) << '\n';
            }
        } else if (probability->parsed()) {
            Circuit circuit = read_circuit_file(circuit_path);
            out << cmd_probability(config, circuit, registry, pattern).dump() << '\n';
        } else if (extent->parsed()) {
            if (!amplitudes_path.empty()) {
                std::ifstream file(amplitudes_path);
                if (!file) {
                    throw std::runtime_error("cannot open " + amplitudes_path);
                }
                nlohmann::json j = nlohmann::json::parse(file);
                Amplitudes psi;
                for (const auto &a : j) {
                    psi.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
                }
                out << cmd_extent_amplitudes(psi, tol).dump() << '\n';
            } else if (!extent_target.empty()) {
                out << cmd_extent(extent_target, tol).dump() << '\n';
            } else {
                throw std::invalid_argument("extent needs a target or --amplitudes");
            }
        } else if (bench->parsed()) {
            bench_params.ccz_counts = parse_size_list(ccz_list);
            bench_params.gammas = parse_double_list(gamma_list);
            if (bench_out.empty()) {
                cmd_bench(suite, bench_params, out);
            } else {
                std::ofstream file(bench_out);
                if (!file) {
                    throw std::runtime_error("cannot open " + bench_out);
                }
                cmd_bench(suite, bench_params, file);
            }
        }
    } catch (const CircuitParseError &e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace stabsim
