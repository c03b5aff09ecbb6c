// Copyright 2026 The qbaker Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qbaker/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbaker/experiments.hpp"

#ifndef QBAKER_VERSION
#define QBAKER_VERSION "0.0.0-unknown"
#endif

namespace qbaker {

const char *version_string() { return QBAKER_VERSION; }

namespace {

std::string num(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

void require(bool cond, const std::string &msg) {
    if (!cond)
        throw std::invalid_argument(msg);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        parts.push_back(cur);
    if (!s.empty() && s.back() == sep)
        parts.emplace_back();
    return parts;
}

int parse_int(const std::string &s, const std::string &what) {
    int v = 0;
    const auto *end = s.data() + s.size();
    auto res = std::from_chars(s.data(), end, v);
    require(!s.empty() && res.ec == std::errc{} && res.ptr == end, "invalid " + what + " '" + s + "'");
    return v;
}

std::pair<int, int> parse_int_pair(const std::string &s, const std::string &what) {
    const auto parts = split(s, ',');
    require(parts.size() == 2, what + " must have the form a,b");
    return {parse_int(parts[0], what), parse_int(parts[1], what)};
}

/// "all" -> 1..N (or 1..N-1 when `proper`), otherwise a comma list.
std::vector<int> parse_map_list(const std::string &s, int num_qubits) {
    std::vector<int> ns;
    if (s == "all") {
        for (int n = 1; n <= num_qubits; ++n)
            ns.push_back(n);
        return ns;
    }
    for (const auto &p : split(s, ','))
        ns.push_back(parse_int(p, "map n"));
    require(!ns.empty(), "no map n given");
    return ns;
}

std::vector<MeasureId> parse_measures(const std::string &s) {
    std::vector<MeasureId> ms;
    for (const auto &p : split(s, ','))
        ms.push_back(parse_measure(p));
    require(!ms.empty(), "no measure given");
    return ms;
}

Strategy parse_strategy(const std::string &s) {
    if (s == "matrix-free" || s == "matrix_free")
        return Strategy::matrix_free;
    if (s == "dense")
        return Strategy::dense;
    throw std::invalid_argument("unknown strategy '" + s + "' (expected matrix-free or dense)");
}

struct Common {
    std::string out;
    unsigned threads = 0;
    std::uint64_t seed = 1;
};

class Writer {
  public:
    Writer(const std::string &path, std::ostream &fallback) : os_(&fallback) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            require(static_cast<bool>(*file_), "cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream &os() { return *os_; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *os_;
};

void write_header(std::ostream &os, const std::string &command, const std::optional<std::uint64_t> &seed) {
    os << "# command: " << command << '\n';
    if (seed)
        os << "# seed: " << *seed << '\n';
    os << "# version: qbaker " << version_string() << '\n';
    os << "# conventions: qubit 1 is the most significant bit; entropies S in nats; E_f in bits\n";
}

std::string joined_command(int argc, const char *const *argv) {
    std::string cmd = "qbaker";
    for (int i = 1; i < argc; ++i) {
        cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

std::optional<Partition> partition_for(int num_qubits, const std::string &spec, bool needed) {
    if (!spec.empty())
        return Partition::parse(num_qubits, spec);
    if (needed)
        return Partition::range(num_qubits, 1, num_qubits / 2);
    return std::nullopt;
}

std::optional<std::pair<int, int>> pair_for(int num_qubits, const std::string &spec, bool needed) {
    if (!spec.empty())
        return parse_int_pair(spec, "pair");
    if (needed)
        return std::make_pair(1, num_qubits);
    return std::nullopt;
}

bool needs_partition(const std::vector<MeasureId> &ms) {
    for (auto m : ms)
        if (m == MeasureId::purity || m == MeasureId::linear_entropy || m == MeasureId::von_neumann)
            return true;
    return false;
}

bool needs_pair(const std::vector<MeasureId> &ms) {
    for (auto m : ms)
        if (measure_uses_pair(m))
            return true;
    return false;
}

}  // namespace

int cli_dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum baker's maps: entanglement simulation and random-state statistics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("qbaker ") + version_string());

    Common common;
    auto add_common = [&](CLI::App *sub, bool seeded) {
        sub->add_option("--out", common.out, "Output CSV path (default stdout)");
        sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
        if (seeded)
            sub->add_option("--seed", common.seed, "Master seed");
    };

    // analytic
    std::size_t a_mu = 0, a_nu = 0;
    int a_qubits = 0;
    auto *analytic = app.add_subcommand("analytic", "Closed-form random-state statistics");
    analytic->add_option("--mu", a_mu, "Smaller subsystem dimension")->required();
    analytic->add_option("--nu", a_nu, "Larger subsystem dimension")->required();
    analytic->add_option("--qubits", a_qubits, "Also report Q and tau moments for N qubits");
    add_common(analytic, false);

    // sample
    int s_qubits = 8, s_n = 1, s_steps = 0;
    std::size_t s_samples = 10000, s_bins = 100;
    std::string s_measure = "slin", s_partition, s_pair, s_source = "haar", s_initial = "product";
    auto *sample = app.add_subcommand("sample", "Histogram of a measure over an ensemble");
    sample->add_option("--qubits", s_qubits, "Number of qubits");
    sample->add_option("--measure", s_measure, "Measure name");
    sample->add_option("--partition", s_partition, "Kept qubits, e.g. 1-4");
    sample->add_option("--pair", s_pair, "Concurrence pair, e.g. 1,8");
    sample->add_option("--samples", s_samples, "Number of samples");
    sample->add_option("--bins", s_bins, "Histogram bins");
    sample->add_option("--source", s_source, "haar or baked");
    sample->add_option("--n", s_n, "Map position bits (baked source)");
    sample->add_option("--steps", s_steps, "Map iterations (baked source)");
    sample->add_option("--initial", s_initial, "Initial ensemble (baked source)");
    add_common(sample, true);

    // evolve
    int e_qubits = 8, e_steps = 100;
    std::size_t e_samples = 100;
    std::string e_n = "1", e_initial = "product", e_measure = "slin", e_partition, e_pair,
                e_strategy = "matrix-free";
    auto *evolve = app.add_subcommand("evolve", "Ensemble statistics of measures along baked trajectories");
    evolve->add_option("--qubits", e_qubits, "Number of qubits");
    evolve->add_option("--n", e_n, "Map position bits: integer, comma list or all");
    evolve->add_option("--initial", e_initial, "product, haar, maxent or a bitstring");
    evolve->add_option("--steps", e_steps, "Number of map iterations");
    evolve->add_option("--samples", e_samples, "Number of trials");
    evolve->add_option("--measure", e_measure, "Comma-separated measure names");
    evolve->add_option("--partition", e_partition, "Kept qubits, e.g. 1-4");
    evolve->add_option("--pair", e_pair, "Concurrence pair, e.g. 1,8");
    evolve->add_option("--strategy", e_strategy, "matrix-free or dense");
    add_common(evolve, true);

    // pairwise
    int p_qubits = 4, p_n = 1, p_steps = 0;
    std::size_t p_samples = 100000, p_bins = 100;
    std::string p_pair, p_source = "haar";
    auto *pairwise = app.add_subcommand("pairwise", "Probability of pairwise entanglement and c histogram");
    pairwise->add_option("--qubits", p_qubits, "Number of qubits");
    pairwise->add_option("--samples", p_samples, "Number of samples");
    pairwise->add_option("--pair", p_pair, "Qubit pair (default 1,N)");
    pairwise->add_option("--source", p_source, "haar or baked");
    pairwise->add_option("--n", p_n, "Map position bits (baked source)");
    pairwise->add_option("--steps", p_steps, "Map iterations (baked source)");
    pairwise->add_option("--bins", p_bins, "Histogram bins");
    add_common(pairwise, true);

    // saturation
    int t_qubits = 8, t_stride = 512, t_count = 100;
    std::size_t t_samples = 4000;
    std::string t_n = "all", t_measure = "q", t_partition, t_pair;
    auto *saturation = app.add_subcommand("saturation", "Long-time average of the ensemble-mean measure");
    saturation->add_option("--qubits", t_qubits, "Number of qubits");
    saturation->add_option("--n", t_n, "Map position bits: integer, comma list or all");
    saturation->add_option("--stride", t_stride, "Iterate stride");
    saturation->add_option("--count", t_count, "Number of strided iterates averaged");
    saturation->add_option("--samples", t_samples, "Number of trials");
    saturation->add_option("--measure", t_measure, "Measure name");
    saturation->add_option("--partition", t_partition, "Kept qubits, e.g. 1-4");
    saturation->add_option("--pair", t_pair, "Concurrence pair, e.g. 1,8");
    add_common(saturation, true);

    // ranking
    int r_qubits = 8;
    std::size_t r_samples = 2000;
    std::string r_window = "200,500", r_partition;
    auto *ranking = app.add_subcommand("ranking", "Order maps by window-averaged mean linear entropy");
    ranking->add_option("--qubits", r_qubits, "Number of qubits");
    ranking->add_option("--samples", r_samples, "Number of trials");
    ranking->add_option("--window", r_window, "First and last step, e.g. 200,500");
    ranking->add_option("--partition", r_partition, "Kept qubits (default first half)");
    add_common(ranking, true);

    // spectrum
    int sp_qubits = 2;
    auto *spectrum = app.add_subcommand("spectrum", "Analytic eigenpairs of the fully transformed map");
    spectrum->add_option("--qubits", sp_qubits, "Number of qubits");
    add_common(spectrum, false);

    // map-matrix
    int m_qubits = 2, m_n = 1;
    auto *map_matrix = app.add_subcommand("map-matrix", "Dense baker's map matrix as CSV");
    map_matrix->add_option("--qubits", m_qubits, "Number of qubits");
    map_matrix->add_option("--n", m_n, "Map position bits");
    add_common(map_matrix, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitArgument;
    }

    const std::string command = joined_command(argc, argv);

    try {
        if (analytic->parsed()) {
            require(a_mu >= 2 && a_nu >= 2, "mu and nu must be at least 2");
            Writer w(common.out, out);
            auto &os = w.os();
            write_header(os, command, std::nullopt);
            const std::size_t mu = std::min(a_mu, a_nu), nu = std::max(a_mu, a_nu);
            const auto k = linear_entropy_cumulants(mu, nu);
            os << "quantity,value\n";
            os << "mu," << mu << "\nnu," << nu << '\n';
            os << "page_mean_entropy," << num(page_mean_entropy(mu, nu)) << '\n';
            os << "mean_purity," << num(lubkin_mean_purity(mu, nu)) << '\n';
            os << "purity_variance," << num(purity_variance(mu, nu)) << '\n';
            os << "purity_third_cumulant," << num(purity_third_cumulant(mu, nu)) << '\n';
            os << "a," << num(k.a) << "\nb," << num(k.b) << "\nc," << num(k.c) << '\n';
            if (a_qubits > 0) {
                require(a_qubits <= 30, "--qubits out of range");
                const std::size_t dim = std::size_t{1} << a_qubits;
                const auto q = q_moments(dim, a_qubits);
                os << "q_mean," << num(q.mean) << "\nq_variance," << num(q.variance) << '\n';
                const auto t = tau_moments(dim);
                os << "tau_mean," << num(t.mean) << "\ntau_variance," << num(t.variance) << '\n';
            }
            return kExitOk;
        }

        if (sample->parsed()) {
            const MeasureId id = parse_measure(s_measure);
            const std::vector<MeasureId> ms{id};
            const auto part = partition_for(s_qubits, s_partition, needs_partition(ms));
            const auto pair = pair_for(s_qubits, s_pair, needs_pair(ms));
            require(s_samples >= 1, "--samples must be at least 1");
            require(s_bins >= 1, "--bins must be at least 1");
            require(s_qubits >= 2 && s_qubits <= 30, "--qubits out of range");
            std::vector<double> values;
            if (s_source == "haar") {
                check_memory_budget(s_qubits, s_samples);
                const MeasureEvaluator eval(s_qubits, ms, part, pair);
                values.resize(s_samples);
                const std::size_t dim = std::size_t{1} << s_qubits;
                parallel_for(s_samples, common.threads, [&](std::size_t t) {
                    SeededSampler sampler(common.seed, t);
                    const StateVector psi = sample_haar_state(dim, sampler);
                    double v = 0.0;
                    eval.evaluate(psi, std::span<double>(&v, 1));
                    values[t] = v;
                });
            } else if (s_source == "baked") {
                EnsembleRun run;
                run.num_qubits = s_qubits;
                run.map_n = s_n;
                run.steps = s_steps;
                run.samples = s_samples;
                run.initial = InitialState::parse(s_initial);
                run.measures = ms;
                run.partition = part;
                run.pair = pair;
                run.seed = common.seed;
                run.workers = common.threads;
                values = std::move(run_trials(run, {s_steps}).values[0][0]);
            } else {
                throw std::invalid_argument("unknown source '" + s_source + "' (expected haar or baked)");
            }
            auto [lo, hi] = measure_range(id);
            if (id == MeasureId::von_neumann)
                hi = std::log(static_cast<double>(part->mu()));
            Histogram h(lo, hi, s_bins);
            for (double v : values)
                h.add(v);
            const MeasureStats st = summarize(values);
            std::vector<std::pair<std::string, std::string>> meta{
                {"command", command},
                {"seed", std::to_string(common.seed)},
                {"version", std::string("qbaker ") + version_string()},
                {"conventions", "qubit 1 is the most significant bit; entropies S in nats; E_f in bits"},
                {"measure", measure_name(id)},
                {"source", s_source},
                {"samples", num(s_samples)},
                {"mean", num(st.mean)},
                {"std", num(st.stddev)},
                {"stderr", num(st.std_error)},
            };
            if (part)
                meta.emplace_back("partition", part->to_string());
            if (pair)
                meta.emplace_back("pair", num(pair->first) + "," + num(pair->second));
            if (id == MeasureId::linear_entropy && s_source == "haar") {
                const auto k = linear_entropy_cumulants(part->mu(), part->nu());
                meta.emplace_back("analytic_a", num(k.a));
                meta.emplace_back("analytic_b", num(k.b));
                meta.emplace_back("analytic_c", num(k.c));
            }
            Writer w(common.out, out);
            write_histogram_csv(w.os(), h, meta);
            return kExitOk;
        }

        if (evolve->parsed()) {
            const auto ms = parse_measures(e_measure);
            const auto ns = parse_map_list(e_n, e_qubits);
            const auto part = partition_for(e_qubits, e_partition, needs_partition(ms));
            const auto pair = pair_for(e_qubits, e_pair, needs_pair(ms));
            std::vector<std::vector<TimeSeriesRow>> results;
            for (int n : ns) {
                EnsembleRun run;
                run.num_qubits = e_qubits;
                run.map_n = n;
                run.steps = e_steps;
                run.samples = e_samples;
                run.initial = InitialState::parse(e_initial);
                run.measures = ms;
                run.partition = part;
                run.pair = pair;
                run.seed = common.seed;
                run.strategy = parse_strategy(e_strategy);
                run.workers = common.threads;
                results.push_back(evolve_measures(run));
            }
            Writer w(common.out, out);
            auto &os = w.os();
            write_header(os, command, common.seed);
            if (part)
                os << "# partition: " << part->to_string() << '\n';
            if (pair)
                os << "# pair: " << pair->first << ',' << pair->second << '\n';
            os << "n,step";
            for (auto m : ms) {
                const auto name = measure_name(m);
                os << ',' << name << "_mean," << name << "_std," << name << "_stderr";
            }
            os << '\n';
            for (std::size_t i = 0; i < ns.size(); ++i)
                for (const auto &row : results[i]) {
                    os << ns[i] << ',' << row.step;
                    for (const auto &s : row.stats)
                        os << ',' << num(s.mean) << ',' << num(s.stddev) << ',' << num(s.std_error);
                    os << '\n';
                }
            return kExitOk;
        }

        if (pairwise->parsed()) {
            const auto pair = *pair_for(p_qubits, p_pair, true);
            PairwiseSource src;
            if (p_source == "haar") {
                src.kind = PairwiseSource::Kind::haar;
            } else if (p_source == "baked") {
                src.kind = PairwiseSource::Kind::baked;
                src.map_n = p_n;
                src.steps = p_steps;
            } else {
                throw std::invalid_argument("unknown source '" + p_source + "' (expected haar or baked)");
            }
            require(p_bins >= 1, "--bins must be at least 1");
            const auto res =
                pairwise_probability(p_qubits, p_samples, pair, common.seed, src, p_bins, common.threads);
            std::vector<std::pair<std::string, std::string>> meta{
                {"command", command},
                {"seed", std::to_string(common.seed)},
                {"version", std::string("qbaker ") + version_string()},
                {"conventions", "qubit 1 is the most significant bit; entropies S in nats; E_f in bits"},
                {"qubits", num(p_qubits)},
                {"pair", num(pair.first) + "," + num(pair.second)},
                {"source", p_source},
                {"samples", num(p_samples)},
                {"probability", num(res.probability)},
                {"c_mean", num(res.c_stats.mean)},
                {"c_std", num(res.c_stats.stddev)},
            };
            Writer w(common.out, out);
            write_histogram_csv(w.os(), res.histogram, meta);
            return kExitOk;
        }

        if (saturation->parsed()) {
            const MeasureId id = parse_measure(t_measure);
            const std::vector<MeasureId> ms{id};
            const auto ns = parse_map_list(t_n, t_qubits);
            const auto part = partition_for(t_qubits, t_partition, needs_partition(ms));
            const auto pair = pair_for(t_qubits, t_pair, needs_pair(ms));
            std::vector<SaturationResult> rows;
            for (int n : ns)
                rows.push_back(saturation_average(t_qubits, n, t_stride, t_count, t_samples, common.seed, id, part,
                                                  pair, common.threads));
            Writer w(common.out, out);
            auto &os = w.os();
            write_header(os, command, common.seed);
            os << "# measure: " << measure_name(id) << '\n';
            os << "n,value,stderr\n";
            for (const auto &r : rows)
                os << r.map_n << ',' << num(r.value) << ',' << num(r.std_error) << '\n';
            return kExitOk;
        }

        if (ranking->parsed()) {
            const auto window = parse_int_pair(r_window, "window");
            const auto part = partition_for(r_qubits, r_partition, true);
            const auto rep = ranking_report(r_qubits, r_samples, window, common.seed, part, common.threads);
            Writer w(common.out, out);
            auto &os = w.os();
            write_header(os, command, common.seed);
            os << "# partition: " << part->to_string() << '\n';
            os << "# random_state_mean: " << num(rep.random_state_mean) << '\n';
            os << "rank,n,mean,stderr\n";
            for (std::size_t i = 0; i < rep.entries.size(); ++i)
                os << i + 1 << ',' << rep.entries[i].map_n << ',' << num(rep.entries[i].mean) << ','
                   << num(rep.entries[i].std_error) << '\n';
            return kExitOk;
        }

        if (spectrum->parsed()) {
            const auto pairs = periodic_spectrum(sp_qubits);
            const BakerMap map({sp_qubits, sp_qubits, Strategy::matrix_free});
            Writer w(common.out, out);
            auto &os = w.os();
            write_header(os, command, std::nullopt);
            os << "index,labels,period,root_index,phase_index,re,im,residual\n";
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto &ep = pairs[i];
                const StateVector image = map.apply(ep.eigenstate);
                double residual = 0.0;
                for (std::size_t j = 0; j < image.dim(); ++j)
                    residual = std::max(residual, std::abs(image[j] - ep.eigenvalue * ep.eigenstate[j]));
                std::string labels;
                for (int l : ep.labels)
                    labels += l ? '-' : '+';
                os << i << ',' << labels << ',' << ep.period << ',' << ep.root_index << ',' << ep.phase_index << ','
                   << num(ep.eigenvalue.real()) << ',' << num(ep.eigenvalue.imag()) << ',' << num(residual) << '\n';
            }
            return kExitOk;
        }

        if (map_matrix->parsed()) {
            const CMatrix m = baker_matrix({m_qubits, m_n, Strategy::dense});
            Writer w(common.out, out);
            auto &os = w.os();
            write_header(os, command, std::nullopt);
            os << "# map: qubits=" << m_qubits << " n=" << m_n << "; cells are \"re,im\"\n";
            write_matrix_csv(os, m);
            return kExitOk;
        }
    } catch (const CapacityError &e) {
        err << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitArgument;
    } catch (const std::exception &e) {
        err << "failure: " << e.what() << '\n';
        return kExitFailure;
    }
    err << app.help();
    return kExitArgument;
}

}  // namespace qbaker
