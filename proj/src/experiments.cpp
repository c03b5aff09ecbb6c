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

#include "qbaker/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace qbaker {

namespace {

void require(bool cond, const std::string &msg) {
    if (!cond)
        throw std::invalid_argument(msg);
}

void require(bool cond, const char *msg) {
    if (!cond)
        throw std::invalid_argument(msg);
}

constexpr std::uint64_t kDefaultBudget = std::uint64_t{2} << 30;

}  // namespace

std::uint64_t memory_budget_bytes() {
    const char *env = std::getenv("QBAKER_MAX_BYTES");
    if (env == nullptr || *env == '\0')
        return kDefaultBudget;
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        return kDefaultBudget;
    return v;
}

void check_memory_budget(int num_qubits, std::size_t samples) {
    const long double bytes = std::ldexp(16.0L, num_qubits) * static_cast<long double>(samples);
    if (bytes > static_cast<long double>(memory_budget_bytes()))
        throw CapacityError("ensemble of " + std::to_string(samples) + " states on " + std::to_string(num_qubits) +
                            " qubits exceeds the memory budget (QBAKER_MAX_BYTES=" +
                            std::to_string(memory_budget_bytes()) + ")");
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &body) {
    if (workers == 0)
        workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure)
                    failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------

InitialState InitialState::parse(const std::string &text) {
    InitialState s;
    if (text == "product" || text == "product_random") {
        s.kind = Kind::product_random;
    } else if (text == "haar") {
        s.kind = Kind::haar;
    } else if (text == "maxent" || text == "max_entangled_half") {
        s.kind = Kind::max_entangled_half;
    } else {
        const std::string bits = text.rfind("basis:", 0) == 0 ? text.substr(6) : text;
        require(!bits.empty() && bits.find_first_not_of("01") == std::string::npos,
                "unknown initial state '" + text + "' (expected product, haar, maxent or a bitstring)");
        s.kind = Kind::basis;
        s.bitstring = bits;
    }
    return s;
}

std::string InitialState::to_string() const {
    switch (kind) {
    case Kind::product_random:
        return "product";
    case Kind::haar:
        return "haar";
    case Kind::max_entangled_half:
        return "maxent";
    case Kind::basis:
        return "basis:" + bitstring;
    }
    return "?";
}

StateVector InitialState::make(int num_qubits, std::uint64_t seed, std::uint64_t trial) const {
    switch (kind) {
    case Kind::product_random: {
        SeededSampler sampler(seed, trial);
        return sample_product_state(num_qubits, sampler);
    }
    case Kind::haar: {
        SeededSampler sampler(seed, trial);
        return sample_haar_state(std::size_t{1} << num_qubits, sampler);
    }
    case Kind::max_entangled_half:
        return make_special_state(SpecialKind::max_entangled_half, num_qubits);
    case Kind::basis:
        return make_special_state(SpecialKind::basis, num_qubits, bitstring);
    }
    throw std::invalid_argument("InitialState: unknown kind");
}

// ---------------------------------------------------------------------------

MeasureEvaluator::MeasureEvaluator(int num_qubits, std::vector<MeasureId> measures,
                                   std::optional<Partition> partition, std::optional<std::pair<int, int>> pair)
    : num_qubits_(num_qubits), measures_(std::move(measures)), partition_(std::move(partition)), pair_(pair) {
    require(!measures_.empty(), "at least one measure is required");
    for (MeasureId id : measures_) {
        if (measure_uses_pair(id)) {
            require(pair_.has_value(), measure_name(id) + " requires --pair");
            require(pair_->first != pair_->second && pair_->first >= 1 && pair_->second >= 1 &&
                        pair_->first <= num_qubits && pair_->second <= num_qubits,
                    "pair must name two distinct qubits in range");
        } else if (id == MeasureId::purity || id == MeasureId::linear_entropy || id == MeasureId::von_neumann) {
            require(partition_.has_value(), measure_name(id) + " requires --partition");
            require(partition_->num_qubits() == num_qubits, "partition does not match the register");
        } else if (id == MeasureId::tangle) {
            require(num_qubits % 2 == 0, "tau is defined only for an even number of qubits");
        }
    }
    if (partition_)
        purity_.emplace(*partition_);
}

void MeasureEvaluator::evaluate(const StateVector &psi, std::span<double> out) const {
    std::optional<double> cval;
    for (std::size_t k = 0; k < measures_.size(); ++k) {
        const MeasureId id = measures_[k];
        switch (id) {
        case MeasureId::purity:
            out[k] = (*purity_)(psi.amplitudes());
            break;
        case MeasureId::linear_entropy: {
            const double mu = static_cast<double>(partition_->mu());
            out[k] = std::clamp(mu / (mu - 1.0) * (1.0 - (*purity_)(psi.amplitudes())), 0.0, 1.0);
            break;
        }
        case MeasureId::concurrence_c:
        case MeasureId::concurrence:
        case MeasureId::eof: {
            if (!cval)
                cval = concurrence_c(pair_reduction(psi, pair_->first, pair_->second));
            const double c = *cval;
            out[k] = id == MeasureId::concurrence_c ? c
                     : id == MeasureId::concurrence ? std::max(0.0, c)
                                                    : eof_from_concurrence(std::max(0.0, c));
            break;
        }
        default:
            out[k] = evaluate_measure(id, psi, partition_, pair_).value;
            break;
        }
    }
}

// ---------------------------------------------------------------------------

void EnsembleRun::validate() const {
    require(num_qubits >= 1 && num_qubits <= 30, "num_qubits out of range");
    require(map_n >= 1 && map_n <= num_qubits, "map n must satisfy 1 <= n <= N");
    require(steps >= 0, "steps must be nonnegative");
    require(samples >= 1, "samples must be at least 1");
    require(!measures.empty(), "at least one measure is required");
    if (initial.kind == InitialState::Kind::basis)
        require(static_cast<int>(initial.bitstring.size()) == num_qubits,
                "basis bitstring length must equal the number of qubits");
    if (initial.kind == InitialState::Kind::max_entangled_half)
        require(num_qubits % 2 == 0, "maxent initial state needs an even number of qubits");
    BakerMapConfig{num_qubits, map_n, strategy}.validate();
}

MeasureStats summarize(std::span<const double> xs) {
    require(!xs.empty(), "summarize: empty sample");
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs)
        mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs)
        var += (x - mean) * (x - mean);
    var /= n;
    const double sd = std::sqrt(var);
    return {mean, sd, sd / std::sqrt(n)};
}

TrialRecord run_trials(const EnsembleRun &run, const std::vector<int> &record_steps) {
    run.validate();
    require(std::is_sorted(record_steps.begin(), record_steps.end()) &&
                std::adjacent_find(record_steps.begin(), record_steps.end()) == record_steps.end(),
            "record steps must be sorted and distinct");
    require(record_steps.empty() || record_steps.front() >= 0, "record steps must be nonnegative");
    check_memory_budget(run.num_qubits, run.samples);

    const BakerMap map({run.num_qubits, run.map_n, run.strategy});
    const MeasureEvaluator eval(run.num_qubits, run.measures, run.partition, run.pair);
    const std::size_t nm = eval.size();

    TrialRecord rec;
    rec.record_steps = record_steps;
    rec.values.assign(record_steps.size(), std::vector<std::vector<double>>(nm, std::vector<double>(run.samples)));

    parallel_for(run.samples, run.workers, [&](std::size_t t) {
        StateVector psi = run.initial.make(run.num_qubits, run.seed, t);
        cvector amps = psi.data();
        cvector scratch;
        std::vector<double> out(nm);
        int step = 0;
        for (std::size_t r = 0; r < record_steps.size(); ++r) {
            while (step < record_steps[r]) {
                map.apply_inplace(amps, scratch);
                ++step;
            }
            const StateVector view(run.num_qubits, amps);
            eval.evaluate(view, out);
            for (std::size_t m = 0; m < nm; ++m)
                rec.values[r][m][t] = out[m];
        }
    });
    return rec;
}

std::vector<TimeSeriesRow> evolve_measures(const EnsembleRun &run) {
    std::vector<int> steps(static_cast<std::size_t>(run.steps) + 1);
    for (int s = 0; s <= run.steps; ++s)
        steps[s] = s;
    const TrialRecord rec = run_trials(run, steps);
    std::vector<TimeSeriesRow> rows;
    rows.reserve(steps.size());
    for (std::size_t r = 0; r < steps.size(); ++r) {
        TimeSeriesRow row;
        row.step = steps[r];
        for (const auto &vals : rec.values[r])
            row.stats.push_back(summarize(vals));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------

PairwiseResult pairwise_probability(int num_qubits, std::size_t samples, std::pair<int, int> pair,
                                    std::uint64_t seed, const PairwiseSource &source, std::size_t bins,
                                    unsigned workers) {
    require(num_qubits >= 2, "pairwise: need at least two qubits");
    require(pair.first != pair.second, "pairwise: pair qubits must be distinct");
    require(pair.first >= 1 && pair.second >= 1 && pair.first <= num_qubits && pair.second <= num_qubits,
            "pairwise: pair qubit out of range");
    require(samples >= 1, "pairwise: samples must be at least 1");

    std::vector<double> cvals;
    if (source.kind == PairwiseSource::Kind::haar) {
        check_memory_budget(num_qubits, samples);
        cvals.resize(samples);
        const std::size_t dim = std::size_t{1} << num_qubits;
        parallel_for(samples, workers, [&](std::size_t t) {
            SeededSampler sampler(seed, t);
            const StateVector psi = sample_haar_state(dim, sampler);
            cvals[t] = concurrence_c(pair_reduction(psi, pair.first, pair.second));
        });
    } else {
        EnsembleRun run;
        run.num_qubits = num_qubits;
        run.map_n = source.map_n;
        run.steps = source.steps;
        run.samples = samples;
        run.measures = {MeasureId::concurrence_c};
        run.pair = pair;
        run.seed = seed;
        run.workers = workers;
        auto rec = run_trials(run, {source.steps});
        cvals = std::move(rec.values[0][0]);
    }

    PairwiseResult res;
    res.histogram = Histogram(-0.5, 1.0, bins);
    std::size_t positive = 0;
    for (double c : cvals) {
        res.histogram.add(c);
        if (c > 0.0)
            ++positive;
    }
    res.probability = static_cast<double>(positive) / static_cast<double>(cvals.size());
    res.c_stats = summarize(cvals);
    return res;
}

SaturationResult saturation_average(int num_qubits, int map_n, int stride, int count, std::size_t samples,
                                    std::uint64_t seed, MeasureId measure, std::optional<Partition> partition,
                                    std::optional<std::pair<int, int>> pair, unsigned workers) {
    require(stride >= 1, "saturation: stride must be at least 1");
    require(count >= 1, "saturation: count must be at least 1");
    EnsembleRun run;
    run.num_qubits = num_qubits;
    run.map_n = map_n;
    run.steps = stride * count;
    run.samples = samples;
    run.measures = {measure};
    run.partition = std::move(partition);
    run.pair = pair;
    run.seed = seed;
    run.workers = workers;
    std::vector<int> steps;
    for (int k = 1; k <= count; ++k)
        steps.push_back(stride * k);
    const TrialRecord rec = run_trials(run, steps);

    std::vector<double> per_trial(samples, 0.0);
    for (std::size_t r = 0; r < steps.size(); ++r)
        for (std::size_t t = 0; t < samples; ++t)
            per_trial[t] += rec.values[r][0][t];
    for (auto &v : per_trial)
        v /= static_cast<double>(count);
    const MeasureStats s = summarize(per_trial);
    return {map_n, s.mean, s.std_error};
}

std::vector<int> RankingReport::order() const {
    std::vector<int> o;
    for (const auto &e : entries)
        o.push_back(e.map_n);
    return o;
}

RankingReport ranking_report(int num_qubits, std::size_t samples, std::pair<int, int> window, std::uint64_t seed,
                             std::optional<Partition> partition, unsigned workers) {
    require(num_qubits >= 2, "ranking: need at least two qubits");
    require(window.first >= 0 && window.second >= window.first, "ranking: invalid window");
    if (!partition)
        partition = Partition::range(num_qubits, 1, num_qubits / 2);
    std::vector<int> steps;
    for (int s = window.first; s <= window.second; ++s)
        steps.push_back(s);

    RankingReport rep;
    rep.random_state_mean = linear_entropy_cumulants(partition->mu(), partition->nu()).a;
    for (int n = 1; n < num_qubits; ++n) {
        EnsembleRun run;
        run.num_qubits = num_qubits;
        run.map_n = n;
        run.steps = window.second;
        run.samples = samples;
        run.measures = {MeasureId::linear_entropy};
        run.partition = partition;
        run.seed = seed;
        run.workers = workers;
        const TrialRecord rec = run_trials(run, steps);
        std::vector<double> per_trial(samples, 0.0);
        for (std::size_t r = 0; r < steps.size(); ++r)
            for (std::size_t t = 0; t < samples; ++t)
                per_trial[t] += rec.values[r][0][t];
        for (auto &v : per_trial)
            v /= static_cast<double>(steps.size());
        const MeasureStats s = summarize(per_trial);
        rep.entries.push_back({n, s.mean, s.std_error});
    }
    std::stable_sort(rep.entries.begin(), rep.entries.end(),
                     [](const RankingEntry &a, const RankingEntry &b) { return a.mean > b.mean; });
    return rep;
}

}  // namespace qbaker
