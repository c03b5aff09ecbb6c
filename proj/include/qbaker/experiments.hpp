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

/**
 * @file
 * Deterministic ensemble experiments: evolve an ensemble of initial states
 * under a baker's map and record entanglement statistics.
 *
 * Trial k always draws from SeededSampler(seed, k) and owns its own state, so
 * results depend only on the inputs, never on how trials are scheduled over
 * worker threads. Reductions run over trials in index order.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbaker/baker_maps.hpp"
#include "qbaker/entanglement.hpp"
#include "qbaker/random_ensembles.hpp"

namespace qbaker {

/// Bytes allowed for ensemble state storage (QBAKER_MAX_BYTES, default 2 GiB).
std::uint64_t memory_budget_bytes();

/// Throws CapacityError when 2^N * 16 * samples exceeds the budget.
void check_memory_budget(int num_qubits, std::size_t samples);

struct InitialState {
    enum class Kind { product_random, basis, max_entangled_half, haar };
    Kind kind = Kind::product_random;
    std::string bitstring;

    /// "product", "haar", "maxent", "basis:0101" or a bare bitstring.
    static InitialState parse(const std::string &text);
    std::string to_string() const;

    /// Draws (or builds) trial `trial` of the ensemble.
    StateVector make(int num_qubits, std::uint64_t seed, std::uint64_t trial) const;
};

/// Evaluates a fixed list of measures with precomputed index maps.
class MeasureEvaluator {
  public:
    MeasureEvaluator(int num_qubits, std::vector<MeasureId> measures, std::optional<Partition> partition,
                     std::optional<std::pair<int, int>> pair);

    std::size_t size() const { return measures_.size(); }
    const std::vector<MeasureId> &measures() const { return measures_; }

    void evaluate(const StateVector &psi, std::span<double> out) const;

  private:
    int num_qubits_;
    std::vector<MeasureId> measures_;
    std::optional<Partition> partition_;
    std::optional<std::pair<int, int>> pair_;
    std::optional<ReducedPurity> purity_;
};

struct EnsembleRun {
    int num_qubits = 8;
    int map_n = 1;
    int steps = 0;
    std::size_t samples = 1;
    InitialState initial;
    std::vector<MeasureId> measures;
    std::optional<Partition> partition;
    std::optional<std::pair<int, int>> pair;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::matrix_free;
    unsigned workers = 0;  // 0: hardware concurrency

    void validate() const;
};

struct MeasureStats {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation over trials
    double std_error = 0.0;
};

struct TimeSeriesRow {
    int step = 0;
    std::vector<MeasureStats> stats;  // aligned with EnsembleRun::measures
};

/**
 * Raw per-trial measure values at the recorded steps:
 * values[r][m][t] is measure m of trial t after record_steps[r] map steps.
 */
struct TrialRecord {
    std::vector<int> record_steps;
    std::vector<std::vector<std::vector<double>>> values;
};

/// Runs every trial of `run` and records measures at `record_steps` (sorted, distinct).
TrialRecord run_trials(const EnsembleRun &run, const std::vector<int> &record_steps);

/// Ensemble mean/std/stderr of each measure at steps 0..run.steps.
std::vector<TimeSeriesRow> evolve_measures(const EnsembleRun &run);

MeasureStats summarize(std::span<const double> xs);

struct PairwiseSource {
    enum class Kind { haar, baked };
    Kind kind = Kind::haar;
    int map_n = 1;
    int steps = 0;
};

struct PairwiseResult {
    double probability = 0.0;  // fraction with c > 0
    MeasureStats c_stats;
    Histogram histogram{-0.5, 1.0, 100};
};

PairwiseResult pairwise_probability(int num_qubits, std::size_t samples, std::pair<int, int> pair,
                                    std::uint64_t seed, const PairwiseSource &source, std::size_t bins = 100,
                                    unsigned workers = 0);

struct SaturationResult {
    int map_n = 0;
    double value = 0.0;
    double std_error = 0.0;  // over trials of each trial's time average
};

/// Average of the ensemble-mean measure over iterates stride*k, k = 1..count.
SaturationResult saturation_average(int num_qubits, int map_n, int stride, int count, std::size_t samples,
                                    std::uint64_t seed, MeasureId measure,
                                    std::optional<Partition> partition = std::nullopt,
                                    std::optional<std::pair<int, int>> pair = std::nullopt, unsigned workers = 0);

struct RankingEntry {
    int map_n = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

struct RankingReport {
    std::vector<RankingEntry> entries;  // descending by mean
    double random_state_mean = 0.0;

    std::vector<int> order() const;
};

/// Ranks B_{N,n}, n = 1..N-1, by window-averaged mean linear entropy of a product ensemble.
RankingReport ranking_report(int num_qubits, std::size_t samples, std::pair<int, int> window, std::uint64_t seed,
                             std::optional<Partition> partition = std::nullopt, unsigned workers = 0);

/// Runs `body(i)` for i in [0, count) over `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &body);

}  // namespace qbaker
