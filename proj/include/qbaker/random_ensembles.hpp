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
 * Random pure states and closed-form statistics of their entanglement.
 *
 * Haar states are drawn as normalized vectors of i.i.d. complex Gaussians.
 * Every sampler is keyed by (master_seed, stream_index) so that trial k of an
 * ensemble always sees the same draws regardless of scheduling.
 *
 * Analytic results are for a bipartite split of dimensions mu <= nu (they are
 * symmetric, so arguments are swapped when mu > nu) and for registers of
 * dimension D = 2^N.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qbaker/tensor_core.hpp"

namespace qbaker {

/// Deterministic per-stream random source.
class SeededSampler {
  public:
    SeededSampler(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

  private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
    std::uniform_real_distribution<double> uniform_;
};

/// Haar-random unit vector in C^D (any D >= 1).
cvector sample_haar_amplitudes(std::size_t dim, SeededSampler &sampler);

/// Haar-random register state; `dim` must be a power of two.
StateVector sample_haar_state(std::size_t dim, SeededSampler &sampler);

/// Tensor product of N independent single-qubit Haar states.
StateVector sample_product_state(int num_qubits, SeededSampler &sampler);

enum class SpecialKind { basis, max_entangled_half, cat };

/**
 * basis: |bitstring> (qubit 1 first), N = bitstring length.
 * max_entangled_half: 2^{-N/4} sum_x |x>|x> over the first and second halves.
 * cat: (|0..0> + |1..1>)/sqrt 2.
 */
StateVector make_special_state(SpecialKind kind, int num_qubits, const std::string &bitstring = {});

/// prod_{i<j} (p_i - p_j)^2 prod_k p_k^{nu-mu}; p must lie on the simplex.
double schmidt_joint_density_unnormalized(std::span<const double> p, std::size_t mu, std::size_t nu);

/// Mean von Neumann entropy (nats) of a Haar state's mu-dimensional side.
double page_mean_entropy(std::size_t mu, std::size_t nu);

double lubkin_mean_purity(std::size_t mu, std::size_t nu);
double purity_variance(std::size_t mu, std::size_t nu);
double purity_third_cumulant(std::size_t mu, std::size_t nu);

/// Mean, variance and third cumulant of the linear entropy.
struct CumulantTriple {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};
CumulantTriple linear_entropy_cumulants(std::size_t mu, std::size_t nu);

/// Airy-function approximation built from the first three cumulants (c != 0).
double airy_pdf(double s, const CumulantTriple &k);
double airy_pdf(double s, std::size_t mu, std::size_t nu);

/// Normal density with mean a and variance b.
double gaussian_pdf(double s, const CumulantTriple &k);

/// Exact linear-entropy density for mu = 2.
double exact_pdf_mu2(double s, std::size_t nu);

struct MeanVariance {
    double mean = 0.0;
    double variance = 0.0;
};
/// Moments of the Meyer-Wallach Q for Haar states, D = 2^N.
MeanVariance q_moments(std::size_t dim, int num_qubits);
/// Moments of tau_N for Haar states, D = 2^N.
MeanVariance tau_moments(std::size_t dim);

// ---------------------------------------------------------------------------
// Sample statistics

/// Mean/variance/third cumulant of a sample with delta-method standard errors.
struct SampleMoments {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double third = 0.0;
    double se_mean = 0.0;
    double se_variance = 0.0;
    double se_third = 0.0;
};
SampleMoments sample_moments(std::span<const double> xs);

/// Fixed-range histogram with uniform bins. Out-of-range values go to the end bins.
class Histogram {
  public:
    Histogram(double lo, double hi, std::size_t bins);

    void add(double x);
    void merge(const Histogram &other);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t bins() const { return counts_.size(); }
    double width() const { return (hi_ - lo_) / static_cast<double>(counts_.size()); }
    std::uint64_t count(std::size_t i) const { return counts_[i]; }
    std::uint64_t total() const { return total_; }
    double density(std::size_t i) const;
    double bin_left(std::size_t i) const { return lo_ + width() * static_cast<double>(i); }
    double bin_right(std::size_t i) const { return lo_ + width() * static_cast<double>(i + 1); }
    /// Center of the most populated bin.
    double mode() const;

  private:
    double lo_, hi_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Writes "# key=value" metadata lines followed by bin_left,bin_right,count,density.
void write_histogram_csv(std::ostream &os, const Histogram &h,
                         const std::vector<std::pair<std::string, std::string>> &meta);

}  // namespace qbaker
