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

#include "qbaker/random_ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/airy.hpp>

namespace qbaker {

namespace {

void require(bool cond, const std::string &msg) {
    if (!cond)
        throw std::invalid_argument(msg);
}

std::pair<double, double> ordered_dims(std::size_t mu, std::size_t nu) {
    require(mu >= 1 && nu >= 1, "subsystem dimensions must be positive");
    if (mu > nu)
        std::swap(mu, nu);
    return {static_cast<double>(mu), static_cast<double>(nu)};
}

}  // namespace

SeededSampler::SeededSampler(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index), uniform_(0.0, 1.0) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32),
                      0x71ba6e5U};
    engine_.seed(seq);
}

cvector sample_haar_amplitudes(std::size_t dim, SeededSampler &sampler) {
    require(dim >= 1, "sample_haar_state: dimension must be positive");
    cvector v(dim);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto &x : v) {
            const double re = sampler.normal();
            const double im = sampler.normal();
            x = {re, im};
            norm2 += re * re + im * im;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &x : v)
        x *= inv;
    return v;
}

StateVector sample_haar_state(std::size_t dim, SeededSampler &sampler) {
    const int nq = log2_exact(dim);
    require(nq >= 0, "sample_haar_state: dimension must be a power of two");
    return StateVector(nq, sample_haar_amplitudes(dim, sampler));
}

StateVector sample_product_state(int num_qubits, SeededSampler &sampler) {
    require(num_qubits >= 1 && num_qubits <= 30, "sample_product_state: num_qubits out of range");
    cvector v{1.0};
    for (int q = 0; q < num_qubits; ++q) {
        const cvector one = sample_haar_amplitudes(2, sampler);
        cvector next(v.size() * 2);
        for (std::size_t i = 0; i < v.size(); ++i) {
            next[2 * i] = v[i] * one[0];
            next[2 * i + 1] = v[i] * one[1];
        }
        v.swap(next);
    }
    return StateVector(num_qubits, std::move(v));
}

StateVector make_special_state(SpecialKind kind, int num_qubits, const std::string &bitstring) {
    switch (kind) {
    case SpecialKind::basis: {
        require(static_cast<int>(bitstring.size()) == num_qubits,
                "make_special_state: bitstring length must equal the number of qubits");
        std::vector<int> bits;
        for (char ch : bitstring) {
            require(ch == '0' || ch == '1', "make_special_state: bitstring must contain only 0 and 1");
            bits.push_back(ch - '0');
        }
        return StateVector::basis(bits);
    }
    case SpecialKind::max_entangled_half: {
        require(num_qubits >= 2 && num_qubits % 2 == 0 && num_qubits <= 30,
                "make_special_state: max_entangled_half needs an even number of qubits");
        const int half = num_qubits / 2;
        const std::size_t hd = std::size_t{1} << half;
        cvector v(hd * hd);
        const double amp = 1.0 / std::sqrt(static_cast<double>(hd));
        for (std::size_t x = 0; x < hd; ++x)
            v[x * hd + x] = amp;
        return StateVector(num_qubits, std::move(v));
    }
    case SpecialKind::cat: {
        require(num_qubits >= 1 && num_qubits <= 30, "make_special_state: num_qubits out of range");
        cvector v(std::size_t{1} << num_qubits);
        v.front() = v.back() = 1.0 / std::numbers::sqrt2;
        return StateVector(num_qubits, std::move(v));
    }
    }
    throw std::invalid_argument("make_special_state: unknown kind");
}

// ---------------------------------------------------------------------------
// Closed forms

double schmidt_joint_density_unnormalized(std::span<const double> p, std::size_t mu, std::size_t nu) {
    require(mu <= nu, "schmidt_joint_density: requires mu <= nu");
    require(p.size() == mu, "schmidt_joint_density: need mu Schmidt coefficients");
    double sum = 0.0;
    for (double x : p) {
        require(x > 0.0, "schmidt_joint_density: coefficients must be positive");
        sum += x;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "schmidt_joint_density: coefficients must sum to 1");
    double v = 1.0;
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = i + 1; j < mu; ++j)
            v *= (p[i] - p[j]) * (p[i] - p[j]);
    const double expo = static_cast<double>(nu - mu);
    for (double x : p)
        v *= std::pow(x, expo);
    return v;
}

double page_mean_entropy(std::size_t mu, std::size_t nu) {
    if (mu > nu)
        std::swap(mu, nu);
    require(mu >= 1, "page_mean_entropy: dimensions must be positive");
    // Sum smallest terms first.
    double s = 0.0;
    for (std::size_t k = mu * nu; k > nu; --k)
        s += 1.0 / static_cast<double>(k);
    return s - static_cast<double>(mu - 1) / (2.0 * static_cast<double>(nu));
}

double lubkin_mean_purity(std::size_t mu_in, std::size_t nu_in) {
    const auto [mu, nu] = ordered_dims(mu_in, nu_in);
    return (mu + nu) / (mu * nu + 1.0);
}

double purity_variance(std::size_t mu_in, std::size_t nu_in) {
    const auto [mu, nu] = ordered_dims(mu_in, nu_in);
    const double d = mu * nu;
    return 2.0 * (mu * mu - 1.0) * (nu * nu - 1.0) / ((d + 3.0) * (d + 2.0) * (d + 1.0) * (d + 1.0));
}

double purity_third_cumulant(std::size_t mu_in, std::size_t nu_in) {
    const auto [mu, nu] = ordered_dims(mu_in, nu_in);
    const double d = mu * nu;
    return 8.0 * (mu * mu - 1.0) * (nu * nu - 1.0) * (mu + nu) * (d - 5.0) /
           ((d + 5.0) * (d + 4.0) * (d + 3.0) * (d + 2.0) * std::pow(d + 1.0, 3));
}

CumulantTriple linear_entropy_cumulants(std::size_t mu_in, std::size_t nu_in) {
    const auto [mu, nu] = ordered_dims(mu_in, nu_in);
    require(mu >= 2.0, "linear_entropy_cumulants: need mu >= 2");
    const double beta = mu / (mu - 1.0);
    CumulantTriple k;
    k.a = beta * (mu - 1.0) * (nu - 1.0) / (mu * nu + 1.0);
    k.b = beta * beta * purity_variance(mu_in, nu_in);
    k.c = -beta * beta * beta * purity_third_cumulant(mu_in, nu_in);
    return k;
}

double airy_pdf(double s, const CumulantTriple &k) {
    require(k.c != 0.0, "airy_pdf: third cumulant must be nonzero");
    require(k.b > 0.0, "airy_pdf: variance must be positive");
    const double scale = std::cbrt(2.0 / k.c);  // real cube root, negative when c < 0
    const double expo = k.b * k.b * k.b / (3.0 * k.c * k.c) + k.b * (s - k.a) / k.c;
    const double arg = scale * (s - k.a + k.b * k.b / (2.0 * k.c));
    return std::abs(scale) * std::exp(expo) * boost::math::airy_ai(arg);
}

double airy_pdf(double s, std::size_t mu, std::size_t nu) {
    require(s >= 0.0 && s <= 1.0, "airy_pdf: s must lie in [0, 1]");
    return airy_pdf(s, linear_entropy_cumulants(mu, nu));
}

double gaussian_pdf(double s, const CumulantTriple &k) {
    require(k.b > 0.0, "gaussian_pdf: variance must be positive");
    const double z = (s - k.a);
    return std::exp(-0.5 * z * z / k.b) / std::sqrt(2.0 * std::numbers::pi * k.b);
}

double exact_pdf_mu2(double s, std::size_t nu) {
    require(nu >= 2, "exact_pdf_mu2: need nu >= 2");
    require(s >= 0.0 && s <= 1.0, "exact_pdf_mu2: s must lie in [0, 1]");
    const double v = static_cast<double>(nu);
    const double log_norm =
        std::log(2.0) + std::lgamma(v + 0.5) - 0.5 * std::log(std::numbers::pi) - std::lgamma(v - 1.0);
    if (s == 1.0)
        return 0.0;
    if (s == 0.0)
        return nu == 2 ? std::exp(log_norm) : 0.0;
    return std::exp(log_norm + 0.5 * std::log1p(-s) + (v - 2.0) * std::log(s));
}

MeanVariance q_moments(std::size_t dim, int num_qubits) {
    require(num_qubits >= 1 && log2_exact(dim) == num_qubits, "q_moments: D must equal 2^N");
    const double d = static_cast<double>(dim);
    const double n = num_qubits;
    MeanVariance m;
    m.mean = (d - 2.0) / (d + 1.0);
    m.variance = 6.0 * (d - 4.0) / ((d + 3.0) * (d + 2.0) * (d + 1.0) * n) +
                 18.0 * d / ((d + 3.0) * (d + 2.0) * (d + 1.0) * (d + 1.0));
    return m;
}

MeanVariance tau_moments(std::size_t dim) {
    require(log2_exact(dim) >= 1, "tau_moments: D must be a power of two >= 2");
    const double d = static_cast<double>(dim);
    return {2.0 / (d + 1.0), 4.0 * (d - 1.0) / ((d + 3.0) * (d + 1.0) * (d + 1.0))};
}

// ---------------------------------------------------------------------------
// Sample statistics

SampleMoments sample_moments(std::span<const double> xs) {
    require(xs.size() >= 2, "sample_moments: need at least two samples");
    SampleMoments m;
    m.n = xs.size();
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs)
        mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, m6 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        m6 += d2 * d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m6 /= n;
    m.mean = mean;
    m.variance = m2 * n / (n - 1.0);
    m.third = m3 * n * n / ((n - 1.0) * (n - 2.0));
    m.se_mean = std::sqrt(m.variance / n);
    m.se_variance = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    m.se_third = std::sqrt(std::max(m6 - m3 * m3 - 6.0 * m4 * m2 + 9.0 * m2 * m2 * m2, 0.0) / n);
    return m;
}

Histogram::Histogram(double lo, double hi, std::size_t bins) : lo_(lo), hi_(hi), counts_(bins, 0) {
    require(hi > lo, "Histogram: empty range");
    require(bins >= 1, "Histogram: need at least one bin");
}

void Histogram::add(double x) {
    const double pos = (x - lo_) / width();
    std::size_t idx = 0;
    if (pos >= static_cast<double>(counts_.size()))
        idx = counts_.size() - 1;
    else if (pos > 0.0)
        idx = static_cast<std::size_t>(pos);
    ++counts_[idx];
    ++total_;
}

void Histogram::merge(const Histogram &other) {
    require(other.lo_ == lo_ && other.hi_ == hi_ && other.counts_.size() == counts_.size(),
            "Histogram::merge: incompatible binning");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] += other.counts_[i];
    total_ += other.total_;
}

double Histogram::density(std::size_t i) const {
    if (total_ == 0)
        return 0.0;
    return static_cast<double>(counts_[i]) / (static_cast<double>(total_) * width());
}

double Histogram::mode() const {
    const auto it = std::max_element(counts_.begin(), counts_.end());
    const auto i = static_cast<std::size_t>(it - counts_.begin());
    return 0.5 * (bin_left(i) + bin_right(i));
}

void write_histogram_csv(std::ostream &os, const Histogram &h,
                         const std::vector<std::pair<std::string, std::string>> &meta) {
    for (const auto &[k, v] : meta)
        os << "# " << k << ": " << v << '\n';
    os << "bin_left,bin_right,count,density\n";
    char buf[160];
    for (std::size_t i = 0; i < h.bins(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%llu,%.17g\n", h.bin_left(i), h.bin_right(i),
                      static_cast<unsigned long long>(h.count(i)), h.density(i));
        os << buf;
    }
}

}  // namespace qbaker
