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

#include "qbaker/baker_maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace qbaker {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

void require(bool cond, const char *msg) {
    if (!cond)
        throw std::invalid_argument(msg);
}

// Rotates the top n bits of every index left by one.
std::size_t shifted_index(std::size_t idx, int num_qubits, int n) {
    const int low_bits = num_qubits - n;
    const std::size_t low = idx & ((std::size_t{1} << low_bits) - 1);
    const std::size_t high = idx >> low_bits;
    const std::size_t mask = (std::size_t{1} << n) - 1;
    const std::size_t rotated = ((high << 1) | (high >> (n - 1))) & mask;
    return (rotated << low_bits) | low;
}

void shift_into(int num_qubits, int n, std::span<const cplx> in, std::span<cplx> out) {
    for (std::size_t i = 0; i < in.size(); ++i)
        out[shifted_index(i, num_qubits, n)] = in[i];
}

// 0.b_1 .. b_m 1 in binary.
double binary_fraction_with_one(std::span<const int> bits) {
    double v = 0.0;
    double w = 0.5;
    for (int b : bits) {
        v += b * w;
        w *= 0.5;
    }
    return v + w;
}

void check_bits(const std::vector<int> &bits) {
    for (int b : bits)
        require(b == 0 || b == 1, "PartialBasisLabel: bits must be 0 or 1");
}

// |+> for label 0 (alpha = 1), |-> for label 1 (alpha = -i).
StateVector alpha_product_state(const std::vector<int> &labels) {
    const int n = static_cast<int>(labels.size());
    const std::size_t dim = std::size_t{1} << n;
    const double amp = std::pow(2.0, -0.5 * n);
    cvector v(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        int sign = 0;
        for (int q = 0; q < n; ++q)
            if (labels[q] == 1 && ((x >> (n - 1 - q)) & 1U))
                sign ^= 1;
        v[x] = sign ? -amp : amp;
    }
    return StateVector(n, std::move(v));
}

}  // namespace

void BakerMapConfig::validate() const {
    require(num_qubits >= 1 && num_qubits <= 30, "BakerMapConfig: num_qubits out of range");
    require(position_bits >= 1 && position_bits <= num_qubits,
            "BakerMapConfig: position_bits must satisfy 1 <= n <= N");
    if (strategy == Strategy::dense && num_qubits > kMaxQubits)
        throw CapacityError("BakerMapConfig: dense strategy requires N <= 12");
}

StateVector partial_fourier(int n, const StateVector &psi, bool inverse) {
    const int nq = psi.num_qubits();
    require(n >= 0 && n <= nq, "partial_fourier: n out of range");
    if (n == nq) {
        StateVector out = psi;
        const cplx f = inverse ? -kI : kI;
        for (auto &a : out.amplitudes())
            a *= f;
        return out;
    }
    return apply_on_suffix(std::size_t{1} << (nq - n),
                           inverse ? SuffixKernel::inverse_centered_dft : SuffixKernel::centered_dft, psi,
                           n + 1);
}

StateVector shift(int n, const StateVector &psi) {
    const int nq = psi.num_qubits();
    require(n >= 1 && n <= nq, "shift: n out of range");
    cvector out(psi.dim());
    shift_into(nq, n, psi.amplitudes(), out);
    return StateVector(nq, std::move(out));
}

// ---------------------------------------------------------------------------

BakerMap::BakerMap(const BakerMapConfig &cfg)
    : cfg_((cfg.validate(), cfg)),
      inner_(std::size_t{1} << (cfg.num_qubits - cfg.position_bits)),
      outer_(std::size_t{1} << (cfg.num_qubits - cfg.position_bits + 1)) {
    if (cfg_.strategy == Strategy::dense)
        dense_ = baker_matrix(cfg_);
}

void BakerMap::apply_inplace(cvector &amps, cvector &scratch) const {
    const int nq = cfg_.num_qubits;
    const int n = cfg_.position_bits;
    require(amps.size() == (std::size_t{1} << nq), "BakerMap: register size mismatch");
    if (cfg_.strategy == Strategy::dense) {
        amps = dense_.apply(amps);
        return;
    }
    // G_n^{-1}
    if (n == nq) {
        for (auto &a : amps)
            a *= -kI;
    } else {
        apply_on_suffix_inplace(inner_, true, amps);
    }
    // S_n
    if (n > 1) {
        scratch.resize(amps.size());
        shift_into(nq, n, amps, scratch);
        amps.swap(scratch);
    }
    // G_{n-1}
    apply_on_suffix_inplace(outer_, false, amps);
}

StateVector BakerMap::apply(const StateVector &psi) const {
    require(psi.num_qubits() == cfg_.num_qubits, "baker_step: register size does not match the map");
    cvector amps = psi.data();
    cvector scratch;
    apply_inplace(amps, scratch);
    return StateVector(psi.num_qubits(), std::move(amps));
}

StateVector baker_step(const BakerMapConfig &cfg, const StateVector &psi) {
    cfg.validate();
    require(psi.num_qubits() == cfg.num_qubits, "baker_step: register size does not match the map");
    return BakerMap(cfg).apply(psi);
}

// ---------------------------------------------------------------------------
// Dense construction

CMatrix shift_matrix(int num_qubits, int n) {
    require(num_qubits >= 1 && num_qubits <= kMaxQubits, "shift_matrix: N out of range");
    require(n >= 1 && n <= num_qubits, "shift_matrix: n out of range");
    const std::size_t dim = std::size_t{1} << num_qubits;
    CMatrix s(dim);
    for (std::size_t i = 0; i < dim; ++i)
        s(shifted_index(i, num_qubits, n), i) = 1.0;
    return s;
}

CMatrix partial_fourier_matrix(int num_qubits, int n, bool inverse) {
    require(num_qubits >= 1 && num_qubits <= kMaxQubits, "partial_fourier_matrix: N out of range");
    require(n >= 0 && n <= num_qubits, "partial_fourier_matrix: n out of range");
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (n == num_qubits)
        return (inverse ? -kI : kI) * CMatrix::identity(dim);
    return CMatrix::identity(std::size_t{1} << n).kron(CenteredDft::dense(std::size_t{1} << (num_qubits - n), inverse));
}

CMatrix baker_matrix(const BakerMapConfig &cfg) {
    require(cfg.num_qubits >= 1, "baker_matrix: N must be positive");
    if (cfg.num_qubits > kMaxQubits)
        throw CapacityError("baker_matrix: dense matrices are limited to N <= 12");
    require(cfg.position_bits >= 1 && cfg.position_bits <= cfg.num_qubits, "baker_matrix: n out of range");
    const int nq = cfg.num_qubits;
    const int n = cfg.position_bits;
    return partial_fourier_matrix(nq, n - 1) * shift_matrix(nq, n) * partial_fourier_matrix(nq, n, true);
}

// ---------------------------------------------------------------------------
// Partially transformed basis states

std::string PartialBasisLabel::to_string() const {
    std::string s;
    for (auto it = momentum_bits.rbegin(); it != momentum_bits.rend(); ++it)
        s += static_cast<char>('0' + *it);
    s += '.';
    for (int x : position_bits)
        s += static_cast<char>('0' + x);
    return s;
}

PartialBasisLabel PartialBasisLabel::baked() const {
    require(!position_bits.empty(), "PartialBasisLabel::baked: no position bit to move");
    PartialBasisLabel out;
    out.momentum_bits.push_back(position_bits.front());
    out.momentum_bits.insert(out.momentum_bits.end(), momentum_bits.begin(), momentum_bits.end());
    out.position_bits.assign(position_bits.begin() + 1, position_bits.end());
    return out;
}

std::vector<PartialBasisLabel> PartialBasisLabel::all(int num_qubits, int n) {
    require(num_qubits >= 1 && num_qubits <= kMaxQubits, "PartialBasisLabel::all: N out of range");
    require(n >= 0 && n <= num_qubits, "PartialBasisLabel::all: n out of range");
    std::vector<PartialBasisLabel> labels;
    const std::size_t dim = std::size_t{1} << num_qubits;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        PartialBasisLabel l;
        for (int q = 1; q <= num_qubits; ++q) {
            const int bit = static_cast<int>((idx >> (num_qubits - q)) & 1U);
            (q <= n ? l.position_bits : l.momentum_bits).push_back(bit);
        }
        labels.push_back(std::move(l));
    }
    return labels;
}

StateVector make_partial_basis_state(const PartialBasisLabel &label) {
    check_bits(label.momentum_bits);
    check_bits(label.position_bits);
    require(label.num_qubits() >= 1, "make_partial_basis_state: empty label");
    std::vector<int> bits = label.position_bits;
    bits.insert(bits.end(), label.momentum_bits.begin(), label.momentum_bits.end());
    return partial_fourier(label.n(), StateVector::basis(bits));
}

StateVector partial_basis_state_product_form(const PartialBasisLabel &label) {
    check_bits(label.momentum_bits);
    check_bits(label.position_bits);
    const int nq = label.num_qubits();
    const int n = label.n();
    require(nq >= 1, "partial_basis_state_product_form: empty label");
    const auto &a = label.momentum_bits;  // a[0] = a_1

    // Global phase exp(pi i 0.a_1 .. a_{N-n} 1).
    const cplx prefactor = std::polar(1.0, kPi * binary_fraction_with_one(a));

    // Qubit k > n carries (|0> + exp(2 pi i 0.a_{N-k+1} .. a_{N-n} 1) |1>) / sqrt 2.
    std::vector<cplx> one_phase(nq, 0.0);
    for (int k = n + 1; k <= nq; ++k) {
        const std::span<const int> tail(a.data() + (nq - k), static_cast<std::size_t>(k - n));
        one_phase[k - 1] = std::polar(1.0, 2.0 * kPi * binary_fraction_with_one(tail));
    }

    const std::size_t dim = std::size_t{1} << nq;
    const double amp = std::pow(2.0, -0.5 * (nq - n));
    cvector v(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        cplx val = prefactor * amp;
        bool zero = false;
        for (int q = 1; q <= nq && !zero; ++q) {
            const int bit = static_cast<int>((idx >> (nq - q)) & 1U);
            if (q <= n) {
                zero = bit != label.position_bits[q - 1];
            } else if (bit) {
                val *= one_phase[q - 1];
            }
        }
        v[idx] = zero ? cplx{} : val;
    }
    return StateVector(nq, std::move(v));
}

BasisMappingReport verify_basis_mapping(const BakerMapConfig &cfg) {
    cfg.validate();
    require(cfg.num_qubits <= 8, "verify_basis_mapping: exhaustive check limited to N <= 8");
    const BakerMap map(cfg);
    BasisMappingReport rep;
    rep.ok = true;
    std::vector<std::string> images;
    for (const auto &label : PartialBasisLabel::all(cfg.num_qubits, cfg.position_bits)) {
        const PartialBasisLabel target = label.baked();
        const StateVector out = map.apply(make_partial_basis_state(label));
        const double err = out.max_abs_diff(make_partial_basis_state(target));
        rep.max_error = std::max(rep.max_error, err);
        if (err > 1e-11)
            rep.ok = false;
        images.push_back(target.to_string());
        ++rep.labels_checked;
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
        rep.ok = false;
    return rep;
}

// ---------------------------------------------------------------------------
// Spectrum of B_{N,N}

std::vector<PeriodicEigenpair> periodic_spectrum(int num_qubits) {
    require(num_qubits >= 1 && num_qubits <= 10, "periodic_spectrum: N must be in [1, 10]");
    const int nq = num_qubits;
    const std::size_t count = std::size_t{1} << nq;
    const std::size_t mask = count - 1;
    // Left rotation of the label string (qubit 1 is the top bit).
    auto rotl = [&](std::size_t s, int k) {
        k %= nq;
        if (k == 0)
            return s;
        return ((s << k) | (s >> (nq - k))) & mask;
    };

    std::vector<PeriodicEigenpair> out;
    for (std::size_t s = 0; s < count; ++s) {
        bool canonical = true;
        int period = nq;
        for (int k = 1; k < nq; ++k) {
            const std::size_t r = rotl(s, k);
            if (r < s) {
                canonical = false;
                break;
            }
            if (r == s) {
                period = k;
                break;
            }
        }
        if (!canonical)
            continue;

        std::vector<int> labels(nq);
        for (int q = 0; q < nq; ++q)
            labels[q] = static_cast<int>((s >> (nq - 1 - q)) & 1U);
        auto alpha = [&](int q) { return labels[q % nq] ? -kI : cplx{1.0, 0.0}; };

        // Product over one period is (-i)^r with argument -r pi/2.
        int r = 0;
        for (int q = 0; q < period; ++q)
            r += labels[q];

        std::vector<StateVector> shifted;
        for (int k = 0; k < period; ++k) {
            std::vector<int> rot(nq);
            for (int q = 0; q < nq; ++q)
                rot[q] = labels[(q + k) % nq];
            shifted.push_back(alpha_product_state(rot));
        }

        for (int m = 0; m < period; ++m) {
            const int phase_num = (-r + 4 * m) % (4 * period);  // eigenvalue = exp(i pi phase_num / (2P))
            const cplx lambda = std::polar(1.0, kPi * phase_num / (2.0 * period));
            cvector psi(count);
            cplx coeff = 1.0;  // lambda^{-k} alpha_1 .. alpha_k
            for (int k = 0; k < period; ++k) {
                if (k > 0)
                    coeff *= alpha(k - 1) / lambda;
                for (std::size_t i = 0; i < count; ++i)
                    psi[i] += coeff * shifted[k][i];
            }
            const double norm = 1.0 / std::sqrt(static_cast<double>(period));
            for (auto &x : psi)
                x *= norm;

            PeriodicEigenpair ep;
            ep.eigenvalue = lambda;
            ep.eigenstate = StateVector(nq, std::move(psi));
            ep.period = period;
            ep.labels = labels;
            ep.root_index = m;
            // exp(i pi phase_num/(2P)) = exp(i pi k/(2N)) with k = phase_num N/P.
            int k = phase_num * (nq / period);
            k = ((k % (4 * nq)) + 4 * nq) % (4 * nq);
            ep.phase_index = k;
            out.push_back(std::move(ep));
        }
    }
    return out;
}

void write_matrix_csv(std::ostream &os, const CMatrix &m) {
    char buf[96];
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            std::snprintf(buf, sizeof buf, "\"%.17g,%.17g\"", m(r, c).real(), m(r, c).imag());
            if (c)
                os << ',';
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace qbaker
