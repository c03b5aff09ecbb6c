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

#include "qbaker/entanglement.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

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

constexpr double kClampTol = 1e-10;

}  // namespace

std::string measure_name(MeasureId id) {
    switch (id) {
    case MeasureId::purity:
        return "purity";
    case MeasureId::linear_entropy:
        return "slin";
    case MeasureId::von_neumann:
        return "svn";
    case MeasureId::concurrence_c:
        return "cvalue";
    case MeasureId::concurrence:
        return "concurrence";
    case MeasureId::eof:
        return "eof";
    case MeasureId::mw_q:
        return "q";
    case MeasureId::tangle:
        return "tau";
    }
    return "?";
}

MeasureId parse_measure(const std::string &name) {
    static const std::array<std::pair<const char *, MeasureId>, 14> table{{
        {"purity", MeasureId::purity},
        {"slin", MeasureId::linear_entropy},
        {"linear_entropy", MeasureId::linear_entropy},
        {"svn", MeasureId::von_neumann},
        {"von_neumann", MeasureId::von_neumann},
        {"cvalue", MeasureId::concurrence_c},
        {"concurrence_c", MeasureId::concurrence_c},
        {"concurrence", MeasureId::concurrence},
        {"eof", MeasureId::eof},
        {"q", MeasureId::mw_q},
        {"mw_q", MeasureId::mw_q},
        {"tau", MeasureId::tangle},
        {"tangle", MeasureId::tangle},
        {"c", MeasureId::concurrence_c},
    }};
    for (const auto &[key, id] : table)
        if (name == key)
            return id;
    throw std::invalid_argument("unknown measure '" + name + "'");
}

std::pair<double, double> measure_range(MeasureId id) {
    switch (id) {
    case MeasureId::concurrence_c:
        return {-0.5, 1.0};
    case MeasureId::von_neumann:
        return {0.0, std::log(static_cast<double>(std::size_t{1} << kMaxQubits))};
    default:
        return {0.0, 1.0};
    }
}

bool measure_uses_pair(MeasureId id) {
    return id == MeasureId::concurrence_c || id == MeasureId::concurrence || id == MeasureId::eof;
}

// ---------------------------------------------------------------------------

double purity(const DensityMatrix &rho) {
    double s = 0.0;
    for (const auto &x : rho.matrix().data())
        s += std::norm(x);
    return std::min(s, 1.0);
}

double linear_entropy(const DensityMatrix &rho, std::size_t mu) {
    require(mu >= 2, "linear_entropy: subsystem dimension must be at least 2");
    require(mu <= rho.dim(), "linear_entropy: mu exceeds the matrix dimension");
    const double beta = static_cast<double>(mu) / static_cast<double>(mu - 1);
    return std::clamp(beta * (1.0 - purity(rho)), 0.0, 1.0);
}

double linear_entropy(const DensityMatrix &rho) { return linear_entropy(rho, rho.dim()); }

double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0.0;
    for (double p : hermitian_eigenvalues(rho.matrix())) {
        if (p > 0.0)
            s -= p * std::log(p);
    }
    return std::max(s, 0.0);
}

double subsystem_linear_entropy(const StateVector &psi, const Partition &part) {
    const double mu = static_cast<double>(part.mu());
    return std::clamp(mu / (mu - 1.0) * (1.0 - reduced_purity(psi, part)), 0.0, 1.0);
}

DensityMatrix pair_reduction(const StateVector &psi, int i, int j) {
    require(i != j, "pair_reduction: qubits must be distinct");
    if (i > j)
        std::swap(i, j);
    require(i >= 1 && j <= psi.num_qubits(), "pair_reduction: qubit index out of range");
    if (psi.num_qubits() == 2)
        return DensityMatrix::pure(psi);
    return partial_trace(psi, Partition(psi.num_qubits(), {i, j}));
}

double concurrence_c(const DensityMatrix &rho) {
    require(rho.dim() == 4, "concurrence: two-qubit (4x4) density matrix required");
    // rho~ = (sy x sy) rho* (sy x sy); sy x sy is the anti-diagonal (-1, 1, 1, -1).
    static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
    const CMatrix &m = rho.matrix();
    CMatrix tilde(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            tilde(r, c) = sign[r] * sign[c] * std::conj(m(3 - r, 3 - c));
    const CMatrix root = hermitian_psd_sqrt(m);
    CMatrix prod = root * tilde * root;
    // Restore exact Hermiticity lost to rounding.
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = r; c < 4; ++c) {
            const cplx v = 0.5 * (prod(r, c) + std::conj(prod(c, r)));
            prod(r, c) = v;
            prod(c, r) = std::conj(v);
        }
    auto ev = hermitian_eigenvalues(prod);
    // Rounding-level eigenvalues would otherwise contribute ~sqrt(eps) each.
    // The spectrum is bounded by tr(rho)^2 = 1, so the floor is absolute.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(ev[0]), std::abs(ev[3])});
    std::array<double, 4> lam{};
    for (std::size_t k = 0; k < 4; ++k)
        lam[k] = ev[3 - k] > floor ? std::sqrt(ev[3 - k]) : 0.0;  // descending
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return std::clamp(c, -0.5, 1.0);
}

double concurrence(const DensityMatrix &rho) { return std::max(0.0, concurrence_c(rho)); }

double binary_entropy(double x) {
    require(x >= -kClampTol && x <= 1.0 + kClampTol, "binary_entropy: argument outside [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0)
        h -= x * std::log2(x);
    if (x < 1.0)
        h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double eof_from_concurrence(double c) {
    require(c >= -kClampTol && c <= 1.0 + kClampTol, "eof_from_concurrence: C outside [0, 1]");
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double entanglement_of_formation(const DensityMatrix &rho) { return eof_from_concurrence(concurrence(rho)); }

// ---------------------------------------------------------------------------
// Meyer-Wallach Q

double wedge_norm_sq_literal(std::span<const cplx> u, std::span<const cplx> v) {
    require(u.size() == v.size(), "wedge_norm_sq_literal: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            d += std::norm(u[i] * v[j] - u[j] * v[i]);
    return d;
}

double meyer_wallach_q(const StateVector &psi, MwAlgorithm algorithm) {
    const int nq = psi.num_qubits();
    require(nq >= 1, "meyer_wallach_q: empty register");
    const std::size_t dim = psi.dim();
    double acc = 0.0;
    if (algorithm == MwAlgorithm::wedge) {
        const std::size_t half = dim / 2;
        cvector u(half), v(half);
        for (int q = 1; q <= nq; ++q) {
            const std::size_t w = std::size_t{1} << (nq - q);
            // Delete bit q from the index: i_q(b) psi.
            for (std::size_t r = 0; r < half; ++r) {
                const std::size_t hi = (r / w) * (2 * w);
                const std::size_t lo = r % w;
                u[r] = psi[hi + lo];
                v[r] = psi[hi + w + lo];
            }
            double nu = 0.0, nv = 0.0;
            cplx uv{};
            for (std::size_t r = 0; r < half; ++r) {
                nu += std::norm(u[r]);
                nv += std::norm(v[r]);
                uv += std::conj(u[r]) * v[r];
            }
            acc += nu * nv - std::norm(uv);
        }
        return std::clamp(4.0 / nq * acc, 0.0, 1.0);
    }
    for (int q = 1; q <= nq; ++q) {
        const std::size_t w = std::size_t{1} << (nq - q);
        double p0 = 0.0, p1 = 0.0;
        cplx off{};
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & w)
                continue;
            p0 += std::norm(psi[i]);
            p1 += std::norm(psi[i | w]);
            off += psi[i] * std::conj(psi[i | w]);
        }
        acc += p0 * p0 + p1 * p1 + 2.0 * std::norm(off);
    }
    return std::clamp(2.0 * (1.0 - acc / nq), 0.0, 1.0);
}

double n_tangle(const StateVector &psi) {
    const int nq = psi.num_qubits();
    require(nq >= 2 && nq % 2 == 0, "n_tangle: defined only for an even number of qubits");
    // sigma_y^{(x)N} |x> = i^N (-1)^{|x|} |~x>, so the overlap is
    // i^N sum_x (-1)^{|x|} conj(psi_x) conj(psi_{~x}); |i^N| = 1.
    const std::size_t dim = psi.dim();
    const std::size_t all = dim - 1;
    cplx s{};
    for (std::size_t x = 0; x < dim; ++x) {
        const cplx term = std::conj(psi[x]) * std::conj(psi[all ^ x]);
        s += (std::popcount(x) & 1) ? -term : term;
    }
    return std::clamp(std::norm(s), 0.0, 1.0);
}

MeasureResult evaluate_measure(MeasureId id, const StateVector &psi, const std::optional<Partition> &part,
                               const std::optional<std::pair<int, int>> &pair) {
    MeasureResult res{id, 0.0, std::nullopt, std::nullopt};
    if (measure_uses_pair(id)) {
        require(pair.has_value(), "evaluate_measure: " + measure_name(id) + " needs a qubit pair");
        const DensityMatrix rho = pair_reduction(psi, pair->first, pair->second);
        const double c = concurrence_c(rho);
        res.pair = pair;
        if (id == MeasureId::concurrence_c)
            res.value = c;
        else if (id == MeasureId::concurrence)
            res.value = std::max(0.0, c);
        else
            res.value = eof_from_concurrence(std::max(0.0, c));
        return res;
    }
    switch (id) {
    case MeasureId::mw_q:
        res.value = meyer_wallach_q(psi);
        return res;
    case MeasureId::tangle:
        res.value = n_tangle(psi);
        return res;
    default:
        break;
    }
    require(part.has_value(), "evaluate_measure: " + measure_name(id) + " needs a partition");
    res.partition = part;
    switch (id) {
    case MeasureId::purity:
        res.value = reduced_purity(psi, *part);
        break;
    case MeasureId::linear_entropy:
        res.value = subsystem_linear_entropy(psi, *part);
        break;
    case MeasureId::von_neumann:
        res.value = von_neumann_entropy(partial_trace(psi, part->smaller_side()));
        break;
    default:
        break;
    }
    return res;
}

}  // namespace qbaker
