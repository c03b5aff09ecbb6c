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

#include "qbaker/tensor_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qbaker {

namespace {

constexpr double kPi = std::numbers::pi;

// Plain complex product; std::complex operator* carries inf/nan recovery that
// dominates the transform cost.
inline cplx cmul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void require(bool cond, const char *msg) {
    if (!cond)
        throw std::invalid_argument(msg);
}

// Bit weight of 1-based qubit q in an N-qubit index.
std::size_t qubit_weight(int num_qubits, int q) { return std::size_t{1} << (num_qubits - q); }

// Amplitude-index offsets for every bit pattern of `qubits` (first listed
// qubit most significant within the pattern).
std::vector<std::size_t> pattern_offsets(int num_qubits, const std::vector<int> &qubits) {
    const std::size_t count = std::size_t{1} << qubits.size();
    std::vector<std::size_t> offs(count, 0);
    const int k = static_cast<int>(qubits.size());
    for (std::size_t a = 0; a < count; ++a) {
        std::size_t off = 0;
        for (int i = 0; i < k; ++i) {
            if ((a >> (k - 1 - i)) & 1U)
                off |= qubit_weight(num_qubits, qubits[i]);
        }
        offs[a] = off;
    }
    return offs;
}

// Psi reshaped as a (dim A) x (dim B) matrix, row-major.
cvector reshape(const StateVector &psi, const std::vector<std::size_t> &rows,
                const std::vector<std::size_t> &cols) {
    cvector out(rows.size() * cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            out[a * cols.size() + b] = psi[rows[a] + cols[b]];
    return out;
}

}  // namespace

int log2_exact(std::size_t m) {
    if (m == 0 || !std::has_single_bit(m))
        return -1;
    return std::countr_zero(m);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    require(num_qubits >= 1 && num_qubits <= 30, "StateVector: num_qubits out of range");
    amps_.assign(std::size_t{1} << num_qubits, cplx{});
    amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, cvector amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
    require(num_qubits >= 0 && num_qubits <= 30, "StateVector: num_qubits out of range");
    require(amps_.size() == (std::size_t{1} << num_qubits),
            "StateVector: amplitude count must be 2^num_qubits");
}

StateVector StateVector::from_amplitudes(int num_qubits, cvector amps, double tol) {
    StateVector s(num_qubits, std::move(amps));
    require(std::abs(s.norm() - 1.0) <= tol, "StateVector: amplitudes are not normalized");
    return s;
}

StateVector StateVector::basis(std::span<const int> bits) {
    require(!bits.empty(), "StateVector::basis: empty bit list");
    const int n = static_cast<int>(bits.size());
    std::size_t idx = 0;
    for (int b : bits) {
        require(b == 0 || b == 1, "StateVector::basis: bits must be 0 or 1");
        idx = (idx << 1) | static_cast<std::size_t>(b);
    }
    cvector amps(std::size_t{1} << n);
    amps[idx] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector StateVector::tensor(const StateVector &rhs) const {
    cvector out(dim() * rhs.dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < rhs.dim(); ++j)
            out[i * rhs.dim() + j] = amps_[i] * rhs.amps_[j];
    return StateVector(num_qubits_ + rhs.num_qubits_, std::move(out));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_)
        s += std::norm(a);
    return std::sqrt(s);
}

StateVector StateVector::normalized() const {
    const double n = norm();
    require(n > 0.0, "StateVector: cannot normalize the zero vector");
    StateVector out = *this;
    for (auto &a : out.amps_)
        a /= n;
    return out;
}

cplx StateVector::inner(const StateVector &other) const {
    require(dim() == other.dim(), "StateVector::inner: dimension mismatch");
    cplx s{};
    for (std::size_t i = 0; i < dim(); ++i)
        s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

double StateVector::max_abs_diff(const StateVector &other) const {
    require(dim() == other.dim(), "StateVector::max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
        m = std::max(m, std::abs(amps_[i] - other.amps_[i]));
    return m;
}

// ---------------------------------------------------------------------------
// CMatrix

CMatrix::CMatrix(std::size_t dim, cvector entries) : dim_(dim), data_(std::move(entries)) {
    require(data_.size() == dim * dim, "CMatrix: entry count must be dim^2");
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::outer(std::span<const cplx> v) {
    CMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::conj() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = std::conj(data_[i]);
    return m;
}

cplx CMatrix::trace() const {
    cplx t{};
    for (std::size_t i = 0; i < dim_; ++i)
        t += (*this)(i, i);
    return t;
}

cvector CMatrix::apply(std::span<const cplx> v) const {
    require(v.size() == dim_, "CMatrix::apply: dimension mismatch");
    cvector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        cplx s{};
        const cplx *r = data_.data() + i * dim_;
        for (std::size_t j = 0; j < dim_; ++j)
            s += r[j] * v[j];
        out[i] = s;
    }
    return out;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    require(a.dim_ == b.dim_, "CMatrix: dimension mismatch in product");
    const std::size_t n = a.dim_;
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{})
                continue;
            for (std::size_t j = 0; j < n; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix operator+(const CMatrix &a, const CMatrix &b) {
    require(a.dim_ == b.dim_, "CMatrix: dimension mismatch in sum");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] += b.data_[i];
    return c;
}

CMatrix operator-(const CMatrix &a, const CMatrix &b) {
    require(a.dim_ == b.dim_, "CMatrix: dimension mismatch in difference");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] -= b.data_[i];
    return c;
}

CMatrix operator*(cplx s, const CMatrix &a) {
    CMatrix c = a;
    for (auto &x : c.data_)
        x *= s;
    return c;
}

double CMatrix::max_abs_diff(const CMatrix &other) const {
    require(dim_ == other.dim_, "CMatrix::max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

double CMatrix::hermiticity_error() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double CMatrix::unitarity_error() const {
    return (adjoint() * (*this)).max_abs_diff(identity(dim_));
}

CMatrix CMatrix::kron(const CMatrix &rhs) const {
    const std::size_t n = dim_ * rhs.dim_;
    CMatrix out(n);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const cplx a = (*this)(i, j);
            if (a == cplx{})
                continue;
            for (std::size_t k = 0; k < rhs.dim_; ++k)
                for (std::size_t l = 0; l < rhs.dim_; ++l)
                    out(i * rhs.dim_ + k, j * rhs.dim_ + l) = a * rhs(k, l);
        }
    return out;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix m, double tol) : m_(std::move(m)) {
    require(m_.dim() >= 1, "DensityMatrix: empty matrix");
    require(m_.hermiticity_error() <= tol, "DensityMatrix: matrix is not Hermitian");
    require(std::abs(m_.trace() - 1.0) <= tol, "DensityMatrix: trace is not 1");
    const auto ev = hermitian_eigenvalues(m_);
    require(ev.front() >= -1e-10, "DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return DensityMatrix(CMatrix::outer(psi.amplitudes()), Unchecked{});
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(int num_qubits, std::vector<int> keep)
    : num_qubits_(num_qubits), keep_(std::move(keep)) {
    require(num_qubits >= 2, "Partition: need at least two qubits");
    require(!keep_.empty(), "Partition: kept subsystem is empty");
    require(static_cast<int>(keep_.size()) < num_qubits, "Partition: kept subsystem must be a proper subset");
    for (std::size_t i = 0; i < keep_.size(); ++i) {
        require(keep_[i] >= 1 && keep_[i] <= num_qubits, "Partition: qubit index out of range");
        require(i == 0 || keep_[i] > keep_[i - 1], "Partition: qubit indices must be strictly increasing");
    }
}

Partition Partition::range(int num_qubits, int first, int last) {
    require(first <= last, "Partition::range: first > last");
    std::vector<int> k;
    for (int q = first; q <= last; ++q)
        k.push_back(q);
    return Partition(num_qubits, std::move(k));
}

Partition Partition::parse(int num_qubits, const std::string &spec) {
    const auto dash = spec.find('-');
    try {
        if (dash != std::string::npos) {
            std::size_t used = 0;
            const int a = std::stoi(spec.substr(0, dash), &used);
            require(used == dash, "bad range start");
            const std::string rest = spec.substr(dash + 1);
            const int b = std::stoi(rest, &used);
            require(used == rest.size(), "bad range end");
            return range(num_qubits, a, b);
        }
        std::vector<int> k;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t used = 0;
            k.push_back(std::stoi(tok, &used));
            require(used == tok.size(), "bad qubit index");
        }
        return Partition(num_qubits, std::move(k));
    } catch (const std::invalid_argument &e) {
        throw std::invalid_argument("Partition::parse: cannot parse '" + spec + "': " + e.what());
    } catch (const std::out_of_range &) {
        throw std::invalid_argument("Partition::parse: index out of range in '" + spec + "'");
    }
}

std::vector<int> Partition::complement() const {
    std::vector<int> c;
    for (int q = 1; q <= num_qubits_; ++q)
        if (!std::binary_search(keep_.begin(), keep_.end(), q))
            c.push_back(q);
    return c;
}

Partition Partition::swapped() const { return Partition(num_qubits_, complement()); }

Partition Partition::smaller_side() const {
    return 2 * keep_.size() <= static_cast<std::size_t>(num_qubits_) ? *this : swapped();
}

std::size_t Partition::mu() const { return std::min(dim_keep(), dim_traced()); }
std::size_t Partition::nu() const { return std::max(dim_keep(), dim_traced()); }

std::string Partition::to_string() const {
    // Contiguous runs print as "a-b".
    if (keep_.back() - keep_.front() + 1 == static_cast<int>(keep_.size()) && keep_.size() > 1)
        return std::to_string(keep_.front()) + "-" + std::to_string(keep_.back());
    std::string s;
    for (std::size_t i = 0; i < keep_.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(keep_[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Centered DFT

CenteredDft::CenteredDft(std::size_t m) : m_(m), log2m_(log2_exact(m)) {
    require(log2m_ >= 0, "CenteredDft: size must be a power of two");
    bitrev_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < log2m_; ++b)
            r |= ((i >> b) & 1U) << (log2m_ - 1 - b);
        bitrev_[i] = r;
    }
    const double md = static_cast<double>(m);
    twiddle_.resize(m / 2);
    for (std::size_t k = 0; k < m / 2; ++k)
        twiddle_[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / md);
    pre_.resize(m);
    post_.resize(m);
    const cplx global = std::polar(1.0 / std::sqrt(md), kPi / (2.0 * md));
    for (std::size_t k = 0; k < m; ++k) {
        pre_[k] = std::polar(1.0, kPi * static_cast<double>(k) / md);
        post_[k] = global * pre_[k];
    }
    auto conj_all = [](const cvector &v) {
        cvector c(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            c[i] = std::conj(v[i]);
        return c;
    };
    twiddle_inv_ = conj_all(twiddle_);
    pre_inv_ = conj_all(pre_);
    post_inv_ = conj_all(post_);
}

void CenteredDft::fft(std::span<cplx> a, bool inverse) const {
    const cvector &tw = inverse ? twiddle_inv_ : twiddle_;
    for (std::size_t i = 0; i < m_; ++i)
        if (i < bitrev_[i])
            std::swap(a[i], a[bitrev_[i]]);
    for (std::size_t len = 2; len <= m_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = m_ / len;
        for (std::size_t start = 0; start < m_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx u = a[start + k];
                const cplx t = cmul(tw[k * step], a[start + k + half]);
                a[start + k] = u + t;
                a[start + k + half] = u - t;
            }
        }
    }
}

void CenteredDft::apply(std::span<cplx> block, bool inverse) const {
    require(block.size() == m_, "CenteredDft::apply: block length mismatch");
    const cvector &pre = inverse ? pre_inv_ : pre_;
    const cvector &post = inverse ? post_inv_ : post_;
    for (std::size_t k = 0; k < m_; ++k)
        block[k] = cmul(block[k], pre[k]);
    fft(block, inverse);
    for (std::size_t j = 0; j < m_; ++j)
        block[j] = cmul(block[j], post[j]);
}

CMatrix CenteredDft::dense(std::size_t m, bool inverse) {
    require(log2_exact(m) >= 0, "CenteredDft::dense: size must be a power of two");
    const double md = static_cast<double>(m);
    const double scale = 1.0 / std::sqrt(md);
    CMatrix f(m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
            // Reduce the phase numerator mod 2M before scaling for accuracy.
            const std::size_t num = ((2 * j + 1) * (2 * k + 1)) % (4 * m);
            const double angle = 2.0 * kPi * static_cast<double>(num) / (4.0 * md);
            f(j, k) = std::polar(scale, inverse ? -angle : angle);
        }
    // The inverse kernel is the conjugate transpose; F is symmetric.
    return f;
}

cvector centered_dft(std::size_t m, std::span<const cplx> v, bool inverse) {
    require(m >= 1, "centered_dft: size must be positive");
    require(v.size() == m, "centered_dft: vector length does not match M");
    CenteredDft plan(m);
    cvector out(v.begin(), v.end());
    plan.apply(out, inverse);
    return out;
}

// ---------------------------------------------------------------------------
// Suffix application

void apply_on_suffix_inplace(const CenteredDft &plan, bool inverse, std::span<cplx> amps) {
    const std::size_t m = plan.size();
    require(m >= 1 && amps.size() % m == 0, "apply_on_suffix: block size does not divide the register");
    for (std::size_t off = 0; off < amps.size(); off += m)
        plan.apply(amps.subspan(off, m), inverse);
}

StateVector apply_on_suffix(std::size_t op_dim, SuffixKernel kernel, const StateVector &psi,
                            int start_qubit) {
    const int n = psi.num_qubits();
    require(start_qubit >= 1 && start_qubit <= n, "apply_on_suffix: start_qubit out of range");
    require(op_dim == (std::size_t{1} << (n - start_qubit + 1)),
            "apply_on_suffix: op_dim inconsistent with register size and start qubit");
    StateVector out = psi;
    if (kernel == SuffixKernel::identity)
        return out;
    CenteredDft plan(op_dim);
    apply_on_suffix_inplace(plan, kernel == SuffixKernel::inverse_centered_dft, out.amplitudes());
    return out;
}

// ---------------------------------------------------------------------------
// Partial trace

DensityMatrix partial_trace(const StateVector &psi, const Partition &part) {
    require(part.num_qubits() == psi.num_qubits(), "partial_trace: partition does not match register");
    const auto rows = pattern_offsets(psi.num_qubits(), part.keep());
    const auto cols = pattern_offsets(psi.num_qubits(), part.complement());
    const cvector m = reshape(psi, rows, cols);
    const std::size_t da = rows.size();
    const std::size_t db = cols.size();
    CMatrix rho(da);
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t a2 = a; a2 < da; ++a2) {
            cplx s{};
            const cplx *ra = m.data() + a * db;
            const cplx *rb = m.data() + a2 * db;
            for (std::size_t b = 0; b < db; ++b)
                s += ra[b] * std::conj(rb[b]);
            rho(a, a2) = s;
            rho(a2, a) = std::conj(s);
        }
    return DensityMatrix(std::move(rho), DensityMatrix::Unchecked{});
}

ReducedPurity::ReducedPurity(const Partition &part) : num_qubits_(part.num_qubits()) {
    // tr(rho_A^2) = tr(rho_B^2); form the smaller Gram matrix.
    const Partition small = part.smaller_side();
    rows_ = pattern_offsets(num_qubits_, small.keep());
    cols_ = pattern_offsets(num_qubits_, small.complement());
}

double ReducedPurity::operator()(std::span<const cplx> amps) const {
    require(amps.size() == (std::size_t{1} << num_qubits_), "reduced_purity: partition does not match register");
    const std::size_t da = rows_.size();
    const std::size_t db = cols_.size();
    thread_local cvector m;
    m.resize(da * db);
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < db; ++b)
            m[a * db + b] = amps[rows_[a] + cols_[b]];
    double diag = 0.0;
    double off = 0.0;
    for (std::size_t a = 0; a < da; ++a) {
        const cplx *ra = m.data() + a * db;
        for (std::size_t a2 = a; a2 < da; ++a2) {
            const cplx *rb = m.data() + a2 * db;
            double re = 0.0, im = 0.0;
            for (std::size_t b = 0; b < db; ++b) {
                // ra[b] * conj(rb[b])
                re += ra[b].real() * rb[b].real() + ra[b].imag() * rb[b].imag();
                im += ra[b].imag() * rb[b].real() - ra[b].real() * rb[b].imag();
            }
            const double n2 = re * re + im * im;
            if (a == a2)
                diag += n2;
            else
                off += n2;
        }
    }
    return std::min(diag + 2.0 * off, 1.0);
}

double reduced_purity(const StateVector &psi, const Partition &part) {
    require(part.num_qubits() == psi.num_qubits(), "reduced_purity: partition does not match register");
    return ReducedPurity(part)(psi.amplitudes());
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic Jacobi)

HermitianEigensystem hermitian_eigensystem(const CMatrix &input) {
    const std::size_t n = input.dim();
    require(n >= 1 && n <= 1024, "hermitian_eigenvalues: dimension must be in [1, 1024]");
    double scale = 1.0;
    for (const auto &x : input.data())
        scale = std::max(scale, std::abs(x));
    require(input.hermiticity_error() <= 1e-10 * scale, "hermitian_eigenvalues: matrix is not Hermitian");

    CMatrix a = input;
    // Symmetrize away rounding-level asymmetry.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    CMatrix v = CMatrix::identity(n);

    double frob = 0.0;
    for (const auto &x : a.data())
        frob += std::norm(x);
    frob = std::sqrt(frob);
    const double threshold = 1e-14 * std::max(frob, 1e-300);

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::norm(a(p, q));
        if (std::sqrt(2.0 * off) <= threshold)
            break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0)
                    continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = apq / mag;  // e^{i phi}
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0)
                    t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx sp = s * std::conj(phase);  // s e^{-i phi}

                // A <- A V with V = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - sp * akq;
                    a(k, q) = s * akp + c * std::conj(phase) * akq;
                }
                // A <- V^dag A
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - std::conj(sp) * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - sp * vkq;
                    v(k, q) = s * vkp + c * std::conj(phase) * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigensystem es;
    es.values.resize(n);
    es.vectors = CMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r)
            es.vectors(r, k) = v(r, order[k]);
    }
    return es;
}

std::vector<double> hermitian_eigenvalues(const CMatrix &m) { return hermitian_eigensystem(m).values; }

CMatrix hermitian_psd_sqrt(const CMatrix &m) {
    const auto es = hermitian_eigensystem(m);
    require(es.values.front() >= -1e-8, "hermitian_psd_sqrt: matrix is not positive semidefinite");
    const std::size_t n = m.dim();
    // Eigenvalues at rounding level relative to the largest are zero.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(es.values.front()), std::abs(es.values.back()));
    std::vector<double> root(n);
    for (std::size_t k = 0; k < n; ++k)
        root[k] = es.values[k] > floor ? std::sqrt(es.values[k]) : 0.0;
    CMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < n; ++k)
                s += es.vectors(i, k) * root[k] * std::conj(es.vectors(j, k));
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    for (std::size_t i = 0; i < n; ++i)
        out(i, i) = out(i, i).real();
    return out;
}

}  // namespace qbaker
