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
 * Dense complex kernels for qubit registers: state vectors, small dense
 * matrices, the centered (anti-periodic) Fourier transform, partial traces
 * and a Hermitian Jacobi eigensolver.
 *
 * Qubit ordering is big-endian throughout: qubit 1 is the most significant
 * bit of the amplitude index, so index j = sum_l x_l 2^(N-l).
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbaker {

using cplx = std::complex<double>;
using cvector = std::vector<cplx>;

/// Thrown when a request exceeds a configured size or memory limit.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Largest register handled anywhere in the library.
inline constexpr int kMaxQubits = 12;

class Partition;

/// Returns log2(m) if m is a power of two, otherwise -1.
int log2_exact(std::size_t m);

/**
 * Pure state of an N-qubit register.
 *
 * Construction normalizes nothing; use `normalized()` or the checked factory
 * `from_amplitudes` when the norm is not already 1.
 */
class StateVector {
  public:
    StateVector() = default;

    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    /// Takes ownership of `amps`; size must be 2^num_qubits.
    StateVector(int num_qubits, cvector amps);

    /// Like the constructor but also requires unit norm within `tol`.
    static StateVector from_amplitudes(int num_qubits, cvector amps, double tol = 1e-12);

    /// Computational basis state |x_1 ... x_N> from a bit list (qubit 1 first).
    static StateVector basis(std::span<const int> bits);

    /// Tensor product, `this` on the most significant qubits.
    [[nodiscard]] StateVector tensor(const StateVector &rhs) const;

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    const cplx &operator[](std::size_t i) const { return amps_[i]; }
    cplx &operator[](std::size_t i) { return amps_[i]; }

    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes() { return amps_; }
    const cvector &data() const { return amps_; }

    double norm() const;
    [[nodiscard]] StateVector normalized() const;

    /// <this|other>
    cplx inner(const StateVector &other) const;

    /// Largest componentwise |a_i - b_i|.
    double max_abs_diff(const StateVector &other) const;

  private:
    int num_qubits_ = 0;
    cvector amps_;
};

/// Row-major dense complex square matrix.
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    CMatrix(std::size_t dim, cvector entries);

    static CMatrix identity(std::size_t dim);
    static CMatrix diagonal(std::span<const double> diag);
    /// |v><v|
    static CMatrix outer(std::span<const cplx> v);

    std::size_t dim() const { return dim_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * dim_, dim_}; }
    const cvector &data() const { return data_; }

    [[nodiscard]] CMatrix adjoint() const;
    [[nodiscard]] CMatrix conj() const;
    cplx trace() const;

    [[nodiscard]] cvector apply(std::span<const cplx> v) const;

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator+(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator-(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator*(cplx s, const CMatrix &a);

    /// max |a_ij - b_ij|
    double max_abs_diff(const CMatrix &other) const;
    /// max |a_ij - conj(a_ji)|
    double hermiticity_error() const;
    /// max |(A^dag A - I)_ij|
    double unitarity_error() const;

    /// A (x) B
    [[nodiscard]] CMatrix kron(const CMatrix &rhs) const;

  private:
    std::size_t dim_ = 0;
    cvector data_;
};

/// Reduced density matrix of a subsystem. Hermitian, unit trace, PSD.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    /// Validates the invariants at tolerance `tol` (PSD check at -1e-10).
    explicit DensityMatrix(CMatrix m, double tol = 1e-12);

    /// Builds |psi><psi|.
    static DensityMatrix pure(const StateVector &psi);

    std::size_t dim() const { return m_.dim(); }
    const CMatrix &matrix() const { return m_; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  private:
    struct Unchecked {};
    DensityMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}
    friend DensityMatrix partial_trace(const StateVector &, const Partition &);

    CMatrix m_;
};

/**
 * Split of an N-qubit register into a kept subsystem A and a traced
 * subsystem B. Qubits are 1-based. `mu()` and `nu()` report the smaller and
 * larger of the two subsystem dimensions.
 */
class Partition {
  public:
    Partition(int num_qubits, std::vector<int> keep);

    /// Keeps qubits first..last inclusive.
    static Partition range(int num_qubits, int first, int last);
    /// Parses "a-b" or a comma separated list such as "1,3,4".
    static Partition parse(int num_qubits, const std::string &spec);

    int num_qubits() const { return num_qubits_; }
    const std::vector<int> &keep() const { return keep_; }
    std::vector<int> complement() const;

    /// The partition with A and B exchanged.
    [[nodiscard]] Partition swapped() const;

    /// The side with fewer qubits (A on ties).
    [[nodiscard]] Partition smaller_side() const;

    std::size_t dim_keep() const { return std::size_t{1} << keep_.size(); }
    std::size_t dim_traced() const { return std::size_t{1} << (num_qubits_ - keep_.size()); }
    std::size_t mu() const;
    std::size_t nu() const;

    std::string to_string() const;

  private:
    int num_qubits_;
    std::vector<int> keep_;
};

/**
 * Precomputed centered DFT of size M (a power of two):
 *
 *   F_jk = M^{-1/2} exp(2 pi i (j + 1/2)(k + 1/2) / M)
 *
 * evaluated as phase * radix-2 FFT * phase. Immutable after construction.
 */
class CenteredDft {
  public:
    explicit CenteredDft(std::size_t m);

    std::size_t size() const { return m_; }

    /// In-place transform of a contiguous block of length M.
    void apply(std::span<cplx> block, bool inverse) const;

    /// Dense O(M^2) matrix of the kernel, used as a cross-check.
    static CMatrix dense(std::size_t m, bool inverse = false);

  private:
    void fft(std::span<cplx> a, bool inverse) const;

    std::size_t m_;
    int log2m_;
    std::vector<std::size_t> bitrev_;
    cvector twiddle_;  // exp(2 pi i k / M), k < M/2
    cvector pre_;      // exp(i pi k / M)
    cvector post_;     // M^{-1/2} exp(i pi/(2M)) exp(i pi j / M)
    cvector twiddle_inv_, pre_inv_, post_inv_;
};

/// Centered DFT of `v`; `inverse` applies the conjugate transpose.
cvector centered_dft(std::size_t m, std::span<const cplx> v, bool inverse = false);

/// Transform applied to the qubit suffix by `apply_on_suffix`.
enum class SuffixKernel { identity, centered_dft, inverse_centered_dft };

/**
 * Applies a transform to qubits start_qubit..N, acting independently on each
 * contiguous block of amplitudes that share the same prefix.
 */
StateVector apply_on_suffix(std::size_t op_dim, SuffixKernel kernel, const StateVector &psi,
                            int start_qubit);

/// In-place variant with a prebuilt plan; `plan.size()` must divide psi's length.
void apply_on_suffix_inplace(const CenteredDft &plan, bool inverse, std::span<cplx> amps);

/// Reduced density matrix on `part.keep()`.
DensityMatrix partial_trace(const StateVector &psi, const Partition &part);

/// tr(rho_A^2) for the kept side, without forming a checked DensityMatrix.
double reduced_purity(const StateVector &psi, const Partition &part);

/// Reusable form of `reduced_purity` with the index maps precomputed.
class ReducedPurity {
  public:
    explicit ReducedPurity(const Partition &part);
    double operator()(std::span<const cplx> amps) const;

  private:
    int num_qubits_;
    std::vector<std::size_t> rows_;  // smaller side
    std::vector<std::size_t> cols_;
};

/// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi).
std::vector<double> hermitian_eigenvalues(const CMatrix &m);

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k is the eigenvector of values[k]
};
HermitianEigensystem hermitian_eigensystem(const CMatrix &m);

/// Principal square root of a PSD Hermitian matrix.
CMatrix hermitian_psd_sqrt(const CMatrix &m);

}  // namespace qbaker
