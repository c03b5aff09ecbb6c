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
 * Quantum baker's maps on N qubits.
 *
 * For 1 <= n <= N the single-step unitary is
 *
 *   B_{N,n} = G_{n-1} S_n G_n^{-1},   G_n = 1_{2^n} (x) F_{2^{N-n}},
 *
 * where F is the centered Fourier transform and S_n cyclically shifts the
 * first n qubits one place to the left. B_{N,1} is the Balazs-Voros-Saraceno
 * map; B_{N,N} is a shift followed by a fixed single-qubit unitary and never
 * entangles product states.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qbaker/tensor_core.hpp"

namespace qbaker {

enum class Strategy { matrix_free, dense };

struct BakerMapConfig {
    int num_qubits = 1;
    int position_bits = 1;
    Strategy strategy = Strategy::matrix_free;

    /// Throws std::invalid_argument, or CapacityError for dense with N > 12.
    void validate() const;
};

/// G_n (or its inverse). n == N multiplies by i, n == 0 is the full transform.
StateVector partial_fourier(int n, const StateVector &psi, bool inverse = false);

/// S_n: |x_1 x_2 .. x_n> |rest>  ->  |x_2 .. x_n x_1> |rest>.
StateVector shift(int n, const StateVector &psi);

/**
 * Reusable single-step map. Holds the Fourier plans (matrix-free) or the dense
 * unitary (dense) for one configuration; `apply` is const and thread-safe.
 */
class BakerMap {
  public:
    explicit BakerMap(const BakerMapConfig &cfg);

    const BakerMapConfig &config() const { return cfg_; }

    [[nodiscard]] StateVector apply(const StateVector &psi) const;

    /// One step in place. `scratch` is resized as needed and may be reused.
    void apply_inplace(cvector &amps, cvector &scratch) const;

  private:
    BakerMapConfig cfg_;
    CenteredDft inner_;  // 2^{N-n}
    CenteredDft outer_;  // 2^{N-n+1}
    CMatrix dense_;
};

/// B_{N,n} |psi>.
StateVector baker_step(const BakerMapConfig &cfg, const StateVector &psi);

/// Dense 2^N x 2^N unitary built from dense Fourier kernels (N <= 12).
CMatrix baker_matrix(const BakerMapConfig &cfg);

/// Dense S_n as a permutation matrix.
CMatrix shift_matrix(int num_qubits, int n);

/// Dense G_n (or inverse) as 1_{2^n} (x) F_{2^{N-n}}.
CMatrix partial_fourier_matrix(int num_qubits, int n, bool inverse = false);

/**
 * Label of a partially transformed basis state |a_{N-n} .. a_1 . x_1 .. x_n>,
 * i.e. G_n |x_1 .. x_n> |a_1 .. a_{N-n}>.
 */
struct PartialBasisLabel {
    std::vector<int> momentum_bits;  // a_1 .. a_{N-n}
    std::vector<int> position_bits;  // x_1 .. x_n

    int num_qubits() const { return static_cast<int>(momentum_bits.size() + position_bits.size()); }
    int n() const { return static_cast<int>(position_bits.size()); }

    /// Phase-space notation, e.g. "10.011".
    std::string to_string() const;

    /// The label B_{N,n} maps this one to: x_1 moves to the front of the momentum string.
    [[nodiscard]] PartialBasisLabel baked() const;

    /// Enumerates all labels with n position bits, in index order.
    static std::vector<PartialBasisLabel> all(int num_qubits, int n);
};

/// G_n |x_1 .. x_n a_1 .. a_{N-n}>.
StateVector make_partial_basis_state(const PartialBasisLabel &label);

/// Same state from its explicit product form (independent construction).
StateVector partial_basis_state_product_form(const PartialBasisLabel &label);

struct BasisMappingReport {
    bool ok = false;
    std::size_t labels_checked = 0;
    double max_error = 0.0;
};

/// Checks B_{N,n} maps every partially transformed basis state onto its baked label (N <= 8).
BasisMappingReport verify_basis_mapping(const BakerMapConfig &cfg);

/**
 * Eigenpair of B_{N,N} built from a cyclic string over the single-qubit
 * eigenstates |+> (label 1) and |-> (label -i).
 */
struct PeriodicEigenpair {
    cplx eigenvalue;
    StateVector eigenstate;
    int period = 0;
    std::vector<int> labels;  // 0 -> alpha = 1, 1 -> alpha = -i; qubit 1 first
    int root_index = 0;       // which P-th root was taken
    /// k in eigenvalue = exp(i pi k / 2N), 0 <= k < 4N
    int phase_index = 0;
};

/// All 2^N analytic eigenpairs of B_{N,N} (N <= 10).
std::vector<PeriodicEigenpair> periodic_spectrum(int num_qubits);

/// Writes a dense matrix as CSV: one row per matrix row, each cell "re,im".
void write_matrix_csv(std::ostream &os, const CMatrix &m);

}  // namespace qbaker
