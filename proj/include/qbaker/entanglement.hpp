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
 * Entanglement functionals on pure register states and their reductions.
 *
 * Units: von Neumann entropy uses the natural log; entanglement of formation
 * uses log base 2 so that a Bell pair carries exactly one ebit.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qbaker/tensor_core.hpp"

namespace qbaker {

enum class MeasureId { purity, linear_entropy, von_neumann, concurrence_c, concurrence, eof, mw_q, tangle };

/// Short name used on the command line and in CSV headers ("slin", "q", ...).
std::string measure_name(MeasureId id);
MeasureId parse_measure(const std::string &name);

/// Closed range of values a measure can take.
std::pair<double, double> measure_range(MeasureId id);

/// True if the measure needs a qubit pair rather than a bipartition.
bool measure_uses_pair(MeasureId id);

struct MeasureResult {
    MeasureId measure_id;
    double value;
    std::optional<Partition> partition;
    std::optional<std::pair<int, int>> pair;
};

/// tr(rho^2)
double purity(const DensityMatrix &rho);

/// mu/(mu-1) (1 - tr rho^2); `mu` defaults to rho's dimension.
double linear_entropy(const DensityMatrix &rho, std::size_t mu);
double linear_entropy(const DensityMatrix &rho);

/// -sum p ln p over the (clamped) spectrum.
double von_neumann_entropy(const DensityMatrix &rho);

/// Linear entropy of the smaller side of `part`, straight from the state.
double subsystem_linear_entropy(const StateVector &psi, const Partition &part);

/// Two-qubit reduction on qubits (i, j), i < j, ordered as (i, j).
DensityMatrix pair_reduction(const StateVector &psi, int i, int j);

/// lambda_1 - lambda_2 - lambda_3 - lambda_4 (unclipped, in [-1/2, 1]).
double concurrence_c(const DensityMatrix &rho);

/// max(0, concurrence_c)
double concurrence(const DensityMatrix &rho);

/// h((1 + sqrt(1 - C^2)) / 2) with h in bits.
double eof_from_concurrence(double c);
double entanglement_of_formation(const DensityMatrix &rho);

/// Binary entropy in bits.
double binary_entropy(double x);

enum class MwAlgorithm { wedge, purity };

/// Meyer-Wallach Q in [0, 1].
double meyer_wallach_q(const StateVector &psi, MwAlgorithm algorithm = MwAlgorithm::purity);

/// Literal pair-sum form of the squared wedge norm, O(d^2).
double wedge_norm_sq_literal(std::span<const cplx> u, std::span<const cplx> v);

/// tau_N = |<psi| sigma_y^{(x)N} |psi*>|^2 for even N.
double n_tangle(const StateVector &psi);

/// Evaluates one measure. Bipartite measures use `part`, pair measures use `pair`.
MeasureResult evaluate_measure(MeasureId id, const StateVector &psi, const std::optional<Partition> &part,
                               const std::optional<std::pair<int, int>> &pair);

}  // namespace qbaker
