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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qbaker/entanglement.hpp"
#include "qbaker/random_ensembles.hpp"
#include "test_support.hpp"

using namespace qbaker;
using namespace qbaker::testing;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

StateVector bell() { return StateVector(2, cvector{kH, 0.0, 0.0, kH}); }

StateVector cat(int nq) {
    cvector v(std::size_t{1} << nq);
    v.front() = kH;
    v.back() = kH;
    return StateVector(nq, v);
}

StateVector random_product(int nq, std::mt19937_64 &rng) {
    StateVector s(1, random_unit(2, rng));
    for (int q = 1; q < nq; ++q)
        s = s.tensor(StateVector(1, random_unit(2, rng)));
    return s;
}

// Random single-qubit unitary from a normalized Gaussian column pair.
CMatrix random_u2(std::mt19937_64 &rng) {
    const cvector a = random_unit(2, rng);
    const cplx ph = std::polar(1.0, std::uniform_real_distribution<double>(0, 2 * kPi)(rng));
    CMatrix u(2);
    u(0, 0) = a[0];
    u(1, 0) = a[1];
    u(0, 1) = -ph * std::conj(a[1]);
    u(1, 1) = ph * std::conj(a[0]);
    return u;
}

StateVector apply_local(const StateVector &psi, const std::vector<CMatrix> &us) {
    CMatrix full = us[0];
    for (std::size_t q = 1; q < us.size(); ++q)
        full = full.kron(us[q]);
    return StateVector(psi.num_qubits(), full.apply(psi.data()));
}

// Werner state p |Phi+><Phi+| + (1-p) I/4.
DensityMatrix werner(double p) {
    CMatrix m = (1.0 - p) * (0.25 * CMatrix::identity(4)) + p * CMatrix::outer(bell().amplitudes());
    return DensityMatrix(m);
}

double h2(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

// <psi| sy^{(x)N} |psi*> from the explicit Kronecker power.
double tangle_oracle(const StateVector &psi) {
    CMatrix sy(2);
    sy(0, 1) = -kI;
    sy(1, 0) = kI;
    CMatrix full = sy;
    for (int q = 1; q < psi.num_qubits(); ++q)
        full = full.kron(sy);
    cvector conj(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i)
        conj[i] = std::conj(psi[i]);
    const cvector img = full.apply(conj);
    cplx s{};
    for (std::size_t i = 0; i < psi.dim(); ++i)
        s += std::conj(psi[i]) * img[i];
    return std::norm(s);
}

// Literal wedge-sum Q.
double q_oracle(const StateVector &psi) {
    const int nq = psi.num_qubits();
    double acc = 0.0;
    for (int q = 1; q <= nq; ++q) {
        cvector u, v;
        const std::size_t bit = std::size_t{1} << (nq - q);
        for (std::size_t i = 0; i < psi.dim(); ++i)
            if (!(i & bit)) {
                u.push_back(psi[i]);
                v.push_back(psi[i | bit]);
            }
        acc += wedge_norm_sq_literal(u, v);
    }
    return 4.0 / nq * acc;
}

}  // namespace

TEST_CASE("measure names round trip") {
    for (auto id : {MeasureId::purity, MeasureId::linear_entropy, MeasureId::von_neumann, MeasureId::concurrence_c,
                    MeasureId::concurrence, MeasureId::eof, MeasureId::mw_q, MeasureId::tangle})
        CHECK(parse_measure(measure_name(id)) == id);
    CHECK(parse_measure("slin") == MeasureId::linear_entropy);
    CHECK_THROWS_AS(parse_measure("nope"), std::invalid_argument);
}

TEST_CASE("purity examples") {
    CHECK(purity(DensityMatrix::pure(bell())) == doctest::Approx(1.0));
    CHECK(purity(DensityMatrix(0.5 * CMatrix::identity(2))) == doctest::Approx(0.5));
    CHECK(purity(DensityMatrix(0.25 * CMatrix::identity(4))) == doctest::Approx(0.25));
}

TEST_CASE("linear entropy examples") {
    CHECK(linear_entropy(DensityMatrix::pure(bell())) == doctest::Approx(0.0));
    CHECK(linear_entropy(DensityMatrix(0.5 * CMatrix::identity(2)), 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(linear_entropy(DensityMatrix(0.5 * CMatrix::identity(2)), 1), std::invalid_argument);
    const StateVector half = make_special_state(SpecialKind::max_entangled_half, 8);
    CHECK(std::abs(subsystem_linear_entropy(half, Partition::range(8, 1, 4)) - 1.0) < 1e-12);
    CHECK(std::abs(linear_entropy(partial_trace(half, Partition::range(8, 1, 4)), 16) - 1.0) < 1e-12);
}

TEST_CASE("von Neumann examples") {
    CHECK(von_neumann_entropy(DensityMatrix::pure(bell())) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(von_neumann_entropy(DensityMatrix(0.5 * CMatrix::identity(2))) - std::log(2.0)) < 1e-14);
    for (std::size_t mu : {2u, 4u, 8u, 16u})
        CHECK(std::abs(von_neumann_entropy(DensityMatrix((1.0 / mu) * CMatrix::identity(mu))) -
                       std::log(static_cast<double>(mu))) < 1e-12);
}

TEST_CASE("Schmidt symmetry of the linear entropy") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        const StateVector psi = random_state(6, rng);
        for (const auto &keep : std::vector<std::vector<int>>{{1}, {1, 2}, {2, 5, 6}, {1, 3, 5}}) {
            const Partition p(6, keep);
            const std::size_t mu = p.mu();
            const double a = linear_entropy(partial_trace(psi, p), mu);
            const double b = linear_entropy(partial_trace(psi, p.swapped()), mu);
            CHECK(std::abs(a - b) < 1e-10);
            CHECK(std::abs(a - subsystem_linear_entropy(psi, p)) < 1e-10);
        }
    }
}

TEST_CASE("concurrence examples") {
    const std::vector<int> b00{0, 0};
    CHECK(std::abs(concurrence_c(DensityMatrix::pure(StateVector::basis(b00)))) < 1e-12);
    CHECK(std::abs(concurrence_c(DensityMatrix::pure(bell())) - 1.0) < 1e-12);
    CHECK(std::abs(concurrence_c(DensityMatrix(0.25 * CMatrix::identity(4))) + 0.5) < 1e-12);
    CHECK_THROWS_AS(concurrence_c(DensityMatrix(0.5 * CMatrix::identity(2))), std::invalid_argument);
}

TEST_CASE("unclipped concurrence of Werner states") {
    for (double p = 0.0; p <= 1.0; p += 0.05) {
        const DensityMatrix rho = werner(p);
        CHECK(std::abs(concurrence_c(rho) - (3 * p - 1) / 2) < 1e-10);
        CHECK(std::abs(concurrence(rho) - std::max(0.0, (3 * p - 1) / 2)) < 1e-10);
    }
}

TEST_CASE("pure two-qubit concurrence is 2|ad - bc|") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 200; ++t) {
        const StateVector psi = random_state(2, rng);
        const double want = 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
        CHECK(std::abs(concurrence_c(DensityMatrix::pure(psi)) - want) < 1e-10);
    }
}

TEST_CASE("concurrence of mixed reductions is invariant under local unitaries") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 50; ++t) {
        const StateVector psi = random_state(4, rng);
        const double c0 = concurrence_c(pair_reduction(psi, 1, 4));
        const StateVector moved = apply_local(psi, {random_u2(rng), random_u2(rng), random_u2(rng), random_u2(rng)});
        CHECK(std::abs(concurrence_c(pair_reduction(moved, 1, 4)) - c0) < 1e-10);
        CHECK(c0 >= -0.5);
        CHECK(c0 <= 1.0);
    }
}

TEST_CASE("pair reduction ordering") {
    const std::vector<int> bits{1, 0, 0};
    const StateVector psi = StateVector::basis(bits);
    const DensityMatrix r13 = pair_reduction(psi, 1, 3);
    CHECK(std::abs(r13(2, 2) - 1.0) < 1e-15);
    const DensityMatrix r31 = pair_reduction(psi, 3, 1);
    CHECK(r31.matrix().max_abs_diff(r13.matrix()) == 0.0);
    CHECK(pair_reduction(bell(), 1, 2).matrix().max_abs_diff(DensityMatrix::pure(bell()).matrix()) == 0.0);
    CHECK_THROWS_AS(pair_reduction(psi, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(pair_reduction(psi, 1, 4), std::invalid_argument);
}

TEST_CASE("entanglement of formation") {
    const std::vector<int> b01{0, 1};
    CHECK(entanglement_of_formation(DensityMatrix::pure(StateVector::basis(b01))) == doctest::Approx(0.0));
    CHECK(std::abs(entanglement_of_formation(DensityMatrix::pure(bell())) - 1.0) < 1e-12);
    CHECK(std::abs(eof_from_concurrence(0.6) - h2(0.9)) < 1e-14);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    double prev = -1.0;
    for (int k = 0; k <= 1000; ++k) {
        const double e = eof_from_concurrence(k / 1000.0);
        CHECK(e >= prev);
        prev = e;
    }
    CHECK_THROWS_AS(eof_from_concurrence(1.5), std::invalid_argument);
}

TEST_CASE("Meyer-Wallach examples") {
    std::mt19937_64 rng(34);
    for (int nq = 2; nq <= 6; ++nq) {
        const StateVector p = random_product(nq, rng);
        CHECK(meyer_wallach_q(p) < 1e-12);
        CHECK(meyer_wallach_q(p, MwAlgorithm::wedge) < 1e-12);
        CHECK(std::abs(meyer_wallach_q(cat(nq)) - 1.0) < 1e-12);
        CHECK(std::abs(meyer_wallach_q(cat(nq), MwAlgorithm::wedge) - 1.0) < 1e-12);
    }
    CHECK(std::abs(meyer_wallach_q(bell()) - 1.0) < 1e-12);
}

TEST_CASE("wedge form matches the literal pair sum") {
    std::mt19937_64 rng(35);
    for (int nq = 1; nq <= 4; ++nq)
        for (int t = 0; t < 20; ++t) {
            const StateVector psi = random_state(nq, rng);
            const double want = q_oracle(psi);
            CHECK(std::abs(meyer_wallach_q(psi, MwAlgorithm::wedge) - want) < 1e-12);
            CHECK(std::abs(meyer_wallach_q(psi, MwAlgorithm::purity) - want) < 1e-12);
        }
}

TEST_CASE("Brennen identity on 8 qubits") {
    std::mt19937_64 rng(36);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const StateVector psi = random_state(8, rng);
        worst = std::max(worst, std::abs(meyer_wallach_q(psi, MwAlgorithm::wedge) - meyer_wallach_q(psi)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("Q is invariant under local unitaries") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 20; ++t) {
        const StateVector psi = random_state(4, rng);
        std::vector<CMatrix> us;
        for (int q = 0; q < 4; ++q)
            us.push_back(random_u2(rng));
        CHECK(std::abs(meyer_wallach_q(apply_local(psi, us)) - meyer_wallach_q(psi)) < 1e-10);
    }
}

TEST_CASE("n-tangle") {
    for (int nq = 2; nq <= 8; nq += 2) {
        CHECK(std::abs(n_tangle(cat(nq)) - 1.0) < 1e-12);
        CHECK(n_tangle(StateVector(nq)) < 1e-15);
    }
    CHECK(std::abs(n_tangle(bell()) - 1.0) < 1e-12);
    CHECK_THROWS_AS(n_tangle(StateVector(3)), std::invalid_argument);
    std::mt19937_64 rng(38);
    for (int nq : {2, 4, 6})
        for (int t = 0; t < 10; ++t) {
            const StateVector psi = random_state(nq, rng);
            CHECK(std::abs(n_tangle(psi) - tangle_oracle(psi)) < 1e-12);
        }
    for (int t = 0; t < 10; ++t)
        CHECK(n_tangle(random_product(6, rng)) < 1e-14);
}

TEST_CASE("two-qubit measures coincide") {
    std::mt19937_64 rng(39);
    const Partition half(2, {1});
    for (int t = 0; t < 200; ++t) {
        const StateVector psi = random_state(2, rng);
        const double q = meyer_wallach_q(psi);
        CHECK(std::abs(q - n_tangle(psi)) < 1e-10);
        CHECK(std::abs(q - subsystem_linear_entropy(psi, half)) < 1e-10);
    }
}

TEST_CASE("every measure stays in its declared range") {
    std::mt19937_64 rng(40);
    for (int t = 0; t < 10000; ++t) {
        const int nq = 2 + 2 * (t % 3);
        const StateVector psi = (t % 5 == 0) ? random_product(nq, rng) : random_state(nq, rng);
        const Partition part = Partition::range(nq, 1, nq / 2);
        const std::pair<int, int> pair{1, nq};
        for (auto id : {MeasureId::purity, MeasureId::linear_entropy, MeasureId::von_neumann,
                        MeasureId::concurrence_c, MeasureId::concurrence, MeasureId::eof, MeasureId::mw_q,
                        MeasureId::tangle}) {
            if (id == MeasureId::von_neumann && t % 10 != 0)
                continue;
            const MeasureResult r = evaluate_measure(id, psi, part, pair);
            const auto [lo, hi] = measure_range(id);
            CHECK(r.value >= lo);
            CHECK(r.value <= hi);
        }
    }
}

TEST_CASE("evaluate_measure dispatch") {
    const StateVector psi = bell();
    CHECK_THROWS_AS(evaluate_measure(MeasureId::linear_entropy, psi, std::nullopt, std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_measure(MeasureId::concurrence, psi, std::nullopt, std::nullopt),
                    std::invalid_argument);
    const auto r = evaluate_measure(MeasureId::eof, psi, std::nullopt, std::make_pair(1, 2));
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.pair.has_value());
    const auto s = evaluate_measure(MeasureId::von_neumann, psi, Partition(2, {1}), std::nullopt);
    CHECK(std::abs(s.value - std::log(2.0)) < 1e-12);
}
