// Copyright 2026 The designlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "designlab/statevector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <Eigen/Eigenvalues>

#include "designlab/common.hpp"
#include "designlab/pauli_chain.hpp"

using namespace designlab;

namespace {

// Full 2^n matrix of a two-qubit gate, qubit q is bit q of the index.
Eigen::MatrixXcd embed(int n, int i, int j, const Eigen::Matrix4cd &u) {
    const int dim = 1 << n;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    auto bit = [](int x, int q) { return (x >> q) & 1; };
    for (int col = 0; col < dim; ++col) {
        for (int row = 0; row < dim; ++row) {
            bool rest_equal = true;
            for (int q = 0; q < n; ++q) {
                if (q != i && q != j && bit(row, q) != bit(col, q)) {
                    rest_equal = false;
                }
            }
            if (rest_equal) {
                full(row, col) = u(2 * bit(row, i) + bit(row, j), 2 * bit(col, i) + bit(col, j));
            }
        }
    }
    return full;
}

}  // namespace

TEST(haar_unitary, is_unitary) {
    Rng rng = stream(1, 0);
    for (int dim : {1, 2, 4, 16, 64}) {
        auto u = haar_unitary(dim, rng);
        ASSERT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).norm(), 1e-12);
    }
    ASSERT_THROW(haar_unitary(65, rng), std::invalid_argument);
}

TEST(haar_unitary, low_moments) {
    Rng rng = stream(2, 0);
    const int trials = 100000;
    double first = 0;
    double second = 0;
    double fourth = 0;
    for (int k = 0; k < trials; ++k) {
        auto u = haar_unitary(2, rng);
        first += std::norm(u(0, 1));
        second += std::norm(u(0, 0)) * std::norm(u(1, 1));
        fourth += std::norm(u(0, 0)) * std::norm(u(0, 0));
    }
    ASSERT_NEAR(first / trials, 0.5, 0.005);
    ASSERT_NEAR(second / trials, 1.0 / 3, 0.005);
    ASSERT_NEAR(fourth / trials, 1.0 / 3, 0.005);
}

TEST(statevector, apply_matches_kronecker_embedding) {
    Rng rng = stream(4, 0);
    const int n = 4;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{0, 3}, std::pair{2, 1}}) {
        Eigen::Matrix4cd u = haar_unitary(4, rng);
        Statevector psi(n);
        Eigen::VectorXcd v(1 << n);
        for (int x = 0; x < (1 << n); ++x) {
            psi.amplitudes()[x] = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
            v[x] = psi.amplitudes()[x];
        }
        psi.apply(i, j, u);
        Eigen::VectorXcd expect = embed(n, i, j, u) * v;
        for (int x = 0; x < (1 << n); ++x) {
            ASSERT_LT(std::abs(psi.amplitudes()[x] - expect[x]), 1e-13) << i << j << x;
        }
    }
}

TEST(statevector, basis_and_norm) {
    Statevector psi(3);
    psi.set_basis(5);
    ASSERT_DOUBLE_EQ(psi.norm(), 1.0);
    ASSERT_DOUBLE_EQ(psi.collision(), 1.0);
    ASSERT_EQ(psi.amplitudes()[5], cplx(1, 0));
}

TEST(ensemble, parse_and_validate) {
    ASSERT_EQ(parse_ensemble("cg"), EnsembleKind::COMPLETE_GRAPH);
    ASSERT_EQ(parse_ensemble("lattice2d"), EnsembleKind::LATTICE_2D);
    ASSERT_EQ(parse_ensemble("HAAR_FULL"), EnsembleKind::HAAR_FULL);
    ASSERT_THROW(parse_ensemble("bogus"), std::invalid_argument);
    EnsembleSpec bad{EnsembleKind::LATTICE_2D, 5, 1, 1};
    ASSERT_THROW(bad.validate(), std::invalid_argument);
    EnsembleSpec one{EnsembleKind::COMPLETE_GRAPH, 1, 1, 1};
    ASSERT_THROW(one.validate(), std::invalid_argument);
}

TEST(circuits, brickwork_covers_neighbours) {
    auto round = brickwork_round({0, 1, 2, 3, 4});
    ASSERT_EQ(round.size(), 2u);
    std::set<std::pair<int, int>> pairs;
    for (const auto &layer : round) {
        std::set<int> used;
        for (auto [a, b] : layer) {
            ASSERT_TRUE(used.insert(a).second);
            ASSERT_TRUE(used.insert(b).second);
            pairs.insert({std::min(a, b), std::max(a, b)});
        }
    }
    ASSERT_EQ(pairs, (std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
}

TEST(circuits, structure) {
    Rng rng = stream(6, 0);
    auto cg = sample_circuit({EnsembleKind::COMPLETE_GRAPH, 5, 17, 1}, rng);
    ASSERT_EQ(cg.gates.size(), 17u);
    auto l1 = sample_circuit({EnsembleKind::LATTICE_1D, 6, 3, 1}, rng);
    ASSERT_EQ(l1.gates.size(), 3u * 5u);
    auto l2 = sample_circuit({EnsembleKind::LATTICE_2D, 4, 1, 1}, rng);
    ASSERT_EQ(l2.layers, 6);
    auto haar = sample_circuit({EnsembleKind::HAAR_FULL, 3, 1, 1}, rng);
    ASSERT_TRUE(haar.full.has_value());
    ASSERT_NEAR(haar.run().norm(), 1.0, 1e-12);
}

TEST(collision, single_gate_is_two_fifths) {
    auto e = mc_expected_collision({EnsembleKind::COMPLETE_GRAPH, 2, 1, 1}, 40000, 8, 1);
    ASSERT_NEAR(e.mean, 0.4, 4 * e.std_error + 1e-3);
    auto h = mc_expected_collision({EnsembleKind::HAAR_FULL, 3, 1, 1}, 20000, 9, 1);
    ASSERT_NEAR(h.mean, 2.0 / 9, 4 * h.std_error);
    ASSERT_THROW(mc_expected_collision({EnsembleKind::COMPLETE_GRAPH, 2, 1, 1}, 10, 8, 1), std::invalid_argument);
}

TEST(collision, sweep_matches_exact_chain) {
    const int n = 3;
    auto sweep = mc_collision_sweep({EnsembleKind::COMPLETE_GRAPH, n, 12, 1}, 20000, 10, 1);
    ASSERT_EQ(sweep.size(), 13u);
    ASSERT_DOUBLE_EQ(sweep[0].mean, 1.0);
    for (int s = 1; s <= 12; ++s) {
        double exact = coll_exact_chain(n, s);
        ASSERT_LE(std::abs(sweep[s].mean - exact), 4.5 * sweep[s].std_error + 1e-12) << s;
    }
}

TEST(collision, deterministic_per_seed) {
    EnsembleSpec spec{EnsembleKind::LATTICE_1D, 4, 2, 1};
    std::vector<TrialRecord> a;
    std::vector<TrialRecord> b;
    auto ea = mc_expected_collision(spec, 200, 77, 1, &a);
    auto eb = mc_expected_collision(spec, 200, 77, 1, &b);
    ASSERT_EQ(ea.mean, eb.mean);
    ASSERT_EQ(a.size(), 200u);
    for (std::size_t k = 0; k < a.size(); ++k) {
        ASSERT_EQ(a[k].collision, b[k].collision);
        ASSERT_GE(a[k].collision, 1.0 / 16 - 1e-12);
        ASSERT_LE(a[k].amplitude0, 1.0 + 1e-12);
    }
}

TEST(monomial, unbalanced_vanishes) {
    EnsembleSpec spec{EnsembleKind::HAAR_FULL, 2, 1, 1};
    auto diag = monomial_estimate(spec, 1, {0, 0}, {0, 0}, 20000, 12, 1);
    ASSERT_TRUE(diag.diagonal);
    ASSERT_NEAR(diag.mean.real(), 0.25, 4 * diag.std_error_re);
    auto off = monomial_estimate(spec, 1, {0, 1}, {0, 0}, 20000, 13, 1);
    ASSERT_FALSE(off.diagonal);
    ASSERT_LE(std::abs(off.mean.real()), 4 * off.std_error_re + 1e-12);
    ASSERT_LE(std::abs(off.mean.imag()), 4 * off.std_error_im + 1e-12);
}

TEST(reduced_density, trace_and_hermitian) {
    Rng rng = stream(14, 0);
    auto c = sample_circuit({EnsembleKind::COMPLETE_GRAPH, 5, 30, 1}, rng);
    auto psi = c.run();
    auto rho = reduced_density(psi, {1, 3});
    ASSERT_EQ(rho.rows(), 4);
    ASSERT_NEAR(rho.trace().real(), 1.0, 1e-12);
    ASSERT_LT((rho - rho.adjoint()).norm(), 1e-13);
    Statevector zero(3);
    auto pure = reduced_density(zero, {0});
    ASSERT_NEAR(pure(0, 0).real(), 1.0, 1e-15);
}

TEST(scrambling, inequality_holds_samplewise) {
    auto s = scrambling_check({EnsembleKind::COMPLETE_GRAPH, 5, 40, 1}, {0, 1}, 300, 15, 1);
    ASSERT_EQ(s.violations, 0u);
    ASSERT_LE(s.max_excess, 1e-10);
    ASSERT_GE(s.purity.mean, 0.25 - 1e-12);
}

namespace {

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

double trace_norm(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST(haar_unitary, left_invariance) {
    Rng rng = stream(60, 0);
    Eigen::MatrixXcd v = haar_unitary(4, rng);
    const int samples = 10000;
    std::vector<double> plain;
    std::vector<double> rotated;
    for (int k = 0; k < samples; ++k) {
        Eigen::VectorXcd col = haar_unitary(4, rng).col(0);
        Eigen::VectorXcd col2 = haar_unitary(4, rng).col(0);
        Eigen::VectorXcd moved = v * col2;
        double c1 = 0;
        double c2 = 0;
        for (int x = 0; x < 4; ++x) {
            c1 += std::pow(std::norm(col[x]), 2);
            c2 += std::pow(std::norm(moved[x]), 2);
        }
        plain.push_back(c1);
        rotated.push_back(c2);
    }
    // Two-sample critical value at 1e-3.
    double critical = std::sqrt(-std::log(1e-3 / 2) / 2) * std::sqrt(2.0 / samples);
    ASSERT_LT(ks_statistic(plain, rotated), critical);
}

TEST(statevector, norm_preserved_over_long_circuit) {
    Rng rng = stream(61, 0);
    auto c = sample_circuit({EnsembleKind::COMPLETE_GRAPH, 6, 10000, 1}, rng);
    ASSERT_NEAR(c.run().norm(), 1.0, 1e-10);
}

TEST(statevector, collision_extremes) {
    Statevector psi(4);
    ASSERT_DOUBLE_EQ(psi.collision(), 1.0);
    for (auto &a : psi.amplitudes()) {
        a = cplx(0.25, 0);
    }
    ASSERT_DOUBLE_EQ(psi.collision(), 1.0 / 16);
}

TEST(circuits, lattice_1d_round_order) {
    Rng rng = stream(62, 0);
    auto c = sample_circuit({EnsembleKind::LATTICE_1D, 4, 1, 1}, rng);
    ASSERT_EQ(c.gates.size(), 3u);
    ASSERT_EQ(std::pair(c.gates[0].i, c.gates[0].j), std::pair(0, 1));
    ASSERT_EQ(std::pair(c.gates[1].i, c.gates[1].j), std::pair(2, 3));
    ASSERT_EQ(std::pair(c.gates[2].i, c.gates[2].j), std::pair(1, 2));
    ASSERT_EQ(c.layers, 2);
}

TEST(collision, sweep_non_increasing_within_error) {
    auto sweep = mc_collision_sweep({EnsembleKind::COMPLETE_GRAPH, 4, 30, 1}, 5000, 63, 1);
    for (std::size_t s = 1; s < sweep.size(); ++s) {
        double slack = 4 * std::hypot(sweep[s].std_error, sweep[s - 1].std_error);
        ASSERT_LE(sweep[s].mean, sweep[s - 1].mean + slack) << s;
    }
}

TEST(anticoncentration, haar_finite_dimension_law) {
    auto e = anticoncentration_fraction({EnsembleKind::HAAR_FULL, 5, 1, 1}, 0.5, 10000, 64, 1);
    double exact = std::pow(1 - 0.5 / 32, 31);
    ASSERT_NEAR(e.mean, exact, 3 * e.std_error);
}

TEST(monomial, haar_first_moment) {
    auto e = monomial_estimate({EnsembleKind::HAAR_FULL, 3, 1, 1}, 1, {5, 5}, {0, 0}, 20000, 65, 1);
    ASSERT_TRUE(e.diagonal);
    ASSERT_NEAR(e.mean.real(), 1.0 / 8, 3 * e.std_error_re);
    ASSERT_THROW(monomial_estimate({EnsembleKind::HAAR_FULL, 3, 1, 1}, 1, {8, 8}, {0, 0}, 200, 65, 1),
                 std::invalid_argument);
}

TEST(scrambling, product_state_distance) {
    Statevector zero(4);
    auto rho = reduced_density(zero, {0, 2});
    ASSERT_NEAR(trace_norm(rho - Eigen::MatrixXcd::Identity(4, 4) / 4.0), 1.5, 1e-14);
}
