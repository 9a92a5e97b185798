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

#include "designlab/spectral_chain.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "designlab/pauli_chain.hpp"

using namespace designlab;

namespace {

mpz_class binom(int a, int b) {
    if (b < 0 || b > a) {
        return 0;
    }
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), a, b);
    return r;
}

// Explicit alternating sum for the z^t coefficient.
mpz_class krawtchouk_sum(int n, int t, int x) {
    mpz_class s = 0;
    for (int j = 0; j <= t; ++j) {
        mpz_class term = binom(x, j) * binom(n - 1 - x, t - j);
        mpz_class p3;
        mpz_ui_pow_ui(p3.get_mpz_t(), 3, t - j);
        term *= p3;
        s += (j % 2 ? -term : term);
    }
    return s;
}

}  // namespace

TEST(krawtchouk, matches_alternating_sum) {
    for (int n = 1; n <= 14; ++n) {
        for (int x = 0; x < n; ++x) {
            auto row = krawtchouk_row(n, x);
            ASSERT_EQ(row.size(), std::size_t(n));
            for (int t = 0; t < n; ++t) {
                ASSERT_EQ(row[t], krawtchouk_sum(n, t, x));
                ASSERT_EQ(krawtchouk(n, t, x), row[t]);
            }
        }
    }
    ASSERT_EQ(krawtchouk(4, 1, 0), 9);
    ASSERT_EQ(krawtchouk(4, 1, 3), -3);
}

TEST(krawtchouk, orthogonality_general_p) {
    auto [lhs, rhs] = orthogonality_check(3, mpq_class(3, 4), 1, 1);
    ASSERT_EQ(rhs, mpq_class(9, 16));
    ASSERT_EQ(lhs, rhs);
    for (int N = 1; N <= 8; ++N) {
        for (mpq_class p : {mpq_class(1, 2), mpq_class(3, 4), mpq_class(1, 5)}) {
            for (int t = 0; t <= N; ++t) {
                for (int s = 0; s <= N; ++s) {
                    auto [l, r] = orthogonality_check(N, p, t, s);
                    ASSERT_EQ(l, r) << N << ' ' << p << ' ' << t << ' ' << s;
                    if (t != s) {
                        ASSERT_EQ(r, 0);
                    }
                }
            }
        }
    }
}

TEST(krawtchouk, symmetry_and_main_orthogonality) {
    for (int n = 1; n <= 25; ++n) {
        ASSERT_TRUE(krawtchouk_symmetry_holds(n)) << n;
        ASSERT_TRUE(main_orthogonality_holds(n)) << n;
    }
}

TEST(basis, eigenvalues_match_dense_solver) {
    for (int n : {2, 5, 12, 30}) {
        KrawtchoukBasis basis(n);
        ASSERT_TRUE(basis.exact());
        Eigen::MatrixXd q = q_transition(n);
        auto pi = stationary_q(n).values;
        Eigen::MatrixXd sym(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                sym(i, j) = std::sqrt(pi[i] / pi[j]) * q(i, j);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
        std::vector<double> dense(es.eigenvalues().data(), es.eigenvalues().data() + n);
        auto mine = basis.eigenvalues();
        std::sort(dense.begin(), dense.end());
        std::sort(mine.begin(), mine.end());
        for (int m = 0; m < n; ++m) {
            ASSERT_NEAR(mine[m], dense[m], 1e-12) << n << ' ' << m;
        }
        ASSERT_DOUBLE_EQ(*std::max_element(mine.begin(), mine.end()), 1.0);
    }
}

TEST(basis, residual_and_orthonormality) {
    for (int n : {10, 30, 50, 80}) {
        KrawtchoukBasis basis(n);
        ASSERT_LT(basis.max_residual(), 1e-12) << n;
        ASSERT_LT(basis.orthonormality_error(), 1e-12) << n;
    }
    ASSERT_FALSE(KrawtchoukBasis(41).exact());
    ASSERT_TRUE(KrawtchoukBasis(40).exact());
}

TEST(basis, x0_closed_form) {
    KrawtchoukBasis basis(6);
    for (int m = 0; m < 6; ++m) {
        double expect = std::sqrt(binom(5, m).get_d() * std::pow(3.0, m)) / std::pow(4.0, 5);
        ASSERT_NEAR(basis.x0(m), expect, 1e-15);
    }
}

TEST(evolution, spectral_matches_direct) {
    for (auto [n, t] : {std::pair{5, int64_t(3)}, std::pair{12, int64_t(40)}, std::pair{30, int64_t(1000)}}) {
        auto start = shifted_binomial_start(n);
        double total = 0;
        for (double v : start) {
            total += v;
        }
        ASSERT_NEAR(total, 1.0, 1e-14);
        KrawtchoukBasis basis(n);
        auto spec = basis.evolve(start, t);
        auto direct = q_t_direct(n, t, start);
        for (int i = 0; i < n; ++i) {
            ASSERT_NEAR(spec[i], direct[i], 1e-12) << n << ' ' << t << ' ' << i;
        }
    }
}

TEST(evolution, converges_to_stationary) {
    const int n = 20;
    auto start = shifted_binomial_start(n);
    auto late = q_t_direct(n, 20000, start);
    auto pi = stationary_q(n).values;
    for (int i = 0; i < n; ++i) {
        ASSERT_NEAR(late[i], pi[i], 1e-12);
    }
}

TEST(mixing, box_norm_forms) {
    for (int n : {15, 25, 40}) {
        auto b = box_mixing(n, mixing_depth(n));
        double scale = std::pow(2.0, n);
        ASSERT_NEAR(b.threshold * scale, 28.0, 1e-9);
        ASSERT_LE(b.weighted_sum, b.threshold);
        ASSERT_LE(b.inner_product, b.threshold);
        ASSERT_LE(b.inner_product, b.spectral_bound * (1 + 1e-9));
    }
    ASSERT_EQ(mixing_depth(10), 70);
}

TEST(mixing, curve_monotone) {
    std::vector<int64_t> ts{0, 10, 50, 100, 200, 400};
    auto curve = box_mixing_curve(12, ts);
    ASSERT_EQ(curve.size(), ts.size());
    for (std::size_t i = 1; i < curve.size(); ++i) {
        ASSERT_LE(curve[i].spectral_bound, curve[i - 1].spectral_bound + 1e-15);
    }
}
