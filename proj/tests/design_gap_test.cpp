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

#include "designlab/design_gap.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "designlab/common.hpp"
#include "designlab/perm_algebra.hpp"

using namespace designlab;

TEST(enumerate_tuples, counts_and_guard) {
    ASSERT_EQ(enumerate_tuples(2, 3).size(), 8u);
    ASSERT_EQ(enumerate_tuples(3, 2).size(), 36u);
    ASSERT_EQ(enumerate_tuples(3, 2).front(), (std::vector<int>{0, 0}));
    ASSERT_THROW(enumerate_tuples(4, 3), SizeLimitError);
}

TEST(site_state, overlaps_match_distance) {
    for (int d : {2, 3}) {
        auto perms = enumerate_sym(3);
        for (const auto &a : perms) {
            auto va = site_state(a, d);
            ASSERT_EQ(va.size(), std::size_t(std::pow(d, 6)));
            for (const auto &b : perms) {
                auto vb = site_state(b, d);
                double dot = 0;
                for (std::size_t i = 0; i < va.size(); ++i) {
                    dot += va[i] * vb[i];
                }
                ASSERT_NEAR(dot, std::pow(d, -transposition_distance(a, b)), 1e-12);
            }
        }
    }
}

TEST(c_dnt, values) {
    ASSERT_DOUBLE_EQ(c_dnt(2, 2, 2), 2.0);
    ASSERT_DOUBLE_EQ(c_dnt(3, 1, 1), 1.0);
    ASSERT_DOUBLE_EQ(c_dnt(2, 1, 2), 2.0);
    ASSERT_EQ(c_dnt(2, 2, 3), std::numeric_limits<double>::infinity());
}

TEST(overlap_matrix, excludes_constant_tuples) {
    auto q = overlap_matrix(2, 2, 2);
    ASSERT_EQ(q.size(), 2u);
    for (std::size_t g = 0; g < q.size(); ++g) {
        for (std::size_t h = 0; h < q.size(); ++h) {
            ASSERT_EQ(q.entry(g, h), mpq_class(1, 4));
        }
    }
    ASSERT_EQ(overlap_matrix(3, 2, 1).size(), 0u);
}

TEST(subspace_gap, reference_point) {
    auto gram = subspace_gap_gram(2, 2, 2);
    ASSERT_NEAR(gram.cos_angle, 0.32, 1e-12);
    ASSERT_NEAR(gram.gap_value, 0.1024, 1e-12);
    ASSERT_NEAR(gram.alt_cos_angle, 0.249135, 1e-6);
    ASSERT_NEAR(gram.q_inf, 0.5, 1e-12);
    ASSERT_DOUBLE_EQ(gram.c_dnt, 2.0);
    ASSERT_NEAR(gram.bound, 1.0, 1e-12);
}

TEST(subspace_gap, gram_matches_brute) {
    for (auto [d, m, t] : {std::tuple{2, 2, 2}, std::tuple{2, 2, 1}, std::tuple{3, 2, 1}, std::tuple{2, 3, 1}}) {
        auto gram = subspace_gap_gram(d, m, t);
        auto brute = subspace_gap_brute(d, m, t);
        ASSERT_NEAR(gram.cos_angle, brute.cos_angle, 1e-9) << d << m << t;
        ASSERT_NEAR(gram.gap_value, brute.gap_value, 1e-9) << d << m << t;
        ASSERT_EQ(gram.rank_r, brute.rank_r);
        ASSERT_EQ(gram.rank_c, brute.rank_c);
    }
}

TEST(subspace_gap, degree_one_is_zero) {
    auto r = subspace_gap_gram(3, 3, 1);
    ASSERT_EQ(r.cos_angle, 0);
    ASSERT_EQ(r.gap_value, 0);
}

TEST(subspace_gap, within_unit_interval_and_bound) {
    for (auto [d, m, t] : {std::tuple{2, 2, 2}, std::tuple{3, 2, 2}, std::tuple{5, 2, 2}, std::tuple{2, 3, 2},
                           std::tuple{3, 2, 3}}) {
        auto r = subspace_gap_gram(d, m, t);
        ASSERT_GE(r.cos_angle, -1e-12);
        ASSERT_LE(r.cos_angle, 1 + 1e-12);
        ASSERT_NEAR(r.gap_value, r.cos_angle * r.cos_angle, 1e-12);
        if (std::isfinite(r.bound)) {
            ASSERT_LE(r.gap_value, r.bound + 1e-9) << d << m << t;
        }
    }
}

TEST(subspace_gap, brute_guard) {
    ASSERT_THROW(subspace_gap_brute(3, 2, 2), SizeLimitError);
}

TEST(qinf_and_bounds, ordering) {
    auto b = qinf_and_bounds(2, 2, 2);
    ASSERT_NEAR(b.q_inf, 0.5, 1e-12);
    ASSERT_NEAR(b.perron_bound, 0.5, 1e-12);
    ASSERT_NEAR(b.row_bound, 9.0, 1e-12);
    for (auto [d, m, t] : {std::tuple{3, 2, 2}, std::tuple{2, 3, 2}, std::tuple{3, 3, 3}}) {
        auto q = qinf_and_bounds(d, m, t);
        ASSERT_LE(q.q_inf, q.perron_bound + 1e-12);
        ASSERT_LE(q.perron_bound, std::max(q.max_row_sum, q.max_col_sum) + 1e-12);
        ASSERT_LE(q.max_row_sum, q.row_bound + 1e-12);
    }
    auto b232 = qinf_and_bounds(2, 3, 2);
    ASSERT_LE(b232.q_inf, b232.row_bound);
}

TEST(gap_report, json_infinity) {
    auto r = subspace_gap_gram(2, 3, 3);
    auto j = r.to_json();
    ASSERT_EQ(j["d"], 2);
    if (!std::isfinite(r.c_dnt)) {
        ASSERT_EQ(j["c_dnt"], "inf");
    }
}
