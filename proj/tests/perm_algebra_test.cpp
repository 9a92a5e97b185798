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

#include "designlab/perm_algebra.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <map>

#include "designlab/common.hpp"

using namespace designlab;

namespace {

// Shortest path from a to b in the Cayley graph generated by all transpositions.
int bfs_distance(const Permutation &a, const Permutation &b) {
    const int t = a.degree();
    std::map<Permutation, int> seen{{a, 0}};
    std::deque<Permutation> queue{a};
    while (!queue.empty()) {
        Permutation p = queue.front();
        queue.pop_front();
        if (p == b) {
            return seen.at(p);
        }
        for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) {
                std::vector<int> m = p.mapping();
                std::swap(m[i], m[j]);
                Permutation q(m);
                if (!seen.count(q)) {
                    seen[q] = seen.at(p) + 1;
                    queue.push_back(q);
                }
            }
        }
    }
    return -1;
}

Permutation swap2() {
    return Permutation({1, 0});
}

}  // namespace

TEST(permutation, rejects_non_bijection) {
    ASSERT_THROW(Permutation({0, 0}), std::invalid_argument);
    ASSERT_THROW(Permutation({0, 2}), std::invalid_argument);
}

TEST(permutation, compose_and_inverse) {
    Permutation a({1, 2, 0});
    Permutation b({0, 2, 1});
    ASSERT_EQ(a.compose(b), Permutation({1, 0, 2}));
    ASSERT_TRUE(a.compose(a.inverse()).is_identity());
    ASSERT_EQ(a.cycle_type(), (std::vector<int>{3}));
    ASSERT_EQ(b.cycle_type_key(), "2,1");
}

TEST(enumerate_sym, sizes) {
    ASSERT_EQ(enumerate_sym(1).size(), 1u);
    ASSERT_TRUE(enumerate_sym(1)[0].is_identity());
    ASSERT_EQ(enumerate_sym(2).size(), 2u);
    ASSERT_EQ(enumerate_sym(4).size(), 24u);
    ASSERT_EQ(enumerate_sym(8).size(), 40320u);
}

TEST(enumerate_sym, lexicographic) {
    auto perms = enumerate_sym(4);
    ASSERT_TRUE(std::is_sorted(perms.begin(), perms.end()));
    ASSERT_TRUE(perms.front().is_identity());
}

TEST(enumerate_sym, guard) {
    ASSERT_THROW(enumerate_sym(0), SizeLimitError);
    ASSERT_THROW(enumerate_sym(9), SizeLimitError);
}

TEST(transposition_distance, examples) {
    auto e3 = Permutation::identity(3);
    ASSERT_EQ(transposition_distance(e3, e3), 0);
    ASSERT_EQ(transposition_distance(Permutation::identity(2), swap2()), 1);
    ASSERT_EQ(transposition_distance(e3, Permutation({1, 2, 0})), 2);
    ASSERT_THROW(transposition_distance(e3, swap2()), std::invalid_argument);
}

TEST(transposition_distance, matches_cayley_graph_search) {
    for (int t = 1; t <= 4; ++t) {
        auto perms = enumerate_sym(t);
        for (const auto &a : perms) {
            for (const auto &b : perms) {
                ASSERT_EQ(transposition_distance(a, b), bfs_distance(a, b));
            }
        }
    }
}

TEST(transposition_distance, metric_properties) {
    auto perms = enumerate_sym(4);
    auto e = Permutation::identity(4);
    for (const auto &a : perms) {
        for (const auto &b : perms) {
            int d = transposition_distance(a, b);
            ASSERT_EQ(d, transposition_distance(b, a));
            ASSERT_EQ(d, transposition_distance(e, a.inverse().compose(b)));
            ASSERT_EQ(d == 0, a == b);
            for (const auto &c : perms) {
                ASSERT_LE(transposition_distance(a, c), d + transposition_distance(b, c));
            }
        }
    }
}

TEST(gram_matrix, small_cases) {
    auto g1 = gram_matrix(1, 3, 2);
    ASSERT_EQ(g1.size(), 1u);
    ASSERT_EQ(g1.entry(0, 0), 1);

    auto g = gram_matrix(2, 1, 2);
    ASSERT_EQ(g.entry(0, 0), 1);
    ASSERT_EQ(g.entry(0, 1), mpq_class(1, 2));
    ASSERT_EQ(g.entry(1, 0), mpq_class(1, 2));

    auto g22 = gram_matrix(2, 2, 2);
    ASSERT_NEAR(g22.min_eigenvalue(), 0.75, 1e-15);
    ASSERT_DOUBLE_EQ(g22.min_eigenvalue_lower_bound(), 0.75);
}

TEST(gram_matrix, symmetric_unit_diagonal_and_eigenvalue_bound) {
    for (int t = 1; t <= 4; ++t) {
        for (int d : {2, 3}) {
            for (int m = 1; m <= 6; ++m) {
                auto g = gram_matrix(t, m, d);
                auto exact = g.exact();
                for (std::size_t i = 0; i < g.size(); ++i) {
                    ASSERT_EQ(exact(i, i), 1);
                    for (std::size_t j = 0; j < g.size(); ++j) {
                        ASSERT_EQ(exact(i, j), exact(j, i));
                        ASSERT_GT(exact(i, j), 0);
                        ASSERT_LE(exact(i, j), 1);
                    }
                }
                ASSERT_GE(g.min_eigenvalue(), -1e-12);
                ASSERT_GE(g.min_eigenvalue(), g.min_eigenvalue_lower_bound() - 1e-12) << t << ' ' << d << ' ' << m;
            }
        }
    }
}

TEST(gram_matrix, guards) {
    ASSERT_THROW(gram_matrix(7, 1, 2), SizeLimitError);
    ASSERT_THROW(gram_matrix(2, 1, 1), std::invalid_argument);
}

TEST(f_t, examples) {
    ASSERT_DOUBLE_EQ(f_t(1, 5.0), 1.0);
    ASSERT_DOUBLE_EQ(f_t(2, 5.0), 1.2);
    ASSERT_DOUBLE_EQ(f_t(3, 2.0), 3.0);
    ASSERT_THROW(f_t(2, 1.0), std::domain_error);
}

TEST(f_t, matches_enumeration) {
    for (int t = 1; t <= 6; ++t) {
        auto e = Permutation::identity(t);
        double direct = 0;
        for (const auto &s : enumerate_sym(t)) {
            direct += std::pow(3.5, -transposition_distance(e, s));
        }
        ASSERT_NEAR(f_t(t, 3.5), direct, 1e-12);
    }
}

TEST(f_t, bound_for_large_alpha) {
    for (int t = 1; t <= 6; ++t) {
        for (double scale : {1.0, 1.3, 10.0}) {
            double alpha = std::max(2.0 * t * t, 1.1) * scale;
            ASSERT_LE(f_t(t, alpha), 1 + 2.0 * t * t / alpha + 1e-12);
        }
    }
}

TEST(h_func, examples) {
    std::vector<Permutation> just_e{Permutation::identity(3)};
    ASSERT_DOUBLE_EQ(h_func(2.5, 3, just_e), f_t(3, 2.5));
    std::vector<Permutation> pair{Permutation::identity(2), swap2()};
    for (double D : {2.0, 3.0, 7.0}) {
        ASSERT_DOUBLE_EQ(h_func(D, 2, pair), 2 / D);
        ASSERT_LE(h_func(D, 2, pair), h_func_bound(D, 2, 2));
    }
    ASSERT_THROW(h_func(2.0, 2, std::vector<Permutation>{}), std::invalid_argument);
}

TEST(h_func, bound_on_all_nonconstant_tuples) {
    for (int t = 1; t <= 3; ++t) {
        auto perms = enumerate_sym(t);
        for (int M = 2; M <= 4; ++M) {
            std::vector<int> idx(M, 0);
            while (true) {
                std::vector<Permutation> sig;
                bool constant = true;
                for (int v : idx) {
                    sig.push_back(perms[v]);
                    constant = constant && v == idx[0];
                }
                if (!constant) {
                    for (double base : {2.0, 3.0, 4.0}) {
                        ASSERT_LE(h_func(base, t, sig), h_func_bound(base, t, M) + 1e-12);
                    }
                }
                int pos = M - 1;
                while (pos >= 0 && ++idx[pos] == int(perms.size())) {
                    idx[pos--] = 0;
                }
                if (pos < 0) {
                    break;
                }
            }
        }
    }
}

TEST(weingarten, examples) {
    for (int d : {2, 3, 5}) {
        auto w = weingarten(1, d);
        ASSERT_EQ(w.at(Permutation::identity(1)), mpq_class(1, d));
    }
    auto w22 = weingarten(2, 2);
    ASSERT_EQ(w22.at(Permutation::identity(2)), mpq_class(1, 3));
    ASSERT_EQ(w22.at(swap2()), mpq_class(-1, 6));
    auto w23 = weingarten(2, 3);
    ASSERT_EQ(w23.at(Permutation::identity(2)), mpq_class(1, 8));
}

TEST(weingarten, inverse_is_exact) {
    for (int t = 1; t <= 4; ++t) {
        for (int d : {2, 3, 4, 5}) {
            if (d < t) {
                continue;
            }
            auto w = weingarten(t, d);
            ASSERT_TRUE((w.inverse * weingarten_gram(t, d)).is_identity()) << t << ' ' << d;
            ASSERT_TRUE((weingarten_gram(t, d) * w.inverse).is_identity());
        }
    }
}

TEST(weingarten, depends_only_on_cycle_type) {
    auto w = weingarten(4, 5);
    std::map<std::string, mpq_class> by_type;
    for (const auto &[p, v] : w.values) {
        auto [it, inserted] = by_type.emplace(p.cycle_type_key(), v);
        ASSERT_EQ(it->second, v);
    }
    ASSERT_EQ(by_type.size(), 5u);
    // Row of mu is Wg(mu^-1 nu).
    for (std::size_t i = 0; i < w.perms.size(); ++i) {
        for (std::size_t j = 0; j < w.perms.size(); ++j) {
            ASSERT_EQ(w.inverse(i, j), w.at(w.perms[i].inverse().compose(w.perms[j])));
        }
    }
}

TEST(weingarten, singular_below_degree) {
    ASSERT_THROW(weingarten(3, 2), DegeneracyError);
    ASSERT_THROW(weingarten(4, 3), DegeneracyError);
    ASSERT_THROW(weingarten(6, 6), SizeLimitError);
}

TEST(weingarten, json_by_cycle_type) {
    auto j = weingarten(2, 2).to_json();
    ASSERT_EQ(j["1,1"], "1/3");
    ASSERT_EQ(j["2"], "-1/6");
}

TEST(multiprod, examples) {
    std::vector<std::vector<double>> a{{1, 0}, {0, 1}};
    ASSERT_EQ(multiprod(a), 0);
    std::vector<std::vector<double>> sorted{{1, 0}, {1, 0}};
    ASSERT_EQ(multiprod(sorted), 1);
    std::vector<std::vector<double>> single{{2, 3}};
    ASSERT_EQ(multiprod(single), 5);
    std::vector<std::vector<double>> negative{{1, -1}};
    ASSERT_THROW(multiprod(negative), std::domain_error);
    std::vector<std::vector<double>> ragged{{1, 2}, {1}};
    ASSERT_THROW(multiprod(ragged), std::invalid_argument);
}

TEST(multiprod, sorting_never_decreases) {
    Rng rng = stream(11, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        int k = 1 + int(uniform_below(rng, 4));
        std::vector<std::vector<double>> vs(k, std::vector<double>(5));
        for (auto &v : vs) {
            for (auto &x : v) {
                x = uniform01(rng);
            }
        }
        double before = multiprod(vs);
        for (auto &v : vs) {
            std::sort(v.rbegin(), v.rend());
        }
        ASSERT_GE(multiprod(vs), before - 1e-15);
    }
}
