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

#include "designlab/verify.hpp"

#include <functional>
#include <stdexcept>

#include "designlab/design_gap.hpp"
#include "designlab/pauli_chain.hpp"
#include "designlab/perm_algebra.hpp"
#include "designlab/spectral_chain.hpp"
#include "designlab/statevector.hpp"

namespace designlab {

namespace {

class Suite {
   public:
    explicit Suite(VerificationReport &report) : report_(report) {
    }

    // body returns the filled CheckResult; exceptions become failures.
    void run(const std::string &name, const std::string &anchor, const std::function<CheckResult()> &body) {
        CheckResult r;
        try {
            r = body();
        } catch (const std::exception &e) {
            r.passed = false;
            r.note = std::string("exception: ") + e.what();
        }
        r.name = name;
        r.anchor = anchor;
        report_.checks.push_back(r);
    }

   private:
    VerificationReport &report_;
};

CheckResult exact(bool ok, const std::string &note = "") {
    CheckResult r;
    r.passed = ok;
    r.measured = ok ? 1 : 0;
    r.expected = 1;
    r.note = note;
    return r;
}

CheckResult upper(double measured, double limit, double slack = 0) {
    CheckResult r;
    r.passed = measured <= limit + slack;
    r.measured = measured;
    r.expected = limit;
    r.tolerance = slack;
    return r;
}

CheckResult within_sigma(const Estimate &e, double expected, double sigmas = 3) {
    CheckResult r;
    r.statistical = true;
    r.measured = e.mean;
    r.expected = expected;
    r.tolerance = sigmas * e.std_error;
    r.passed = std::abs(e.mean - expected) <= r.tolerance;
    return r;
}

bool pi_stationary(int n) {
    auto pi = stationary_p(n).exact;
    auto p = p_transition_exact(n);
    std::vector<mpq_class> full(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
        full[k] = pi[k - 1];
    }
    if (p.left_multiply(full) != full) {
        return false;
    }
    for (int k = 1; k < n; ++k) {
        if (full[k] * p(k, k + 1) != full[k + 1] * p(k + 1, k)) {
            return false;
        }
    }
    return true;
}

bool rows_sum_to_one(const RationalMatrix &m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpq_class s = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            s += m(r, c);
        }
        if (s != 1) {
            return false;
        }
    }
    return true;
}

double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    double tv = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        double x = i < a.size() ? a[i] : 0;
        double y = i < b.size() ? b[i] : 0;
        tv += std::abs(x - y);
    }
    return tv / 2;
}

}  // namespace

bool VerificationReport::all_passed() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["level"] = level == VerifyLevel::fast ? "fast" : "full";
    j["passed"] = all_passed();
    j["checks"] = nlohmann::json::array();
    for (const auto &c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"anchor", c.anchor},
                               {"status", c.passed ? "pass" : "fail"},
                               {"kind", c.statistical ? "statistical" : "deterministic"},
                               {"measured", c.measured},
                               {"expected", c.expected},
                               {"tolerance", c.tolerance},
                               {"note", c.note}});
    }
    return j;
}

VerifyLevel parse_level(const std::string &name) {
    if (name == "fast") {
        return VerifyLevel::fast;
    }
    if (name == "full") {
        return VerifyLevel::full;
    }
    throw std::invalid_argument("unknown verify level '" + name + "'");
}

VerificationReport verify_suite(VerifyLevel level, int threads) {
    VerificationReport report;
    report.level = level;
    Suite suite(report);
    const bool full = level == VerifyLevel::full;

    // perm_algebra
    suite.run("sym_group_sizes", "|S_t| = t!", [] {
        int fact = 1;
        bool ok = true;
        for (int t = 1; t <= 6; ++t) {
            fact *= t;
            ok = ok && int(enumerate_sym(t).size()) == fact;
        }
        return exact(ok);
    });
    suite.run("gram_min_eigenvalue", "lambda_min(J) >= 1 - t(t-1)/(2 d^m)", [] {
        double worst = 1e9;
        for (int t = 1; t <= 4; ++t) {
            for (int d : {2, 3}) {
                for (int m = 1; m <= 6; ++m) {
                    auto g = gram_matrix(t, m, d);
                    worst = std::min(worst, g.min_eigenvalue() - g.min_eigenvalue_lower_bound());
                }
            }
        }
        return upper(-worst, 0, 1e-12);
    });
    suite.run("weingarten_inverse", "Wg x [d^#cycles] = I exactly (d >= t)", [] {
        bool ok = true;
        for (int t = 1; t <= 4; ++t) {
            for (int d : {2, 3, 4}) {
                if (d < t) {
                    continue;
                }
                auto table = weingarten(t, d);
                ok = ok && (table.inverse * weingarten_gram(t, d)).is_identity();
            }
        }
        return exact(ok);
    });
    suite.run("weingarten_singular_below_t", "[d^#cycles] is singular for d < t", [] {
        bool ok = true;
        for (auto [t, d] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{4, 3}}) {
            try {
                weingarten(t, d);
                ok = false;
            } catch (const DegeneracyError &) {
            }
        }
        return exact(ok);
    });
    suite.run("f_t_bound", "f_t(alpha) <= 1 + 2t^2/alpha for alpha >= 2t^2", [] {
        double worst = -1e9;
        for (int t = 1; t <= 6; ++t) {
            for (double scale : {1.0, 1.5, 4.0, 100.0}) {
                double alpha = std::max(2.0 * t * t, 1.5) * scale;
                worst = std::max(worst, f_t(t, alpha) - (1 + 2.0 * t * t / alpha));
            }
        }
        return upper(worst, 0, 1e-12);
    });
    suite.run("h_bound_nonconstant", "h(sigmas) <= 1/D + 1/D^(M-1) + 2t^2/D^M", [] {
        double worst = -1e9;
        for (int t = 1; t <= 3; ++t) {
            auto perms = enumerate_sym(t);
            for (int M = 2; M <= 4; ++M) {
                std::vector<int> idx(M, 0);
                while (true) {
                    bool constant = true;
                    std::vector<Permutation> sig;
                    for (int v : idx) {
                        sig.push_back(perms[v]);
                        constant = constant && v == idx[0];
                    }
                    if (!constant) {
                        for (double base : {2.0, 3.0, 4.0}) {
                            worst = std::max(worst, h_func(base, t, sig) - h_func_bound(base, t, M));
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
        return upper(worst, 0, 1e-12);
    });

    // pauli_chain
    suite.run("p_rows_stochastic", "P rows sum to 1 exactly", [] {
        bool ok = true;
        for (int n = 2; n <= 20; ++n) {
            ok = ok && rows_sum_to_one(p_transition_exact(n)) && rows_sum_to_one(q_transition_exact(n));
        }
        return exact(ok);
    });
    suite.run("p_stationarity", "pi P = pi and detailed balance, exact", [] {
        bool ok = true;
        for (int n = 2; n <= 20; ++n) {
            ok = ok && pi_stationary(n);
        }
        return exact(ok);
    });
    suite.run("q_stationarity", "pi_Q Q = pi_Q, exact", [] {
        bool ok = true;
        for (int n = 2; n <= 20; ++n) {
            auto pi = stationary_q(n).exact;
            ok = ok && q_transition_exact(n).left_multiply(pi) == pi;
        }
        return exact(ok);
    });
    suite.run("collision_chain_monotone", "coll_exact_chain non-increasing in t", [full] {
        double worst = -1;
        for (int n = 2; n <= (full ? 6 : 5); ++n) {
            auto series = coll_exact_chain_series(n, 100);
            for (std::size_t t = 1; t < series.size(); ++t) {
                worst = std::max(worst, series[t] - series[t - 1]);
            }
        }
        return upper(worst, 0, 1e-15);
    });
    suite.run("collision_lower_bound", "coll >= (1 + e^{-3t/n})^n / 2^n", [] {
        double worst = -1;
        for (int n = 2; n <= 6; ++n) {
            auto series = coll_exact_chain_series(n, 50);
            for (int t = 0; t <= 50; ++t) {
                worst = std::max(worst, coll_lower_bound(n, t) - series[t]);
            }
        }
        return upper(worst, 0, 1e-12);
    });
    suite.run("collision_upper_bound", "coll_upper_bound >= coll_exact_chain", [] {
        double worst = -1;
        for (int n = 2; n <= 6; ++n) {
            auto series = coll_exact_chain_series(n, 80);
            for (int t = int(n * std::log(2.0 * n) / 2) + 1; t <= 80; ++t) {
                worst = std::max(worst, series[t] - coll_upper_bound(n, t));
            }
        }
        return upper(worst, 0, 0);
    });
    suite.run("hitting_forms_agree", "recurrence = (1/q_l) sum pi(i)/pi(l)", [] {
        double worst = 0;
        for (int n : {2, 10, 50, 200}) {
            for (int l = 2; l <= n; ++l) {
                auto h = hitting_time(n, l);
                worst = std::max(worst, std::abs(h.recurrence - h.ratio_form) / h.recurrence);
                worst = std::max(worst, std::abs(h.binomial_form - h.ratio_form) / h.recurrence);
            }
        }
        return upper(worst, 0, 1e-9);
    });
    suite.run("poissonized_mean", "mean of Bin(n-z,a)+Bin(z,b) = nu_tau", [] {
        auto d = poissonized_dist(20, 3, 10);
        return upper(std::abs(d.mean() - poissonized_mean(20, 3, 10)), 0, 1e-12);
    });

    // spectral_chain
    suite.run("krawtchouk_orthogonality", "binomial-weight orthogonality at p=3/4, exact", [full] {
        bool ok = true;
        const int max_n = full ? 15 : 10;
        for (int N = 0; N <= max_n; ++N) {
            for (int t = 0; t <= N; ++t) {
                for (int s = 0; s <= N; ++s) {
                    auto [lhs, rhs] = orthogonality_check(N, mpq_class(3, 4), t, s);
                    ok = ok && lhs == rhs;
                }
            }
        }
        return exact(ok);
    });
    suite.run("krawtchouk_symmetry", "C(n-1,x) 3^-t K^t(x) = C(n-1,t) 3^-x K^x(t)", [] {
        bool ok = true;
        for (int n = 1; n <= 12; ++n) {
            ok = ok && krawtchouk_symmetry_holds(n) && main_orthogonality_holds(n);
        }
        return exact(ok);
    });
    suite.run("eigen_residuals", "x^(m) Q = lambda_m x^(m)", [] {
        double worst = 0;
        for (int n = 2; n <= 50; ++n) {
            worst = std::max(worst, eigen_system(n).max_residual());
        }
        return upper(worst, 0, 1e-10);
    });
    suite.run("spectral_vs_direct", "spectral evolution = direct powering (n=30, t=1000)", [] {
        auto q0 = shifted_binomial_start(30);
        auto spec = eigen_system(30).evolve(q0, 1000);
        auto direct = q_t_direct(30, 1000, q0);
        double dev = 0;
        double scale = 0;
        for (int i = 0; i < 30; ++i) {
            dev = std::max(dev, std::abs(spec[i] - direct[i]));
            scale = std::max(scale, std::abs(direct[i]));
        }
        return upper(dev / scale, 0, 1e-8);
    });
    suite.run("box_mixing_bound", "box norm at ceil(3n ln n) <= 28/2^n", [] {
        double worst = 0;
        for (int n : {15, 20, 25, 30, 40}) {
            auto b = box_mixing(n, mixing_depth(n));
            worst = std::max(worst, b.weighted_sum / b.threshold);
        }
        return upper(worst, 1.0);
    });

    // design_gap
    suite.run("gap_two_methods", "Gram and brute-force gap agree (d=2,m=2,t=2)", [] {
        auto g = subspace_gap_gram(2, 2, 2);
        auto b = subspace_gap_brute(2, 2, 2);
        return upper(std::abs(g.gap_value - b.gap_value), 0, 1e-10);
    });
    suite.run("gap_bound_chain", "gap <= (c q_inf)^2, q_inf <= Perron <= row bound", [] {
        bool ok = true;
        for (auto [d, m, t] : {std::tuple{2, 2, 2}, std::tuple{3, 2, 2}, std::tuple{2, 3, 2}, std::tuple{3, 3, 3}}) {
            auto g = subspace_gap_gram(d, m, t);
            auto q = qinf_and_bounds(d, m, t);
            ok = ok && g.gap_value <= g.bound + 1e-10 && q.q_inf <= q.perron_bound + 1e-12 &&
                 q.perron_bound <= q.row_bound + 1e-12;
        }
        return exact(ok);
    });

    // statevector_sim
    suite.run("haar_first_moment", "E|U_00|^2 = 1/dim (dim=4)", [] {
        std::vector<double> v(20000);
        for (std::size_t k = 0; k < v.size(); ++k) {
            Rng rng = stream(101, k);
            v[k] = std::norm(haar_unitary(4, rng)(0, 0));
        }
        return within_sigma(estimate_from(v), 0.25);
    });
    suite.run("collision_n2", "complete-graph collision at n=2 equals the Haar value 2/5", [threads] {
        EnsembleSpec spec{EnsembleKind::COMPLETE_GRAPH, 2, 3, 1};
        return within_sigma(mc_expected_collision(spec, 20000, 102, threads), 0.4);
    });
    if (full) {
        suite.run("chain_vs_statevector", "Monte Carlo collision = chain oracle, n <= 5, s <= 30", [threads] {
            double worst = 0;
            CheckResult r;
            r.statistical = true;
            for (int n = 2; n <= 5; ++n) {
                EnsembleSpec spec{EnsembleKind::COMPLETE_GRAPH, n, 30, 1};
                auto sweep = mc_collision_sweep(spec, 100000, 200 + n, threads);
                auto exact_series = coll_exact_chain_series(n, 30);
                for (int s = 1; s <= 30; ++s) {
                    worst = std::max(worst, std::abs(sweep[s].mean - exact_series[s]) / sweep[s].std_error);
                }
            }
            // 120 correlated comparisons; 4 sigma keeps the family-wise false alarm rate small.
            r.measured = worst;
            r.expected = 0;
            r.tolerance = 4;
            r.passed = worst <= 4;
            r.note = "max |z| over all (n, s)";
            return r;
        });
        suite.run("haar_collision", "E Coll = 2/(2^n+1) under Haar (n=4)", [threads] {
            EnsembleSpec spec{EnsembleKind::HAAR_FULL, 4, 1, 1};
            return within_sigma(mc_expected_collision(spec, 100000, 103, threads), 2.0 / 17);
        });
        suite.run("coupling_marginal", "coupled X marginal matches P (TV)", [] {
            const int n = 20;
            const int64_t T = 40;
            const std::size_t runs = 100000;
            std::vector<double> a(n + 1, 0);
            std::vector<double> b(n + 1, 0);
            for (std::size_t k = 0; k < runs; ++k) {
                Rng r1 = stream(104, k);
                Rng r2 = stream(105, k);
                a[coupled_x_at(n, 1, T, r1)] += 1.0 / runs;
                b[p_chain_at(n, 1, T, r2)] += 1.0 / runs;
            }
            return upper(total_variation(a, b), 0.02);
        });
        suite.run("poissonization_law", "decoupled chain after Pois(tau) steps matches the binomial law", [] {
            const std::size_t runs = 100000;
            std::vector<double> emp(13, 0);
            for (std::size_t k = 0; k < runs; ++k) {
                Rng rng = stream(106, k);
                emp[decoupled_weight_after(12, 6, 8, rng)] += 1.0 / runs;
            }
            return upper(total_variation(emp, poissonized_dist(12, 6, 8).values), 0.01);
        });
        suite.run("scrambling_purity_inequality", "||rho_S - I/2^k||_1^2 <= 2^k Tr rho^2 - 1 per sample", [threads] {
            EnsembleSpec spec{EnsembleKind::COMPLETE_GRAPH, 6, 120, 1};
            auto s = scrambling_check(spec, {0, 1}, 10000, 107, threads);
            return upper(double(s.violations), 0);
        });
    }
    return report;
}

}  // namespace designlab
