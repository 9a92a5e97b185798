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

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace designlab {

namespace {

mpz_class binom(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

mpz_class power(int base, int e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, e);
    return out;
}

mpq_class ratio(const mpz_class &num, const mpz_class &den) {
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

mpf_class to_mpf(const mpz_class &z, unsigned bits) {
    mpf_class out(0, bits);
    out = z;
    return out;
}

}  // namespace

mpz_class krawtchouk(int n, int t, int x) {
    if (n < 1 || t < 0 || x < 0 || t > n - 1 || x > n - 1) {
        throw std::invalid_argument("krawtchouk: need 0 <= t, x <= n-1");
    }
    mpz_class total = 0;
    for (int i = 0; i <= t; ++i) {
        mpz_class term = binom(x, i) * binom(n - x - 1, t - i) * power(3, t - i);
        if (i % 2) {
            total -= term;
        } else {
            total += term;
        }
    }
    return total;
}

std::vector<mpz_class> krawtchouk_row(int n, int x) {
    if (x < 0 || x > n - 1) {
        throw std::invalid_argument("krawtchouk_row: need 0 <= x <= n-1");
    }
    std::vector<mpz_class> poly(n, 0);
    poly[0] = 1;
    int degree = 0;
    for (int f = 0; f < n - 1; ++f) {
        // Multiply by (1 - z) for the first x factors, then by (1 + 3z).
        const int c = f < x ? -1 : 3;
        ++degree;
        for (int k = degree; k >= 1; --k) {
            poly[k] += c * poly[k - 1];
        }
    }
    return poly;
}

std::pair<mpq_class, mpq_class> orthogonality_check(int N, const mpq_class &p, int t, int s) {
    if (!(p > 0 && p < 1) || t < 0 || s < 0 || t > N || s > N) {
        throw std::invalid_argument("orthogonality_check: need 0 < p < 1 and 0 <= t, s <= N");
    }
    const mpq_class q = 1 - p;
    auto k = [&](int deg, int x) {
        mpq_class total = 0;
        for (int i = 0; i <= deg; ++i) {
            mpq_class term = mpq_class(binom(x, i) * binom(N - x, deg - i)) * rational_power(p, deg - i) *
                             rational_power(q, i);
            if (i % 2) {
                total -= term;
            } else {
                total += term;
            }
        }
        return total;
    };
    mpq_class lhs = 0;
    for (int x = 0; x <= N; ++x) {
        lhs += mpq_class(binom(N, x)) * rational_power(p, x) * rational_power(q, N - x) * k(t, x) * k(s, x);
    }
    mpq_class rhs = t == s ? mpq_class(binom(N, t)) * rational_power(p * q, t) : mpq_class(0);
    return {lhs, rhs};
}

bool krawtchouk_symmetry_holds(int n) {
    std::vector<std::vector<mpz_class>> rows;
    for (int x = 0; x < n; ++x) {
        rows.push_back(krawtchouk_row(n, x));
    }
    for (int x = 0; x < n; ++x) {
        for (int t = 0; t < n; ++t) {
            // Cross-multiplied: C(n-1,x) 3^x K^(t)(x) == C(n-1,t) 3^t K^(x)(t).
            if (binom(n - 1, x) * power(3, x) * rows[x][t] != binom(n - 1, t) * power(3, t) * rows[t][x]) {
                return false;
            }
        }
    }
    return true;
}

bool main_orthogonality_holds(int n) {
    for (int m = 0; m < n; ++m) {
        auto row = krawtchouk_row(n, m);
        mpq_class total = 0;
        for (int t = 0; t < n; ++t) {
            total += ratio(row[t] * row[t], binom(n - 1, t) * power(3, t));
        }
        mpq_class expected(power(4, n - 1), binom(n - 1, m) * power(3, m));
        expected.canonicalize();
        if (total != expected) {
            return false;
        }
    }
    return true;
}

KrawtchoukBasis::KrawtchoukBasis(int n) : n_(n), bits_(256 + 8 * unsigned(n)) {
    if (n < 2) {
        throw std::invalid_argument("eigen_system: need n >= 2");
    }
    for (int m = 0; m < n; ++m) {
        lambda_.push_back(1.0 - 4.0 * m / (3.0 * n - 1));
        k_.push_back(krawtchouk_row(n, m));
        pi_num_.push_back(binom(n - 1, m) * power(3, m));
    }
    if (n > kExactSpectralLimit) {
        return;
    }
    // Left eigen-equation, scaled by (3n-1):
    // 3(n-j) K(j-1) + 2(j+1) K(j) + (j+1) K(j+1) = (3n-1-4m) K(j).
    for (int m = 0; m < n; ++m) {
        const auto &k = k_[m];
        for (int j = 0; j < n; ++j) {
            mpz_class lhs = 2 * (j + 1) * k[j];
            if (j > 0) {
                lhs += 3 * (n - j) * k[j - 1];
            }
            if (j + 1 < n) {
                lhs += (j + 1) * k[j + 1];
            }
            if (lhs != (3 * n - 1 - 4 * m) * k[j]) {
                throw NumericalIntegrityError("eigen_system: exact eigen-equation failed at n=" + std::to_string(n));
            }
        }
    }
    // (x^(a), x^(b)) = sqrt(pi_a pi_b) sum_k K^(k)(a) K^(k)(b) / pi_num(k) in units where
    // the diagonal must equal pi_num(a)^-1.
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            mpq_class total = 0;
            for (int k = 0; k < n; ++k) {
                total += ratio(k_[a][k] * k_[b][k], pi_num_[k]);
            }
            total.canonicalize();
            mpq_class expected = a == b ? mpq_class(power(4, n - 1), pi_num_[a]) : mpq_class(0);
            expected.canonicalize();
            if (total != expected) {
                throw NumericalIntegrityError("eigen_system: exact orthonormality failed at n=" + std::to_string(n));
            }
        }
    }
    exact_ = true;
}

double KrawtchoukBasis::x0(int m) const {
    return std::sqrt(pi_num_.at(m).get_d()) * std::ldexp(1.0, -2 * (n_ - 1));
}

std::vector<double> KrawtchoukBasis::eigenvector(int m) const {
    mpf_class scale(0, bits_);
    scale = sqrt(to_mpf(pi_num_.at(m), bits_));
    mpf_div_2exp(scale.get_mpf_t(), scale.get_mpf_t(), 2 * (n_ - 1));
    std::vector<double> out(n_);
    for (int i = 0; i < n_; ++i) {
        mpf_class v = scale * to_mpf(k_[m][i], bits_);
        out[i] = v.get_d();
    }
    return out;
}

double KrawtchoukBasis::max_residual() const {
    double worst = 0;
    for (int m = 0; m < n_; ++m) {
        auto x = eigenvector(m);
        double norm = 0;
        double res = 0;
        for (int j = 0; j < n_; ++j) {
            double v = x[j] * q_rates(n_, j).stay;
            if (j > 0) {
                v += x[j - 1] * q_rates(n_, j - 1).forward;
            }
            if (j + 1 < n_) {
                v += x[j + 1] * q_rates(n_, j + 1).backward;
            }
            res = std::max(res, std::abs(v - lambda_[m] * x[j]));
            norm = std::max(norm, std::abs(x[j]));
        }
        worst = std::max(worst, res / norm);
    }
    return worst;
}

double KrawtchoukBasis::orthonormality_error() const {
    std::vector<std::vector<double>> vecs;
    for (int m = 0; m < n_; ++m) {
        vecs.push_back(eigenvector(m));
    }
    double worst = 0;
    for (int a = 0; a < n_; ++a) {
        for (int b = a; b < n_; ++b) {
            worst = std::max(worst, std::abs(inner(vecs[a], vecs[b]) - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double KrawtchoukBasis::inner(std::span<const double> f, std::span<const double> g) const {
    if (int(f.size()) != n_ || int(g.size()) != n_) {
        throw std::invalid_argument("KrawtchoukBasis::inner: vectors must have length n");
    }
    CompensatedSum total;
    for (int i = 0; i < n_; ++i) {
        double pi = pi_num_[i].get_d() * std::ldexp(1.0, -2 * (n_ - 1));
        total.add(f[i] * g[i] / pi);
    }
    return total.value();
}

std::vector<mpf_class> KrawtchoukBasis::expansion_weights(std::span<const double> f0) const {
    if (int(f0.size()) != n_) {
        throw std::invalid_argument("KrawtchoukBasis: initial vector must have length n");
    }
    // w_m = x0_m^2 sum_i K^(i)(m) f0(i) / pi(i) = pi_num(m) / 4^(n-1) * sum_i K^(i)(m) f0(i) / pi_num(i).
    std::vector<mpf_class> ratio(n_, mpf_class(0, bits_));
    for (int i = 0; i < n_; ++i) {
        ratio[i] = mpf_class(f0[i], bits_) / to_mpf(pi_num_[i], bits_);
    }
    std::vector<mpf_class> w(n_, mpf_class(0, bits_));
    for (int m = 0; m < n_; ++m) {
        mpf_class s(0, bits_);
        for (int i = 0; i < n_; ++i) {
            s += to_mpf(k_[m][i], bits_) * ratio[i];
        }
        s *= to_mpf(pi_num_[m], bits_);
        mpf_div_2exp(s.get_mpf_t(), s.get_mpf_t(), 2 * (n_ - 1));
        w[m] = s;
    }
    return w;
}

std::vector<double> KrawtchoukBasis::coefficients(std::span<const double> f0) const {
    auto w = expansion_weights(f0);
    std::vector<double> out(n_);
    for (int m = 0; m < n_; ++m) {
        // alpha_m = w_m / x0_m = w_m 4^(n-1) / sqrt(pi_num(m)).
        mpf_class a = w[m] / sqrt(to_mpf(pi_num_[m], bits_));
        mpf_mul_2exp(a.get_mpf_t(), a.get_mpf_t(), 2 * (n_ - 1));
        out[m] = a.get_d();
    }
    return out;
}

std::vector<double> KrawtchoukBasis::evolve(std::span<const double> f0, int64_t t) const {
    if (t < 0) {
        throw std::invalid_argument("KrawtchoukBasis::evolve: negative time");
    }
    auto w = expansion_weights(f0);
    const mpf_class den(3 * n_ - 1, bits_);
    for (int m = 0; m < n_; ++m) {
        mpf_class lam = mpf_class(3 * n_ - 1 - 4 * m, bits_) / den;
        mpf_class p(0, bits_);
        mpf_pow_ui(p.get_mpf_t(), lam.get_mpf_t(), (unsigned long)t);
        w[m] *= p;
    }
    std::vector<double> out(n_);
    for (int j = 0; j < n_; ++j) {
        mpf_class s(0, bits_);
        for (int m = 0; m < n_; ++m) {
            s += w[m] * to_mpf(k_[m][j], bits_);
        }
        out[j] = s.get_d();
    }
    return out;
}

void KrawtchoukBasis::write_csv(std::ostream &out) const {
    out << "m,lambda,x0\n" << std::setprecision(17);
    for (int m = 0; m < n_; ++m) {
        out << m << ',' << lambda_[m] << ',' << x0(m) << '\n';
    }
}

KrawtchoukBasis eigen_system(int n) {
    return KrawtchoukBasis(n);
}

std::vector<double> q_t_direct(int n, int64_t t, std::span<const double> f0) {
    if (int(f0.size()) != n) {
        throw std::invalid_argument("q_t_direct: initial vector must have length n");
    }
    std::vector<BirthDeath> rates(n);
    for (int i = 0; i < n; ++i) {
        rates[i] = q_rates(n, i);
    }
    std::vector<double> f(f0.begin(), f0.end());
    std::vector<double> g(n);
    for (int64_t step = 0; step < t; ++step) {
        for (int j = 0; j < n; ++j) {
            double v = f[j] * rates[j].stay;
            if (j > 0) {
                v += f[j - 1] * rates[j - 1].forward;
            }
            if (j + 1 < n) {
                v += f[j + 1] * rates[j + 1].backward;
            }
            g[j] = v;
        }
        std::swap(f, g);
    }
    return f;
}

WeightDistribution q_t_spectral(int n, int64_t t, const WeightDistribution &f0) {
    if (f0.first != 0 || int(f0.values.size()) != n) {
        throw std::invalid_argument("q_t_spectral: initial law must live on {0..n-1}");
    }
    KrawtchoukBasis basis(n);
    WeightDistribution out;
    out.n = n;
    out.first = 0;
    out.flavor = ChainFlavor::Q_chain;
    out.values = basis.evolve(f0.values, t);
    return out;
}

std::vector<double> shifted_binomial_start(int n) {
    std::vector<double> out(n);
    const double den = std::ldexp(1.0, n) - 1;
    for (int i = 0; i < n; ++i) {
        out[i] = std::exp(log_binomial(n, i + 1)) / den;
    }
    return out;
}

std::vector<BoxMixing> box_mixing_curve(int n, std::span<const int64_t> ts) {
    KrawtchoukBasis basis(n);
    auto q0 = shifted_binomial_start(n);
    auto alpha = basis.coefficients(q0);
    const double scale = 12.0 * std::ldexp(1.0, -n);
    std::vector<BoxMixing> out;
    for (int64_t t : ts) {
        BoxMixing b;
        b.n = n;
        b.t = t;
        b.threshold = 28.0 * std::ldexp(1.0, -n);
        auto qt = basis.evolve(q0, t);
        std::vector<double> by_weight(n + 1, 0.0);
        for (int i = 0; i < n; ++i) {
            by_weight[x_label(i)] = qt[i];
        }
        b.weighted_sum = box_norm(by_weight, n);
        b.inner_product = (1 - std::ldexp(1.0, -n)) * scale * basis.inner(q0, qt);
        CompensatedSum s;
        for (int m = 0; m < n; ++m) {
            s.add(alpha[m] * alpha[m] * std::pow(basis.eigenvalues()[m], double(t)));
        }
        b.spectral_bound = scale * s.value();
        out.push_back(b);
    }
    return out;
}

BoxMixing box_mixing(int n, int64_t t) {
    return box_mixing_curve(n, std::span<const int64_t>(&t, 1)).front();
}

void write_mixing_csv(std::ostream &out, std::span<const BoxMixing> curve) {
    out << "t,box_norm,inner_product,spectral_bound,threshold\n" << std::setprecision(17);
    for (const auto &b : curve) {
        out << b.t << ',' << b.weighted_sum << ',' << b.inner_product << ',' << b.spectral_bound << ','
            << b.threshold << '\n';
    }
}

int64_t mixing_depth(int n) {
    return int64_t(std::ceil(3.0 * n * std::log(double(n))));
}

}  // namespace designlab
