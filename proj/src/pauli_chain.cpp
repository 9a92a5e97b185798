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

#include "designlab/pauli_chain.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace designlab {

namespace {

void require_chain_size(int n, const char *what) {
    if (n < 2) {
        throw std::invalid_argument(std::string(what) + ": need n >= 2");
    }
}

mpz_class big_binomial(int n, int k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

mpz_class big_power(int base, int e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, e);
    return out;
}

double binomial_pmf(int m, double p, int k) {
    if (p <= 0) {
        return k == 0 ? 1.0 : 0.0;
    }
    if (p >= 1) {
        return k == m ? 1.0 : 0.0;
    }
    return std::exp(log_binomial(m, k) + k * std::log(p) + (m - k) * std::log1p(-p));
}

// Next weight of a Q step from weight x (original labels).
int q_step(int n, int x, Rng &rng) {
    double u = uniform01(rng) * (3.0 * n - 1);
    double forward = 3.0 * (n - x);
    if (u < forward) {
        return x + 1;
    }
    if (u < forward + (x - 1)) {
        return x - 1;
    }
    return x;
}

int p_step(int n, int x, Rng &rng) {
    double u = uniform01(rng) * (5.0 * n * (n - 1));
    double forward = 6.0 * x * (n - x);
    if (u < forward) {
        return x + 1;
    }
    if (u < forward + 2.0 * x * (x - 1)) {
        return x - 1;
    }
    return x;
}

}  // namespace

int PauliString::weight() const {
    int w = 0;
    for (auto c : word) {
        w += c != 0;
    }
    return w;
}

int PauliString::hit_count() const {
    int h = 0;
    for (auto c : hit) {
        h += c != 0;
    }
    return h;
}

PauliString random_z_string(int n, Rng &rng) {
    if (n < 1 || n > 62) {
        throw std::invalid_argument("random_z_string: n out of range");
    }
    uint64_t mask = 1 + uniform_below(rng, (uint64_t(1) << n) - 1);
    std::vector<uint8_t> w(n);
    for (int i = 0; i < n; ++i) {
        w[i] = (mask >> i) & 1 ? 3 : 0;
    }
    return PauliString(std::move(w));
}

std::pair<int, int> random_pair(int n, Rng &rng) {
    int i = int(uniform_below(rng, n));
    int j = int(uniform_below(rng, n - 1));
    if (j >= i) {
        ++j;
    }
    return {std::min(i, j), std::max(i, j)};
}

void apply_pair(PauliString &state, int i, int j, Rng &rng) {
    state.hit[i] = state.hit[j] = 1;
    if (state.word[i] == 0 && state.word[j] == 0) {
        return;
    }
    int v = 1 + int(uniform_below(rng, 15));
    state.word[i] = uint8_t(v >> 2);
    state.word[j] = uint8_t(v & 3);
}

PauliString step_process(const PauliString &state, Rng &rng) {
    if (state.n() < 2) {
        throw std::invalid_argument("step_process: need n >= 2");
    }
    PauliString out = state;
    auto [i, j] = random_pair(state.n(), rng);
    apply_pair(out, i, j, rng);
    return out;
}

double WeightDistribution::total() const {
    CompensatedSum s;
    for (double v : values) {
        s.add(v);
    }
    return s.value();
}

double WeightDistribution::mean() const {
    CompensatedSum s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.add(values[i] * double(first + int(i)));
    }
    return s.value();
}

void WeightDistribution::write_csv(std::ostream &out) const {
    out << "k,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << first + int(i) << ',' << values[i] << '\n';
    }
}

RationalMatrix p_transition_exact(int n) {
    require_chain_size(n, "p_transition");
    RationalMatrix p(n + 1, n + 1);
    mpz_class den = 5 * mpz_class(n) * (n - 1);
    for (int k = 0; k <= n; ++k) {
        mpq_class up(mpz_class(6) * k * (n - k), den);
        mpq_class down(mpz_class(2) * k * (k - 1), den);
        up.canonicalize();
        down.canonicalize();
        if (k < n) {
            p(k, k + 1) = up;
        }
        if (k > 0) {
            p(k, k - 1) = down;
        }
        p(k, k) = 1 - up - down;
    }
    return p;
}

Eigen::MatrixXd p_transition(int n) {
    return p_transition_exact(n).to_double();
}

RationalMatrix q_transition_exact(int n) {
    require_chain_size(n, "q_transition");
    RationalMatrix q(n, n);
    for (int i = 0; i < n; ++i) {
        mpq_class up(3 * (n - i - 1), 3 * n - 1);
        mpq_class down(i, 3 * n - 1);
        up.canonicalize();
        down.canonicalize();
        if (i + 1 < n) {
            q(i, i + 1) = up;
        }
        if (i > 0) {
            q(i, i - 1) = down;
        }
        q(i, i) = 1 - up - down;
    }
    return q;
}

Eigen::MatrixXd q_transition(int n) {
    return q_transition_exact(n).to_double();
}

BirthDeath p_rates(int n, int k) {
    double den = 5.0 * n * (n - 1);
    double f = 6.0 * k * (n - k) / den;
    double b = 2.0 * k * (k - 1) / den;
    return {f, b, 1 - f - b};
}

BirthDeath q_rates(int n, int i) {
    double den = 3.0 * n - 1;
    double f = 3.0 * (n - i - 1) / den;
    double b = i / den;
    return {f, b, 2.0 * (i + 1) / den};
}

WeightDistribution stationary_p(int n) {
    if (n < 1) {
        throw std::invalid_argument("stationary_p: need n >= 1");
    }
    WeightDistribution d;
    d.n = n;
    d.first = 1;
    d.flavor = ChainFlavor::P_chain;
    mpz_class den = big_power(4, n) - 1;
    for (int k = 1; k <= n; ++k) {
        mpq_class v(big_binomial(n, k) * big_power(3, k), den);
        v.canonicalize();
        d.exact.push_back(v);
        d.values.push_back(v.get_d());
    }
    return d;
}

WeightDistribution stationary_q(int n) {
    require_chain_size(n, "stationary_q");
    WeightDistribution d;
    d.n = n;
    d.first = 0;
    d.flavor = ChainFlavor::Q_chain;
    mpz_class den = big_power(4, n - 1);
    for (int i = 0; i < n; ++i) {
        mpq_class v(big_binomial(n - 1, i) * big_power(3, i), den);
        v.canonicalize();
        d.exact.push_back(v);
        d.values.push_back(v.get_d());
    }
    return d;
}

double star_norm(std::span<const double> f) {
    double total = 0;
    double scale = 1;
    for (std::size_t k = 1; k < f.size(); ++k) {
        scale /= 3;
        total += std::abs(f[k]) * scale;
    }
    return total;
}

double box_norm(std::span<const double> f, int n) {
    double total = 0;
    double scale = 1;
    for (std::size_t k = 1; k < f.size(); ++k) {
        scale /= 3;
        total += std::abs(f[k]) * 3.0 * n / double(k) * scale;
    }
    return total;
}

std::vector<double> coll_exact_chain_series(int n, int t_max) {
    if (n < 2 || n > kMaxExactChainQubits) {
        throw SizeLimitError("coll_exact_chain: n=" + std::to_string(n) + " outside [2, " +
                             std::to_string(kMaxExactChainQubits) + "]");
    }
    if (t_max < 0) {
        throw std::invalid_argument("coll_exact_chain: negative depth");
    }
    const std::size_t dim = std::size_t(1) << (2 * n);
    const double num_z = double((uint64_t(1) << n) - 1);
    // Indices of {0,3}^n; letter of site i sits in bits 2i, 2i+1.
    std::vector<std::size_t> z_words;
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
                idx |= std::size_t(3) << (2 * i);
            }
        }
        z_words.push_back(idx);
    }
    std::vector<double> v(dim, 0.0);
    for (std::size_t idx : z_words) {
        if (idx != 0) {
            v[idx] = 1.0 / num_z;
        }
    }
    const double pair_count = n * (n - 1) / 2.0;
    std::vector<double> next(dim);
    std::vector<double> out;
    auto record = [&] {
        CompensatedSum s;
        for (std::size_t idx : z_words) {
            s.add(v[idx]);
        }
        out.push_back((1.0 + num_z * s.value()) / double(uint64_t(1) << n));
    };
    record();
    for (int step = 0; step < t_max; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const std::size_t si = std::size_t(1) << (2 * i);
                const std::size_t sj = std::size_t(1) << (2 * j);
                const std::size_t pair_mask = 3 * si | 3 * sj;
                for (std::size_t base = 0; base < dim; ++base) {
                    if (base & pair_mask) {
                        continue;
                    }
                    double nonzero = 0;
                    for (int a = 0; a < 4; ++a) {
                        for (int b = 0; b < 4; ++b) {
                            if (a | b) {
                                nonzero += v[base + a * si + b * sj];
                            }
                        }
                    }
                    next[base] += v[base];
                    nonzero /= 15.0;
                    for (int a = 0; a < 4; ++a) {
                        for (int b = 0; b < 4; ++b) {
                            if (a | b) {
                                next[base + a * si + b * sj] += nonzero;
                            }
                        }
                    }
                }
            }
        }
        for (std::size_t idx = 0; idx < dim; ++idx) {
            v[idx] = next[idx] / pair_count;
        }
        record();
    }
    return out;
}

double coll_exact_chain(int n, int t) {
    return coll_exact_chain_series(n, t).back();
}

double sub_chain_star_norm(int sites, int t) {
    if (sites == 0) {
        return 1.0;
    }
    if (sites == 1) {
        return 1.0 / 3.0;
    }
    const int k = sites;
    std::vector<double> f(k + 1, 0.0);
    const double den = std::ldexp(1.0, k) - 1;
    for (int j = 1; j <= k; ++j) {
        f[j] = std::exp(log_binomial(k, j)) / den;
    }
    std::vector<BirthDeath> rates(k + 1);
    for (int j = 0; j <= k; ++j) {
        rates[j] = p_rates(k, j);
    }
    std::vector<double> g(k + 1);
    for (int step = 0; step < t; ++step) {
        for (int j = 0; j <= k; ++j) {
            double v = f[j] * rates[j].stay;
            if (j > 0) {
                v += f[j - 1] * rates[j - 1].forward;
            }
            if (j < k) {
                v += f[j + 1] * rates[j + 1].backward;
            }
            g[j] = v;
        }
        std::swap(f, g);
    }
    return star_norm(f);
}

double coll_upper_bound(int n, int t, double delta) {
    require_chain_size(n, "coll_upper_bound");
    if (!(delta > 0)) {
        throw std::domain_error("coll_upper_bound: delta must be positive");
    }
    double threshold = n * std::log(n / delta) / 2.0;
    if (!(t > threshold)) {
        throw std::domain_error("coll_upper_bound: hypothesis t > n ln(n/delta)/2 = " + std::to_string(threshold) +
                                " violated by t=" + std::to_string(t));
    }
    CompensatedSum sum;
    for (int m = 0; m <= n; ++m) {
        double weight = std::exp(log_binomial(n, m) - double(t) * m / n);
        sum.add(weight * sub_chain_star_norm(n - m, t));
    }
    return std::ldexp(1.0, -n) + (1 + delta) * sum.value();
}

double coll_lower_bound(int n, int t) {
    return std::ldexp(std::pow(1 + std::exp(-3.0 * t / n), n), -n);
}

double coupling_alpha(int n, int x) {
    return 1.0 - 2.0 * x * (3.0 * n - 1) / (5.0 * n * (n - 1));
}

double coupling_beta(int n, int x) {
    return (2.0 * x * (3.0 * n - 1) - 5.0 * n * (n - 1)) / (4.0 * double(x) * x);
}

int64_t geometric_failures(double success, Rng &rng) {
    success = std::clamp(success, 1e-12, 1.0);
    if (success >= 1.0) {
        return 0;
    }
    double u = 1.0 - uniform01(rng);  // (0, 1]
    return int64_t(std::floor(std::log(u) / std::log1p(-success)));
}

CoupledTrace coupled_walk(int n, int x0, int s, Rng &rng) {
    require_chain_size(n, "coupled_walk");
    if (x0 < 1 || x0 > n || s < 0) {
        throw std::invalid_argument("coupled_walk: start weight outside [1, n] or negative length");
    }
    CoupledTrace tr;
    tr.y_path.push_back(x0);
    tr.x_path.push_back(x0);
    int y = x0;
    for (int step = 0; step < s; ++step) {
        int next = q_step(n, y, rng);
        double a = coupling_alpha(n, y);
        if (a > 0) {
            int64_t g = geometric_failures(1 - a, rng);
            tr.x_path.insert(tr.x_path.end(), std::size_t(g), y);
            tr.x_path.push_back(next);
            tr.t_left += g;
        } else if (next != y) {
            tr.x_path.push_back(next);
        } else if (uniform01(rng) < coupling_beta(n, y)) {
            ++tr.t_right;
        } else {
            tr.x_path.push_back(y);
        }
        tr.y_path.push_back(next);
        y = next;
    }
    tr.x_time = s + tr.t_left - tr.t_right;
    return tr;
}

int coupled_x_at(int n, int x0, int64_t T, Rng &rng) {
    require_chain_size(n, "coupled_x_at");
    int64_t pos = 0;
    int y = x0;
    while (pos < T) {
        int next = q_step(n, y, rng);
        double a = coupling_alpha(n, y);
        if (a > 0) {
            int64_t g = geometric_failures(1 - a, rng);
            if (pos + g >= T) {
                return y;
            }
            pos += g + 1;
            y = next;
        } else if (next != y) {
            ++pos;
            y = next;
        } else if (!(uniform01(rng) < coupling_beta(n, y))) {
            ++pos;
        }
    }
    return y;
}

int p_chain_at(int n, int x0, int64_t T, Rng &rng) {
    int x = x0;
    for (int64_t i = 0; i < T; ++i) {
        x = p_step(n, x, rng);
    }
    return x;
}

int q_chain_at(int n, int x0, int64_t s, Rng &rng) {
    int x = x0;
    for (int64_t i = 0; i < s; ++i) {
        x = q_step(n, x, rng);
    }
    return x;
}

WeightDistribution poissonized_dist(int n, int z, double tau) {
    if (z < 0 || z > n || tau < 0) {
        throw std::invalid_argument("poissonized_dist: need 0 <= z <= n and tau >= 0");
    }
    double decay = std::exp(-4.0 * tau / (3.0 * n));
    double a = 0.75 * (1 - decay);
    double b = 0.75 + 0.25 * decay;
    WeightDistribution d;
    d.n = n;
    d.first = 0;
    d.flavor = ChainFlavor::decoupled;
    d.values.assign(n + 1, 0.0);
    for (int i = 0; i <= n - z; ++i) {
        double pi = binomial_pmf(n - z, a, i);
        for (int j = 0; j <= z; ++j) {
            d.values[i + j] += pi * binomial_pmf(z, b, j);
        }
    }
    return d;
}

double poissonized_mean(int n, int z, double tau) {
    double decay = std::exp(-4.0 * tau / (3.0 * n));
    return z * decay + 0.75 * n * (1 - decay);
}

void decoupled_step(std::vector<uint8_t> &word, Rng &rng) {
    if (word.empty()) {
        throw std::invalid_argument("decoupled_step: empty word");
    }
    auto &bit = word[uniform_below(rng, word.size())];
    if (bit == 0) {
        bit = 1;
    } else if (uniform_below(rng, 3) == 0) {
        bit = 0;
    }
}

int decoupled_weight_steps(int n, int z, int64_t s, Rng &rng) {
    std::vector<uint8_t> word(n, 0);
    std::fill(word.begin(), word.begin() + z, 1);
    for (int64_t i = 0; i < s; ++i) {
        decoupled_step(word, rng);
    }
    int w = 0;
    for (auto b : word) {
        w += b;
    }
    return w;
}

int decoupled_weight_after(int n, int z, double tau, Rng &rng) {
    std::poisson_distribution<int64_t> steps(tau);
    return decoupled_weight_steps(n, z, tau > 0 ? steps(rng) : 0, rng);
}

HittingReport hitting_time(int n, int l) {
    require_chain_size(n, "hitting_time");
    if (l < 1 || l > n) {
        throw std::invalid_argument("hitting_time: need 1 <= l <= n");
    }
    HittingReport r;
    r.n = n;
    r.l = l;
    if (l == 1) {
        return r;
    }
    double e = 0;
    for (int k = 1; k < l; ++k) {
        auto rates = p_rates(n, k);
        e = (1 + rates.backward * e) / rates.forward;
    }
    r.recurrence = e;

    const double ln3 = std::log(3.0);
    const double q_l = p_rates(n, l).backward;
    CompensatedSum stationary;
    CompensatedSum binom;
    CompensatedSum el;
    const double log_head = log_binomial(n, l - 1) - log_binomial(n - 2, l - 2);
    const double ratio = (l - 1) / (3.0 * (n - l + 2));
    for (int i = 1; i < l; ++i) {
        stationary.add(std::exp(log_binomial(n, i) - log_binomial(n, l) - (l - i) * ln3));
        binom.add(std::exp(log_binomial(n, i) - log_binomial(n - 2, l - 2) - (l - i) * ln3));
        el.add(std::exp(log_head + (l - i - 1) * std::log(ratio)));
    }
    r.ratio_form = stationary.value() / q_l;
    r.binomial_form = 2.5 * binom.value();
    r.el_bound = 5.0 / 6.0 * el.value();
    r.simplified_bound = 5.0 / 6.0 * n * (1.0 / (l - 1) + 1.0 / (0.75 * n - l + 1.75));
    return r;
}

double cumulative_hitting_time(int n, int L) {
    require_chain_size(n, "cumulative_hitting_time");
    if (L < 1 || L > n) {
        throw std::invalid_argument("cumulative_hitting_time: need 1 <= L <= n");
    }
    CompensatedSum total;
    double e = 0;
    for (int k = 1; k < L; ++k) {
        auto rates = p_rates(n, k);
        e = (1 + rates.backward * e) / rates.forward;
        total.add(e);
    }
    return total.value();
}

int64_t simulate_hitting(int n, int a, int b, Rng &rng) {
    if (a < 1 || b > n || a >= b) {
        throw std::invalid_argument("simulate_hitting: need 1 <= a < b <= n");
    }
    int x = a;
    int64_t steps = 0;
    while (x < b) {
        x = p_step(n, x, rng);
        ++steps;
    }
    return steps;
}

double coupon_bound(int n, int t, int h) {
    if (h < 0 || h > n) {
        throw std::invalid_argument("coupon_bound: need 0 <= h <= n");
    }
    return std::exp(-double(n - h) * t / n);
}

Estimate coupon_mc(int n, int t, int h, std::size_t trials, uint64_t seed, int threads) {
    require_chain_size(n, "coupon_mc");
    std::vector<double> hits(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
        Rng rng = stream(seed, k);
        bool inside = true;
        for (int step = 0; step < t; ++step) {
            auto [i, j] = random_pair(n, rng);
            inside = inside && i < h && j < h;
        }
        hits[k] = inside ? 1.0 : 0.0;
    });
    return estimate_from(hits);
}

Estimate scramble_weight_stats(int n, int t, double threshold, std::size_t trials, uint64_t seed, int threads) {
    require_chain_size(n, "scramble_weight_stats");
    std::vector<double> low(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
        Rng rng = stream(seed, k);
        PauliString s = random_z_string(n, rng);
        for (int step = 0; step < t; ++step) {
            auto [i, j] = random_pair(n, rng);
            apply_pair(s, i, j, rng);
        }
        low[k] = s.weight() <= threshold * n ? 1.0 : 0.0;
    });
    return estimate_from(low);
}

}  // namespace designlab
