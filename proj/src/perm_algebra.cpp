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

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "designlab/common.hpp"

namespace designlab {

namespace {

void check_degree(int t, int max_t, const char *what) {
    if (t < 1 || t > max_t) {
        throw SizeLimitError(std::string(what) + ": degree t=" + std::to_string(t) + " outside [1, " +
                             std::to_string(max_t) + "]");
    }
}

mpq_class inverse_power(int base, int exponent) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), base, exponent);
    return mpq_class(1, den);
}

}  // namespace

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
        if (v < 0 || v >= int(map_.size()) || seen[v]) {
            throw std::invalid_argument("Permutation: mapping is not a bijection");
        }
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int t) {
    std::vector<int> m(t);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (int i = 0; i < degree(); ++i) {
        inv[map_[i]] = i;
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation &other) const {
    if (other.degree() != degree()) {
        throw std::invalid_argument("Permutation::compose: degree mismatch");
    }
    std::vector<int> out(map_.size());
    for (int i = 0; i < degree(); ++i) {
        out[i] = map_[other.map_[i]];
    }
    return Permutation(std::move(out));
}

int Permutation::cycle_count() const {
    return int(cycle_type().size());
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<char> seen(map_.size(), 0);
    std::vector<int> lengths;
    for (int i = 0; i < degree(); ++i) {
        if (seen[i]) {
            continue;
        }
        int len = 0;
        for (int j = i; !seen[j]; j = map_[j]) {
            seen[j] = 1;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
}

std::string Permutation::cycle_type_key() const {
    std::ostringstream out;
    auto type = cycle_type();
    for (std::size_t i = 0; i < type.size(); ++i) {
        out << (i ? "," : "") << type[i];
    }
    return out.str();
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i) {
        if (map_[i] != i) {
            return false;
        }
    }
    return true;
}

std::vector<Permutation> enumerate_sym(int t) {
    check_degree(t, kMaxSymmetricDegree, "enumerate_sym");
    std::vector<int> m(t);
    std::iota(m.begin(), m.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
    return out;
}

int transposition_distance(const Permutation &a, const Permutation &b) {
    if (a.degree() != b.degree()) {
        throw std::invalid_argument("transposition_distance: degree mismatch");
    }
    return a.degree() - a.inverse().compose(b).cycle_count();
}

std::vector<std::vector<int>> distance_table(std::span<const Permutation> perms) {
    std::vector<std::vector<int>> out(perms.size(), std::vector<int>(perms.size()));
    for (std::size_t i = 0; i < perms.size(); ++i) {
        for (std::size_t j = i; j < perms.size(); ++j) {
            out[i][j] = out[j][i] = transposition_distance(perms[i], perms[j]);
        }
    }
    return out;
}

mpq_class GramMatrix::entry(std::size_t i, std::size_t j) const {
    return inverse_power(d, m * dist[i][j]);
}

RationalMatrix GramMatrix::exact() const {
    RationalMatrix out(size(), size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            out(i, j) = entry(i, j);
        }
    }
    return out;
}

Eigen::MatrixXd GramMatrix::to_double() const {
    Eigen::MatrixXd out(size(), size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            out(i, j) = std::pow(double(d), -double(m) * dist[i][j]);
        }
    }
    return out;
}

double GramMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_double(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double GramMatrix::min_eigenvalue_lower_bound() const {
    return 1.0 - double(t) * (t - 1) / (2.0 * std::pow(double(d), m));
}

GramMatrix gram_matrix(int t, int m, int d) {
    check_degree(t, 6, "gram_matrix");
    if (d < 2 || m < 1) {
        throw std::invalid_argument("gram_matrix: need d >= 2 and m >= 1");
    }
    GramMatrix g;
    g.t = t;
    g.m = m;
    g.d = d;
    g.perms = enumerate_sym(t);
    g.dist = distance_table(g.perms);
    return g;
}

double f_t(int t, double alpha) {
    if (!(alpha > 1)) {
        throw std::domain_error("f_t: alpha must exceed 1");
    }
    check_degree(t, kMaxSymmetricDegree, "f_t");
    // Sum grouped by distance; #{sigma : dist(e, sigma) = k} is the unsigned
    // Stirling number c(t, t-k), generated by prod_{j<t} (1 + j x).
    std::vector<double> counts{1.0};
    for (int j = 1; j < t; ++j) {
        std::vector<double> next(counts.size() + 1, 0.0);
        for (std::size_t k = 0; k < counts.size(); ++k) {
            next[k] += counts[k];
            next[k + 1] += counts[k] * j;
        }
        counts = std::move(next);
    }
    double total = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        total += counts[k] * std::pow(alpha, -double(k));
    }
    return total;
}

double h_func(double base, int t, std::span<const Permutation> sigmas) {
    if (sigmas.empty()) {
        throw std::invalid_argument("h_func: empty permutation list");
    }
    if (!(base > 1)) {
        throw std::domain_error("h_func: base must exceed 1");
    }
    for (const auto &s : sigmas) {
        if (s.degree() != t) {
            throw std::invalid_argument("h_func: permutation degree differs from t");
        }
    }
    double total = 0;
    for (const auto &pi : enumerate_sym(t)) {
        int exponent = 0;
        for (const auto &s : sigmas) {
            exponent += transposition_distance(pi, s);
        }
        total += std::pow(base, -double(exponent));
    }
    return total;
}

double h_func_bound(double base, int t, int num_sigmas) {
    return 1.0 / base + std::pow(base, -(num_sigmas - 1.0)) + 2.0 * t * t * std::pow(base, -double(num_sigmas));
}

nlohmann::json WeingartenTable::to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto &[perm, value] : values) {
        out[perm.cycle_type_key()] = value.get_str();
    }
    return out;
}

RationalMatrix weingarten_gram(int t, int d) {
    auto perms = enumerate_sym(t);
    RationalMatrix g(perms.size(), perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i) {
        for (std::size_t j = 0; j < perms.size(); ++j) {
            mpz_class v;
            mpz_ui_pow_ui(v.get_mpz_t(), d, perms[i].inverse().compose(perms[j]).cycle_count());
            g(i, j) = v;
        }
    }
    return g;
}

WeingartenTable weingarten(int t, int d) {
    check_degree(t, 5, "weingarten");
    if (d < 1) {
        throw std::invalid_argument("weingarten: dimension must be positive");
    }
    auto inv = exact_inverse(weingarten_gram(t, d));
    if (!inv) {
        throw DegeneracyError("weingarten: permutation Gram matrix is singular at d=" + std::to_string(d) +
                              ", t=" + std::to_string(t));
    }
    WeingartenTable table;
    table.t = t;
    table.d = d;
    table.perms = enumerate_sym(t);
    table.inverse = std::move(*inv);
    // Row of the identity (index 0 in lexicographic order): Wg(sigma).
    for (std::size_t j = 0; j < table.perms.size(); ++j) {
        table.values.emplace(table.perms[j], table.inverse(0, j));
    }
    return table;
}

double multiprod(std::span<const std::vector<double>> vectors) {
    if (vectors.empty()) {
        return 0;
    }
    const std::size_t len = vectors.front().size();
    for (const auto &v : vectors) {
        if (v.size() != len) {
            throw std::invalid_argument("multiprod: vectors differ in length");
        }
        for (double x : v) {
            if (x < 0) {
                throw std::domain_error("multiprod: negative entry");
            }
        }
    }
    double total = 0;
    for (std::size_t i = 0; i < len; ++i) {
        double prod = 1;
        for (const auto &v : vectors) {
            prod *= v[i];
        }
        total += prod;
    }
    return total;
}

}  // namespace designlab
