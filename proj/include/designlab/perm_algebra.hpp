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

// Symmetric-group combinatorics used by the subspace-gap and Haar-moment code:
// transposition distance, permutation Gram matrices, Weingarten coefficients,
// and the scalar sums f_t and h over S_t.

#ifndef DESIGNLAB_PERM_ALGEBRA_HPP
#define DESIGNLAB_PERM_ALGEBRA_HPP

#include <gmpxx.h>

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "designlab/exact_linalg.hpp"
#include "json.hpp"

namespace designlab {

inline constexpr int kMaxSymmetricDegree = 8;

/// A bijection on {0, ..., t-1} in one-line notation.
class Permutation {
   public:
    /// Throws std::invalid_argument unless `mapping` is a bijection.
    explicit Permutation(std::vector<int> mapping);

    static Permutation identity(int t);

    int degree() const {
        return int(map_.size());
    }
    int operator[](int i) const {
        return map_[i];
    }
    const std::vector<int> &mapping() const {
        return map_;
    }

    Permutation inverse() const;
    /// (a.compose(b))(i) = a(b(i)).
    Permutation compose(const Permutation &other) const;
    int cycle_count() const;
    /// Cycle lengths, descending.
    std::vector<int> cycle_type() const;
    /// Cycle type as "3,1,1".
    std::string cycle_type_key() const;
    bool is_identity() const;

    auto operator<=>(const Permutation &) const = default;

   private:
    std::vector<int> map_;
};

/// All t! permutations in lexicographic order of one-line notation.
std::vector<Permutation> enumerate_sym(int t);

/// Minimal number of transpositions turning a into b: t - #cycles(a^-1 b).
int transposition_distance(const Permutation &a, const Permutation &b);

/// dist(perms[i], perms[j]) for all pairs.
std::vector<std::vector<int>> distance_table(std::span<const Permutation> perms);

/// Gram matrix of {|psi_pi>^{(x)m}} over S_t: entries d^(-m dist(pi, sigma)).
struct GramMatrix {
    int t = 0;
    int m = 0;
    int d = 0;
    std::vector<Permutation> perms;
    std::vector<std::vector<int>> dist;

    std::size_t size() const {
        return perms.size();
    }
    mpq_class entry(std::size_t i, std::size_t j) const;
    RationalMatrix exact() const;
    Eigen::MatrixXd to_double() const;
    double min_eigenvalue() const;
    /// 1 - t(t-1)/(2 d^m).
    double min_eigenvalue_lower_bound() const;
};

GramMatrix gram_matrix(int t, int m, int d);

/// Sum over S_t of alpha^(-dist(e, sigma)).
double f_t(int t, double alpha);

/// Sum over pi in S_t of base^(-sum_i dist(pi, sigma_i)).
double h_func(double base, int t, std::span<const Permutation> sigmas);

/// Upper bound 1/D + 1/D^(M-1) + 2t^2/D^M for non-constant tuples.
double h_func_bound(double base, int t, int num_sigmas);

/// Weingarten coefficients: the exact inverse of [d^(#cycles(mu^-1 nu))].
struct WeingartenTable {
    int t = 0;
    int d = 0;
    std::vector<Permutation> perms;
    RationalMatrix inverse;  // rows/cols follow `perms`
    std::map<Permutation, mpq_class> values;

    const mpq_class &at(const Permutation &p) const {
        return values.at(p);
    }
    /// {cycle_type: "num/den"}.
    nlohmann::json to_json() const;
};

/// [d^(#cycles(mu^-1 nu))]_{mu, nu}, the matrix the Weingarten table inverts.
RationalMatrix weingarten_gram(int t, int d);

/// Throws DegeneracyError when the permutation Gram matrix is singular (d < t).
WeingartenTable weingarten(int t, int d);

/// Sum_i prod_k x_{k,i}; throws std::domain_error on negative entries.
double multiprod(std::span<const std::vector<double>> vectors);

}  // namespace designlab

#endif  // DESIGNLAB_PERM_ALGEBRA_HPP
