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

// Closed-form spectral solution of the accelerated chain Q on {0..n-1}.
//
// Eigenvalues are lambda_m = 1 - 4m/(3n-1); the left eigenvectors are
// x^(m)(i) = x0_m K^(i)(m) with the Krawtchouk values
//   K^(t)(x) = sum_i C(x,i) C(n-x-1,t-i) 3^(t-i) (-1)^i
// and x0_m = sqrt(C(n-1,m) 3^m) / 4^(n-1), which makes the basis orthonormal
// under (f,g) = sum_i f(i) g(i) / pi(i) with pi(i) = C(n-1,i) 3^i / 4^(n-1).
//
// The expansion has large alternating terms, so evolution is evaluated in
// GMP floating point with precision growing linearly in n.

#ifndef DESIGNLAB_SPECTRAL_CHAIN_HPP
#define DESIGNLAB_SPECTRAL_CHAIN_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "designlab/pauli_chain.hpp"

namespace designlab {

inline constexpr int kExactSpectralLimit = 40;

mpz_class krawtchouk(int n, int t, int x);

/// Row K^(0..n-1)(x) from the generating polynomial (1-z)^x (1+3z)^(n-1-x).
std::vector<mpz_class> krawtchouk_row(int n, int x);

/// Binomial-weight orthogonality at general p:
/// lhs = sum_x C(N,x) p^x q^(N-x) k^(t)(x) k^(s)(x), rhs = delta_ts C(N,t) (pq)^t.
std::pair<mpq_class, mpq_class> orthogonality_check(int N, const mpq_class &p, int t, int s);

/// C(n-1,x) 3^-t K^(t)(x) == C(n-1,t) 3^-x K^(x)(t) for all x, t < n.
bool krawtchouk_symmetry_holds(int n);

/// sum_t K^(t)(m)^2 / (C(n-1,t) 3^t) == 4^(n-1) / (C(n-1,m) 3^m) for all m.
bool main_orthogonality_holds(int n);

class KrawtchoukBasis {
   public:
    explicit KrawtchoukBasis(int n);

    int n() const {
        return n_;
    }
    /// True when eigen-equations and orthonormality were verified exactly.
    bool exact() const {
        return exact_;
    }
    const std::vector<double> &eigenvalues() const {
        return lambda_;
    }
    double x0(int m) const;
    /// x^(m)(i) in double precision.
    std::vector<double> eigenvector(int m) const;

    /// max_m ||x^(m) Q - lambda_m x^(m)||_inf / ||x^(m)||_inf.
    double max_residual() const;
    /// max_{i,j} |(x^(i), x^(j)) - delta_ij|.
    double orthonormality_error() const;

    /// alpha_m = (x^(m), f0).
    std::vector<double> coefficients(std::span<const double> f0) const;
    /// Sum_m alpha_m lambda_m^t x^(m).
    std::vector<double> evolve(std::span<const double> f0, int64_t t) const;
    /// (f, g) under the stationary weight.
    double inner(std::span<const double> f, std::span<const double> g) const;

    /// Columns m,lambda,x0.
    void write_csv(std::ostream &out) const;

   private:
    std::vector<mpf_class> expansion_weights(std::span<const double> f0) const;

    int n_;
    bool exact_ = false;
    unsigned bits_;
    std::vector<double> lambda_;
    std::vector<std::vector<mpz_class>> k_;  // k_[m][i] = K^(i)(m)
    std::vector<mpz_class> pi_num_;          // C(n-1,i) 3^i; pi = pi_num / 4^(n-1)
};

KrawtchoukBasis eigen_system(int n);

WeightDistribution q_t_spectral(int n, int64_t t, const WeightDistribution &f0);
/// Direct t-fold application of Q, for comparison.
std::vector<double> q_t_direct(int n, int64_t t, std::span<const double> f0);

/// C(n, i+1) / (2^n - 1) on {0..n-1}.
std::vector<double> shifted_binomial_start(int n);

struct BoxMixing {
    int n = 0;
    int64_t t = 0;
    double weighted_sum = 0;   // sum_k Q_t(k-1) 3n / (k 3^k)
    double inner_product = 0;  // (1 - 2^-n)(12/2^n)(Q_0, Q_t)
    double spectral_bound = 0; // (12/2^n) sum_m alpha_m^2 lambda_m^t
    double threshold = 0;      // 28 / 2^n
};

BoxMixing box_mixing(int n, int64_t t);
std::vector<BoxMixing> box_mixing_curve(int n, std::span<const int64_t> ts);
void write_mixing_csv(std::ostream &out, std::span<const BoxMixing> curve);

/// ceil(3 n ln n).
int64_t mixing_depth(int n);

}  // namespace designlab

#endif  // DESIGNLAB_SPECTRAL_CHAIN_HPP
