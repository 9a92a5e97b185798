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

// Second-moment Pauli process of a complete-graph random circuit and the
// birth-death chains derived from it.
//
// Index conventions: the weight chain P lives on {0..n} (0 is absorbing), the
// accelerated chain Q is stored relabeled on {0..n-1} (site i means weight
// i+1). q_label/x_label below are the only places that offset appears.

#ifndef DESIGNLAB_PAULI_CHAIN_HPP
#define DESIGNLAB_PAULI_CHAIN_HPP

#include <gmpxx.h>

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "designlab/common.hpp"
#include "designlab/exact_linalg.hpp"

namespace designlab {

inline constexpr int kMaxExactChainQubits = 7;

inline int q_label(int weight) {
    return weight - 1;
}
inline int x_label(int q_site) {
    return q_site + 1;
}

struct PauliString {
    std::vector<uint8_t> word;  // letters 0..3
    std::vector<char> hit;      // hit[i] != 0 once site i was touched

    PauliString() = default;
    explicit PauliString(std::vector<uint8_t> w) : word(std::move(w)), hit(word.size(), 0) {
    }

    int n() const {
        return int(word.size());
    }
    int weight() const;
    int hit_count() const;
};

/// Uniform element of {0,3}^n minus the all-zero word.
PauliString random_z_string(int n, Rng &rng);

/// One gate of the process on sites (i, j): a 00 pair stays, anything else
/// becomes a uniformly random nonzero two-letter value.
void apply_pair(PauliString &state, int i, int j, Rng &rng);

/// Uniform pair i != j, then apply_pair.
PauliString step_process(const PauliString &state, Rng &rng);

/// Uniform unordered pair {i, j}, i < j.
std::pair<int, int> random_pair(int n, Rng &rng);

enum class ChainFlavor { P_chain, Q_chain, decoupled };

/// Probability vector over chain sites first..first+values.size()-1.
struct WeightDistribution {
    int n = 0;
    int first = 0;
    ChainFlavor flavor = ChainFlavor::P_chain;
    std::vector<double> values;
    std::vector<mpq_class> exact;  // empty unless computed exactly

    double at(int site) const {
        int i = site - first;
        return i >= 0 && i < int(values.size()) ? values[i] : 0.0;
    }
    double total() const;
    double mean() const;
    /// Columns k,value.
    void write_csv(std::ostream &out) const;
};

RationalMatrix p_transition_exact(int n);
Eigen::MatrixXd p_transition(int n);
RationalMatrix q_transition_exact(int n);
Eigen::MatrixXd q_transition(int n);

/// P-chain rates as doubles: {forward, backward, stay} at weight k.
struct BirthDeath {
    double forward;
    double backward;
    double stay;
};
BirthDeath p_rates(int n, int k);
/// Q-chain rates in relabeled coordinates i in {0..n-1}.
BirthDeath q_rates(int n, int i);

/// C(n,k) 3^k / (4^n - 1) on {1..n}; exact and double.
WeightDistribution stationary_p(int n);
/// C(n-1,i) 3^i / 4^(n-1) on {0..n-1}.
WeightDistribution stationary_q(int n);

/// Sum_{k>=1} |f(k)| / 3^k with f indexed from weight 0.
double star_norm(std::span<const double> f);
/// Sum_{k>=1} |f(k)| 3n / (k 3^k) with f indexed from weight 0.
double box_norm(std::span<const double> f, int n);

/// Collision probability from the exact 4^n-state process after t gates,
/// started from the uniform law on {0,3}^n minus 0^n.
double coll_exact_chain(int n, int t);
/// Values for t = 0..t_max in one pass.
std::vector<double> coll_exact_chain_series(int n, int t_max);

/// Star norm of the (n-m)-site sub-chain after t steps from C(k,j)/(2^k-1).
double sub_chain_star_norm(int sites, int t);

/// 1/2^n + (1+delta) Sum_m C(n,m) e^(-tm/n) ||P_t^(n-m)||_*.
/// Requires t > n ln(n/delta)/2.
double coll_upper_bound(int n, int t, double delta = 0.5);

/// (1/2^n)(1 + e^(-3t/n))^n.
double coll_lower_bound(int n, int t);

struct CoupledTrace {
    std::vector<int> y_path;  // weights in {1..n}
    std::vector<int> x_path;  // reconstructed P-chain path
    int64_t t_left = 0;
    int64_t t_right = 0;
    int64_t x_time = 0;
};

/// 1 - 2x(3n-1)/(5n(n-1)); positive exactly on the left region.
double coupling_alpha(int n, int x);
/// (2x(3n-1) - 5n(n-1)) / (4x^2); the stall-skip probability on the right.
double coupling_beta(int n, int x);

/// Failures before the first success, inverse CDF, success prob clamped.
int64_t geometric_failures(double success, Rng &rng);

/// s steps of Y ~ Q from weight x0 with the reconstructed X path.
CoupledTrace coupled_walk(int n, int x0, int s, Rng &rng);
/// X_T of the coupled construction, without storing paths.
int coupled_x_at(int n, int x0, int64_t T, Rng &rng);
/// X_T by direct simulation of P.
int p_chain_at(int n, int x0, int64_t T, Rng &rng);
/// Y_s by direct simulation of Q (weights in {1..n}).
int q_chain_at(int n, int x0, int64_t s, Rng &rng);

/// Law of Bin(n-z, a_tau) + Bin(z, b_tau) on {0..n}.
WeightDistribution poissonized_dist(int n, int z, double tau);
/// z e^(-4tau/3n) + (3/4) n (1 - e^(-4tau/3n)).
double poissonized_mean(int n, int z, double tau);

/// Uniform position; 0 -> 1, 1 -> 0 with probability 1/3.
void decoupled_step(std::vector<uint8_t> &word, Rng &rng);
/// Weight after Poisson(tau) decoupled steps from a word of weight z.
int decoupled_weight_after(int n, int z, double tau, Rng &rng);
/// Weight after s decoupled steps (fixed count).
int decoupled_weight_steps(int n, int z, int64_t s, Rng &rng);

struct HittingReport {
    int n = 0;
    int l = 0;
    double recurrence = 0;    // first-passage recurrence
    double ratio_form = 0;    // (1/q_l) Sum_{i<l} pi(i)/pi(l)
    double binomial_form = 0; // (5/2) Sum C(n,i) / (C(n-2,l-2) 3^(l-i))
    double el_bound = 0;
    double simplified_bound = 0;  // (5/6) n (1/(l-1) + 1/(3n/4 - l + 7/4))
};

/// E_{l-1}(T_l) for P; l = 1 gives zeros.
HittingReport hitting_time(int n, int l);
/// E_1[T_L] = Sum_{l=2}^{L} E_{l-1}(T_l).
double cumulative_hitting_time(int n, int L);
/// Monte Carlo first-passage time from weight a to b > a.
int64_t simulate_hitting(int n, int a, int b, Rng &rng);

/// e^(-(n-h) t / n).
double coupon_bound(int n, int t, int h);
/// Empirical Pr[H_t is inside the first h sites].
Estimate coupon_mc(int n, int t, int h, std::size_t trials, uint64_t seed, int threads = 0);
/// Empirical Pr[|S_t| <= threshold n] from a random {0,3}^n start.
Estimate scramble_weight_stats(int n, int t, double threshold, std::size_t trials, uint64_t seed,
                               int threads = 0);

}  // namespace designlab

#endif  // DESIGNLAB_PAULI_CHAIN_HPP
