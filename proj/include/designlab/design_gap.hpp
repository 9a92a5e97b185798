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

// Angle between the row and column permutation subspaces of an m x m lattice
// of d-dimensional sites, computed from Gram data and from explicit vectors.
//
// A tuple g in S_t^m labels the row state R_g = (x)_{x,y} psi_{g_x} and the
// column state C_g = (x)_{x,y} psi_{g_y}. Constant tuples span the Haar space.

#ifndef DESIGNLAB_DESIGN_GAP_HPP
#define DESIGNLAB_DESIGN_GAP_HPP

#include <gmpxx.h>

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "designlab/perm_algebra.hpp"
#include "json.hpp"

namespace designlab {

inline constexpr std::size_t kMaxTupleCount = 10000;
inline constexpr std::size_t kMaxBruteDimension = std::size_t(1) << 20;

/// Tuples of permutation indices in S_t^m, lexicographic.
std::vector<std::vector<int>> enumerate_tuples(int t, int m);

struct OverlapMatrix {
    int d = 0;
    int m = 0;
    int t = 0;
    std::vector<std::vector<int>> tuples;  // non-constant tuples
    std::vector<std::vector<int>> exponent; // sum_{x,y} dist(g_x, h_y)

    std::size_t size() const {
        return tuples.size();
    }
    mpq_class entry(std::size_t g, std::size_t h) const;
    Eigen::MatrixXd to_double() const;
    double max_row_sum() const;
    double max_col_sum() const;
};

OverlapMatrix overlap_matrix(int d, int m, int t);

enum class GapMethod { gram, brute };

struct GapReport {
    int d = 0;
    int m = 0;
    int t = 0;
    GapMethod method = GapMethod::gram;
    double cos_angle = 0;
    double gap_value = 0;
    double alt_cos_angle = 0;  // orthonormalize first, then project out the Haar space
    double q_inf = 0;
    double c_dnt = 0;
    double bound = 0;  // (c_dnt q_inf)^2
    int rank_r = 0;
    int rank_c = 0;

    nlohmann::json to_json() const;
};

/// 1 / (1 - m t(t-1) / (2 d^m)); +inf when the denominator is not positive.
double c_dnt(int d, int m, int t);

GapReport subspace_gap_gram(int d, int m, int t);
GapReport subspace_gap_brute(int d, int m, int t);

/// Explicit per-site state (I (x) V(pi)) |Phi_{d,t}>, length d^(2t).
std::vector<double> site_state(const Permutation &pi, int d);

struct QBounds {
    double q_inf = 0;
    double perron_bound = 0;  // sqrt(max row sum * max column sum)
    double row_bound = 0;     // (1/d + 1/d^(m-1) + 2t^2/d^m)^m
    double max_row_sum = 0;
    double max_col_sum = 0;
};

QBounds qinf_and_bounds(int d, int m, int t);

}  // namespace designlab

#endif  // DESIGNLAB_DESIGN_GAP_HPP
