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

#include <limits>
#include <stdexcept>

#include "designlab/common.hpp"

namespace designlab {

namespace {

constexpr double kRankTolerance = 1e-9;

bool is_constant(const std::vector<int> &tuple) {
    for (int v : tuple) {
        if (v != tuple.front()) {
            return false;
        }
    }
    return true;
}

double top_singular_value(const Eigen::MatrixXd &a) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues()(0);
}

// Columns B with B^T G B = I spanning the range of G (eigenvalues > tol).
Eigen::MatrixXd orthonormalizer(const Eigen::MatrixXd &gram) {
    if (gram.size() == 0) {
        return Eigen::MatrixXd(0, 0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    std::vector<int> keep;
    for (int i = 0; i < int(gram.rows()); ++i) {
        if (eig.eigenvalues()(i) > kRankTolerance) {
            keep.push_back(i);
        }
    }
    Eigen::MatrixXd b(gram.rows(), keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        b.col(k) = eig.eigenvectors().col(keep[k]) / std::sqrt(eig.eigenvalues()(keep[k]));
    }
    return b;
}

// Orthogonal projector onto the column span of `coords`, plus its rank.
Eigen::MatrixXd span_projector(const Eigen::MatrixXd &coords, int &rank) {
    rank = 0;
    if (coords.cols() == 0) {
        return Eigen::MatrixXd::Zero(coords.rows(), coords.rows());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords, Eigen::ComputeThinU);
    const auto &s = svd.singularValues();
    for (int i = 0; i < int(s.size()); ++i) {
        if (s(i) > 1e-8 * s(0)) {
            ++rank;
        }
    }
    Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
    return u * u.transpose();
}

struct TupleData {
    std::vector<Permutation> perms;
    std::vector<std::vector<int>> dist;
    std::vector<std::vector<int>> all;
    std::vector<std::size_t> constant_idx;
    std::vector<std::size_t> nonconstant_idx;
};

TupleData tuple_data(int m, int t) {
    TupleData td;
    td.perms = enumerate_sym(t);
    td.dist = distance_table(td.perms);
    td.all = enumerate_tuples(t, m);
    for (std::size_t i = 0; i < td.all.size(); ++i) {
        (is_constant(td.all[i]) ? td.constant_idx : td.nonconstant_idx).push_back(i);
    }
    return td;
}

void check_lattice(int d, int m, int t) {
    if (d < 2 || m < 1 || t < 1) {
        throw std::invalid_argument("design_gap: need d >= 2, m >= 1, t >= 1");
    }
}

}  // namespace

std::vector<std::vector<int>> enumerate_tuples(int t, int m) {
    std::size_t k = enumerate_sym(t).size();
    std::size_t count = 1;
    for (int i = 0; i < m; ++i) {
        count *= k;
        if (count > kMaxTupleCount) {
            throw SizeLimitError("tuple count |S_t|^m exceeds " + std::to_string(kMaxTupleCount));
        }
    }
    std::vector<std::vector<int>> out;
    out.reserve(count);
    std::vector<int> tuple(m, 0);
    for (std::size_t c = 0; c < count; ++c) {
        out.push_back(tuple);
        for (int pos = m - 1; pos >= 0; --pos) {
            if (++tuple[pos] < int(k)) {
                break;
            }
            tuple[pos] = 0;
        }
    }
    return out;
}

mpq_class OverlapMatrix::entry(std::size_t g, std::size_t h) const {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), d, exponent[g][h]);
    return mpq_class(1, den);
}

Eigen::MatrixXd OverlapMatrix::to_double() const {
    Eigen::MatrixXd q(size(), size());
    for (std::size_t g = 0; g < size(); ++g) {
        for (std::size_t h = 0; h < size(); ++h) {
            q(g, h) = std::pow(double(d), -double(exponent[g][h]));
        }
    }
    return q;
}

double OverlapMatrix::max_row_sum() const {
    if (size() == 0) {
        return 0;
    }
    return to_double().rowwise().sum().maxCoeff();
}

double OverlapMatrix::max_col_sum() const {
    if (size() == 0) {
        return 0;
    }
    return to_double().colwise().sum().maxCoeff();
}

OverlapMatrix overlap_matrix(int d, int m, int t) {
    check_lattice(d, m, t);
    auto td = tuple_data(m, t);
    OverlapMatrix q;
    q.d = d;
    q.m = m;
    q.t = t;
    for (auto i : td.nonconstant_idx) {
        q.tuples.push_back(td.all[i]);
    }
    q.exponent.assign(q.size(), std::vector<int>(q.size(), 0));
    for (std::size_t g = 0; g < q.size(); ++g) {
        for (std::size_t h = 0; h < q.size(); ++h) {
            int e = 0;
            for (int x = 0; x < m; ++x) {
                for (int y = 0; y < m; ++y) {
                    e += td.dist[q.tuples[g][x]][q.tuples[h][y]];
                }
            }
            q.exponent[g][h] = e;
        }
    }
    return q;
}

double c_dnt(int d, int m, int t) {
    double den = 1.0 - double(m) * t * (t - 1) / (2.0 * std::pow(double(d), m));
    return den > 0 ? 1.0 / den : std::numeric_limits<double>::infinity();
}

QBounds qinf_and_bounds(int d, int m, int t) {
    auto q = overlap_matrix(d, m, t);
    QBounds b;
    b.q_inf = top_singular_value(q.to_double());
    b.max_row_sum = q.max_row_sum();
    b.max_col_sum = q.max_col_sum();
    b.perron_bound = std::sqrt(b.max_row_sum * b.max_col_sum);
    b.row_bound = std::pow(1.0 / d + std::pow(double(d), 1.0 - m) + 2.0 * t * t * std::pow(double(d), -double(m)), m);
    return b;
}

GapReport subspace_gap_gram(int d, int m, int t) {
    check_lattice(d, m, t);
    auto td = tuple_data(m, t);
    GapReport r;
    r.d = d;
    r.m = m;
    r.t = t;
    r.method = GapMethod::gram;
    r.c_dnt = c_dnt(d, m, t);
    const auto &nc = td.nonconstant_idx;
    const std::size_t k = td.perms.size();
    if (nc.empty()) {
        return r;
    }
    const double dd = d;
    auto row_exp = [&](const std::vector<int> &g, const std::vector<int> &h) {
        int e = 0;
        for (int x = 0; x < m; ++x) {
            e += td.dist[g[x]][h[x]];
        }
        return m * e;
    };
    auto cross_exp = [&](const std::vector<int> &g, const std::vector<int> &h) {
        int e = 0;
        for (int x = 0; x < m; ++x) {
            for (int y = 0; y < m; ++y) {
                e += td.dist[g[x]][h[y]];
            }
        }
        return e;
    };
    const std::size_t nn = nc.size();
    Eigen::MatrixXd gram(nn, nn);
    Eigen::MatrixXd cross(nn, nn);
    Eigen::MatrixXd a(nn, k);
    for (std::size_t i = 0; i < nn; ++i) {
        const auto &g = td.all[nc[i]];
        for (std::size_t j = 0; j < nn; ++j) {
            const auto &h = td.all[nc[j]];
            gram(i, j) = std::pow(dd, -double(row_exp(g, h)));
            cross(i, j) = std::pow(dd, -double(cross_exp(g, h)));
        }
        for (std::size_t p = 0; p < k; ++p) {
            int e = 0;
            for (int x = 0; x < m; ++x) {
                e += td.dist[g[x]][p];
            }
            a(i, p) = std::pow(dd, -double(m) * e);
        }
    }
    Eigen::MatrixXd haar(k, k);
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = 0; q < k; ++q) {
            haar(p, q) = std::pow(dd, -double(m) * m * td.dist[p][q]);
        }
    }
    // Row and column Grams coincide under the tuple relabeling, and so do
    // their overlaps with the Haar space.
    Eigen::MatrixXd haar_part = a * haar.ldlt().solve(a.transpose());
    Eigen::MatrixXd gram_proj = gram - haar_part;
    Eigen::MatrixXd cross_proj = cross - haar_part;
    gram_proj = 0.5 * (gram_proj + gram_proj.transpose());

    Eigen::MatrixXd b = orthonormalizer(gram_proj);
    r.rank_r = r.rank_c = int(b.cols());
    r.cos_angle = std::min(1.0, top_singular_value(b.transpose() * cross_proj * b));
    r.gap_value = r.cos_angle * r.cos_angle;

    Eigen::MatrixXd b0 = orthonormalizer(gram);
    r.alt_cos_angle = top_singular_value(b0.transpose() * cross_proj * b0);

    r.q_inf = top_singular_value(cross);
    r.bound = r.c_dnt * r.q_inf * r.c_dnt * r.q_inf;
    return r;
}

std::vector<double> site_state(const Permutation &pi, int d) {
    const int t = pi.degree();
    std::size_t dt = 1;
    for (int k = 0; k < t; ++k) {
        dt *= d;
    }
    std::vector<double> out(dt * dt, 0.0);
    const double amp = std::pow(double(d), -0.5 * t);
    std::vector<int> digits(t);
    for (std::size_t i = 0; i < dt; ++i) {
        std::size_t rest = i;
        for (int k = t - 1; k >= 0; --k) {
            digits[k] = int(rest % d);
            rest /= d;
        }
        std::size_t j = 0;
        for (int k = 0; k < t; ++k) {
            j = j * d + digits[pi[k]];
        }
        out[i * dt + j] = amp;
    }
    return out;
}

GapReport subspace_gap_brute(int d, int m, int t) {
    check_lattice(d, m, t);
    const int sites = m * m;
    const double log_dim = 2.0 * t * sites * std::log2(double(d));
    if (log_dim > 20.0 + 1e-9) {
        throw SizeLimitError("subspace_gap_brute: dimension d^(2 t m^2) exceeds 2^20");
    }
    auto td = tuple_data(m, t);
    GapReport r;
    r.d = d;
    r.m = m;
    r.t = t;
    r.method = GapMethod::brute;
    r.c_dnt = c_dnt(d, m, t);

    std::vector<std::vector<double>> local;
    for (const auto &p : td.perms) {
        local.push_back(site_state(p, d));
    }
    auto product_state = [&](const std::vector<int> &tuple, bool rows) {
        std::vector<double> v{1.0};
        for (int s = 0; s < sites; ++s) {
            const auto &site = local[tuple[rows ? s / m : s % m]];
            std::vector<double> next(v.size() * site.size());
            for (std::size_t a = 0; a < v.size(); ++a) {
                if (v[a] == 0) {
                    continue;
                }
                for (std::size_t b = 0; b < site.size(); ++b) {
                    next[a * site.size() + b] = v[a] * site[b];
                }
            }
            v = std::move(next);
        }
        return v;
    };
    std::vector<std::vector<double>> row_vecs;
    std::vector<std::vector<double>> col_vecs;
    for (const auto &tuple : td.all) {
        row_vecs.push_back(product_state(tuple, true));
        col_vecs.push_back(product_state(tuple, false));
    }

    auto dot = [](const std::vector<double> &x, const std::vector<double> &y) {
        CompensatedSum s;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] != 0 && y[i] != 0) {
                s.add(x[i] * y[i]);
            }
        }
        return s.value();
    };

    // Orthonormal basis of W = span(rows, cols) by Gram-Schmidt with one
    // re-orthogonalization pass.
    std::vector<std::vector<double>> basis;
    auto absorb = [&](const std::vector<double> &v) {
        std::vector<double> w = v;
        const double norm0 = std::sqrt(dot(w, w));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                double c = dot(b, w);
                for (std::size_t i = 0; i < w.size(); ++i) {
                    w[i] -= c * b[i];
                }
            }
        }
        double norm = std::sqrt(dot(w, w));
        if (norm > 1e-8 * norm0) {
            for (auto &x : w) {
                x /= norm;
            }
            basis.push_back(std::move(w));
        }
    };
    for (const auto &v : row_vecs) {
        absorb(v);
    }
    for (const auto &v : col_vecs) {
        absorb(v);
    }
    const int k = int(basis.size());
    auto coords = [&](const std::vector<std::vector<double>> &vecs, const std::vector<std::size_t> &which) {
        Eigen::MatrixXd c(k, which.size());
        for (std::size_t j = 0; j < which.size(); ++j) {
            for (int i = 0; i < k; ++i) {
                c(i, j) = dot(basis[i], vecs[which[j]]);
            }
        }
        return c;
    };
    std::vector<std::size_t> all_idx(td.all.size());
    for (std::size_t i = 0; i < all_idx.size(); ++i) {
        all_idx[i] = i;
    }
    int rank_r = 0;
    int rank_c = 0;
    int rank_h = 0;
    Eigen::MatrixXd p_r = span_projector(coords(row_vecs, all_idx), rank_r);
    Eigen::MatrixXd p_c = span_projector(coords(col_vecs, all_idx), rank_c);
    Eigen::MatrixXd p_h = span_projector(coords(row_vecs, td.constant_idx), rank_h);
    r.rank_r = rank_r - rank_h;
    r.rank_c = rank_c - rank_h;
    r.cos_angle = std::min(1.0, top_singular_value(p_c * p_r - p_h));
    r.gap_value = top_singular_value(p_r * p_c * p_r - p_h);

    const auto &nc = td.nonconstant_idx;
    if (!nc.empty()) {
        Eigen::MatrixXd cr = coords(row_vecs, nc);
        Eigen::MatrixXd cc = coords(col_vecs, nc);
        Eigen::MatrixXd q = cr.transpose() * cc;
        r.q_inf = top_singular_value(q);
        Eigen::JacobiSVD<Eigen::MatrixXd> sr(cr, Eigen::ComputeThinU);
        Eigen::JacobiSVD<Eigen::MatrixXd> sc(cc, Eigen::ComputeThinU);
        auto rank_of = [](const auto &svd) {
            int rk = 0;
            for (int i = 0; i < int(svd.singularValues().size()); ++i) {
                rk += svd.singularValues()(i) > 1e-8 * svd.singularValues()(0);
            }
            return rk;
        };
        Eigen::MatrixXd ur = sr.matrixU().leftCols(rank_of(sr));
        Eigen::MatrixXd uc = sc.matrixU().leftCols(rank_of(sc));
        Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(k, k) - p_h;
        r.alt_cos_angle = top_singular_value(ur.transpose() * complement * uc);
    }
    r.bound = r.c_dnt * r.q_inf * r.c_dnt * r.q_inf;
    return r;
}

nlohmann::json GapReport::to_json() const {
    nlohmann::json j;
    j["d"] = d;
    j["m"] = m;
    j["n"] = m * m;
    j["t"] = t;
    j["method"] = method == GapMethod::gram ? "gram" : "brute";
    j["cos_angle"] = cos_angle;
    j["gap_value"] = gap_value;
    j["alt_cos_angle"] = alt_cos_angle;
    j["q_inf"] = q_inf;
    j["c_dnt"] = std::isinf(c_dnt) ? nlohmann::json("inf") : nlohmann::json(c_dnt);
    j["bound"] = std::isinf(bound) ? nlohmann::json("inf") : nlohmann::json(bound);
    j["rank_r"] = rank_r;
    j["rank_c"] = rank_c;
    return j;
}

}  // namespace designlab
