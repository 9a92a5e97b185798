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

#include "designlab/exact_linalg.hpp"

#include <cstdlib>
#include <stdexcept>

#include "designlab/common.hpp"

namespace designlab {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1;
    }
    return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("RationalMatrix: shape mismatch in product");
    }
    RationalMatrix out(rows_, rhs.cols_);
    mpq_class acc;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class &a = (*this)(r, k);
            if (sgn(a) == 0) {
                continue;
            }
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                out(r, c) += a * rhs(k, c);
            }
        }
    }
    return out;
}

bool RationalMatrix::operator==(const RationalMatrix &rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::vector<mpq_class> RationalMatrix::left_multiply(const std::vector<mpq_class> &row) const {
    if (row.size() != rows_) {
        throw std::invalid_argument("RationalMatrix: row vector length mismatch");
    }
    std::vector<mpq_class> out(cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(row[r]) == 0) {
            continue;
        }
        for (std::size_t c = 0; c < cols_; ++c) {
            out[c] += row[r] * (*this)(r, c);
        }
    }
    return out;
}

bool RationalMatrix::is_identity() const {
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if ((*this)(r, c) != (r == c ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(r, c) = (*this)(r, c).get_d();
        }
    }
    return out;
}

std::optional<RationalMatrix> exact_inverse(const RationalMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("exact_inverse: matrix is not square");
    }
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a(pivot, col)) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return std::nullopt;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        mpq_class scale = 1 / a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) *= scale;
            inv(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a(r, col)) == 0) {
                continue;
            }
            mpq_class factor = a(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
                inv(r, c) -= factor * inv(col, c);
            }
        }
    }
    return inv;
}

mpq_class rational_power(const mpq_class &base, unsigned exponent) {
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

Estimate estimate_from(std::span<const double> values) {
    Estimate e;
    e.trials = values.size();
    if (values.empty()) {
        return e;
    }
    CompensatedSum sum;
    for (double v : values) {
        sum.add(v);
    }
    e.mean = sum.value() / double(values.size());
    if (values.size() > 1) {
        CompensatedSum sq;
        for (double v : values) {
            sq.add((v - e.mean) * (v - e.mean));
        }
        double variance = sq.value() / double(values.size() - 1);
        e.std_error = std::sqrt(variance / double(values.size()));
    }
    return e;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -INFINITY;
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("DESIGNLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

}  // namespace designlab
