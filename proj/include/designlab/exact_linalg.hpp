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

#ifndef DESIGNLAB_EXACT_LINALG_HPP
#define DESIGNLAB_EXACT_LINALG_HPP

#include <gmpxx.h>

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace designlab {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
   public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    mpq_class &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const mpq_class &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    RationalMatrix operator*(const RationalMatrix &rhs) const;
    bool operator==(const RationalMatrix &rhs) const;

    /// Row vector times matrix.
    std::vector<mpq_class> left_multiply(const std::vector<mpq_class> &row) const;

    bool is_identity() const;
    Eigen::MatrixXd to_double() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpq_class> data_;
};

/// Gauss-Jordan inverse; std::nullopt when singular.
std::optional<RationalMatrix> exact_inverse(const RationalMatrix &m);

mpq_class rational_power(const mpq_class &base, unsigned exponent);

}  // namespace designlab

#endif  // DESIGNLAB_EXACT_LINALG_HPP
