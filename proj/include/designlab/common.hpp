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

#ifndef DESIGNLAB_COMMON_HPP
#define DESIGNLAB_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace designlab {

/// Raised when an input exceeds a combinatorial or memory guard.
class SizeLimitError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// Raised when a matrix that must be inverted is singular.
class DegeneracyError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a simulation drifts outside its numerical tolerance.
class NumericalIntegrityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent generator for trial `index` under `root_seed`. Trial i is
/// reproducible without running trials 0..i-1.
inline Rng stream(uint64_t root_seed, uint64_t index) {
    uint64_t a = splitmix64(root_seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
    uint64_t b = splitmix64(a + index);
    std::seed_seq seq{uint32_t(a), uint32_t(a >> 32), uint32_t(b), uint32_t(b >> 32)};
    return Rng(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
inline uint64_t uniform_below(Rng &rng, uint64_t n) {
    return std::uniform_int_distribution<uint64_t>(0, n - 1)(rng);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
   public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + carry_;
    }

   private:
    double sum_ = 0;
    double carry_ = 0;
};

/// Sample mean with standard error, computed from stored per-trial values in
/// index order so the result does not depend on worker scheduling.
struct Estimate {
    double mean = 0;
    double std_error = 0;
    std::size_t trials = 0;
};

Estimate estimate_from(std::span<const double> values);

double log_binomial(int n, int k);

/// Number of worker threads: explicit value if > 0, else DESIGNLAB_THREADS,
/// else hardware concurrency.
int resolve_threads(int requested);

/// Runs body(i) for i in [0, count) over `threads` workers using contiguous
/// blocks. Callers write results into index-addressed storage only.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body &&body) {
    threads = std::max(1, std::min<int>(threads, int(count ? count : 1)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::size_t block = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        std::size_t lo = w * block;
        std::size_t hi = std::min(count, lo + block);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) {
                body(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

}  // namespace designlab

#endif  // DESIGNLAB_COMMON_HPP
