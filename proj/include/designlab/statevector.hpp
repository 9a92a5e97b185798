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

// Dense statevector simulation of random two-qubit-gate circuits.
//
// Qubit q is bit q of the basis index. A gate on (i, j) acts on the local
// index 2*b_i + b_j.

#ifndef DESIGNLAB_STATEVECTOR_HPP
#define DESIGNLAB_STATEVECTOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "designlab/common.hpp"

namespace designlab {

using cplx = std::complex<double>;

inline constexpr int kMaxSimQubits = 14;

/// Haar-random dim x dim unitary: complex Gaussian columns orthonormalized by
/// Gram-Schmidt (equivalently QR with positive real diagonal in R).
Eigen::MatrixXcd haar_unitary(int dim, Rng &rng);

class Statevector {
   public:
    explicit Statevector(int n);

    int n() const {
        return n_;
    }
    std::vector<cplx> &amplitudes() {
        return amps_;
    }
    const std::vector<cplx> &amplitudes() const {
        return amps_;
    }
    void set_basis(uint64_t index);
    void apply(int i, int j, const Eigen::Matrix4cd &u);
    double norm() const;
    /// Sum_x |amp_x|^4.
    double collision() const;

   private:
    int n_;
    std::vector<cplx> amps_;
};

struct GateEvent {
    int i;
    int j;
    Eigen::Matrix4cd u;
};

enum class EnsembleKind { COMPLETE_GRAPH, LATTICE_1D, LATTICE_2D, HAAR_FULL };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::COMPLETE_GRAPH;
    int n = 2;
    int s = 1;  // gates (complete graph), rounds (1D), row depth parameter (2D)
    int c = 1;  // 2D repetitions

    /// Throws std::invalid_argument when the spec is not realizable.
    void validate() const;
    std::string name() const;
};

/// "cg", "lattice1d", "lattice2d", "haar" (and their upper-case kind names).
EnsembleKind parse_ensemble(const std::string &name);
std::string ensemble_name(EnsembleKind kind);

struct CircuitRealization {
    int n = 0;
    std::vector<GateEvent> gates;
    int layers = 0;
    std::optional<Eigen::MatrixXcd> full;  // HAAR_FULL only

    /// C|basis>.
    Statevector run(uint64_t basis = 0) const;
};

/// Gate pairs of one brickwork round on qubits `line`: even layer, odd layer.
std::vector<std::vector<std::pair<int, int>>> brickwork_round(const std::vector<int> &line);

CircuitRealization sample_circuit(const EnsembleSpec &spec, Rng &rng);

/// Collision probability of C|0^n>; throws NumericalIntegrityError on norm drift.
double collision(const CircuitRealization &c);

struct TrialRecord {
    uint64_t trial;
    uint64_t seed;
    double collision;
    double amplitude0;  // |<0|C|0>|^2
};

Estimate mc_expected_collision(const EnsembleSpec &spec, std::size_t trials, uint64_t seed, int threads = 0,
                               std::vector<TrialRecord> *records = nullptr);

/// Complete-graph collision at every depth 0..spec.s from circuit prefixes.
std::vector<Estimate> mc_collision_sweep(const EnsembleSpec &spec, std::size_t trials, uint64_t seed,
                                         int threads = 0);

/// Fraction of circuits with |<0|C|0>|^2 >= theta / 2^n.
Estimate anticoncentration_fraction(const EnsembleSpec &spec, double theta, std::size_t trials, uint64_t seed,
                                    int threads = 0);

struct MonomialEstimate {
    cplx mean;
    double std_error_re = 0;
    double std_error_im = 0;
    bool diagonal = false;
};

/// E[prod_a C_{r_a c_a} prod_a conj(C_{r_{t+a} c_{t+a}})], rows/cols of length 2t.
MonomialEstimate monomial_estimate(const EnsembleSpec &spec, int t, const std::vector<uint64_t> &rows,
                                   const std::vector<uint64_t> &cols, std::size_t trials, uint64_t seed,
                                   int threads = 0);

/// rho_S of a pure state.
Eigen::MatrixXcd reduced_density(const Statevector &psi, const std::vector<int> &subset);

struct ScrambleStats {
    Estimate trace_distance;  // ||rho_S - I/2^|S| ||_1
    Estimate purity;          // Tr rho_S^2
    double max_excess = 0;    // max over samples of ||.||_1^2 - (2^|S| Tr rho^2 - 1)
    std::size_t violations = 0;
};

ScrambleStats scrambling_check(const EnsembleSpec &spec, const std::vector<int> &subset, std::size_t trials,
                               uint64_t seed, int threads = 0);

}  // namespace designlab

#endif  // DESIGNLAB_STATEVECTOR_HPP
