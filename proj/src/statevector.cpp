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

#include "designlab/statevector.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace designlab {

namespace {

constexpr double kNormDrift = 1e-8;

bool is_square(int n, int &side) {
    side = int(std::lround(std::sqrt(double(n))));
    return side * side == n;
}

void check_norm(const Statevector &psi) {
    double drift = std::abs(psi.norm() - 1.0);
    if (drift > kNormDrift) {
        throw NumericalIntegrityError("statevector norm drifted by " + std::to_string(drift));
    }
}

template <typename Trial>
Estimate run_trials(std::size_t trials, uint64_t seed, int threads, Trial &&trial) {
    std::vector<double> values(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
        Rng rng = stream(seed, k);
        values[k] = trial(k, rng);
    });
    return estimate_from(values);
}

void apply_layers(CircuitRealization &c, const std::vector<std::vector<std::pair<int, int>>> &layers, Rng &rng) {
    for (const auto &layer : layers) {
        for (auto [i, j] : layer) {
            c.gates.push_back({i, j, haar_unitary(4, rng)});
        }
        ++c.layers;
    }
}

}  // namespace

Eigen::MatrixXcd haar_unitary(int dim, Rng &rng) {
    if (dim < 1 || dim > 64) {
        throw std::invalid_argument("haar_unitary: dimension outside [1, 64]");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd u(dim, dim);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            u(r, c) = cplx(gauss(rng), gauss(rng));
        }
    }
    for (int c = 0; c < dim; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int p = 0; p < c; ++p) {
                cplx proj = u.col(p).dot(u.col(c));
                u.col(c) -= proj * u.col(p);
            }
        }
        u.col(c) /= u.col(c).norm();
    }
    return u;
}

Statevector::Statevector(int n) : n_(n) {
    if (n < 1 || n > kMaxSimQubits) {
        throw SizeLimitError("Statevector: n=" + std::to_string(n) + " outside [1, " + std::to_string(kMaxSimQubits) +
                             "]");
    }
    amps_.assign(std::size_t(1) << n, cplx(0, 0));
    amps_[0] = 1;
}

void Statevector::set_basis(uint64_t index) {
    if (index >= amps_.size()) {
        throw std::invalid_argument("Statevector::set_basis: index out of range");
    }
    std::fill(amps_.begin(), amps_.end(), cplx(0, 0));
    amps_[index] = 1;
}

void Statevector::apply(int i, int j, const Eigen::Matrix4cd &u) {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw std::invalid_argument("Statevector::apply: invalid qubit pair");
    }
    const std::size_t bi = std::size_t(1) << i;
    const std::size_t bj = std::size_t(1) << j;
    const std::size_t idx[4] = {0, bj, bi, bi | bj};
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if (base & (bi | bj)) {
            continue;
        }
        cplx in[4];
        for (int k = 0; k < 4; ++k) {
            in[k] = amps_[base | idx[k]];
        }
        for (int r = 0; r < 4; ++r) {
            amps_[base | idx[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
        }
    }
}

double Statevector::norm() const {
    CompensatedSum s;
    for (const auto &a : amps_) {
        s.add(std::norm(a));
    }
    return std::sqrt(s.value());
}

double Statevector::collision() const {
    CompensatedSum s;
    for (const auto &a : amps_) {
        double p = std::norm(a);
        s.add(p * p);
    }
    return s.value();
}

void EnsembleSpec::validate() const {
    int side = 0;
    switch (kind) {
        case EnsembleKind::COMPLETE_GRAPH:
            if (n < 2 || s < 0) {
                throw std::invalid_argument("COMPLETE_GRAPH needs n >= 2 and s >= 0");
            }
            break;
        case EnsembleKind::LATTICE_1D:
            if (n < 2 || s < 0) {
                throw std::invalid_argument("LATTICE_1D needs n >= 2 and s >= 0");
            }
            break;
        case EnsembleKind::LATTICE_2D:
            if (!is_square(n, side) || side < 2 || s < 0 || c < 0) {
                throw std::invalid_argument("LATTICE_2D needs a square n >= 4 and s, c >= 0");
            }
            break;
        case EnsembleKind::HAAR_FULL:
            if (n < 1 || (1 << std::min(n, 7)) > 64) {
                throw std::invalid_argument("HAAR_FULL needs 1 <= n <= 6");
            }
            break;
    }
    if (n > kMaxSimQubits) {
        throw SizeLimitError("ensemble size n=" + std::to_string(n) + " exceeds " + std::to_string(kMaxSimQubits));
    }
}

std::string ensemble_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::COMPLETE_GRAPH:
            return "cg";
        case EnsembleKind::LATTICE_1D:
            return "lattice1d";
        case EnsembleKind::LATTICE_2D:
            return "lattice2d";
        case EnsembleKind::HAAR_FULL:
            return "haar";
    }
    return "?";
}

std::string EnsembleSpec::name() const {
    return ensemble_name(kind);
}

EnsembleKind parse_ensemble(const std::string &raw) {
    std::string name;
    for (char ch : raw) {
        if (ch != '_' && ch != '-') {
            name.push_back(char(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    if (name == "cg" || name == "completegraph") {
        return EnsembleKind::COMPLETE_GRAPH;
    }
    if (name == "lattice1d" || name == "1d") {
        return EnsembleKind::LATTICE_1D;
    }
    if (name == "lattice2d" || name == "2d") {
        return EnsembleKind::LATTICE_2D;
    }
    if (name == "haar" || name == "haarfull") {
        return EnsembleKind::HAAR_FULL;
    }
    throw std::invalid_argument("unknown ensemble '" + raw + "'");
}

std::vector<std::vector<std::pair<int, int>>> brickwork_round(const std::vector<int> &line) {
    std::vector<std::vector<std::pair<int, int>>> layers(2);
    for (int start = 0; start < 2; ++start) {
        for (std::size_t k = start; k + 1 < line.size(); k += 2) {
            layers[start].emplace_back(line[k], line[k + 1]);
        }
    }
    return layers;
}

CircuitRealization sample_circuit(const EnsembleSpec &spec, Rng &rng) {
    spec.validate();
    CircuitRealization c;
    c.n = spec.n;
    switch (spec.kind) {
        case EnsembleKind::COMPLETE_GRAPH:
            for (int g = 0; g < spec.s; ++g) {
                int i = int(uniform_below(rng, spec.n));
                int j = int(uniform_below(rng, spec.n - 1));
                if (j >= i) {
                    ++j;
                }
                c.gates.push_back({std::min(i, j), std::max(i, j), haar_unitary(4, rng)});
                ++c.layers;
            }
            break;
        case EnsembleKind::LATTICE_1D: {
            std::vector<int> line(spec.n);
            for (int q = 0; q < spec.n; ++q) {
                line[q] = q;
            }
            auto round = brickwork_round(line);
            for (int r = 0; r < spec.s; ++r) {
                apply_layers(c, round, rng);
            }
            break;
        }
        case EnsembleKind::LATTICE_2D: {
            int m = 0;
            is_square(spec.n, m);
            // SampleAllRows(dir): every row (dir 1) or column (dir 2) gets an
            // independent brickwork circuit of depth 2s; the lines run in parallel,
            // so layer k of all lines forms one lattice layer.
            auto sample_all_rows = [&](int dir) {
                std::vector<std::vector<std::pair<int, int>>> round(2);
                for (int a = 0; a < m; ++a) {
                    std::vector<int> line(m);
                    for (int b = 0; b < m; ++b) {
                        line[b] = dir == 1 ? a * m + b : b * m + a;
                    }
                    auto r = brickwork_round(line);
                    for (int l = 0; l < 2; ++l) {
                        round[l].insert(round[l].end(), r[l].begin(), r[l].end());
                    }
                }
                for (int r = 0; r < spec.s; ++r) {
                    apply_layers(c, round, rng);
                }
            };
            for (int rep = 0; rep < spec.c; ++rep) {
                sample_all_rows(1);
                sample_all_rows(2);
            }
            sample_all_rows(1);
            break;
        }
        case EnsembleKind::HAAR_FULL:
            c.full = haar_unitary(1 << spec.n, rng);
            c.layers = 1;
            break;
    }
    return c;
}

Statevector CircuitRealization::run(uint64_t basis) const {
    Statevector psi(n);
    if (full) {
        if (basis >= uint64_t(full->cols())) {
            throw std::invalid_argument("CircuitRealization::run: basis index out of range");
        }
        for (int r = 0; r < full->rows(); ++r) {
            psi.amplitudes()[r] = (*full)(r, Eigen::Index(basis));
        }
        return psi;
    }
    psi.set_basis(basis);
    for (const auto &g : gates) {
        psi.apply(g.i, g.j, g.u);
    }
    return psi;
}

double collision(const CircuitRealization &c) {
    if (c.n > kMaxSimQubits) {
        throw SizeLimitError("collision: n exceeds " + std::to_string(kMaxSimQubits));
    }
    Statevector psi = c.run();
    check_norm(psi);
    return psi.collision();
}

Estimate mc_expected_collision(const EnsembleSpec &spec, std::size_t trials, uint64_t seed, int threads,
                               std::vector<TrialRecord> *records) {
    if (trials < 100) {
        throw std::invalid_argument("mc_expected_collision: need at least 100 trials");
    }
    spec.validate();
    if (records) {
        records->assign(trials, TrialRecord{});
    }
    return run_trials(trials, seed, threads, [&](std::size_t k, Rng &rng) {
        Statevector psi = sample_circuit(spec, rng).run();
        check_norm(psi);
        double coll = psi.collision();
        if (records) {
            (*records)[k] = {k, seed, coll, std::norm(psi.amplitudes()[0])};
        }
        return coll;
    });
}

std::vector<Estimate> mc_collision_sweep(const EnsembleSpec &spec, std::size_t trials, uint64_t seed, int threads) {
    if (spec.kind != EnsembleKind::COMPLETE_GRAPH) {
        throw std::invalid_argument("mc_collision_sweep: prefix sweep needs the complete-graph ensemble");
    }
    spec.validate();
    const int depth = spec.s;
    // values[s * trials + k]: collision of trial k after s gates.
    std::vector<double> values(std::size_t(depth + 1) * trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
        Rng rng = stream(seed, k);
        Statevector psi(spec.n);
        values[k] = 1.0;
        for (int s = 1; s <= depth; ++s) {
            int i = int(uniform_below(rng, spec.n));
            int j = int(uniform_below(rng, spec.n - 1));
            if (j >= i) {
                ++j;
            }
            psi.apply(std::min(i, j), std::max(i, j), haar_unitary(4, rng));
            values[std::size_t(s) * trials + k] = psi.collision();
        }
        check_norm(psi);
    });
    std::vector<Estimate> out;
    for (int s = 0; s <= depth; ++s) {
        out.push_back(estimate_from(std::span<const double>(values.data() + std::size_t(s) * trials, trials)));
    }
    return out;
}

Estimate anticoncentration_fraction(const EnsembleSpec &spec, double theta, std::size_t trials, uint64_t seed,
                                    int threads) {
    if (!(theta > 0)) {
        throw std::invalid_argument("anticoncentration_fraction: theta must be positive");
    }
    spec.validate();
    const double cut = theta * std::ldexp(1.0, -spec.n);
    return run_trials(trials, seed, threads, [&](std::size_t, Rng &rng) {
        Statevector psi = sample_circuit(spec, rng).run();
        check_norm(psi);
        return std::norm(psi.amplitudes()[0]) >= cut ? 1.0 : 0.0;
    });
}

MonomialEstimate monomial_estimate(const EnsembleSpec &spec, int t, const std::vector<uint64_t> &rows,
                                   const std::vector<uint64_t> &cols, std::size_t trials, uint64_t seed,
                                   int threads) {
    if (t < 1 || t > 2) {
        throw std::invalid_argument("monomial_estimate: need 1 <= t <= 2");
    }
    if (spec.n > 8) {
        throw SizeLimitError("monomial_estimate: n exceeds 8");
    }
    if (rows.size() != std::size_t(2 * t) || cols.size() != std::size_t(2 * t)) {
        throw std::invalid_argument("monomial_estimate: need 2t row and column indices");
    }
    const uint64_t dim = uint64_t(1) << spec.n;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        if (rows[a] >= dim || cols[a] >= dim) {
            throw std::invalid_argument("monomial_estimate: index out of range");
        }
    }
    spec.validate();
    std::vector<uint64_t> needed(cols.begin(), cols.end());
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());

    std::vector<double> re(trials);
    std::vector<double> im(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
        Rng rng = stream(seed, k);
        auto circuit = sample_circuit(spec, rng);
        std::vector<Statevector> columns;
        for (uint64_t c : needed) {
            columns.push_back(circuit.run(c));
        }
        auto entry = [&](uint64_t r, uint64_t c) {
            auto pos = std::lower_bound(needed.begin(), needed.end(), c) - needed.begin();
            return columns[pos].amplitudes()[r];
        };
        cplx v = 1;
        for (int a = 0; a < t; ++a) {
            v *= entry(rows[a], cols[a]);
            v *= std::conj(entry(rows[t + a], cols[t + a]));
        }
        re[k] = v.real();
        im[k] = v.imag();
    });
    auto er = estimate_from(re);
    auto ei = estimate_from(im);
    MonomialEstimate out;
    out.mean = cplx(er.mean, ei.mean);
    out.std_error_re = er.std_error;
    out.std_error_im = ei.std_error;
    std::vector<std::pair<uint64_t, uint64_t>> plain;
    std::vector<std::pair<uint64_t, uint64_t>> conj;
    for (int a = 0; a < t; ++a) {
        plain.emplace_back(rows[a], cols[a]);
        conj.emplace_back(rows[t + a], cols[t + a]);
    }
    std::sort(plain.begin(), plain.end());
    std::sort(conj.begin(), conj.end());
    out.diagonal = plain == conj;
    return out;
}

Eigen::MatrixXcd reduced_density(const Statevector &psi, const std::vector<int> &subset) {
    const int n = psi.n();
    std::vector<char> in_s(n, 0);
    for (int q : subset) {
        if (q < 0 || q >= n || in_s[q]) {
            throw std::invalid_argument("reduced_density: invalid subset");
        }
        in_s[q] = 1;
    }
    const int k = int(subset.size());
    const std::size_t ds = std::size_t(1) << k;
    const std::size_t de = std::size_t(1) << (n - k);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(ds, de);
    const auto &amps = psi.amplitudes();
    for (std::size_t x = 0; x < amps.size(); ++x) {
        std::size_t a = 0;
        for (int b = 0; b < k; ++b) {
            a |= ((x >> subset[b]) & 1) << b;
        }
        std::size_t e = 0;
        int pos = 0;
        for (int q = 0; q < n; ++q) {
            if (!in_s[q]) {
                e |= ((x >> q) & 1) << pos++;
            }
        }
        m(a, e) = amps[x];
    }
    return m * m.adjoint();
}

ScrambleStats scrambling_check(const EnsembleSpec &spec, const std::vector<int> &subset, std::size_t trials,
                               uint64_t seed, int threads) {
    spec.validate();
    if (subset.size() > std::size_t(spec.n) || spec.n > 12) {
        throw std::invalid_argument("scrambling_check: need |S| <= n <= 12");
    }
    const double ds = std::ldexp(1.0, int(subset.size()));
    std::vector<double> dist(trials);
    std::vector<double> purity(trials);
    std::vector<double> excess(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
        Rng rng = stream(seed, k);
        Statevector psi = sample_circuit(spec, rng).run();
        check_norm(psi);
        Eigen::MatrixXcd rho = reduced_density(psi, subset);
        Eigen::MatrixXcd diff = rho - Eigen::MatrixXcd::Identity(rho.rows(), rho.cols()) / ds;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(diff, Eigen::EigenvaluesOnly);
        dist[k] = eig.eigenvalues().cwiseAbs().sum();
        purity[k] = rho.cwiseAbs2().sum();
        excess[k] = dist[k] * dist[k] - (ds * purity[k] - 1);
    });
    ScrambleStats out;
    out.trace_distance = estimate_from(dist);
    out.purity = estimate_from(purity);
    out.max_excess = trials ? *std::max_element(excess.begin(), excess.end()) : 0.0;
    for (double e : excess) {
        out.violations += e > 1e-10;
    }
    return out;
}

}  // namespace designlab
