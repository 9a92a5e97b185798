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

#include "designlab/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "designlab/design_gap.hpp"
#include "designlab/pauli_chain.hpp"
#include "designlab/perm_algebra.hpp"
#include "designlab/spectral_chain.hpp"
#include "designlab/statevector.hpp"
#include "designlab/verify.hpp"

namespace designlab {

namespace {

using nlohmann::json;

std::string format_cell(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        std::ostringstream out;
        out << std::setprecision(17) << v.get<double>();
        return out.str();
    }
    return v.dump();
}

int depth_or(const ExperimentConfig &c, int fallback) {
    return c.s > 0 ? c.s : fallback;
}

EnsembleSpec ensemble_of(const ExperimentConfig &c, int default_s) {
    EnsembleSpec spec;
    spec.kind = parse_ensemble(c.ensemble);
    spec.n = c.n;
    spec.s = depth_or(c, default_s);
    spec.c = c.c;
    spec.validate();
    return spec;
}

ExperimentResult coll_mc(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"s", "mean", "stderr"};
    auto spec = ensemble_of(c, 30);
    if (spec.kind == EnsembleKind::COMPLETE_GRAPH) {
        auto sweep = mc_collision_sweep(spec, c.trials, c.seed, c.threads);
        for (int s = 1; s <= spec.s; ++s) {
            r.table.add({s, sweep[s].mean, sweep[s].std_error});
        }
    } else {
        auto e = mc_expected_collision(spec, c.trials, c.seed, c.threads);
        r.table.add({spec.s, e.mean, e.std_error});
    }
    r.extra["haar_value"] = 2.0 / (std::ldexp(1.0, c.n) + 1);
    return r;
}

ExperimentResult coll_chain(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"s", "coll_exact", "lower_bound"};
    const int depth = depth_or(c, 50);
    auto series = coll_exact_chain_series(c.n, depth);
    for (int s = 0; s <= depth; ++s) {
        r.table.add({s, series[s], coll_lower_bound(c.n, s)});
    }
    return r;
}

ExperimentResult coll_bound(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"s", "upper_bound", "coll_exact", "scaled_bound"};
    const double ln = std::log(double(c.n));
    const int depth = depth_or(c, int(std::ceil(c.n * ln * ln)));
    const int first = int(std::floor(c.n * std::log(2.0 * c.n) / 2)) + 1;
    std::vector<double> series;
    if (c.n <= kMaxExactChainQubits) {
        series = coll_exact_chain_series(c.n, depth);
    }
    for (int s = first; s <= depth; ++s) {
        double b = coll_upper_bound(c.n, s);
        json exact_cell = series.empty() ? json("nan") : json(series[s]);
        r.table.add({s, b, exact_cell, b * std::ldexp(1.0, c.n)});
    }
    r.extra["target_scaled"] = 29;
    return r;
}

ExperimentResult spectral_mix(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"t", "box_norm", "inner_product", "spectral_bound", "threshold"};
    const int64_t depth = c.s > 0 ? c.s : mixing_depth(c.n);
    std::vector<int64_t> ts;
    for (int64_t t = 0; t <= depth; ++t) {
        ts.push_back(t);
    }
    for (const auto &b : box_mixing_curve(c.n, ts)) {
        r.table.add({b.t, b.weighted_sum, b.inner_product, b.spectral_bound, b.threshold});
    }
    r.extra["mixing_depth"] = mixing_depth(c.n);
    return r;
}

ExperimentResult gap_2d(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"method", "cos_angle", "gap_value", "alt_cos_angle", "q_inf", "c_dnt", "bound"};
    std::vector<GapReport> reports{subspace_gap_gram(c.d, c.m, c.t)};
    try {
        reports.push_back(subspace_gap_brute(c.d, c.m, c.t));
    } catch (const SizeLimitError &e) {
        r.extra["brute"] = std::string("skipped: ") + e.what();
    }
    json list = json::array();
    for (const auto &g : reports) {
        auto j = g.to_json();
        r.table.add({j["method"], g.cos_angle, g.gap_value, g.alt_cos_angle, g.q_inf, j["c_dnt"], j["bound"]});
        list.push_back(j);
    }
    auto q = qinf_and_bounds(c.d, c.m, c.t);
    r.extra["reports"] = list;
    r.extra["q_bounds"] = {{"q_inf", q.q_inf}, {"perron_bound", q.perron_bound}, {"row_bound", q.row_bound}};
    return r;
}

ExperimentResult anticonc(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"theta", "fraction", "stderr"};
    auto spec = ensemble_of(c, 80);
    auto e = anticoncentration_fraction(spec, c.theta, c.trials, c.seed, c.threads);
    r.table.add({c.theta, e.mean, e.std_error});
    return r;
}

ExperimentResult hitting(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"l", "expected_time", "ratio_form", "binomial_form", "el_bound", "simplified_bound",
                       "cumulative"};
    const int last = c.l > 0 ? c.l : c.n;
    double cumulative = 0;
    for (int l = 1; l <= last; ++l) {
        auto h = hitting_time(c.n, l);
        cumulative += h.recurrence;
        r.table.add({l, h.recurrence, h.ratio_form, h.binomial_form, h.el_bound, h.simplified_bound, cumulative});
    }
    const int L = int(std::ceil(0.75 * c.n)) - 1;
    if (L >= 1) {
        r.extra["ratio_to_n_ln_n"] = cumulative_hitting_time(c.n, L) / (c.n * std::log(double(c.n)));
        r.extra["target_ratio"] = 5.0 / 3.0;
    }
    return r;
}

ExperimentResult waittime(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"trial", "t_left", "t_right", "x_time", "y_final"};
    const int steps = depth_or(c, 10 * c.n);
    const int x0 = c.z > 0 ? c.z : 1;
    std::vector<CoupledTrace> traces(c.trials);
    parallel_for(c.trials, resolve_threads(c.threads), [&](std::size_t k) {
        Rng rng = stream(c.seed, k);
        auto tr = coupled_walk(c.n, x0, steps, rng);
        tr.x_path.clear();
        traces[k] = std::move(tr);
    });
    for (std::size_t k = 0; k < traces.size(); ++k) {
        const auto &tr = traces[k];
        r.table.add({k, tr.t_left, tr.t_right, tr.x_time, tr.y_path.back()});
    }
    r.extra["poissonized_mean"] = poissonized_mean(c.n, x0, c.tau);
    return r;
}

ExperimentResult scramble(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"subset_size", "trace_distance", "trace_distance_stderr", "purity", "max_excess",
                       "violations", "low_weight_fraction"};
    auto spec = ensemble_of(c, 120);
    std::vector<int> subset;
    for (int q = 0; q < std::min(2, c.n); ++q) {
        subset.push_back(q);
    }
    auto s = scrambling_check(spec, subset, c.trials, c.seed, c.threads);
    auto w = scramble_weight_stats(c.n, spec.s, 1.0 / 3.0, c.trials, c.seed ^ 0x5bd1e995ULL, c.threads);
    r.table.add({int(subset.size()), s.trace_distance.mean, s.trace_distance.std_error, s.purity.mean, s.max_excess,
                 s.violations, w.mean});
    return r;
}

ExperimentResult perm_checks(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"t", "d", "m", "lambda_min", "lambda_bound", "f_t", "f_t_bound"};
    for (int t = 1; t <= std::min(c.t, 6); ++t) {
        for (int m = 1; m <= c.m; ++m) {
            auto g = gram_matrix(t, m, c.d);
            double alpha = std::max(2.0 * t * t, 2.0);
            r.table.add({t, c.d, m, g.min_eigenvalue(), g.min_eigenvalue_lower_bound(), f_t(t, alpha),
                         1 + 2.0 * t * t / alpha});
        }
    }
    try {
        r.extra["weingarten"] = weingarten(std::min(c.t, 5), c.d).to_json();
    } catch (const DegeneracyError &e) {
        r.extra["weingarten"] = std::string("singular: ") + e.what();
    }
    return r;
}

ExperimentResult verify(const ExperimentConfig &c) {
    ExperimentResult r;
    r.table.columns = {"name", "status", "measured", "expected", "tolerance"};
    auto report = verify_suite(parse_level(c.level), c.threads);
    for (const auto &k : report.checks) {
        r.table.add({k.name, k.passed ? "pass" : "fail", k.measured, k.expected, k.tolerance});
    }
    r.extra["report"] = report.to_json();
    r.ok = report.all_passed();
    return r;
}

using Handler = ExperimentResult (*)(const ExperimentConfig &);

const std::map<std::string, Handler> &handlers() {
    static const std::map<std::string, Handler> table{
        {"coll-mc", coll_mc},         {"coll-chain", coll_chain}, {"coll-bound", coll_bound},
        {"spectral-mix", spectral_mix}, {"gap-2d", gap_2d},       {"anticonc", anticonc},
        {"hitting", hitting},         {"waittime", waittime},     {"scramble", scramble},
        {"perm-checks", perm_checks}, {"verify", verify},
    };
    return table;
}

}  // namespace

json ExperimentConfig::to_json() const {
    return {{"experiment", experiment}, {"seed", seed},         {"seed_generated", seed_generated},
            {"n", n},                   {"d", d},               {"t", t},
            {"s", s},                   {"c", c},               {"m", m},
            {"l", l},                   {"z", z},               {"tau", tau},
            {"theta", theta},           {"trials", trials},     {"threads", threads},
            {"ensemble", ensemble},     {"out", out},           {"format", format},
            {"level", level}};
}

void Table::add(std::vector<json> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("Table::add: row width differs from header");
    }
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_cell(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

json Table::to_json() const {
    json out = json::array();
    for (const auto &row : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) {
            obj[columns[i]] = row[i];
        }
        out.push_back(obj);
    }
    return out;
}

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &[name, _] : handlers()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

ExperimentResult compute_experiment(const ExperimentConfig &config) {
    auto it = handlers().find(config.experiment);
    if (it == handlers().end()) {
        throw std::invalid_argument("unknown experiment '" + config.experiment + "'");
    }
    return it->second(config);
}

std::vector<std::string> run_experiment(const ExperimentConfig &config, ExperimentResult *result) {
    if (config.format != "csv" && config.format != "json") {
        throw std::invalid_argument("format must be csv or json");
    }
    ExperimentResult r = compute_experiment(config);
    namespace fs = std::filesystem;
    fs::path dir(config.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    json sidecar = {{"config", config.to_json()}, {"version", DESIGNLAB_VERSION}, {"columns", r.table.columns},
                    {"rows", r.table.rows.size()}};
    for (auto &[key, value] : r.extra.items()) {
        sidecar[key] = value;
    }
    std::vector<std::string> written;
    auto write = [&](const fs::path &path, const std::string &body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out << body;
        if (!out) {
            throw std::runtime_error("write failed for " + path.string());
        }
        written.push_back(path.string());
    };
    if (config.format == "csv") {
        write(dir / (config.experiment + ".csv"), r.table.to_csv());
        write(dir / (config.experiment + ".json"), sidecar.dump(2) + "\n");
    } else {
        sidecar["data"] = r.table.to_json();
        write(dir / (config.experiment + ".json"), sidecar.dump(2) + "\n");
    }
    if (result) {
        *result = std::move(r);
    }
    return written;
}

}  // namespace designlab
