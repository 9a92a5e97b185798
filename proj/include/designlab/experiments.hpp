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

#ifndef DESIGNLAB_EXPERIMENTS_HPP
#define DESIGNLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace designlab {

struct ExperimentConfig {
    std::string experiment;
    uint64_t seed = 0;
    bool seed_generated = false;
    int n = 4;
    int d = 2;
    int t = 2;
    int s = 0;  // 0 means "experiment default"
    int c = 1;
    int m = 2;
    int l = 0;
    int z = 0;
    double tau = 8;
    double theta = 0.5;
    std::size_t trials = 10000;
    int threads = 0;
    std::string ensemble = "cg";
    std::string out = ".";
    std::string format = "csv";
    std::string level = "fast";

    nlohmann::json to_json() const;
};

/// Rows with named columns; cells are numbers or strings.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    void add(std::vector<nlohmann::json> row);
    /// Header row, comma separated, floats with 17 significant digits.
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

struct ExperimentResult {
    Table table;
    nlohmann::json extra = nlohmann::json::object();  // merged into the sidecar
    bool ok = true;                                    // verify: all checks passed
};

const std::vector<std::string> &experiment_names();

/// Computes the experiment without touching the filesystem.
ExperimentResult compute_experiment(const ExperimentConfig &config);

/// compute_experiment plus <out>/<experiment>.csv and the .json sidecar (csv
/// format), or a single <out>/<experiment>.json (json format). Returns the
/// paths written.
std::vector<std::string> run_experiment(const ExperimentConfig &config, ExperimentResult *result = nullptr);

}  // namespace designlab

#endif  // DESIGNLAB_EXPERIMENTS_HPP
