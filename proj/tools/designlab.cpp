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

#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "designlab/common.hpp"
#include "designlab/experiments.hpp"

namespace {

const char *describe(const std::string &name) {
    if (name == "coll-mc") return "Monte Carlo expected collision probability (statevector)";
    if (name == "coll-chain") return "exact collision probability from the Pauli-string chain";
    if (name == "coll-bound") return "collision upper bound from sub-chain star norms";
    if (name == "spectral-mix") return "box-norm mixing curve of the accelerated chain";
    if (name == "gap-2d") return "row/column subspace gap on an m x m lattice";
    if (name == "anticonc") return "fraction of circuits with |<0|C|0>|^2 >= theta/2^n";
    if (name == "hitting") return "expected one-step hitting times of the weight chain";
    if (name == "waittime") return "wait times of the coupled accelerated walk";
    if (name == "scramble") return "two-qubit reduced-state distance and purity";
    if (name == "perm-checks") return "Gram eigenvalues, f_t and Weingarten table";
    if (name == "verify") return "run the invariant suite (exit 0 iff all pass)";
    return "";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"designlab: random-circuit moment and Markov-chain laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(DESIGNLAB_VERSION));

    designlab::ExperimentConfig config;
    bool seed_given = false;
    for (const auto &name : designlab::experiment_names()) {
        auto *sub = app.add_subcommand(name, describe(name));
        sub->set_config("--config", "", "key=value file mirroring the flags; flags override it");
        sub->add_option("--n", config.n, "qubits / chain size")->capture_default_str();
        sub->add_option("--d", config.d, "local dimension")->capture_default_str();
        sub->add_option("--t", config.t, "design degree")->capture_default_str();
        sub->add_option("--s", config.s, "depth: gates, rounds or steps (0 = experiment default)")
            ->capture_default_str();
        sub->add_option("--c", config.c, "2D lattice repetitions")->capture_default_str();
        sub->add_option("--m", config.m, "lattice side")->capture_default_str();
        sub->add_option("--l", config.l, "last hitting level (0 = n)")->capture_default_str();
        sub->add_option("--z", config.z, "start weight")->capture_default_str();
        sub->add_option("--tau", config.tau, "Poissonized time")->capture_default_str();
        sub->add_option("--theta", config.theta, "anti-concentration threshold")->capture_default_str();
        sub->add_option("--trials", config.trials, "Monte Carlo trials")->capture_default_str();
        sub->add_option_function<uint64_t>(
            "--seed",
            [&](const uint64_t &v) {
                config.seed = v;
                seed_given = true;
            },
            "root seed (random if omitted)");
        sub->add_option("--threads", config.threads, "worker threads (0 = DESIGNLAB_THREADS or hardware)")
            ->capture_default_str();
        sub->add_option("--ensemble", config.ensemble, "cg, lattice1d, lattice2d or haar")->capture_default_str();
        sub->add_option("--out", config.out, "output directory")->capture_default_str();
        sub->add_option("--format", config.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--level", config.level, "verify level")
            ->check(CLI::IsMember({"fast", "full"}))
            ->capture_default_str();
        sub->callback([&config, name] { config.experiment = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (!seed_given) {
        config.seed = (uint64_t(std::random_device{}()) << 32) ^ std::random_device{}();
        config.seed_generated = true;
    }
    std::cout << "seed=" << config.seed << (config.seed_generated ? " (generated)" : "") << "\n";
    std::cout << "threads=" << designlab::resolve_threads(config.threads) << "\n";

    try {
        designlab::ExperimentResult result;
        auto paths = designlab::run_experiment(config, &result);
        for (const auto &p : paths) {
            std::cout << "wrote " << p << "\n";
        }
        if (config.experiment == "verify") {
            for (const auto &row : result.table.rows) {
                std::cout << row[1].get<std::string>() << "  " << row[0].get<std::string>() << "\n";
            }
            return result.ok ? 0 : 1;
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
