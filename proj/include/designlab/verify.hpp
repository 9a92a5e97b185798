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

#ifndef DESIGNLAB_VERIFY_HPP
#define DESIGNLAB_VERIFY_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace designlab {

enum class VerifyLevel { fast, full };

struct CheckResult {
    std::string name;
    std::string anchor;  // property being checked
    bool passed = false;
    bool statistical = false;
    double measured = 0;
    double expected = 0;
    double tolerance = 0;
    std::string note;
};

struct VerificationReport {
    VerifyLevel level = VerifyLevel::fast;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

VerifyLevel parse_level(const std::string &name);

/// Invariant suite of every module. Failures become report entries.
VerificationReport verify_suite(VerifyLevel level, int threads = 0);

}  // namespace designlab

#endif  // DESIGNLAB_VERIFY_HPP
