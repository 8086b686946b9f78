// Copyright 2026 The gsic-detect Authors
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

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gsic {

/// One diagnostic statistic: the worst observed deviation for a named
/// condition and whether it stayed within tolerance.
struct Check {
  std::string name;
  double max_deviation = 0.0;
  bool passed = true;
};

/// Outcome of a diagnostic validation pass. Never throws; callers decide.
struct ValidationOutcome {
  std::vector<Check> checks;
  double tolerance = 0.0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed; });
  }

  std::optional<Check> find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    return std::nullopt;
  }

  double deviation(std::string_view name) const {
    auto c = find(name);
    return c ? c->max_deviation : 0.0;
  }

  void add(std::string name, double deviation) {
    checks.push_back({std::move(name), deviation, deviation <= tolerance});
  }

  std::string summary() const {
    std::string out;
    for (const auto& c : checks) {
      if (!out.empty()) out += ", ";
      out += c.name + "=" + std::to_string(c.max_deviation) +
             (c.passed ? "" : " (FAIL)");
    }
    return out;
  }
};

}  // namespace gsic
