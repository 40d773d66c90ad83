// Copyright 2026 The qbloch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbloch/serialize.hpp"

namespace qbloch {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct CheckRecord {
  std::string name;
  std::string anchor;  // suite the check belongs to, e.g. "prop1"
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  double runtime_ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CheckRecord> checks;

  bool passed() const;
};

/// prop1, prop3, prop7, prop8, theorem1, corollary1, qubit12.
const std::vector<std::string>& suite_names();

/// Runs one named suite, or every suite for "all". Unknown names raise
/// ErrorCode::kInvalidArgument.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

/// Timings are wall-clock and therefore excluded unless requested; without
/// them the report is a pure function of (suite, seed).
Json to_json(const SuiteReport& report, bool include_timings = false);

}  // namespace qbloch
