// Copyright 2026-present the acorn-hybrid project
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

#include <string>
#include <vector>

namespace acorn {

inline constexpr const char* kVersion = "0.1.0";

/// Command-line entry point: gen, build, search, baseline, bench, inspect.
/// Returns the process exit status; diagnostics go to stderr.
int
run_cli(int argc, const char* const* argv);

int
run_cli(const std::vector<std::string>& args);

}  // namespace acorn
