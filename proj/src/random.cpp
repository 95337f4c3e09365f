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
#include "acorn/random.h"

#include <algorithm>
#include <unordered_set>

namespace acorn {

std::vector<std::uint32_t>
sample_without_replacement(std::uint64_t n, std::uint64_t k, std::mt19937_64& rng) {
    k = std::min(k, n);
    std::vector<std::uint32_t> out;
    out.reserve(k);
    if (k == n) {
        for (std::uint64_t i = 0; i < n; ++i) {
            out.push_back(static_cast<std::uint32_t>(i));
        }
        return out;
    }
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(k * 2);
    for (std::uint64_t j = n - k; j < n; ++j) {
        std::uint64_t t = uniform_below(rng, j + 1);
        if (!chosen.insert(t).second) {
            chosen.insert(j);
            out.push_back(static_cast<std::uint32_t>(j));
        } else {
            out.push_back(static_cast<std::uint32_t>(t));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace acorn
