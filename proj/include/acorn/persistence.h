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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "acorn/graph.h"
#include "acorn/predicate.h"
#include "acorn/workload.h"

namespace acorn {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

/// Little-endian image: header, node levels, per-level CSR adjacency
/// (u64 offsets, u32 ids), trailing CRC32 of everything before it.
std::vector<std::uint8_t>
serialize_index(const GraphIndex& index);

/// Parses and fully validates an index image. The CRC is checked before any
/// structural invariant. `dataset` is bound when its size and dimension match
/// the header; pass an empty Dataset to load the structure alone. Throws
/// kBadMagic, kBadVersion, kBadChecksum, kTruncated, kInvariantViolation,
/// kDimensionMismatch.
GraphIndex
deserialize_index(std::span<const std::uint8_t> bytes, const Dataset& dataset = {});

void
save_index(const GraphIndex& index, const std::filesystem::path& path);

GraphIndex
load_index(const std::filesystem::path& path, const Dataset& dataset = {});

/// Header fields readable without the dataset (for inspection).
struct IndexHeader {
    std::uint32_t version = 0;
    BuildParams params;
    std::uint64_t n = 0;
    std::uint32_t dim = 0;
    std::uint32_t max_level = 0;
    NodeId entry_point = kNoNode;
};

IndexHeader
read_index_header(std::span<const std::uint8_t> bytes);

/// CRC32 (zlib polynomial) of a byte range.
std::uint32_t
crc32_of(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t>
read_file(const std::filesystem::path& path);

void
write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// fvecs: per vector a little-endian i32 dimension then that many f32.
void
write_fvecs(const std::filesystem::path& path, std::span<const float> vectors, std::size_t dim);

/// Returns the flattened vectors; `dim` receives the common dimension.
std::vector<float>
read_fvecs(const std::filesystem::path& path, std::size_t* dim);

/// Integer variant (ivecs), e.g. for externally supplied ground truth.
std::vector<std::int32_t>
read_ivecs(const std::filesystem::path& path, std::size_t* dim);

/// A dataset on disk is `<stem>.fvecs`, `<stem>.schema.json` and
/// `<stem>.attrs.jsonl` (one JSON array per row).
void
save_dataset(const Dataset& ds, const std::filesystem::path& stem);

Dataset
load_dataset(const std::filesystem::path& stem);

nlohmann::json
tuple_to_json(const AttributeTuple& tuple, const AttributeSchema& schema, const KeywordDictionary& dict);

AttributeTuple
tuple_from_json(const nlohmann::json& row, const AttributeSchema& schema, KeywordDictionary& dict);

/// Workload lines: {"vector_index": i | "vector": [...], "predicate": {...}, "K": k}.
/// Queries are written with inline vectors.
void
save_workload(std::span<const HybridQuery> queries,
              const std::filesystem::path& path,
              const KeywordDictionary* dictionary = nullptr);

/// `vector_index` entries resolve into `pool` (flattened, `dim` wide).
std::vector<HybridQuery>
load_workload(const std::filesystem::path& path,
              std::size_t dim,
              std::span<const float> pool = {},
              const KeywordDictionary* dictionary = nullptr);

/// Binary: u32 query count, u32 K, then K (u32 id, f32 distance) pairs per
/// query; short lists are padded with id 0xFFFFFFFF and +inf.
void
save_ground_truth(const GroundTruth& gt, const std::filesystem::path& path);

GroundTruth
load_ground_truth(const std::filesystem::path& path);

}  // namespace acorn
