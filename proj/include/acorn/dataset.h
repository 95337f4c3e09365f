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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "acorn/distance.h"

namespace acorn {

using NodeId = std::uint32_t;

enum class AttributeKind {
    kInteger,
    kDate,      // days since 1970-01-01
    kKeywords,  // small set of dictionary-coded strings
    kText,
};

struct AttributeField {
    std::string name;
    AttributeKind kind;
};

using AttributeSchema = std::vector<AttributeField>;

struct DateValue {
    std::int64_t days;
    bool operator==(const DateValue&) const = default;
};

/// Keyword codes, sorted and unique.
struct KeywordSet {
    std::vector<std::uint32_t> codes;
    bool operator==(const KeywordSet&) const = default;
};

using AttributeValue = std::variant<std::int64_t, DateValue, KeywordSet, std::string>;

/// One entity's structured attributes, positionally matching a schema.
using AttributeTuple = std::vector<AttributeValue>;

AttributeKind
value_kind(const AttributeValue& value);

/// Days since 1970-01-01 for a proleptic Gregorian "YYYY-MM-DD" string.
/// Throws kParseError on malformed input.
std::int64_t
parse_date(const std::string& text);

std::string
format_date(std::int64_t days);

/// Maps keyword strings to dense codes. Shared by every keyword column of a table.
class KeywordDictionary {
public:
    std::uint32_t
    intern(const std::string& word);

    std::optional<std::uint32_t>
    find(const std::string& word) const;

    const std::string&
    word(std::uint32_t code) const {
        return words_.at(code);
    }

    std::size_t
    size() const {
        return words_.size();
    }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::uint32_t> codes_;
};

/// Keyword universes up to this size are evaluated with one machine word per row.
inline constexpr std::size_t kBitsetKeywordLimit = 64;

/// Columnar, schema-checked attribute storage for n rows.
class AttributeTable {
public:
    AttributeTable() = default;
    explicit AttributeTable(AttributeSchema schema);

    /// Appends a row. Throws kSchemaMismatch on arity or kind mismatch.
    void
    append(const AttributeTuple& tuple);

    /// Finalizes bitset columns; call once after the last append.
    void
    seal();

    const AttributeSchema&
    schema() const {
        return schema_;
    }

    std::size_t
    rows() const {
        return rows_;
    }

    std::int64_t
    integer(std::size_t attr, NodeId row) const {
        return columns_[attr].ints[row];
    }

    std::uint64_t
    keyword_mask(std::size_t attr, NodeId row) const {
        return columns_[attr].masks[row];
    }

    std::span<const std::uint32_t>
    keywords(std::size_t attr, NodeId row) const;

    const std::string&
    text(std::size_t attr, NodeId row) const {
        return columns_[attr].texts[row];
    }

    bool
    uses_bitsets(std::size_t attr) const {
        return !columns_[attr].masks.empty() || rows_ == 0;
    }

    AttributeTuple
    tuple(NodeId row) const;

    KeywordDictionary&
    dictionary() {
        return dictionary_;
    }

    const KeywordDictionary&
    dictionary() const {
        return dictionary_;
    }

    /// Builds a sub-table holding the listed rows in order.
    AttributeTable
    select(std::span<const NodeId> rows) const;

private:
    struct Column {
        std::vector<std::int64_t> ints;
        std::vector<std::uint64_t> offsets{0};
        std::vector<std::uint32_t> codes;
        std::vector<std::uint64_t> masks;
        std::vector<std::string> texts;
    };

    AttributeSchema schema_;
    std::vector<Column> columns_;
    KeywordDictionary dictionary_;
    std::size_t rows_ = 0;
};

/// n entities: a d-dimensional float vector plus an attribute tuple each.
/// Vectors and attributes are shared immutable payloads, so several datasets
/// can view the same vectors with different attribute tables.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t dim,
            std::vector<float> vectors,
            AttributeTable attributes,
            Metric metric = Metric::kL2);

    std::size_t
    size() const {
        return n_;
    }

    std::size_t
    dim() const {
        return dim_;
    }

    Metric
    metric() const {
        return metric_;
    }

    const float*
    vector(NodeId i) const {
        return vectors_->data() + static_cast<std::size_t>(i) * dim_;
    }

    std::span<const float>
    vectors() const {
        return {vectors_->data(), vectors_->size()};
    }

    const AttributeTable&
    attributes() const {
        return *attributes_;
    }

    float
    distance(NodeId a, NodeId b) const {
        return rank_distance(metric_, vector(a), vector(b), dim_);
    }

    float
    distance_to(const float* query, NodeId b) const {
        return rank_distance(metric_, query, vector(b), dim_);
    }

    /// Same vectors, different attributes. Row count must match.
    Dataset
    with_attributes(AttributeTable attributes) const;

    /// Copies the listed rows (vectors and attributes) into a new dataset.
    Dataset
    subset(std::span<const NodeId> rows) const;

    /// 64-bit FNV-1a over vector bytes and attribute rows.
    std::uint64_t
    checksum() const;

private:
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    Metric metric_ = Metric::kL2;
    std::shared_ptr<const std::vector<float>> vectors_ =
        std::make_shared<const std::vector<float>>();
    std::shared_ptr<const AttributeTable> attributes_ = std::make_shared<const AttributeTable>();
};

std::uint64_t
fnv1a64(const void* data, std::size_t bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace acorn
