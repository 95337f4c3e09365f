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

#include "acorn/dataset.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>

#include "acorn/error.h"

namespace acorn {

AttributeKind
value_kind(const AttributeValue& value) {
    switch (value.index()) {
        case 0:
            return AttributeKind::kInteger;
        case 1:
            return AttributeKind::kDate;
        case 2:
            return AttributeKind::kKeywords;
        default:
            return AttributeKind::kText;
    }
}

std::int64_t
parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) {
        throw Error(ErrorCode::kParseError, "malformed date '" + text + "'");
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    if (!ymd.ok()) {
        throw Error(ErrorCode::kParseError, "invalid calendar date '" + text + "'");
    }
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

std::string
format_date(std::int64_t days) {
    std::chrono::year_month_day ymd{
        std::chrono::sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::uint32_t
KeywordDictionary::intern(const std::string& word) {
    auto [it, inserted] = codes_.try_emplace(word, static_cast<std::uint32_t>(words_.size()));
    if (inserted) {
        words_.push_back(word);
    }
    return it->second;
}

std::optional<std::uint32_t>
KeywordDictionary::find(const std::string& word) const {
    auto it = codes_.find(word);
    if (it == codes_.end()) {
        return std::nullopt;
    }
    return it->second;
}

AttributeTable::AttributeTable(AttributeSchema schema)
    : schema_(std::move(schema)), columns_(schema_.size()) {
}

void
AttributeTable::append(const AttributeTuple& tuple) {
    if (tuple.size() != schema_.size()) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "tuple arity " + std::to_string(tuple.size()) + " does not match schema arity " +
                        std::to_string(schema_.size()));
    }
    for (std::size_t a = 0; a < tuple.size(); ++a) {
        if (value_kind(tuple[a]) != schema_[a].kind) {
            throw Error(ErrorCode::kSchemaMismatch,
                        "attribute '" + schema_[a].name + "' has the wrong value kind");
        }
    }
    for (std::size_t a = 0; a < tuple.size(); ++a) {
        Column& col = columns_[a];
        switch (schema_[a].kind) {
            case AttributeKind::kInteger:
                col.ints.push_back(std::get<std::int64_t>(tuple[a]));
                break;
            case AttributeKind::kDate:
                col.ints.push_back(std::get<DateValue>(tuple[a]).days);
                break;
            case AttributeKind::kKeywords: {
                std::vector<std::uint32_t> codes = std::get<KeywordSet>(tuple[a]).codes;
                std::sort(codes.begin(), codes.end());
                codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
                col.codes.insert(col.codes.end(), codes.begin(), codes.end());
                col.offsets.push_back(col.codes.size());
                break;
            }
            case AttributeKind::kText:
                col.texts.push_back(std::get<std::string>(tuple[a]));
                break;
        }
    }
    ++rows_;
}

void
AttributeTable::seal() {
    for (std::size_t a = 0; a < schema_.size(); ++a) {
        if (schema_[a].kind != AttributeKind::kKeywords) {
            continue;
        }
        Column& col = columns_[a];
        col.masks.clear();
        bool fits = std::all_of(col.codes.begin(), col.codes.end(),
                                [](std::uint32_t c) { return c < kBitsetKeywordLimit; });
        if (!fits) {
            continue;
        }
        col.masks.resize(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::uint64_t k = col.offsets[r]; k < col.offsets[r + 1]; ++k) {
                col.masks[r] |= std::uint64_t{1} << col.codes[k];
            }
        }
    }
}

std::span<const std::uint32_t>
AttributeTable::keywords(std::size_t attr, NodeId row) const {
    const Column& col = columns_[attr];
    return {col.codes.data() + col.offsets[row], col.offsets[row + 1] - col.offsets[row]};
}

AttributeTuple
AttributeTable::tuple(NodeId row) const {
    AttributeTuple out;
    out.reserve(schema_.size());
    for (std::size_t a = 0; a < schema_.size(); ++a) {
        switch (schema_[a].kind) {
            case AttributeKind::kInteger:
                out.emplace_back(columns_[a].ints[row]);
                break;
            case AttributeKind::kDate:
                out.emplace_back(DateValue{columns_[a].ints[row]});
                break;
            case AttributeKind::kKeywords: {
                auto codes = keywords(a, row);
                out.emplace_back(KeywordSet{{codes.begin(), codes.end()}});
                break;
            }
            case AttributeKind::kText:
                out.emplace_back(columns_[a].texts[row]);
                break;
        }
    }
    return out;
}

AttributeTable
AttributeTable::select(std::span<const NodeId> rows) const {
    AttributeTable out(schema_);
    out.dictionary_ = dictionary_;
    for (NodeId r : rows) {
        out.append(tuple(r));
    }
    out.seal();
    return out;
}

Dataset::Dataset(std::size_t dim, std::vector<float> vectors, AttributeTable attributes, Metric metric)
    : dim_(dim), metric_(metric) {
    if (dim == 0) {
        throw Error(ErrorCode::kDimensionMismatch, "vector dimension must be positive");
    }
    if (vectors.size() % dim != 0) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "vector payload is not a multiple of the dimension");
    }
    n_ = vectors.size() / dim;
    if (attributes.schema().empty() && attributes.rows() == 0) {
        for (std::size_t i = 0; i < n_; ++i) {
            attributes.append({});
        }
    }
    if (attributes.rows() != n_) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "attribute rows (" + std::to_string(attributes.rows()) +
                        ") do not match vector count (" + std::to_string(n_) + ")");
    }
    attributes.seal();
    vectors_ = std::make_shared<const std::vector<float>>(std::move(vectors));
    attributes_ = std::make_shared<const AttributeTable>(std::move(attributes));
}

Dataset
Dataset::with_attributes(AttributeTable attributes) const {
    if (attributes.rows() != n_) {
        throw Error(ErrorCode::kSchemaMismatch, "attribute rows do not match vector count");
    }
    attributes.seal();
    Dataset out = *this;
    out.attributes_ = std::make_shared<const AttributeTable>(std::move(attributes));
    return out;
}

Dataset
Dataset::subset(std::span<const NodeId> rows) const {
    std::vector<float> vecs;
    vecs.reserve(rows.size() * dim_);
    for (NodeId r : rows) {
        vecs.insert(vecs.end(), vector(r), vector(r) + dim_);
    }
    Dataset out;
    out.dim_ = dim_;
    out.n_ = rows.size();
    out.metric_ = metric_;
    out.vectors_ = std::make_shared<const std::vector<float>>(std::move(vecs));
    out.attributes_ = std::make_shared<const AttributeTable>(attributes_->select(rows));
    return out;
}

std::uint64_t
fnv1a64(const void* data, std::size_t bytes, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t
Dataset::checksum() const {
    std::uint64_t h = fnv1a64(vectors_->data(), vectors_->size() * sizeof(float));
    const AttributeTable& table = *attributes_;
    for (std::size_t a = 0; a < table.schema().size(); ++a) {
        for (NodeId r = 0; r < table.rows(); ++r) {
            switch (table.schema()[a].kind) {
                case AttributeKind::kInteger:
                case AttributeKind::kDate: {
                    std::int64_t v = table.integer(a, r);
                    h = fnv1a64(&v, sizeof(v), h);
                    break;
                }
                case AttributeKind::kKeywords: {
                    auto codes = table.keywords(a, r);
                    for (std::uint32_t c : codes) {
                        if (c < table.dictionary().size()) {
                            const std::string& w = table.dictionary().word(c);
                            h = fnv1a64(w.data(), w.size(), h);
                        } else {
                            h = fnv1a64(&c, sizeof(c), h);
                        }
                    }
                    std::uint32_t n = static_cast<std::uint32_t>(codes.size());
                    h = fnv1a64(&n, sizeof(n), h);
                    break;
                }
                case AttributeKind::kText: {
                    const std::string& s = table.text(a, r);
                    h = fnv1a64(s.data(), s.size(), h);
                    break;
                }
            }
        }
    }
    return h;
}

}  // namespace acorn
