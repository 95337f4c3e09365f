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
#include "acorn/persistence.h"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "acorn/error.h"

namespace acorn {

namespace {

constexpr char kMagic[4] = {'A', 'C', 'R', 'N'};

class Writer {
public:
    template <class T>
    void
    put(T value) {
        static_assert(std::is_integral_v<T> || std::is_floating_point_v<T>);
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, &value, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(raw, raw + sizeof(T));
        }
        bytes_.insert(bytes_.end(), raw, raw + sizeof(T));
    }

    void
    raw(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        bytes_.insert(bytes_.end(), p, p + n);
    }

    std::vector<std::uint8_t>&
    bytes() {
        return bytes_;
    }

private:
    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {
    }

    template <class T>
    T
    get() {
        need(sizeof(T));
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(raw, raw + sizeof(T));
        }
        pos_ += sizeof(T);
        T value;
        std::memcpy(&value, raw, sizeof(T));
        return value;
    }

    void
    need(std::size_t n) const {
        if (bytes_.size() - pos_ < n) {
            throw Error(ErrorCode::kTruncated, "unexpected end of data at byte " + std::to_string(pos_));
        }
    }

    std::size_t
    remaining() const {
        return bytes_.size() - pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

constexpr std::size_t kHeaderBytes = 68;

[[noreturn]] void
violation(const std::string& name, const std::string& msg) {
    throw Error(ErrorCode::kInvariantViolation, name + ": " + msg, name);
}

IndexHeader
parse_header(Reader& r) {
    IndexHeader h;
    h.version = r.get<std::uint32_t>();
    h.params.variant = static_cast<Variant>(r.get<std::uint32_t>());
    h.params.M = r.get<std::uint32_t>();
    h.params.efc = r.get<std::uint32_t>();
    h.params.gamma = r.get<std::uint32_t>();
    h.params.m_beta = r.get<std::uint32_t>();
    h.params.seed = r.get<std::uint64_t>();
    h.n = r.get<std::uint64_t>();
    h.dim = r.get<std::uint32_t>();
    h.max_level = r.get<std::uint32_t>();
    h.entry_point = r.get<std::uint32_t>();
    h.params.prune = static_cast<PruneStrategy>(r.get<std::uint32_t>());
    h.params.compressed_levels = r.get<std::uint32_t>();
    h.params.label_attr = r.get<std::uint32_t>();
    return h;
}

void
check_magic_version(std::span<const std::uint8_t> bytes) {
    const std::size_t seen = std::min<std::size_t>(bytes.size(), 4);
    if (seen > 0 && std::memcmp(bytes.data(), kMagic, seen) != 0) {
        throw Error(ErrorCode::kBadMagic, "not an index file");
    }
    if (seen < 4) {
        throw Error(ErrorCode::kTruncated, "index file ends inside its magic number");
    }
    if (bytes.size() < 8) {
        throw Error(ErrorCode::kTruncated, "index header is incomplete");
    }
    Reader r(bytes.subspan(4, 4));
    std::uint32_t version = r.get<std::uint32_t>();
    if (version != kIndexFormatVersion) {
        throw Error(ErrorCode::kBadVersion, "index format version " + std::to_string(version) +
                                                " (expected " +
                                                std::to_string(kIndexFormatVersion) + ")");
    }
}

}  // namespace

std::uint32_t
crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    const std::size_t chunk = 1u << 30;
    for (std::size_t off = 0; off < bytes.size(); off += chunk) {
        std::size_t len = std::min(chunk, bytes.size() - off);
        crc = crc32(crc, bytes.data() + off, static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t>
serialize_index(const GraphIndex& index) {
    const BuildParams& p = index.params();
    Writer w;
    w.raw(kMagic, 4);
    w.put<std::uint32_t>(kIndexFormatVersion);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(p.variant));
    w.put<std::uint32_t>(p.M);
    w.put<std::uint32_t>(p.efc);
    w.put<std::uint32_t>(p.gamma);
    w.put<std::uint32_t>(p.m_beta);
    w.put<std::uint64_t>(p.seed);
    w.put<std::uint64_t>(index.size());
    w.put<std::uint32_t>(static_cast<std::uint32_t>(index.dataset().dim()));
    w.put<std::uint32_t>(index.max_level());
    w.put<std::uint32_t>(index.entry_point());
    w.put<std::uint32_t>(static_cast<std::uint32_t>(p.prune));
    w.put<std::uint32_t>(p.compressed_levels);
    w.put<std::uint32_t>(p.label_attr);
    for (std::uint32_t level : index.node_levels()) {
        w.put<std::uint32_t>(level);
    }
    for (std::uint32_t l = 0; l < index.num_levels() && index.size() > 0; ++l) {
        std::uint64_t offset = 0;
        w.put<std::uint64_t>(offset);
        for (NodeId v : index.level_nodes(l)) {
            offset += index.list(v, l).size();
            w.put<std::uint64_t>(offset);
        }
        for (NodeId v : index.level_nodes(l)) {
            for (NodeId u : index.list(v, l)) {
                w.put<std::uint32_t>(u);
            }
        }
    }
    std::uint32_t crc = crc32_of(w.bytes());
    w.put<std::uint32_t>(crc);
    return std::move(w.bytes());
}

IndexHeader
read_index_header(std::span<const std::uint8_t> bytes) {
    check_magic_version(bytes);
    if (bytes.size() < kHeaderBytes) {
        throw Error(ErrorCode::kTruncated, "index header is incomplete");
    }
    Reader r(bytes.subspan(4));
    return parse_header(r);
}

GraphIndex
deserialize_index(std::span<const std::uint8_t> bytes, const Dataset& dataset) {
    check_magic_version(bytes);
    if (bytes.size() < kHeaderBytes + 4) {
        throw Error(ErrorCode::kTruncated, "index file is shorter than its header");
    }
    auto payload = bytes.first(bytes.size() - 4);
    Reader tail(bytes.last(4));
    if (crc32_of(payload) != tail.get<std::uint32_t>()) {
        throw Error(ErrorCode::kBadChecksum, "index checksum mismatch");
    }
    Reader r(payload.subspan(4));
    IndexHeader h = parse_header(r);
    if (static_cast<std::uint32_t>(h.params.variant) > 2) {
        violation("variant", "unknown variant tag " +
                                 std::to_string(static_cast<std::uint32_t>(h.params.variant)));
    }
    if (static_cast<std::uint32_t>(h.params.prune) > 3) {
        violation("prune strategy", "unknown prune strategy tag");
    }
    try {
        h.params.validate();
    } catch (const Error& e) {
        violation("build params", e.what());
    }
    if (h.n >= kNoNode) {
        violation("node count", "too many nodes");
    }
    if (dataset.dim() != 0 && (dataset.size() != h.n || dataset.dim() != h.dim)) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "index expects " + std::to_string(h.n) + " x " + std::to_string(h.dim) +
                        " vectors, dataset has " + std::to_string(dataset.size()) + " x " +
                        std::to_string(dataset.dim()));
    }
    r.need(h.n * 4);
    std::vector<std::uint32_t> levels(h.n);
    std::uint32_t top = 0;
    for (auto& l : levels) {
        l = r.get<std::uint32_t>();
        if (l > 64) {
            violation("node level", "level " + std::to_string(l) + " is out of range");
        }
        top = std::max(top, l);
    }
    if (h.n > 0 && top != h.max_level) {
        violation("max level", "header max level " + std::to_string(h.max_level) +
                                   " disagrees with node levels (" + std::to_string(top) + ")");
    }
    GraphIndex index(dataset.dim() != 0 ? dataset : Dataset{}, h.params, std::move(levels));
    if (h.n == 0) {
        if (r.remaining() != 0) {
            violation("trailing bytes", "unexpected data after header");
        }
        return index;
    }
    if (h.entry_point >= h.n || index.node_level(h.entry_point) != h.max_level) {
        violation("entry point", "entry point " + std::to_string(h.entry_point) +
                                     " is not on the top level");
    }
    index.set_entry_point(h.entry_point);
    std::vector<std::uint64_t> offsets;
    std::vector<NodeId> ids;
    for (std::uint32_t l = 0; l <= h.max_level; ++l) {
        auto nodes = index.level_nodes(l);
        r.need((nodes.size() + 1) * 8);
        offsets.resize(nodes.size() + 1);
        for (auto& o : offsets) {
            o = r.get<std::uint64_t>();
        }
        if (offsets.front() != 0) {
            violation("offsets", "level " + std::to_string(l) + " offsets do not start at 0");
        }
        for (std::size_t i = 1; i < offsets.size(); ++i) {
            if (offsets[i] < offsets[i - 1]) {
                violation("offsets", "level " + std::to_string(l) + " offsets decrease");
            }
        }
        const std::uint64_t total = offsets.back();
        if (total > r.remaining() / 4) {
            throw Error(ErrorCode::kTruncated, "adjacency of level " + std::to_string(l) +
                                                   " runs past the end of the file");
        }
        const std::uint32_t cap = index.level_cap(l);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            std::uint64_t len = offsets[i + 1] - offsets[i];
            if (len > cap) {
                violation("degree cap", "node " + std::to_string(nodes[i]) + " has " +
                                            std::to_string(len) + " neighbors on level " +
                                            std::to_string(l) + ", cap " + std::to_string(cap));
            }
            ids.resize(len);
            for (auto& id : ids) {
                id = r.get<std::uint32_t>();
            }
            index.assign(nodes[i], l, ids);
        }
    }
    if (r.remaining() != 0) {
        violation("trailing bytes", std::to_string(r.remaining()) + " unexpected bytes");
    }
    index.validate();
    index.compact();
    return index;
}

std::vector<std::uint8_t>
read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kIoError, "cannot open " + path.string());
    }
    in.seekg(0, std::ios::end);
    std::streamoff size = in.tellg();
    in.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), size)) {
        throw Error(ErrorCode::kIoError, "cannot read " + path.string());
    }
    return bytes;
}

void
write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    }
}

void
save_index(const GraphIndex& index, const std::filesystem::path& path) {
    write_file(path, serialize_index(index));
}

GraphIndex
load_index(const std::filesystem::path& path, const Dataset& dataset) {
    auto bytes = read_file(path);
    return deserialize_index(bytes, dataset);
}

namespace {

template <class T>
std::vector<T>
read_vecs(const std::filesystem::path& path, std::size_t* dim) {
    auto bytes = read_file(path);
    Reader r(bytes);
    std::vector<T> out;
    std::size_t d = 0;
    while (r.remaining() > 0) {
        std::int32_t rd = r.get<std::int32_t>();
        if (rd <= 0) {
            throw Error(ErrorCode::kParseError, path.string() + ": non-positive vector dimension");
        }
        if (d == 0) {
            d = static_cast<std::size_t>(rd);
            out.reserve(bytes.size() / (4 * (d + 1)) * d);
        } else if (static_cast<std::size_t>(rd) != d) {
            throw Error(ErrorCode::kDimensionMismatch, path.string() + ": mixed vector dimensions");
        }
        r.need(d * sizeof(T));
        for (std::size_t j = 0; j < d; ++j) {
            out.push_back(r.get<T>());
        }
    }
    if (dim != nullptr) {
        *dim = d;
    }
    return out;
}

const char*
kind_label(AttributeKind k) {
    switch (k) {
        case AttributeKind::kInteger:
            return "integer";
        case AttributeKind::kDate:
            return "date";
        case AttributeKind::kKeywords:
            return "keywords";
        case AttributeKind::kText:
            return "text";
    }
    return "?";
}

AttributeKind
kind_from_label(const std::string& s) {
    for (AttributeKind k : {AttributeKind::kInteger, AttributeKind::kDate, AttributeKind::kKeywords,
                            AttributeKind::kText}) {
        if (s == kind_label(k)) {
            return k;
        }
    }
    throw Error(ErrorCode::kParseError, "unknown attribute kind '" + s + "'");
}

std::filesystem::path
with_suffix(const std::filesystem::path& stem, const char* suffix) {
    return std::filesystem::path(stem.string() + suffix);
}

}  // namespace

void
write_fvecs(const std::filesystem::path& path, std::span<const float> vectors, std::size_t dim) {
    if (dim == 0 || vectors.size() % dim != 0) {
        throw Error(ErrorCode::kDimensionMismatch, "vector payload is not a multiple of dim");
    }
    Writer w;
    for (std::size_t i = 0; i < vectors.size(); i += dim) {
        w.put<std::int32_t>(static_cast<std::int32_t>(dim));
        for (std::size_t j = 0; j < dim; ++j) {
            w.put<float>(vectors[i + j]);
        }
    }
    write_file(path, w.bytes());
}

std::vector<float>
read_fvecs(const std::filesystem::path& path, std::size_t* dim) {
    return read_vecs<float>(path, dim);
}

std::vector<std::int32_t>
read_ivecs(const std::filesystem::path& path, std::size_t* dim) {
    return read_vecs<std::int32_t>(path, dim);
}

nlohmann::json
tuple_to_json(const AttributeTuple& tuple, const AttributeSchema& schema, const KeywordDictionary& dict) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t a = 0; a < tuple.size(); ++a) {
        const AttributeValue& v = tuple[a];
        switch (schema[a].kind) {
            case AttributeKind::kInteger:
                row.push_back(std::get<std::int64_t>(v));
                break;
            case AttributeKind::kDate:
                row.push_back(format_date(std::get<DateValue>(v).days));
                break;
            case AttributeKind::kKeywords: {
                nlohmann::json words = nlohmann::json::array();
                for (std::uint32_t c : std::get<KeywordSet>(v).codes) {
                    words.push_back(dict.word(c));
                }
                row.push_back(words);
                break;
            }
            case AttributeKind::kText:
                row.push_back(std::get<std::string>(v));
                break;
        }
    }
    return row;
}

AttributeTuple
tuple_from_json(const nlohmann::json& row, const AttributeSchema& schema, KeywordDictionary& dict) {
    if (!row.is_array() || row.size() != schema.size()) {
        throw Error(ErrorCode::kSchemaMismatch, "attribute row does not match schema arity");
    }
    AttributeTuple t;
    for (std::size_t a = 0; a < schema.size(); ++a) {
        const auto& v = row[a];
        switch (schema[a].kind) {
            case AttributeKind::kInteger:
                if (!v.is_number_integer()) {
                    throw Error(ErrorCode::kSchemaMismatch, "'" + schema[a].name + "' must be an integer");
                }
                t.emplace_back(v.get<std::int64_t>());
                break;
            case AttributeKind::kDate:
                if (v.is_number_integer()) {
                    t.emplace_back(DateValue{v.get<std::int64_t>()});
                } else if (v.is_string()) {
                    t.emplace_back(DateValue{parse_date(v.get<std::string>())});
                } else {
                    throw Error(ErrorCode::kSchemaMismatch, "'" + schema[a].name + "' must be a date");
                }
                break;
            case AttributeKind::kKeywords: {
                if (!v.is_array()) {
                    throw Error(ErrorCode::kSchemaMismatch,
                                "'" + schema[a].name + "' must be an array of keywords");
                }
                KeywordSet set;
                for (const auto& word : v) {
                    if (!word.is_string()) {
                        throw Error(ErrorCode::kSchemaMismatch, "keywords must be strings");
                    }
                    set.codes.push_back(dict.intern(word.get<std::string>()));
                }
                std::sort(set.codes.begin(), set.codes.end());
                set.codes.erase(std::unique(set.codes.begin(), set.codes.end()), set.codes.end());
                t.emplace_back(std::move(set));
                break;
            }
            case AttributeKind::kText:
                if (!v.is_string()) {
                    throw Error(ErrorCode::kSchemaMismatch, "'" + schema[a].name + "' must be text");
                }
                t.emplace_back(v.get<std::string>());
                break;
        }
    }
    return t;
}

void
save_dataset(const Dataset& ds, const std::filesystem::path& stem) {
    write_fvecs(with_suffix(stem, ".fvecs"), ds.vectors(), ds.dim());
    const AttributeTable& table = ds.attributes();
    nlohmann::json schema = {{"metric", ds.metric() == Metric::kL2 ? "l2" : "ip"},
                             {"fields", nlohmann::json::array()}};
    for (const AttributeField& f : table.schema()) {
        schema["fields"].push_back({{"name", f.name}, {"kind", kind_label(f.kind)}});
    }
    std::string text = schema.dump(2) + "\n";
    write_file(with_suffix(stem, ".schema.json"),
               {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    std::string rows;
    for (NodeId i = 0; i < ds.size(); ++i) {
        rows += tuple_to_json(table.tuple(i), table.schema(), table.dictionary()).dump();
        rows += '\n';
    }
    write_file(with_suffix(stem, ".attrs.jsonl"),
               {reinterpret_cast<const std::uint8_t*>(rows.data()), rows.size()});
}

Dataset
load_dataset(const std::filesystem::path& stem) {
    std::size_t dim = 0;
    std::vector<float> vectors = read_fvecs(with_suffix(stem, ".fvecs"), &dim);
    if (vectors.empty()) {
        throw Error(ErrorCode::kEmptyDataset, with_suffix(stem, ".fvecs").string() + " is empty");
    }
    auto schema_bytes = read_file(with_suffix(stem, ".schema.json"));
    nlohmann::json schema_json;
    try {
        schema_json = nlohmann::json::parse(schema_bytes.begin(), schema_bytes.end());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParseError, with_suffix(stem, ".schema.json").string() + ": " + e.what());
    }
    AttributeSchema schema;
    for (const auto& f : schema_json.value("fields", nlohmann::json::array())) {
        schema.push_back({f.at("name").get<std::string>(), kind_from_label(f.at("kind").get<std::string>())});
    }
    Metric metric = schema_json.value("metric", "l2") == "ip" ? Metric::kInnerProduct : Metric::kL2;
    AttributeTable table(schema);
    std::ifstream in(with_suffix(stem, ".attrs.jsonl"));
    if (!in) {
        throw Error(ErrorCode::kIoError, "cannot open " + with_suffix(stem, ".attrs.jsonl").string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        try {
            table.append(tuple_from_json(nlohmann::json::parse(line), schema, table.dictionary()));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::kParseError, "attributes line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return Dataset(dim, std::move(vectors), std::move(table), metric);
}

void
save_workload(std::span<const HybridQuery> queries,
              const std::filesystem::path& path,
              const KeywordDictionary* dictionary) {
    std::string text;
    for (const HybridQuery& q : queries) {
        nlohmann::json j = {{"vector", q.vector},
                            {"predicate", q.predicate.to_json(dictionary)},
                            {"K", q.k}};
        text += j.dump();
        text += '\n';
    }
    write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::vector<HybridQuery>
load_workload(const std::filesystem::path& path,
              std::size_t dim,
              std::span<const float> pool,
              const KeywordDictionary* dictionary) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kIoError, "cannot open " + path.string());
    }
    std::vector<HybridQuery> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto where = [&]() { return path.string() + ":" + std::to_string(line_no) + ": "; };
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::kParseError, where() + e.what());
        }
        HybridQuery q;
        if (j.contains("vector")) {
            q.vector = j["vector"].get<std::vector<float>>();
        } else if (j.contains("vector_index")) {
            std::size_t idx = j["vector_index"].get<std::size_t>();
            if (dim == 0 || (idx + 1) * dim > pool.size()) {
                throw Error(ErrorCode::kInvalidArgument, where() + "vector_index out of range");
            }
            q.vector.assign(pool.begin() + idx * dim, pool.begin() + (idx + 1) * dim);
        } else {
            throw Error(ErrorCode::kParseError, where() + "needs 'vector' or 'vector_index'");
        }
        if (q.vector.size() != dim) {
            throw Error(ErrorCode::kDimensionMismatch, where() + "query dimension " +
                                                           std::to_string(q.vector.size()) +
                                                           " != " + std::to_string(dim));
        }
        q.predicate = j.contains("predicate") ? Predicate::from_json(j["predicate"], dictionary)
                                              : Predicate::always_true();
        q.k = j.value("K", std::size_t{10});
        out.push_back(std::move(q));
    }
    return out;
}

void
save_ground_truth(const GroundTruth& gt, const std::filesystem::path& path) {
    Writer w;
    w.put<std::uint32_t>(static_cast<std::uint32_t>(gt.results.size()));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(gt.k));
    for (const auto& row : gt.results) {
        for (std::size_t i = 0; i < gt.k; ++i) {
            if (i < row.size()) {
                w.put<std::uint32_t>(row[i].id);
                w.put<float>(row[i].distance);
            } else {
                w.put<std::uint32_t>(kNoNode);
                w.put<float>(std::numeric_limits<float>::infinity());
            }
        }
    }
    write_file(path, w.bytes());
}

GroundTruth
load_ground_truth(const std::filesystem::path& path) {
    auto bytes = read_file(path);
    Reader r(bytes);
    GroundTruth gt;
    std::uint32_t nq = r.get<std::uint32_t>();
    gt.k = r.get<std::uint32_t>();
    r.need(static_cast<std::size_t>(nq) * gt.k * 8);
    gt.results.resize(nq);
    for (auto& row : gt.results) {
        for (std::size_t i = 0; i < gt.k; ++i) {
            NodeId id = r.get<std::uint32_t>();
            float d = r.get<float>();
            if (id != kNoNode) {
                row.push_back({id, d});
            }
        }
    }
    if (r.remaining() != 0) {
        throw Error(ErrorCode::kParseError, path.string() + ": trailing bytes");
    }
    return gt;
}

}  // namespace acorn
