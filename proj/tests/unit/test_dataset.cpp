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
#include <catch_amalgamated.hpp>

#include "acorn/dataset.h"
#include "acorn/error.h"
#include "test_util.h"

using namespace acorn;

namespace {

ErrorCode
code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an acorn::Error");
    return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("dates convert to days since the epoch", "[dataset]") {
    // Reference values from an independent calendar library.
    const std::vector<std::pair<std::string, std::int64_t>> cases = {
        {"1970-01-01", 0},     {"2000-03-01", 11017}, {"1900-01-01", -25567},
        {"2020-12-31", 18627}, {"1969-12-31", -1},    {"2024-02-29", 19782},
    };
    for (const auto& [text, days] : cases) {
        CHECK(parse_date(text) == days);
        CHECK(format_date(days) == text);
    }
    CHECK(code_of([] { parse_date("2023-02-29"); }) == ErrorCode::kParseError);
    CHECK(code_of([] { parse_date("not a date"); }) == ErrorCode::kParseError);
}

TEST_CASE("keyword dictionary interns stable codes", "[dataset]") {
    KeywordDictionary d;
    CHECK(d.intern("red") == 0);
    CHECK(d.intern("blue") == 1);
    CHECK(d.intern("red") == 0);
    CHECK(d.find("blue") == 1u);
    CHECK_FALSE(d.find("green").has_value());
    CHECK(d.word(1) == "blue");
    CHECK(d.size() == 2);
}

TEST_CASE("attribute table stores and returns tuples", "[dataset]") {
    AttributeTable t({{"n", AttributeKind::kInteger},
                      {"d", AttributeKind::kDate},
                      {"k", AttributeKind::kKeywords},
                      {"s", AttributeKind::kText}});
    t.append({std::int64_t{5}, DateValue{100}, KeywordSet{{1, 3}}, std::string("hello")});
    t.append({std::int64_t{-2}, DateValue{-7}, KeywordSet{}, std::string("")});
    t.seal();
    CHECK(t.rows() == 2);
    CHECK(t.integer(0, 0) == 5);
    CHECK(t.integer(1, 1) == -7);
    CHECK(t.uses_bitsets(2));
    CHECK(t.keyword_mask(2, 0) == ((1ull << 1) | (1ull << 3)));
    CHECK(t.keyword_mask(2, 1) == 0);
    CHECK(t.text(3, 0) == "hello");
    AttributeTuple row = t.tuple(0);
    CHECK(std::get<KeywordSet>(row[2]).codes == std::vector<std::uint32_t>{1, 3});
    CHECK(std::get<DateValue>(row[1]).days == 100);

    CHECK(code_of([&] { t.append({std::int64_t{1}}); }) == ErrorCode::kSchemaMismatch);
    CHECK(code_of([&] {
              t.append({std::string("x"), DateValue{0}, KeywordSet{}, std::string("")});
          }) == ErrorCode::kSchemaMismatch);
}

TEST_CASE("keyword columns past the bitset limit fall back to lists", "[dataset]") {
    AttributeTable t({{"k", AttributeKind::kKeywords}});
    t.append({KeywordSet{{2, 200}}});
    t.seal();
    CHECK_FALSE(t.uses_bitsets(0));
    auto codes = t.keywords(0, 0);
    CHECK(std::vector<std::uint32_t>(codes.begin(), codes.end()) == std::vector<std::uint32_t>{2, 200});
}

TEST_CASE("dataset validates shape and supports subsets", "[dataset]") {
    Dataset ds = testing::random_dataset(50, 4, 3, 5, 1);
    CHECK(ds.size() == 50);
    CHECK(ds.dim() == 4);
    CHECK(ds.distance(3, 3) == 0.0f);
    CHECK(ds.distance(3, 7) == Catch::Approx(testing::naive_l2_sqr(ds.vector(3), ds.vector(7), 4)));

    std::vector<NodeId> rows = {7, 2, 40};
    Dataset sub = ds.subset(rows);
    REQUIRE(sub.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(std::equal(sub.vector(static_cast<NodeId>(i)), sub.vector(static_cast<NodeId>(i)) + 4,
                         ds.vector(rows[i])));
        CHECK(sub.attributes().tuple(static_cast<NodeId>(i)) == ds.attributes().tuple(rows[i]));
    }

    CHECK(code_of([] { Dataset(3, std::vector<float>(10), AttributeTable(AttributeSchema{})); }) ==
          ErrorCode::kDimensionMismatch);
    CHECK(code_of([&] { ds.with_attributes(AttributeTable({{"x", AttributeKind::kInteger}})); }) ==
          ErrorCode::kSchemaMismatch);
}

TEST_CASE("dataset checksum tracks content", "[dataset]") {
    Dataset a = testing::random_dataset(30, 4, 3, 5, 7);
    Dataset b = testing::random_dataset(30, 4, 3, 5, 7);
    Dataset c = testing::random_dataset(30, 4, 3, 5, 8);
    CHECK(a.checksum() == b.checksum());
    CHECK(a.checksum() != c.checksum());
    // FNV-1a reference values for short inputs.
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
}
