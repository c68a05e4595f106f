// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "gen.hpp"

#include <dsrisk/error.hpp>
#include <dsrisk/output_table.hpp>

#include <doctest.h>
#include <json.hpp>

#include <limits>

using namespace dsrisk;

namespace {

const std::vector<Column> kColumns{
    {"n", ColumnKind::integer}, {"x", ColumnKind::real}, {"label", ColumnKind::text}};

std::string random_text(testgen::Gen& gen)
{
    static const std::string alphabet = "abcXYZ019 ,\"\n-_.";
    std::string s;
    const auto len = gen.int_in(0, 12);
    for (std::int64_t i = 0; i < len; ++i) {
        s += alphabet[static_cast<std::size_t>(gen.int_in(0, static_cast<std::int64_t>(alphabet.size()) - 1))];
    }
    return s;
}

} // namespace

TEST_SUITE("output_table")
{
TEST_CASE("real formatting")
{
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(3.2469312) == "3.24693");
    CHECK(format_real(-0.0316094123) == "-0.0316094");
    CHECK(format_real(1234567.0) == "1.23457e+06");
    CHECK(format_real(1e-12) == "1e-12");
}

TEST_CASE("csv layout and quoting")
{
    OutputTable t(kColumns);
    t.add_row({std::int64_t{1}, 0.5, std::string("plain")});
    t.add_row({std::int64_t{-2}, 2.0, std::string("a,b \"c\"")});
    CHECK(t.to_csv() == "n,x,label\n1,0.5,plain\n-2,2,\"a,b \"\"c\"\"\"\n");
    CHECK(OutputTable(kColumns).to_csv() == "n,x,label\n");
}

TEST_CASE("cell kinds are checked")
{
    OutputTable t(kColumns);
    CHECK_THROWS_AS(t.add_row({std::int64_t{1}, 0.5}), DomainError);
    CHECK_THROWS_AS(t.add_row({0.5, 0.5, std::string("x")}), DomainError);
    CHECK_THROWS_AS(t.add_row({std::int64_t{1}, std::string("x"), std::string("x")}), DomainError);
    CHECK(t.rows().empty());
}

TEST_CASE("csv round trip")
{
    testgen::Gen gen(51);
    for (int trial = 0; trial < 200; ++trial) {
        OutputTable t(kColumns);
        const auto rows = gen.int_in(0, 8);
        for (std::int64_t r = 0; r < rows; ++r) {
            t.add_row({gen.int_in(-1'000'000, 1'000'000), gen.real_in(-1e6, 1e6), random_text(gen)});
        }
        CHECK(OutputTable::parse_csv(t.to_csv(), kColumns) == t);
    }
}

TEST_CASE("csv parse rejects foreign input")
{
    CHECK_THROWS_AS(OutputTable::parse_csv("n,y,label\n", kColumns), MalformedInputError);
    CHECK_THROWS_AS(OutputTable::parse_csv("n,x,label\n1,2\n", kColumns), MalformedInputError);
    CHECK_THROWS_AS(OutputTable::parse_csv("n,x,label\nz,2,a\n", kColumns), MalformedInputError);
    CHECK_THROWS_AS(OutputTable::parse_csv("n,x,label\n1,2,\"open\n", kColumns), MalformedInputError);
}

TEST_CASE("json output")
{
    OutputTable t(kColumns);
    t.add_row({std::int64_t{3}, 0.25, std::string("q\"x")});
    t.add_row({std::int64_t{4}, std::numeric_limits<double>::quiet_NaN(), std::string()});
    const auto j = nlohmann::json::parse(t.to_json());
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["n"] == 3);
    CHECK(j[0]["x"] == 0.25);
    CHECK(j[0]["label"] == "q\"x");
    CHECK(j[1]["x"].is_null());
    CHECK(t.to_json().find("\"n\"") < t.to_json().find("\"x\""));
}
}
