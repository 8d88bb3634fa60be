// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "isynas/error.hpp"
#include "isynas/io.hpp"
#include "isynas/presets.hpp"
#include "isynas/random.hpp"
#include "isynas/search_engine.hpp"

using namespace isynas;

TEST_CASE("architecture JSON round-trips") {
    SeededRandom rng(40);
    for (int i = 0; i < 200; ++i) {
        const ArchSpec a = sample_random(rng);
        CHECK(io::arch_from_json(io::arch_to_json(a)) == a);
    }
}

TEST_CASE("malformed architecture JSON") {
    CHECK_THROWS_AS(io::arch_from_json("{"), ParseError);
    CHECK_THROWS_AS(io::arch_from_json(R"({"stage": []})"), ParseError);
    CHECK_THROWS_AS(io::arch_from_json(R"({"stages": [{"la": 1, "nb": "two", "ef": 1, "sk": 0, "ci": 0, "edges": [1,0,0,0]}]})"),
                    ParseError);
    // well-formed but outside the space: NB above the limit
    CHECK_THROWS_AS(io::arch_from_json(R"({"stages": [{"la": 1, "nb": 99, "ef": 1, "sk": 0, "ci": 0, "edges": [1,0,0,0]}]})"),
                    ValidationError);
}

TEST_CASE("weights JSON round-trips exactly") {
    const MemWeights w{0.5, 1.234567890123e-9, -3e-8, 4.5e-8};
    CHECK(io::weights_from_json(io::weights_to_json(w)) == w);
    CHECK_THROWS_AS(io::weights_from_json(R"({"w0": 1})"), ParseError);
}

TEST_CASE("latency CSV parsing") {
    std::istringstream ok("arch_id,matrix_ops,vector_ops,data_ops,latency_ms\na,1e9,1e6,1e7,3.5\n\n# note\nb,2,3,4,0.1\n");
    const auto ds = io::read_latency_csv(ok);
    REQUIRE(ds.rows.size() == 2);
    CHECK(ds.rows[0].matrix_ops == 1e9);
    CHECK(ds.rows[1].arch_id == "b");

    std::istringstream headerless("a,1,2,3,4\n");
    CHECK(io::read_latency_csv(headerless).rows.size() == 1);

    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            (void)io::read_latency_csv(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("arch_id,matrix_ops,vector_ops,data_ops,latency_ms\na,1,2,3,4\nb,1,2,x,4\n") == 3);
    CHECK(line_of("a,1,2,3,4\nb,1,2,3\n") == 2);
    CHECK(line_of("a,1,2,3,-4\n") == 1);
    CHECK(line_of("a,-1,2,3,4\n") == 1);
    CHECK(line_of("arch_id,matrix_ops,vector_ops,latency_ms,data_ops\n") == 1);
    CHECK_THROWS_AS(io::read_latency_csv(std::filesystem::path("/nonexistent/latency.csv")), Error);
}

TEST_CASE("latency CSV write then read") {
    const auto ds = synthesize_latency_dataset({});
    std::stringstream ss;
    io::write_latency_csv(ss, ds);
    const auto back = io::read_latency_csv(ss);
    REQUIRE(back.rows.size() == ds.rows.size());
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        CHECK(back.rows[i].latency_ms == ds.rows[i].latency_ms);
        CHECK(back.rows[i].data_ops == ds.rows[i].data_ops);
    }
}

TEST_CASE("encoding rows") {
    const ArchSpec n0 = isynet_preset("isynet-n0");
    const std::string row = io::encoding_row(encode(n0));
    CHECK(static_cast<std::size_t>(std::count(row.begin(), row.end(), ',')) == kEncodingLength - 1);
    CHECK(decode(io::parse_encoding_row(row)) == n0);
    CHECK_THROWS(io::parse_encoding_row("1,2,3"));
}

TEST_CASE("meta-dataset CSV round-trips") {
    SeededRandom rng(41);
    MetaDataset h;
    for (int i = 0; i < 25; ++i) h.append({encode(sample_random(rng)), rng.normal(), rng.uniform(1, 100)});
    std::stringstream ss;
    io::write_meta_csv(ss, h);
    const MetaDataset back = io::read_meta_csv(ss);
    REQUIRE(back.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(back.records()[i].encoding == h.records()[i].encoding);
        CHECK(back.records()[i].response == h.records()[i].response);
        CHECK(back.records()[i].latency_ms == h.records()[i].latency_ms);
    }
}

TEST_CASE("number formatting is shortest round-trip") {
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(std::stod(io::format_number(2.57e-9)) == 2.57e-9);
}
