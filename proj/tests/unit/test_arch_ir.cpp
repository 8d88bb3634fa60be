// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include "isynas/arch_ir.hpp"
#include "isynas/error.hpp"

using namespace isynas;

namespace {

ArchSpec two_stage() {
    ArchSpec a;
    a.stages.push_back({true, 2, 2, true, 0, {EdgeOp::Conv3x3, EdgeOp::Conv1x1, EdgeOp::Identity, EdgeOp::Identity}});
    a.stages.push_back({false, 3, 1, true, 1, {EdgeOp::Conv1x3_3x1, EdgeOp::Identity, EdgeOp::Conv5x5, EdgeOp::Identity}});
    return a;
}

}  // namespace

TEST_CASE("stage widths follow 2^(3+s+ci)") {
    CHECK(stage_output_channels(1, 0) == 16);
    CHECK(stage_output_channels(2, 0) == 32);
    CHECK(stage_output_channels(5, 1) == 512);
    CHECK(stage_output_channels(6, 2) == 2048);
}

TEST_CASE("edge kernels") {
    CHECK(edge_kernels(EdgeOp::Identity).empty());
    REQUIRE(edge_kernels(EdgeOp::Conv7x7).size() == 1);
    CHECK(edge_kernels(EdgeOp::Conv7x7)[0].kh == 7);
    const auto pair = edge_kernels(EdgeOp::Conv1x5_5x1);
    REQUIRE(pair.size() == 2);
    CHECK((pair[0].kh == 1 && pair[0].kw == 5 && pair[1].kh == 5 && pair[1].kw == 1));
}

TEST_CASE("validate reports every violated rule") {
    CHECK(validate(two_stage()).ok());

    ArchSpec empty;
    CHECK(validate(empty).has(Rule::StageCount));

    ArchSpec a = two_stage();
    a.stages[0].nb = 21;
    a.stages[1].ci = 3;
    a.stages[1].ef = 0;
    a.stages[0].edges = {EdgeOp::Identity, EdgeOp::Identity, EdgeOp::Identity, EdgeOp::Identity};
    const auto r = validate(a);
    CHECK(r.has(Rule::BlockCount));
    CHECK(r.has(Rule::ChannelIncrement));
    CHECK(r.has(Rule::ExpansionFactor));
    CHECK(r.has(Rule::AllIdentity));
    CHECK(r.violations.size() >= 4);
    CHECK(r.summary().find("NB=21") != std::string::npos);

    ArchSpec bad_code = two_stage();
    bad_code.stages[0].edges[1] = static_cast<EdgeOp>(9);
    CHECK(validate(bad_code).has(Rule::EdgeCode));

    ArchSpec seven;
    for (int i = 0; i < 7; ++i) seven.stages.push_back(two_stage().stages[0]);
    CHECK(validate(seven).has(Rule::StageCount));
}

TEST_CASE("encoding layout and zero padding") {
    const EncodingVector v = encode(two_stage());
    CHECK(v.values[0] == 2);
    CHECK(v.values[encoding_index(0, 1)] == 2);
    CHECK(v.values[encoding_index(0, 2)] == 2);
    CHECK(v.values[encoding_index(1, 0)] == 0);
    CHECK(v.values[encoding_index(1, 4)] == 1);
    CHECK(v.values[encoding_index(1, 5)] == 4);
    CHECK(v.values[encoding_index(1, 6)] == 7);
    for (std::size_t i = encoding_index(2, 0); i < kEncodingLength; ++i) CHECK(v.values[i] == 0);
    CHECK(decode(v) == two_stage());
}

TEST_CASE("encode rejects out-of-space specs") {
    ArchSpec a = two_stage();
    a.stages[0].nb = 0;
    CHECK_THROWS_AS(encode(a), ValidationError);
}

TEST_CASE("decode names the offending field") {
    EncodingVector v = encode(two_stage());
    auto field_of = [](const EncodingVector& e) {
        try {
            decode(e);
        } catch (const DecodeError& err) {
            return err.field();
        }
        return std::string("<none>");
    };
    EncodingVector nb = v;
    nb.values[encoding_index(1, 1)] = 25;
    CHECK(field_of(nb) == "stage[1].nb");

    EncodingVector edge = v;
    edge.values[encoding_index(0, 6)] = 8;
    CHECK(field_of(edge) == "stage[0].e1");

    EncodingVector ns = v;
    ns.values[0] = 0;
    CHECK(field_of(ns) == "ns");

    const std::vector<int> short_vec(10, 1);
    CHECK_THROWS_AS(decode(std::span<const int>(short_vec)), DecodeError);
}

TEST_CASE("random specs roundtrip through the encoding") {
    SeededRandom rng(1);
    for (int i = 0; i < 2000; ++i) {
        const ArchSpec a = sample_random(rng);
        REQUIRE(validate(a).ok());
        CHECK(decode(encode(a)) == a);
    }
}

TEST_CASE("shape inference: strides, widths and skip placement") {
    const ShapeTable t = infer_shapes(two_stage(), {224, 224, 3}, 1);
    // stage 0 block 0: first conv strides, widths 16*2 then 16
    const EdgeShape& e0 = t.edges[0];
    CHECK(e0.stride == 2);
    CHECK(e0.out == TensorShape{112, 112, 32});
    CHECK(t.edges[1].out == TensorShape{112, 112, 16});
    CHECK(t.edges[1].last_in_block);
    CHECK(t.edges[1].activation);

    CHECK_FALSE(t.blocks[0].residual);
    CHECK(t.blocks[1].residual);
    // stage 1 has LA=0: the last edge drops its activation
    const auto& last = t.edges[t.edges.size() - 2];
    CHECK(last.op == EdgeOp::Conv5x5);
    CHECK_FALSE(last.activation);
    CHECK(t.output == TensorShape{56, 56, 64});
}

TEST_CASE("odd spatial sizes round up") {
    const ShapeTable t = infer_shapes(two_stage(), {15, 9, 3}, 1);
    CHECK(t.output.h == 4);
    CHECK(t.output.w == 3);
}

TEST_CASE("input smaller than 2^NS is rejected") {
    CHECK_THROWS_AS(infer_shapes(two_stage(), {3, 224, 3}, 1), ShapeError);
    CHECK_NOTHROW(infer_shapes(two_stage(), {4, 4, 3}, 1));
}

TEST_CASE("mutation changes exactly one field and stays valid") {
    SeededRandom rng(2);
    for (int i = 0; i < 2000; ++i) {
        const ArchSpec a = sample_random(rng);
        const ArchSpec b = mutate(a, rng);
        REQUIRE(validate(b).ok());
        const auto ea = encode(a), eb = encode(b);
        int diffs = 0;
        for (std::size_t k = 0; k < kEncodingLength; ++k) diffs += ea.values[k] != eb.values[k];
        CHECK(diffs == 1);
    }
}

TEST_CASE("sampling respects constraints") {
    SpaceConstraints c;
    c.min_stages = c.max_stages = 3;
    c.max_blocks = 4;
    c.max_ef = 2;
    c.max_ci = 0;
    SeededRandom rng(4);
    for (int i = 0; i < 500; ++i) {
        const ArchSpec a = sample_random(rng, c);
        CHECK(a.num_stages() == 3);
        for (const auto& st : a.stages) {
            CHECK(st.nb <= 4);
            CHECK(st.ef <= 2);
            CHECK(st.ci == 0);
        }
    }
}
