// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "isynas/error.hpp"
#include "isynas/presets.hpp"
#include "isynas/scaler.hpp"

using namespace isynas;

namespace {

std::vector<int> depths(const ArchSpec& a) {
    std::vector<int> d;
    for (const auto& s : a.stages) d.push_back(s.nb);
    return d;
}

double macs_score(const ArchSpec& a) { return macs_proxy_score(a); }

}  // namespace

TEST_CASE("scaled depth rounds half up and clamps") {
    CHECK(scaled_depth(1, 1.25) == 1);
    CHECK(scaled_depth(2, 1.25) == 3);
    CHECK(scaled_depth(1, 1.5) == 2);
    CHECK(scaled_depth(6, 1.25) == 8);
    CHECK(scaled_depth(10, 3.0) == 20);
    CHECK(scaled_depth(1, 0.1) == 1);
}

TEST_CASE("uniform coefficient 2 doubles every stage") {
    const ArchSpec n1 = isynet_preset("isynet-n1");
    CHECK(depths(uniform_depth_scale(n1, 2.0)) == std::vector<int>{2, 2, 8, 12, 2});
}

TEST_CASE("grid {1} yields only the base") {
    const ArchSpec n1 = isynet_preset("isynet-n1");
    const auto v = enumerate_scaled(n1, ScalingGrid::uniform({1.0}));
    REQUIRE(v.size() == 1);
    CHECK(v[0] == n1);
}

TEST_CASE("grid {1,3} on N1 contains the S1 depths") {
    const ArchSpec n1 = isynet_preset("isynet-n1");
    const auto v = enumerate_scaled(n1, ScalingGrid::uniform({1.0, 3.0}));
    CHECK(v.size() == 32);
    const auto s1 = isynet_preset("isynet-n1-s1");
    CHECK(std::find(v.begin(), v.end(), s1) != v.end());
}

TEST_CASE("only depths change and the default grid gives distinct variants") {
    const ArchSpec n1 = isynet_preset("isynet-n1");
    const auto v = enumerate_scaled(n1, ScalingGrid{});
    CHECK(v.size() == 675);
    std::set<std::vector<int>> seen;
    for (const auto& a : v) {
        REQUIRE(a.num_stages() == n1.num_stages());
        CHECK(seen.insert(depths(a)).second);
        for (int s = 0; s < a.num_stages(); ++s) {
            ArchSpec b = a;
            b.stages[s].nb = n1.stages[s].nb;
            CHECK(b.stages[s] == n1.stages[s]);
        }
    }
}

TEST_CASE("per-stage grids and the variant cap") {
    const ArchSpec n1 = isynet_preset("isynet-n1");
    ScalingGrid g;
    g.per_stage = {{1}, {1}, {1, 2}, {1}, {1, 3}};
    const auto v = enumerate_scaled(n1, g);
    CHECK(v.size() == 4);
    g.per_stage = {{1}, {1}};
    CHECK_THROWS_AS(enumerate_scaled(n1, g), ValidationError);
    g = ScalingGrid{};
    g.max_variants = 100;
    CHECK_THROWS_AS(enumerate_scaled(n1, g), SearchError);
    g = ScalingGrid::uniform({-1.0});
    CHECK_THROWS_AS(enumerate_scaled(n1, g), ValidationError);
}

TEST_CASE("budget fronts") {
    const ArchSpec n1 = isynet_preset("isynet-n1");
    const auto res = scale_to_budget(n1, {1.0, 300.0, 400.0, 1e6}, macs_score);
    REQUIRE(res.fronts.size() == 4);
    CHECK(res.fronts[0].members.empty());
    REQUIRE(res.warnings.size() == 1);
    CHECK(res.warnings[0].find("1 ms") != std::string::npos);
    int prev_max = 0;
    for (std::size_t b = 1; b < res.fronts.size(); ++b) {
        const auto& f = res.fronts[b];
        REQUIRE_FALSE(f.members.empty());
        int max_depth = 0;
        for (const auto& m : f.members) {
            CHECK(m.latency_ms <= f.budget_ms);
            int total = 0;
            for (int d : depths(m.spec)) total += d;
            max_depth = std::max(max_depth, total);
        }
        CHECK(max_depth >= prev_max);
        prev_max = max_depth;
    }
    CHECK_THROWS_AS(scale_to_budget(n1, {0.0}, macs_score), ValidationError);
}
