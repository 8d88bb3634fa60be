// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace isynas {

/// Lower latency and higher score are better.
struct ParetoPoint {
    double latency = 0.0;
    double score = 0.0;
    std::size_t index = 0;  // position in the caller's input, for payload lookup
};

/// `a` dominates `b`: no worse on both axes and strictly better on one.
constexpr bool dominates(const ParetoPoint& a, const ParetoPoint& b) noexcept {
    return a.latency <= b.latency && a.score >= b.score && (a.latency < b.latency || a.score > b.score);
}

struct ParetoFront {
    std::vector<ParetoPoint> members;  // ascending latency, ties by input index

    bool empty() const noexcept { return members.empty(); }
    std::size_t size() const noexcept { return members.size(); }
};

/// Exactly the non-dominated subset, O(n log n). Duplicated points are
/// mutually non-dominating and are all kept.
ParetoFront pareto_front(std::span<const ParetoPoint> points);

struct LatencyScore {
    double latency;
    double score;
};
ParetoFront pareto_front(std::span<const LatencyScore> points);

}  // namespace isynas
