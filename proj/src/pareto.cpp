// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/pareto.hpp"

#include <algorithm>
#include <limits>

namespace isynas {

ParetoFront pareto_front(std::span<const ParetoPoint> points) {
    std::vector<ParetoPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.latency != b.latency) return a.latency < b.latency;
        if (a.score != b.score) return a.score > b.score;
        return a.index < b.index;
    });

    ParetoFront front;
    double best_before = -std::numeric_limits<double>::infinity();  // best score at strictly lower latency
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        const double group_best = sorted[i].score;
        // the group shares one latency; only its top-score points can survive
        while (j < sorted.size() && sorted[j].latency == sorted[i].latency) {
            if (sorted[j].score == group_best && group_best > best_before) front.members.push_back(sorted[j]);
            ++j;
        }
        best_before = std::max(best_before, group_best);
        i = j;
    }
    return front;
}

ParetoFront pareto_front(std::span<const LatencyScore> points) {
    std::vector<ParetoPoint> tagged;
    tagged.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) tagged.push_back({points[i].latency, points[i].score, i});
    return pareto_front(tagged);
}

}  // namespace isynas
