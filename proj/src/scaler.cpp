// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/scaler.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>

#include "isynas/error.hpp"

namespace isynas {

int scaled_depth(int nb, double coefficient) {
    if (!(coefficient > 0.0) || !std::isfinite(coefficient))
        throw ValidationError(fmt::format("scaling coefficient must be positive and finite, got {}", coefficient));
    const double raw = std::floor(coefficient * nb + 0.5);
    return static_cast<int>(std::clamp(raw, 1.0, static_cast<double>(space::kMaxBlocks)));
}

namespace {

void require_valid(const ArchSpec& base) {
    const auto report = validate(base);
    if (!report.ok()) throw ValidationError("base architecture is invalid: " + report.summary());
}

}  // namespace

std::vector<ArchSpec> enumerate_scaled(const ArchSpec& base, const ScalingGrid& grid) {
    require_valid(base);
    const std::size_t ns = base.stages.size();
    if (grid.per_stage.size() != 1 && grid.per_stage.size() != ns)
        throw ValidationError(fmt::format("scaling grid has {} stage lists, base has {} stages",
                                          grid.per_stage.size(), ns));

    // distinct depths per stage; different multipliers can round to the same NB
    std::vector<std::vector<int>> choices(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        const auto& mult = grid.per_stage.size() == 1 ? grid.per_stage[0] : grid.per_stage[s];
        if (mult.empty()) throw ValidationError(fmt::format("scaling grid for stage {} is empty", s));
        for (double c : mult) choices[s].push_back(scaled_depth(base.stages[s].nb, c));
        std::sort(choices[s].begin(), choices[s].end());
        choices[s].erase(std::unique(choices[s].begin(), choices[s].end()), choices[s].end());
    }

    double total = 1.0;
    for (const auto& c : choices) total *= static_cast<double>(c.size());
    if (total > static_cast<double>(grid.max_variants))
        throw SearchError(fmt::format("scaling grid yields {} variants, above the cap of {}; use a coarser grid",
                                      total, grid.max_variants));

    std::vector<ArchSpec> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<std::size_t> idx(ns, 0);
    while (true) {
        ArchSpec v = base;
        for (std::size_t s = 0; s < ns; ++s) v.stages[s].nb = choices[s][idx[s]];
        out.push_back(std::move(v));
        std::size_t s = ns;
        while (s > 0) {
            --s;
            if (++idx[s] < choices[s].size()) break;
            idx[s] = 0;
            if (s == 0) return out;
        }
        if (ns == 0) return out;
    }
}

ArchSpec uniform_depth_scale(const ArchSpec& base, double coefficient) {
    require_valid(base);
    ArchSpec out = base;
    for (auto& st : out.stages) st.nb = scaled_depth(st.nb, coefficient);
    return out;
}

ScalingResult scale_to_budget(const ArchSpec& base, const std::vector<double>& budgets_ms,
                              const ScoreFunction& score_fn, const ScaleOptions& options) {
    if (!score_fn) throw ValidationError("scale_to_budget needs a score function");
    for (double b : budgets_ms)
        if (!(b > 0.0)) throw ValidationError(fmt::format("latency budget must be positive, got {}", b));

    ScalingResult result;
    for (ArchSpec& spec : enumerate_scaled(base, options.grid)) {
        const double lat = latency_estimate(arch_cost(spec, options.cost), options.weights);
        const double score = score_fn(spec);
        result.variants.push_back({std::move(spec), lat, score});
    }

    for (double budget : budgets_ms) {
        std::vector<ParetoPoint> pts;
        for (std::size_t i = 0; i < result.variants.size(); ++i)
            if (result.variants[i].latency_ms <= budget)
                pts.push_back({result.variants[i].latency_ms, result.variants[i].score, i});
        BudgetFront front{budget, {}};
        if (pts.empty()) {
            double lo = std::numeric_limits<double>::infinity();
            for (const auto& v : result.variants) lo = std::min(lo, v.latency_ms);
            result.warnings.push_back(fmt::format(
                "no scaled variant fits the {} ms budget (fastest variant is {} ms)", budget, lo));
        }
        for (const auto& p : pareto_front(pts).members) front.members.push_back(result.variants[p.index]);
        result.fronts.push_back(std::move(front));
    }
    return result;
}

double macs_proxy_score(const ArchSpec& spec, const CostConfig& config) {
    return std::log(static_cast<double>(mac_count(spec, config.input, config.num_classes)));
}

}  // namespace isynas
