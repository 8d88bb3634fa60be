// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Depth-only scaling: per-stage block-count multipliers searched by brute
// force under a latency budget, and the uniform single-multiplier baseline.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isynas/arch_ir.hpp"
#include "isynas/cost_model.hpp"
#include "isynas/mem_measure.hpp"
#include "isynas/pareto.hpp"

namespace isynas {

struct ScalingGrid {
    /// Candidate multipliers for each stage. A single entry applies to every
    /// stage; otherwise there must be one list per stage of the base.
    std::vector<std::vector<double>> per_stage{{1.0, 1.25, 1.5, 2.0, 3.0}};
    std::size_t max_variants = 100000;

    static ScalingGrid uniform(std::vector<double> multipliers, std::size_t cap = 100000) {
        return {{std::move(multipliers)}, cap};
    }
};

/// round-half-up(c * nb), clamped to [1, 20].
int scaled_depth(int nb, double coefficient);

/// Cartesian product of the per-stage multipliers, deduplicated, in
/// lexicographic order of the depth vector. Throws ValidationError for an
/// invalid base or malformed grid, SearchError if the product exceeds the cap.
std::vector<ArchSpec> enumerate_scaled(const ArchSpec& base, const ScalingGrid& grid);

/// One multiplier on every stage.
ArchSpec uniform_depth_scale(const ArchSpec& base, double coefficient);

using ScoreFunction = std::function<double(const ArchSpec&)>;

struct ScaledVariant {
    ArchSpec spec;
    double latency_ms = 0.0;
    double score = 0.0;
};

struct BudgetFront {
    double budget_ms = 0.0;
    std::vector<ScaledVariant> members;  // ascending latency
};

struct ScalingResult {
    std::vector<ScaledVariant> variants;  // every enumerated variant
    std::vector<BudgetFront> fronts;      // one per budget, input order
    std::vector<std::string> warnings;
};

struct ScaleOptions {
    ScalingGrid grid;
    MemWeights weights;
    CostConfig cost;
};

/// Throws ValidationError for non-positive budgets. An infeasible budget
/// yields an empty front and a warning.
ScalingResult scale_to_budget(const ArchSpec& base, const std::vector<double>& budgets_ms,
                              const ScoreFunction& score_fn, const ScaleOptions& options = {});

/// Score proxy for tests and the CLI: log of the MAC count.
double macs_proxy_score(const ArchSpec& spec, const CostConfig& config = {});

}  // namespace isynas
