// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Matrix Efficiency Measure: the weighted share of an architecture's modelled
// latency that is spent on the matrix unit, its mean over a design space, and
// the linear latency model the weights come from.
#pragma once

#include <span>
#include <vector>

#include "isynas/cost_model.hpp"
#include "isynas/kernels.hpp"

namespace isynas {

/// lat = w0 + wm*M + wv*V + wd*D (milliseconds). Defaults are the reference
/// fit; wv is negative there because M, V and D are correlated.
struct MemWeights {
    double w0 = 0.773;
    double wm = 2.57e-9;
    double wv = -1.26e-8;
    double wd = 3.36e-8;

    kernels::Affine4 affine() const noexcept { return {w0, wm, wv, wd}; }
    bool operator==(const MemWeights&) const = default;
};

/// wm*M / (wm*M + wv*V + wd*D).
///
/// Throws Error when wm <= 0 or the denominator is not a positive finite
/// number. Individual terms may be negative; the result lies in [0, 1)
/// exactly when wv*V + wd*D > 0, and is returned unclamped otherwise.
double mem(const CostBreakdown& costs, const MemWeights& w = {});

/// Vectorized mem over structure-of-arrays counts. Same error contract.
std::vector<double> mem_batch(std::span<const double> m, std::span<const double> v, std::span<const double> d,
                              const MemWeights& w = {});

/// Mean MEM. Throws Error on an empty list.
double mmem(std::span<const CostBreakdown> costs, const MemWeights& w = {});
double mmem(std::span<const ArchSpec> specs, const MemWeights& w, const CostConfig& config);
double mmem(std::span<const Network> nets, const MemWeights& w, const CostConfig& config);

/// Linear latency estimate; may be negative for pathological counts.
double latency_estimate(const CostBreakdown& costs, const MemWeights& w = {});

std::vector<double> latency_batch(std::span<const double> m, std::span<const double> v, std::span<const double> d,
                                  const MemWeights& w = {});

}  // namespace isynas
