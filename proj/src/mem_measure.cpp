// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/mem_measure.hpp"

#include <cmath>

#include <fmt/format.h>

#include "isynas/error.hpp"

namespace isynas {
namespace {

void CheckWeights(const MemWeights& w) {
    if (!(w.wm > 0.0) || !std::isfinite(w.wm)) {
        throw Error(fmt::format("MEM needs a positive matrix weight, got wm={}", w.wm));
    }
}

void CheckDenominator(double den, std::size_t index) {
    if (!(den > 0.0) || !std::isfinite(den)) {
        throw Error(fmt::format("MEM undefined for item {}: denominator {} is not positive", index, den));
    }
}

void CheckLengths(std::span<const double> m, std::span<const double> v, std::span<const double> d) {
    if (m.size() != v.size() || m.size() != d.size()) {
        throw Error(fmt::format("count arrays differ in length ({}, {}, {})", m.size(), v.size(), d.size()));
    }
}

}  // namespace

double mem(const CostBreakdown& c, const MemWeights& w) {
    CheckWeights(w);
    const double mat = w.wm * c.matrix_ops;
    const double den = mat + w.wv * c.vector_ops + w.wd * c.data_ops;
    CheckDenominator(den, 0);
    return mat / den;
}

std::vector<double> mem_batch(std::span<const double> m, std::span<const double> v, std::span<const double> d,
                              const MemWeights& w) {
    CheckWeights(w);
    CheckLengths(m, v, d);
    std::vector<double> out(m.size());
    // The denominator is the same affine form without the intercept.
    kernels::Affine4 den_w = w.affine();
    den_w.w0 = 0.0;
    kernels::active().affine4(den_w, m.data(), v.data(), d.data(), out.data(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) CheckDenominator(out[i], i);
    kernels::active().matrix_share(den_w, m.data(), v.data(), d.data(), out.data(), out.size());
    return out;
}

double mmem(std::span<const CostBreakdown> costs, const MemWeights& w) {
    if (costs.empty()) throw Error("mMEM of an empty design space is undefined");
    std::vector<double> m, v, d;
    m.reserve(costs.size());
    v.reserve(costs.size());
    d.reserve(costs.size());
    for (const auto& c : costs) {
        m.push_back(c.matrix_ops);
        v.push_back(c.vector_ops);
        d.push_back(c.data_ops);
    }
    const std::vector<double> scores = mem_batch(m, v, d, w);
    double sum = 0.0;
    for (double s : scores) sum += s;
    return sum / static_cast<double>(scores.size());
}

double mmem(std::span<const ArchSpec> specs, const MemWeights& w, const CostConfig& config) {
    std::vector<CostBreakdown> costs;
    costs.reserve(specs.size());
    for (const auto& s : specs) costs.push_back(arch_cost(s, config));
    return mmem(costs, w);
}

double mmem(std::span<const Network> nets, const MemWeights& w, const CostConfig& config) {
    std::vector<CostBreakdown> costs;
    costs.reserve(nets.size());
    for (const auto& n : nets) costs.push_back(network_cost(n, config.batch, config.fusion, config.rules).total);
    return mmem(costs, w);
}

double latency_estimate(const CostBreakdown& c, const MemWeights& w) {
    return w.w0 + w.wm * c.matrix_ops + w.wv * c.vector_ops + w.wd * c.data_ops;
}

std::vector<double> latency_batch(std::span<const double> m, std::span<const double> v, std::span<const double> d,
                                  const MemWeights& w) {
    CheckLengths(m, v, d);
    std::vector<double> out(m.size());
    kernels::active().affine4(w.affine(), m.data(), v.data(), d.data(), out.data(), out.size());
    return out;
}

}  // namespace isynas
