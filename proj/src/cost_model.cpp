// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/cost_model.hpp"

#include <fmt/format.h>

#include "isynas/error.hpp"

namespace isynas {
namespace {

long long CeilDiv(long long a, long long b) { return (a + b - 1) / b; }

[[noreturn]] void Mismatch(const Layer& l, std::string_view why) {
    throw ShapeError(fmt::format("{} ({}): {} [in {}x{}x{}, out {}x{}x{}]", l.id, op_kind_name(l.kind), why, l.in.h,
                                 l.in.w, l.in.c, l.out.h, l.out.w, l.out.c));
}

void CheckStrided(const Layer& l) {
    if (l.stride < 1) Mismatch(l, "stride must be >= 1");
    if (l.out.h != CeilDiv(l.in.h, l.stride) || l.out.w != CeilDiv(l.in.w, l.stride)) {
        Mismatch(l, "output spatial size must be ceil(input / stride)");
    }
}

void CheckSameShape(const Layer& l) {
    if (!(l.in == l.out)) Mismatch(l, "input and output shapes must match");
}

// Weight elements of a matrix layer.
double Weights(const Layer& l) {
    switch (l.kind) {
        case OpKind::Conv:
            return static_cast<double>(l.kh) * l.kw * static_cast<double>(l.in.c) * static_cast<double>(l.out.c);
        case OpKind::DepthwiseConv:
            return static_cast<double>(l.kh) * l.kw * static_cast<double>(l.out.c);
        case OpKind::FullyConnected:
            return (static_cast<double>(l.in.elements()) + 1.0) * static_cast<double>(l.out.c);
        default:
            return 0.0;
    }
}

// Batch-1 MACs of a matrix layer.
std::int64_t Macs(const Layer& l) {
    const std::int64_t spatial = l.out.h * l.out.w;
    switch (l.kind) {
        case OpKind::Conv:
            return static_cast<std::int64_t>(l.kh) * l.kw * l.in.c * l.out.c * spatial;
        case OpKind::DepthwiseConv:
            return static_cast<std::int64_t>(l.kh) * l.kw * l.out.c * spatial;
        case OpKind::FullyConnected:
            return l.in.elements() * l.out.c;
        default:
            return 0;
    }
}

}  // namespace

CostBreakdown op_cost(const Layer& l, int batch, bool fusion, const CostRules& rules) {
    if (batch < 1) throw ShapeError(fmt::format("batch must be >= 1, got {}", batch));
    const double b = batch;
    const double n_in = b * static_cast<double>(l.in.elements());
    const double n_out = b * static_cast<double>(l.out.elements());

    auto elementwise = [&](double coeff) -> CostBreakdown {
        CheckSameShape(l);
        if (fusion && l.fusable) return {};
        return {0.0, coeff * n_out, n_in + n_out};
    };

    switch (l.kind) {
        case OpKind::Identity:
            return {};
        case OpKind::Conv:
            CheckStrided(l);
            if (l.kh < 1 || l.kw < 1 || l.out.c < 1) Mismatch(l, "degenerate kernel");
            return {2.0 * static_cast<double>(Macs(l)) * b, 0.0, n_in + n_out + Weights(l)};
        case OpKind::DepthwiseConv:
            CheckStrided(l);
            if (l.in.c != l.out.c) Mismatch(l, "depthwise conv must keep the channel count");
            return {2.0 * static_cast<double>(Macs(l)) * b, 0.0, n_in + n_out + Weights(l)};
        case OpKind::FullyConnected:
            if (l.out.h != 1 || l.out.w != 1) Mismatch(l, "fully-connected output must be 1x1xN");
            return {2.0 * static_cast<double>(Macs(l)) * b, 0.0, n_in + n_out + Weights(l)};
        case OpKind::BatchNorm:
            return elementwise(rules.batch_norm);
        case OpKind::ReLU:
            return elementwise(rules.relu);
        case OpKind::ReLU6:
            return elementwise(rules.relu6);
        case OpKind::Swish:
            return elementwise(rules.swish);
        case OpKind::ElementwiseAdd: {
            CheckSameShape(l);
            if (l.inputs < 2) Mismatch(l, "add needs at least two operands");
            return {0.0, rules.add * static_cast<double>(l.inputs - 1) * n_out, l.inputs * n_in + n_out};
        }
        case OpKind::MaxPool:
        case OpKind::AvgPool:
            CheckStrided(l);
            if (l.in.c != l.out.c) Mismatch(l, "pooling must keep the channel count");
            return {0.0, static_cast<double>(l.kh) * l.kw * n_out, n_in + n_out};
        case OpKind::GlobalAvgPool:
            if (l.out.h != 1 || l.out.w != 1 || l.out.c != l.in.c) Mismatch(l, "global pooling output must be 1x1xC");
            return {0.0, n_in, n_in + n_out};
        case OpKind::Concat:
            // inputs sum to the output, so reads + write = 2 x output
            return {0.0, 0.0, 2.0 * n_out};
    }
    Mismatch(l, "unknown op kind");
}

CostReport network_cost(const Network& net, int batch, bool fusion, const CostRules& rules) {
    CostReport report;
    report.layers.reserve(net.layers.size());
    for (const Layer& l : net.layers) {
        const CostBreakdown c = op_cost(l, batch, fusion, rules);
        report.layers.push_back({l.id, l.kind, c});
        report.total += c;
    }
    return report;
}

CostBreakdown arch_cost(const ArchSpec& spec, ImageShape input, int batch, bool fusion, const CostRules& rules,
                        int num_classes) {
    return network_cost(lower(spec, input, num_classes), batch, fusion, rules).total;
}

CostBreakdown arch_cost(const ArchSpec& spec, const CostConfig& config) {
    return arch_cost(spec, config.input, config.batch, config.fusion, config.rules, config.num_classes);
}

std::int64_t param_count(const Network& net) {
    std::int64_t total = 0;
    for (const Layer& l : net.layers) {
        if (is_matrix_op(l.kind)) {
            total += static_cast<std::int64_t>(Weights(l));
        } else if (l.kind == OpKind::BatchNorm) {
            total += 2 * l.out.c;
        }
    }
    return total;
}

std::int64_t param_count(const ArchSpec& spec, int num_classes) {
    // parameter count is resolution independent; any legal input works
    const int side = 1 << spec.num_stages();
    return param_count(lower(spec, {side, side, 3}, num_classes));
}

std::int64_t mac_count(const Network& net) {
    std::int64_t total = 0;
    for (const Layer& l : net.layers) total += Macs(l);
    return total;
}

std::int64_t mac_count(const ArchSpec& spec, ImageShape input, int num_classes) {
    return mac_count(lower(spec, input, num_classes));
}

}  // namespace isynas
