// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Per-operation counts of matrix-unit work (m), vector-unit work (v) and data
// movement (d), plus parameter and MAC counters.
//
// Conventions:
//   m  FLOPs on the matrix unit (2 x MAC) at the model batch size
//   v  element operations on the vector unit
//   d  elements (not bytes) read and written, weights included
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isynas/arch_ir.hpp"
#include "isynas/network.hpp"

namespace isynas {

struct CostBreakdown {
    double matrix_ops = 0.0;
    double vector_ops = 0.0;
    double data_ops = 0.0;

    CostBreakdown& operator+=(const CostBreakdown& o) noexcept {
        matrix_ops += o.matrix_ops;
        vector_ops += o.vector_ops;
        data_ops += o.data_ops;
        return *this;
    }
    friend CostBreakdown operator+(CostBreakdown a, const CostBreakdown& b) noexcept { return a += b; }
    bool operator==(const CostBreakdown&) const = default;
};

/// Vector-unit operations per output element for the elementwise kinds.
struct CostRules {
    double batch_norm = 8.0;
    double relu = 1.0;
    double relu6 = 2.0;
    double swish = 2.0;
    double add = 1.0;
};

struct CostConfig {
    ImageShape input{224, 224, 3};
    int batch = 16;
    bool fusion = true;
    int num_classes = 1000;
    CostRules rules;
};

/// Cost of one layer. Throws ShapeError when the shapes don't fit the kind.
CostBreakdown op_cost(const Layer& layer, int batch, bool fusion, const CostRules& rules = {});

struct LayerCost {
    std::string id;
    OpKind kind;
    CostBreakdown cost;
};

struct CostReport {
    std::vector<LayerCost> layers;
    CostBreakdown total;
};

CostReport network_cost(const Network& net, int batch, bool fusion, const CostRules& rules = {});

CostBreakdown arch_cost(const ArchSpec& spec, ImageShape input, int batch, bool fusion,
                        const CostRules& rules = {}, int num_classes = 1000);
CostBreakdown arch_cost(const ArchSpec& spec, const CostConfig& config);

/// Conv weights, 2 per BN channel, FC weights plus bias.
std::int64_t param_count(const Network& net);
std::int64_t param_count(const ArchSpec& spec, int num_classes);

/// Batch-1 multiply-accumulates over conv and FC layers.
std::int64_t mac_count(const Network& net);
std::int64_t mac_count(const ArchSpec& spec, ImageShape input, int num_classes = 1000);

}  // namespace isynas
