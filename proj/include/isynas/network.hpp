// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Flat layer list that every costable network lowers to: ISyNet-space
// architectures as well as the hand-written reference templates (ResNet,
// MobileNetV2, MnasNet) that live outside the four-edge space.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isynas/arch_ir.hpp"

namespace isynas {

enum class OpKind {
    Conv,
    DepthwiseConv,
    FullyConnected,
    BatchNorm,
    ReLU,
    ReLU6,
    Swish,
    ElementwiseAdd,
    MaxPool,
    AvgPool,
    GlobalAvgPool,
    Concat,
    Identity,
};

std::string_view op_kind_name(OpKind kind) noexcept;

bool is_matrix_op(OpKind kind) noexcept;

struct Layer {
    std::string id;
    OpKind kind = OpKind::Identity;
    TensorShape in;
    TensorShape out;
    int kh = 1;
    int kw = 1;
    int stride = 1;
    int inputs = 1;  // operand count for add / concat
    // BN or activation whose producer chain back to a conv/FC contains only
    // BN/activation layers; these disappear under operator fusion.
    bool fusable = false;
};

struct Network {
    std::string name;
    std::vector<Layer> layers;
};

/// Incremental builder tracking the running tensor shape and fusion chain.
class NetworkBuilder {
public:
    NetworkBuilder(std::string name, TensorShape input);

    NetworkBuilder& conv(std::string id, int kh, int kw, long long out_c, int stride = 1);
    NetworkBuilder& depthwise(std::string id, int k, int stride = 1);
    NetworkBuilder& batch_norm(std::string id);
    NetworkBuilder& activation(std::string id, OpKind kind);
    NetworkBuilder& max_pool(std::string id, int k, int stride);
    NetworkBuilder& global_avg_pool(std::string id);
    NetworkBuilder& fully_connected(std::string id, long long out_features);
    /// Adds the current tensor to `other` (must have the same shape).
    NetworkBuilder& add(std::string id, TensorShape other);

    /// Appends an already-built side branch (e.g. a projection shortcut)
    /// without touching the running shape.
    NetworkBuilder& append_branch(const std::vector<Layer>& layers);

    TensorShape shape() const noexcept { return cur_; }
    void set_shape(TensorShape s) noexcept {
        cur_ = s;
        chain_fusable_ = false;
    }

    Network build() &&;
    const std::vector<Layer>& layers() const noexcept { return net_.layers; }

private:
    Layer& push(Layer layer);

    Network net_;
    TensorShape cur_;
    bool chain_fusable_ = false;
};

/// Execution-order layer list for an in-space architecture: per edge conv(s),
/// BN and ReLU (dropped on the last edge when LA=0), a plain skip-add per
/// residual block, then global average pooling and a fully-connected head.
Network lower(const ArchSpec& spec, ImageShape input, int num_classes);

}  // namespace isynas
