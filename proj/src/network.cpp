// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/network.hpp"

#include <fmt/format.h>

#include "isynas/error.hpp"

namespace isynas {
namespace {

long long CeilDiv(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

std::string_view op_kind_name(OpKind kind) noexcept {
    switch (kind) {
        case OpKind::Conv: return "conv";
        case OpKind::DepthwiseConv: return "depthwise_conv";
        case OpKind::FullyConnected: return "fc";
        case OpKind::BatchNorm: return "batch_norm";
        case OpKind::ReLU: return "relu";
        case OpKind::ReLU6: return "relu6";
        case OpKind::Swish: return "swish";
        case OpKind::ElementwiseAdd: return "add";
        case OpKind::MaxPool: return "max_pool";
        case OpKind::AvgPool: return "avg_pool";
        case OpKind::GlobalAvgPool: return "global_avg_pool";
        case OpKind::Concat: return "concat";
        case OpKind::Identity: return "identity";
    }
    return "unknown";
}

bool is_matrix_op(OpKind kind) noexcept {
    return kind == OpKind::Conv || kind == OpKind::DepthwiseConv || kind == OpKind::FullyConnected;
}

NetworkBuilder::NetworkBuilder(std::string name, TensorShape input) : cur_(input) {
    net_.name = std::move(name);
}

Layer& NetworkBuilder::push(Layer layer) {
    net_.layers.push_back(std::move(layer));
    return net_.layers.back();
}

NetworkBuilder& NetworkBuilder::conv(std::string id, int kh, int kw, long long out_c, int stride) {
    Layer l;
    l.id = std::move(id);
    l.kind = OpKind::Conv;
    l.in = cur_;
    l.out = {CeilDiv(cur_.h, stride), CeilDiv(cur_.w, stride), out_c};
    l.kh = kh;
    l.kw = kw;
    l.stride = stride;
    cur_ = push(std::move(l)).out;
    chain_fusable_ = true;
    return *this;
}

NetworkBuilder& NetworkBuilder::depthwise(std::string id, int k, int stride) {
    Layer l;
    l.id = std::move(id);
    l.kind = OpKind::DepthwiseConv;
    l.in = cur_;
    l.out = {CeilDiv(cur_.h, stride), CeilDiv(cur_.w, stride), cur_.c};
    l.kh = k;
    l.kw = k;
    l.stride = stride;
    cur_ = push(std::move(l)).out;
    chain_fusable_ = true;
    return *this;
}

NetworkBuilder& NetworkBuilder::batch_norm(std::string id) {
    Layer l;
    l.id = std::move(id);
    l.kind = OpKind::BatchNorm;
    l.in = l.out = cur_;
    l.fusable = chain_fusable_;
    push(std::move(l));
    return *this;
}

NetworkBuilder& NetworkBuilder::activation(std::string id, OpKind kind) {
    if (kind != OpKind::ReLU && kind != OpKind::ReLU6 && kind != OpKind::Swish) {
        throw Error(fmt::format("{} is not an activation", op_kind_name(kind)));
    }
    Layer l;
    l.id = std::move(id);
    l.kind = kind;
    l.in = l.out = cur_;
    l.fusable = chain_fusable_;
    push(std::move(l));
    return *this;
}

NetworkBuilder& NetworkBuilder::max_pool(std::string id, int k, int stride) {
    Layer l;
    l.id = std::move(id);
    l.kind = OpKind::MaxPool;
    l.in = cur_;
    l.out = {CeilDiv(cur_.h, stride), CeilDiv(cur_.w, stride), cur_.c};
    l.kh = l.kw = k;
    l.stride = stride;
    cur_ = push(std::move(l)).out;
    chain_fusable_ = false;
    return *this;
}

NetworkBuilder& NetworkBuilder::global_avg_pool(std::string id) {
    Layer l;
    l.id = std::move(id);
    l.kind = OpKind::GlobalAvgPool;
    l.in = cur_;
    l.out = {1, 1, cur_.c};
    l.kh = static_cast<int>(cur_.h);
    l.kw = static_cast<int>(cur_.w);
    l.stride = 1;
    cur_ = push(std::move(l)).out;
    chain_fusable_ = false;
    return *this;
}

NetworkBuilder& NetworkBuilder::fully_connected(std::string id, long long out_features) {
    Layer l;
    l.id = std::move(id);
    l.kind = OpKind::FullyConnected;
    l.in = cur_;
    l.out = {1, 1, out_features};
    cur_ = push(std::move(l)).out;
    chain_fusable_ = true;
    return *this;
}

NetworkBuilder& NetworkBuilder::add(std::string id, TensorShape other) {
    if (!(other == cur_)) {
        throw ShapeError(fmt::format("{}: cannot add {}x{}x{} to {}x{}x{}", id, other.h, other.w, other.c, cur_.h,
                                     cur_.w, cur_.c));
    }
    Layer l;
    l.id = std::move(id);
    l.kind = OpKind::ElementwiseAdd;
    l.in = l.out = cur_;
    l.inputs = 2;
    push(std::move(l));
    chain_fusable_ = false;
    return *this;
}

NetworkBuilder& NetworkBuilder::append_branch(const std::vector<Layer>& layers) {
    net_.layers.insert(net_.layers.end(), layers.begin(), layers.end());
    return *this;
}

Network NetworkBuilder::build() && { return std::move(net_); }

Network lower(const ArchSpec& spec, ImageShape input, int num_classes) {
    const ShapeTable shapes = infer_shapes(spec, input, 1);
    NetworkBuilder nb("isynet", {input.height, input.width, input.channels});

    std::size_t block_idx = 0;
    for (std::size_t i = 0; i < shapes.edges.size();) {
        const BlockShape& block = shapes.blocks[block_idx++];
        const TensorShape block_in = nb.shape();
        for (; i < shapes.edges.size() && shapes.edges[i].stage == block.stage && shapes.edges[i].block == block.block;
             ++i) {
            const EdgeShape& e = shapes.edges[i];
            if (e.op == EdgeOp::Identity) continue;
            const std::string prefix = fmt::format("s{}.b{}.e{}", e.stage, e.block, e.edge);
            const auto kernels = edge_kernels(e.op);
            for (std::size_t k = 0; k < kernels.size(); ++k) {
                const std::string id = kernels.size() > 1 ? fmt::format("{}.conv{}", prefix, k) : prefix + ".conv";
                nb.conv(id, kernels[k].kh, kernels[k].kw, e.out.c, k == 0 ? e.stride : 1);
            }
            nb.batch_norm(prefix + ".bn");
            if (e.activation) nb.activation(prefix + ".relu", OpKind::ReLU);
        }
        if (block.residual) nb.add(fmt::format("s{}.b{}.skip", block.stage, block.block), block_in);
    }
    nb.global_avg_pool("head.pool");
    nb.fully_connected("head.fc", num_classes);
    return std::move(nb).build();
}

}  // namespace isynas
