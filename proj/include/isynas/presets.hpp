// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Built-in architectures and the design-space samplers used to compare
// average matrix efficiency across families.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isynas/arch_ir.hpp"
#include "isynas/network.hpp"
#include "isynas/random.hpp"

namespace isynas {

/// ISyNet presets first, then the ResNet references.
std::span<const std::string_view> preset_names() noexcept;

bool is_reference_preset(std::string_view name) noexcept;

/// Either an encodable architecture or a reference network that lives
/// outside the search space.
using Builtin = std::variant<ArchSpec, Network>;

/// Throws ValidationError listing the catalog for unknown names.
Builtin builtin(std::string_view name, ImageShape input = {}, int num_classes = 1000);

/// Like builtin() but requires an ISyNet preset.
ArchSpec isynet_preset(std::string_view name);

Network to_network(const Builtin& item, ImageShape input = {}, int num_classes = 1000);

// ---------------------------------------------------------------------------
// ResNet references (7x7/2 stem, max pool, four stages, 1x1 projection
// shortcuts where shape changes)

struct ResNetLayout {
    std::vector<int> depths{2, 2, 2, 2};
    std::vector<long long> widths{64, 128, 256, 512};
    bool bottleneck = false;
    long long stem_width = 64;
};

Network resnet(const ResNetLayout& layout, ImageShape input = {}, int num_classes = 1000, std::string name = "resnet");

// ---------------------------------------------------------------------------
// Inverted-residual networks (expand 1x1, depthwise kxk, project 1x1)

struct InvertedResidualStage {
    int expansion = 6;
    long long channels = 16;
    int repeats = 1;
    int stride = 1;
    int kernel = 3;
};

struct InvertedResidualLayout {
    long long stem_width = 32;
    std::vector<InvertedResidualStage> stages;
    long long head_width = 1280;
    OpKind activation = OpKind::ReLU6;
};

Network inverted_residual_net(const InvertedResidualLayout& layout, ImageShape input = {}, int num_classes = 1000,
                              std::string name = "mobile");

// ---------------------------------------------------------------------------
// Design-space samplers

enum class DesignSpace { ISyNet, ResNetLike, MobileNetV2Like, MnasNetLike };

std::string_view design_space_name(DesignSpace space) noexcept;
std::optional<DesignSpace> parse_design_space(std::string_view name) noexcept;

struct SampledNet {
    std::optional<ArchSpec> arch;  // set for the ISyNet space
    Network net;
};

/// Seeded samples of n >= 1 networks. Throws ValidationError for n == 0.
std::vector<SampledNet> space_sampler(DesignSpace space, std::size_t n, SeededRandom& rng, ImageShape input = {},
                                      int num_classes = 1000);

}  // namespace isynas
