// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/presets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>

#include "isynas/error.hpp"

namespace isynas {

namespace {

using E = EdgeOp;
constexpr E I = EdgeOp::Identity;

StageSpec stage(bool la, int nb, int ef, bool sk, int ci, std::array<E, 4> edges) {
    return StageSpec{la, nb, ef, sk, ci, edges};
}

// Expansion factors are not listed alongside the block widths; the values
// below are the per-stage EF that bring parameter and MAC counts in line with
// the published totals (see README, "Preset expansion factors").
ArchSpec isynet_n0() {
    return {{
        stage(true, 1, 1, false, 0, {E::Conv5x5, I, I, I}),
        stage(true, 2, 2, true, 0, {E::Conv3x3, E::Conv3x3, I, I}),
        stage(true, 4, 1, true, 0, {E::Conv3x3, E::Conv3x3, E::Conv1x1, E::Conv1x1}),
        stage(false, 2, 5, true, 0, {E::Conv1x1, E::Conv3x3, I, I}),
        stage(true, 6, 1, true, 0, {E::Conv3x3, E::Conv3x3, E::Conv1x1, I}),
    }};
}

ArchSpec isynet_n1_family(std::array<int, 5> depths) {
    return {{
        stage(true, depths[0], 1, true, 0, {E::Conv7x7, I, I, I}),
        stage(true, depths[1], 3, true, 0, {E::Conv1x5_5x1, E::Conv1x1, E::Conv3x3, E::Conv5x5}),
        stage(true, depths[2], 1, true, 1, {E::Conv3x3, E::Conv3x3, E::Conv3x3, I}),
        stage(true, depths[3], 2, true, 0, {E::Conv3x3, E::Conv1x1, E::Conv3x3, I}),
        stage(true, depths[4], 2, true, 0, {E::Conv1x1, E::Conv1x1, E::Conv1x1, I}),
    }};
}

ArchSpec isynet_n2() {
    return {{
        stage(true, 1, 1, true, 0, {E::Conv3x3, E::Conv7x7, E::Conv7x7, I}),
        stage(false, 3, 2, true, 0, {E::Conv5x5, E::Conv3x3, E::Conv3x3, I}),
        stage(true, 4, 2, true, 0, {E::Conv3x3, E::Conv3x3, E::Conv3x3, I}),
        stage(false, 17, 5, true, 0, {E::Conv3x3, E::Conv1x1, I, I}),
        stage(true, 2, 2, true, 1, {E::Conv1x1, E::Conv1x1, E::Conv1x1, I}),
    }};
}

ArchSpec isynet_n3() {
    return {{
        stage(true, 1, 1, false, 1, {E::Conv5x5, E::Conv7x7, I, I}),
        stage(false, 5, 2, true, 1, {E::Conv3x3, E::Conv3x3, I, I}),
        stage(true, 3, 2, true, 1, {E::Conv3x3, E::Conv1x3_3x1, E::Conv3x3, E::Conv3x3}),
        stage(false, 13, 1, true, 1, {E::Conv1x3_3x1, E::Conv1x1, I, I}),
        stage(true, 1, 2, true, 2, {E::Conv1x1, E::Conv1x1, E::Conv1x1, I}),
    }};
}

constexpr std::array<std::string_view, 10> kNames{
    "isynet-n0",    "isynet-n1", "isynet-n1-s1", "isynet-n1-s2", "isynet-n1-s3",
    "isynet-n2",    "isynet-n3", "resnet-18",    "resnet-34",    "resnet-50",
};

[[noreturn]] void unknown(std::string_view name) {
    throw ValidationError(fmt::format("unknown preset '{}'; available: {}", name, fmt::join(kNames, ", ")));
}

long long make_divisible(double v, long long divisor = 8) {
    const long long r = std::max(divisor, static_cast<long long>(v + divisor / 2.0) / divisor * divisor);
    return r < 0.9 * v ? r + divisor : r;
}

}  // namespace

std::span<const std::string_view> preset_names() noexcept { return kNames; }

bool is_reference_preset(std::string_view name) noexcept { return name.starts_with("resnet-"); }

ArchSpec isynet_preset(std::string_view name) {
    if (name == "isynet-n0") return isynet_n0();
    if (name == "isynet-n1") return isynet_n1_family({1, 1, 4, 6, 1});
    if (name == "isynet-n1-s1") return isynet_n1_family({1, 1, 4, 6, 3});
    if (name == "isynet-n1-s2") return isynet_n1_family({1, 1, 5, 6, 6});
    if (name == "isynet-n1-s3") return isynet_n1_family({1, 1, 6, 8, 7});
    if (name == "isynet-n2") return isynet_n2();
    if (name == "isynet-n3") return isynet_n3();
    if (is_reference_preset(name) && std::find(kNames.begin(), kNames.end(), name) != kNames.end())
        throw ValidationError(fmt::format("'{}' is a reference network, not an encodable architecture", name));
    unknown(name);
}

Builtin builtin(std::string_view name, ImageShape input, int num_classes) {
    if (name == "resnet-18") return resnet({{2, 2, 2, 2}, {64, 128, 256, 512}, false, 64}, input, num_classes, "resnet-18");
    if (name == "resnet-34") return resnet({{3, 4, 6, 3}, {64, 128, 256, 512}, false, 64}, input, num_classes, "resnet-34");
    if (name == "resnet-50") return resnet({{3, 4, 6, 3}, {64, 128, 256, 512}, true, 64}, input, num_classes, "resnet-50");
    return isynet_preset(name);
}

Network to_network(const Builtin& item, ImageShape input, int num_classes) {
    if (const auto* spec = std::get_if<ArchSpec>(&item)) return lower(*spec, input, num_classes);
    return std::get<Network>(item);
}

// ---------------------------------------------------------------------------
// ResNet

Network resnet(const ResNetLayout& layout, ImageShape input, int num_classes, std::string name) {
    if (layout.depths.size() != layout.widths.size() || layout.depths.empty())
        throw ValidationError("resnet layout needs one width per stage");
    NetworkBuilder nb(std::move(name), {input.height, input.width, input.channels});
    nb.conv("stem.conv", 7, 7, layout.stem_width, 2).batch_norm("stem.bn").activation("stem.relu", OpKind::ReLU);
    nb.max_pool("stem.pool", 3, 2);

    const long long expansion = layout.bottleneck ? 4 : 1;
    for (std::size_t s = 0; s < layout.depths.size(); ++s) {
        const long long width = layout.widths[s];
        const long long out_c = width * expansion;
        for (int b = 0; b < layout.depths[s]; ++b) {
            const std::string p = fmt::format("l{}.b{}", s, b);
            const int stride = (b == 0 && s > 0) ? 2 : 1;
            const TensorShape block_in = nb.shape();

            TensorShape shortcut = block_in;
            if (stride != 1 || block_in.c != out_c) {
                NetworkBuilder proj("proj", block_in);
                proj.conv(p + ".down.conv", 1, 1, out_c, stride).batch_norm(p + ".down.bn");
                nb.append_branch(proj.layers());
                shortcut = proj.shape();
            }

            if (layout.bottleneck) {
                nb.conv(p + ".conv1", 1, 1, width).batch_norm(p + ".bn1").activation(p + ".relu1", OpKind::ReLU);
                nb.conv(p + ".conv2", 3, 3, width, stride).batch_norm(p + ".bn2").activation(p + ".relu2", OpKind::ReLU);
                nb.conv(p + ".conv3", 1, 1, out_c).batch_norm(p + ".bn3");
            } else {
                nb.conv(p + ".conv1", 3, 3, width, stride).batch_norm(p + ".bn1").activation(p + ".relu1", OpKind::ReLU);
                nb.conv(p + ".conv2", 3, 3, width).batch_norm(p + ".bn2");
            }
            nb.add(p + ".add", shortcut).activation(p + ".relu", OpKind::ReLU);
        }
    }
    nb.global_avg_pool("head.pool").fully_connected("head.fc", num_classes);
    return std::move(nb).build();
}

// ---------------------------------------------------------------------------
// Inverted residual

Network inverted_residual_net(const InvertedResidualLayout& layout, ImageShape input, int num_classes,
                              std::string name) {
    const OpKind act = layout.activation;
    NetworkBuilder nb(std::move(name), {input.height, input.width, input.channels});
    nb.conv("stem.conv", 3, 3, layout.stem_width, 2).batch_norm("stem.bn").activation("stem.act", act);
    for (std::size_t s = 0; s < layout.stages.size(); ++s) {
        const InvertedResidualStage& st = layout.stages[s];
        for (int b = 0; b < st.repeats; ++b) {
            const std::string p = fmt::format("ir{}.b{}", s, b);
            const int stride = b == 0 ? st.stride : 1;
            const TensorShape block_in = nb.shape();
            if (st.expansion != 1) {
                nb.conv(p + ".expand", 1, 1, block_in.c * st.expansion).batch_norm(p + ".expand.bn");
                nb.activation(p + ".expand.act", act);
            }
            nb.depthwise(p + ".dw", st.kernel, stride).batch_norm(p + ".dw.bn").activation(p + ".dw.act", act);
            nb.conv(p + ".project", 1, 1, st.channels).batch_norm(p + ".project.bn");
            if (stride == 1 && block_in.c == st.channels) nb.add(p + ".add", block_in);
        }
    }
    nb.conv("head.conv", 1, 1, layout.head_width).batch_norm("head.bn").activation("head.act", act);
    nb.global_avg_pool("head.pool").fully_connected("head.fc", num_classes);
    return std::move(nb).build();
}

// ---------------------------------------------------------------------------
// Samplers

std::string_view design_space_name(DesignSpace space) noexcept {
    switch (space) {
        case DesignSpace::ISyNet: return "isynet";
        case DesignSpace::ResNetLike: return "resnet_like";
        case DesignSpace::MobileNetV2Like: return "mobilenetv2_like";
        case DesignSpace::MnasNetLike: return "mnasnet_like";
    }
    return "?";
}

std::optional<DesignSpace> parse_design_space(std::string_view name) noexcept {
    for (DesignSpace s : {DesignSpace::ISyNet, DesignSpace::ResNetLike, DesignSpace::MobileNetV2Like,
                          DesignSpace::MnasNetLike})
        if (design_space_name(s) == name) return s;
    return std::nullopt;
}

namespace {

template <class T, std::size_t N>
T pick(SeededRandom& rng, const std::array<T, N>& options) {
    return options[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(N) - 1))];
}

Network sample_resnet_like(SeededRandom& rng, ImageShape input, int num_classes, std::size_t i) {
    ResNetLayout layout;
    layout.bottleneck = rng.coin();
    const long long base = pick(rng, std::array<long long, 5>{32, 48, 64, 80, 96});
    layout.stem_width = base;
    layout.depths.clear();
    layout.widths.clear();
    for (int s = 0; s < 4; ++s) {
        layout.depths.push_back(rng.uniform_int(1, layout.bottleneck ? 6 : 4));
        layout.widths.push_back(base << s);
    }
    return resnet(layout, input, num_classes, fmt::format("resnet_like-{}", i));
}

// (expansion, channels, repeats, stride, kernel)
constexpr std::array<InvertedResidualStage, 7> kMobileNetV2Template{{
    {1, 16, 1, 1, 3},
    {6, 24, 2, 2, 3},
    {6, 32, 3, 2, 3},
    {6, 64, 4, 2, 3},
    {6, 96, 3, 1, 3},
    {6, 160, 3, 2, 3},
    {6, 320, 1, 1, 3},
}};

constexpr std::array<InvertedResidualStage, 7> kMnasNetTemplate{{
    {1, 16, 1, 1, 3},
    {6, 24, 2, 2, 3},
    {3, 40, 3, 2, 5},
    {6, 80, 4, 2, 3},
    {6, 112, 2, 1, 3},
    {6, 160, 3, 2, 5},
    {6, 320, 1, 1, 3},
}};

Network sample_mobile(SeededRandom& rng, ImageShape input, int num_classes, std::size_t i, bool mnas) {
    const double width = pick(rng, std::array<double, 5>{0.5, 0.75, 1.0, 1.3, 1.4});
    InvertedResidualLayout layout;
    layout.stem_width = make_divisible(32 * width);
    layout.head_width = width > 1.0 ? make_divisible(1280 * width) : 1280;
    const auto& tmpl = mnas ? kMnasNetTemplate : kMobileNetV2Template;
    for (const auto& t : tmpl) {
        InvertedResidualStage st = t;
        st.channels = make_divisible(static_cast<double>(t.channels) * width);
        st.repeats = std::max(1, t.repeats + rng.uniform_int(-1, 1));
        if (t.expansion != 1) st.expansion = mnas ? pick(rng, std::array<int, 2>{3, 6}) : pick(rng, std::array<int, 3>{3, 4, 6});
        if (mnas && t.expansion != 1) st.kernel = pick(rng, std::array<int, 2>{3, 5});
        layout.stages.push_back(st);
    }
    layout.activation = mnas ? OpKind::ReLU : OpKind::ReLU6;
    return inverted_residual_net(layout, input, num_classes,
                                 fmt::format("{}-{}", mnas ? "mnasnet_like" : "mobilenetv2_like", i));
}

}  // namespace

std::vector<SampledNet> space_sampler(DesignSpace space, std::size_t n, SeededRandom& rng, ImageShape input,
                                      int num_classes) {
    if (n == 0) throw ValidationError("space_sampler needs n >= 1");
    std::vector<SampledNet> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (space) {
            case DesignSpace::ISyNet: {
                ArchSpec spec = sample_random(rng);
                Network net = lower(spec, input, num_classes);
                out.push_back({std::move(spec), std::move(net)});
                break;
            }
            case DesignSpace::ResNetLike:
                out.push_back({std::nullopt, sample_resnet_like(rng, input, num_classes, i)});
                break;
            case DesignSpace::MobileNetV2Like:
                out.push_back({std::nullopt, sample_mobile(rng, input, num_classes, i, false)});
                break;
            case DesignSpace::MnasNetLike:
                out.push_back({std::nullopt, sample_mobile(rng, input, num_classes, i, true)});
                break;
        }
    }
    return out;
}

}  // namespace isynas
