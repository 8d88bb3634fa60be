// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Architecture IR for the NPU-friendly search space: a chain of stages, each a
// run of identical blocks, each block four edges wide. Covers validation, the
// fixed-length integer encoding used by the surrogates, shape inference, and
// random sampling / mutation.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isynas/random.hpp"

namespace isynas {

/// Edge operation codes. The numeric values are part of the encoding format.
enum class EdgeOp : std::uint8_t {
    Conv1x1 = 0,
    Conv3x3 = 1,
    Conv5x5 = 2,
    Conv7x7 = 3,
    Conv1x3_3x1 = 4,
    Conv1x5_5x1 = 5,
    Conv1x7_7x1 = 6,
    Identity = 7,
};

inline constexpr int kNumEdgeOps = 8;

std::string_view edge_op_name(EdgeOp op) noexcept;

struct KernelSize {
    int kh;
    int kw;
};

/// Convolutions an edge expands to, in execution order. Empty for identity;
/// two entries (1xK then Kx1) for the separable pairs.
std::span<const KernelSize> edge_kernels(EdgeOp op) noexcept;

namespace space {
inline constexpr int kMaxStages = 6;
inline constexpr int kMaxBlocks = 20;
inline constexpr int kMaxChannelIncrement = 2;
inline constexpr int kEdgesPerBlock = 4;
inline constexpr int kChannelQuantum = 16;
}  // namespace space

struct StageSpec {
    bool la = true;  // last non-identity edge keeps its activation
    int nb = 1;
    int ef = 1;  // width multiplier for every non-identity edge but the last
    bool sk = false;
    int ci = 0;
    std::array<EdgeOp, 4> edges{EdgeOp::Conv3x3, EdgeOp::Identity, EdgeOp::Identity, EdgeOp::Identity};

    bool operator==(const StageSpec&) const = default;
};

struct ArchSpec {
    std::vector<StageSpec> stages;

    int num_stages() const noexcept { return static_cast<int>(stages.size()); }
    bool operator==(const ArchSpec&) const = default;
};

/// Block output channels of 1-based stage `stage`: 2^(3 + stage + ci).
long long stage_output_channels(int stage, int ci) noexcept;

// ---------------------------------------------------------------------------
// Validation

enum class Rule {
    StageCount,
    BlockCount,
    ChannelIncrement,
    ExpansionFactor,
    ChannelDivisibility,
    AllIdentity,
    EdgeCode,
};

std::string_view rule_name(Rule rule) noexcept;

struct Violation {
    Rule rule;
    int stage;  // 0-based; -1 for architecture-level rules
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(Rule rule) const noexcept;
    std::string summary() const;
};

/// Lists every violated search-space rule. Never throws.
ValidationReport validate(const ArchSpec& spec);

// ---------------------------------------------------------------------------
// Encoding: [NS, then six groups of (LA, NB, EF, SK, CI, E0, E1, E2, E3)].
// Groups past NS are zero.

inline constexpr std::size_t kStageFields = 9;
inline constexpr std::size_t kEncodingLength = 1 + space::kMaxStages * kStageFields;

struct EncodingVector {
    std::array<int, kEncodingLength> values{};

    auto operator<=>(const EncodingVector&) const = default;
};

/// Throws ValidationError (carrying the report summary) for out-of-space specs.
EncodingVector encode(const ArchSpec& spec);

/// Throws DecodeError naming the offending field.
ArchSpec decode(const EncodingVector& vec);
ArchSpec decode(std::span<const int> values);

/// Index of field `field` (0..8) of 0-based stage `stage` in the encoding.
constexpr std::size_t encoding_index(int stage, int field) noexcept {
    return 1 + static_cast<std::size_t>(stage) * kStageFields + static_cast<std::size_t>(field);
}

// ---------------------------------------------------------------------------
// Shapes

struct ImageShape {
    int height = 224;
    int width = 224;
    int channels = 3;

    bool operator==(const ImageShape&) const = default;
};

struct TensorShape {
    long long h = 0;
    long long w = 0;
    long long c = 0;

    long long elements() const noexcept { return h * w * c; }
    bool operator==(const TensorShape&) const = default;
};

/// One edge of one block. Identity edges are recorded with stride 1 and
/// in == out.
struct EdgeShape {
    int stage;  // 0-based
    int block;
    int edge;
    EdgeOp op;
    int stride;
    TensorShape in;
    TensorShape out;
    bool activation;      // followed by an activation (false only for the last edge when LA=0)
    bool last_in_block;   // last non-identity edge of the block
};

struct BlockShape {
    int stage;
    int block;
    bool residual;  // skip-add actually applied
    TensorShape in;
    TensorShape out;
};

struct ShapeTable {
    int batch = 1;
    ImageShape input;
    std::vector<EdgeShape> edges;
    std::vector<BlockShape> blocks;
    TensorShape output;
};

/// Propagates shapes with same padding (out = ceil(in / stride)). Throws
/// ValidationError for invalid specs and ShapeError if the input is smaller
/// than 2^NS on either side.
ShapeTable infer_shapes(const ArchSpec& spec, ImageShape input, int batch);

// ---------------------------------------------------------------------------
// Sampling

struct SpaceConstraints {
    int min_stages = 1;
    int max_stages = space::kMaxStages;
    int min_blocks = 1;
    int max_blocks = space::kMaxBlocks;
    int max_ef = 6;
    int max_ci = space::kMaxChannelIncrement;
};

/// Uniform per-field sample; blocks that come out all-identity are redrawn.
ArchSpec sample_random(SeededRandom& rng, const SpaceConstraints& constraints = {});

/// Changes exactly one encoded field (one edge op, NB +-1, LA or SK toggle,
/// CI or EF +-1) while staying inside `constraints`.
ArchSpec mutate(const ArchSpec& spec, SeededRandom& rng, const SpaceConstraints& constraints = {});

}  // namespace isynas
