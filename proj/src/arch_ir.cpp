// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/arch_ir.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "isynas/error.hpp"

namespace isynas {
namespace {

constexpr KernelSize kK1x1[] = {{1, 1}};
constexpr KernelSize kK3x3[] = {{3, 3}};
constexpr KernelSize kK5x5[] = {{5, 5}};
constexpr KernelSize kK7x7[] = {{7, 7}};
constexpr KernelSize kK1x3[] = {{1, 3}, {3, 1}};
constexpr KernelSize kK1x5[] = {{1, 5}, {5, 1}};
constexpr KernelSize kK1x7[] = {{1, 7}, {7, 1}};

bool IsIdentity(EdgeOp op) { return op == EdgeOp::Identity; }

int NonIdentityCount(const StageSpec& st) {
    return static_cast<int>(std::count_if(st.edges.begin(), st.edges.end(),
                                          [](EdgeOp op) { return !IsIdentity(op); }));
}

bool EdgeCodeValid(EdgeOp op) { return static_cast<int>(op) < kNumEdgeOps; }

long long CeilDiv(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

std::string_view edge_op_name(EdgeOp op) noexcept {
    switch (op) {
        case EdgeOp::Conv1x1: return "conv1x1";
        case EdgeOp::Conv3x3: return "conv3x3";
        case EdgeOp::Conv5x5: return "conv5x5";
        case EdgeOp::Conv7x7: return "conv7x7";
        case EdgeOp::Conv1x3_3x1: return "conv1x3+conv3x1";
        case EdgeOp::Conv1x5_5x1: return "conv1x5+conv5x1";
        case EdgeOp::Conv1x7_7x1: return "conv1x7+conv7x1";
        case EdgeOp::Identity: return "identity";
    }
    return "invalid";
}

std::span<const KernelSize> edge_kernels(EdgeOp op) noexcept {
    switch (op) {
        case EdgeOp::Conv1x1: return kK1x1;
        case EdgeOp::Conv3x3: return kK3x3;
        case EdgeOp::Conv5x5: return kK5x5;
        case EdgeOp::Conv7x7: return kK7x7;
        case EdgeOp::Conv1x3_3x1: return kK1x3;
        case EdgeOp::Conv1x5_5x1: return kK1x5;
        case EdgeOp::Conv1x7_7x1: return kK1x7;
        case EdgeOp::Identity: return {};
    }
    return {};
}

long long stage_output_channels(int stage, int ci) noexcept {
    const int exponent = 3 + stage + ci;
    if (exponent < 0) return 0;
    return 1LL << exponent;
}

std::string_view rule_name(Rule rule) noexcept {
    switch (rule) {
        case Rule::StageCount: return "stage-count";
        case Rule::BlockCount: return "block-count";
        case Rule::ChannelIncrement: return "channel-increment";
        case Rule::ExpansionFactor: return "expansion-factor";
        case Rule::ChannelDivisibility: return "channel-divisibility";
        case Rule::AllIdentity: return "all-identity";
        case Rule::EdgeCode: return "edge-code";
    }
    return "unknown";
}

bool ValidationReport::has(Rule rule) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [rule](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += fmt::format("[{}] {}", rule_name(v.rule), v.message);
    }
    return out;
}

ValidationReport validate(const ArchSpec& spec) {
    ValidationReport report;
    auto add = [&](Rule rule, int stage, std::string msg) {
        report.violations.push_back({rule, stage, std::move(msg)});
    };

    const int ns = spec.num_stages();
    if (ns < 1 || ns > space::kMaxStages) {
        add(Rule::StageCount, -1, fmt::format("NS={} outside [1,{}]", ns, space::kMaxStages));
    }
    for (int s = 0; s < ns; ++s) {
        const StageSpec& st = spec.stages[static_cast<std::size_t>(s)];
        if (st.nb < 1 || st.nb > space::kMaxBlocks) {
            add(Rule::BlockCount, s, fmt::format("stage {}: NB={} outside [1,{}]", s, st.nb, space::kMaxBlocks));
        }
        if (st.ci < 0 || st.ci > space::kMaxChannelIncrement) {
            add(Rule::ChannelIncrement, s,
                fmt::format("stage {}: CI={} outside [0,{}]", s, st.ci, space::kMaxChannelIncrement));
        }
        if (st.ef < 1) add(Rule::ExpansionFactor, s, fmt::format("stage {}: EF={} must be >= 1", s, st.ef));
        bool codes_ok = true;
        for (int e = 0; e < space::kEdgesPerBlock; ++e) {
            if (!EdgeCodeValid(st.edges[static_cast<std::size_t>(e)])) {
                codes_ok = false;
                add(Rule::EdgeCode, s,
                    fmt::format("stage {} edge {}: code {} outside [0,7]", s, e,
                                static_cast<int>(st.edges[static_cast<std::size_t>(e)])));
            }
        }
        const long long out_c = stage_output_channels(s + 1, st.ci);
        const long long mid_c = out_c * std::max(st.ef, 1);
        if (out_c % space::kChannelQuantum != 0 || mid_c % space::kChannelQuantum != 0) {
            add(Rule::ChannelDivisibility, s,
                fmt::format("stage {}: widths {}/{} not multiples of {}", s, out_c, mid_c, space::kChannelQuantum));
        }
        if (codes_ok && NonIdentityCount(st) == 0) {
            add(Rule::AllIdentity, s, fmt::format("stage {}: all four edges are identity", s));
        }
    }
    return report;
}

EncodingVector encode(const ArchSpec& spec) {
    const ValidationReport report = validate(spec);
    if (!report.ok()) throw ValidationError("cannot encode out-of-space architecture: " + report.summary());

    EncodingVector vec;
    vec.values[0] = spec.num_stages();
    for (int s = 0; s < spec.num_stages(); ++s) {
        const StageSpec& st = spec.stages[static_cast<std::size_t>(s)];
        vec.values[encoding_index(s, 0)] = st.la ? 1 : 0;
        vec.values[encoding_index(s, 1)] = st.nb;
        vec.values[encoding_index(s, 2)] = st.ef;
        vec.values[encoding_index(s, 3)] = st.sk ? 1 : 0;
        vec.values[encoding_index(s, 4)] = st.ci;
        for (int e = 0; e < space::kEdgesPerBlock; ++e) {
            vec.values[encoding_index(s, 5 + e)] = static_cast<int>(st.edges[static_cast<std::size_t>(e)]);
        }
    }
    return vec;
}

ArchSpec decode(std::span<const int> values) {
    if (values.size() != kEncodingLength) {
        throw DecodeError("length", fmt::format("expected {} values, got {}", kEncodingLength, values.size()));
    }
    const int ns = values[0];
    if (ns < 1 || ns > space::kMaxStages) {
        throw DecodeError("ns", fmt::format("NS={} outside [1,{}]", ns, space::kMaxStages));
    }
    auto field = [&](int s, int f) { return values[encoding_index(s, f)]; };
    auto check = [&](int s, const char* name, int value, int lo, int hi) {
        if (value < lo || value > hi) {
            throw DecodeError(fmt::format("stage[{}].{}", s, name), fmt::format("value {} outside [{},{}]", value, lo, hi));
        }
    };

    ArchSpec spec;
    spec.stages.reserve(static_cast<std::size_t>(ns));
    for (int s = 0; s < ns; ++s) {
        StageSpec st;
        check(s, "la", field(s, 0), 0, 1);
        check(s, "nb", field(s, 1), 1, space::kMaxBlocks);
        check(s, "ef", field(s, 2), 1, 1 << 20);
        check(s, "sk", field(s, 3), 0, 1);
        check(s, "ci", field(s, 4), 0, space::kMaxChannelIncrement);
        st.la = field(s, 0) == 1;
        st.nb = field(s, 1);
        st.ef = field(s, 2);
        st.sk = field(s, 3) == 1;
        st.ci = field(s, 4);
        for (int e = 0; e < space::kEdgesPerBlock; ++e) {
            const int code = field(s, 5 + e);
            if (code < 0 || code >= kNumEdgeOps) {
                throw DecodeError(fmt::format("stage[{}].e{}", s, e), fmt::format("edge code {} outside [0,7]", code));
            }
            st.edges[static_cast<std::size_t>(e)] = static_cast<EdgeOp>(code);
        }
        if (NonIdentityCount(st) == 0) {
            throw DecodeError(fmt::format("stage[{}].edges", s), "all four edges are identity");
        }
        spec.stages.push_back(st);
    }
    return spec;
}

ArchSpec decode(const EncodingVector& vec) { return decode(std::span<const int>(vec.values)); }

ShapeTable infer_shapes(const ArchSpec& spec, ImageShape input, int batch) {
    const ValidationReport report = validate(spec);
    if (!report.ok()) throw ValidationError("cannot infer shapes: " + report.summary());
    if (batch < 1) throw ShapeError(fmt::format("batch must be >= 1, got {}", batch));
    const long long min_side = 1LL << spec.num_stages();
    if (input.height < min_side || input.width < min_side) {
        throw ShapeError(fmt::format("input {}x{} too small for {} stride-2 stages (need >= {})", input.height,
                                     input.width, spec.num_stages(), min_side));
    }

    ShapeTable table;
    table.batch = batch;
    table.input = input;
    TensorShape cur{input.height, input.width, input.channels};

    for (int s = 0; s < spec.num_stages(); ++s) {
        const StageSpec& st = spec.stages[static_cast<std::size_t>(s)];
        const long long out_c = stage_output_channels(s + 1, st.ci);
        const long long mid_c = out_c * st.ef;
        const int conv_edges = NonIdentityCount(st);

        for (int b = 0; b < st.nb; ++b) {
            const TensorShape block_in = cur;
            int j = 0;
            for (int e = 0; e < space::kEdgesPerBlock; ++e) {
                const EdgeOp op = st.edges[static_cast<std::size_t>(e)];
                if (IsIdentity(op)) {
                    table.edges.push_back({s, b, e, op, 1, cur, cur, false, false});
                    continue;
                }
                const bool last = j == conv_edges - 1;
                const int stride = (b == 0 && j == 0) ? 2 : 1;
                TensorShape out{CeilDiv(cur.h, stride), CeilDiv(cur.w, stride), last ? out_c : mid_c};
                table.edges.push_back({s, b, e, op, stride, cur, out, !(last && !st.la), last});
                cur = out;
                ++j;
            }
            table.blocks.push_back({s, b, st.sk && b > 0, block_in, cur});
        }
    }
    table.output = cur;
    return table;
}

ArchSpec sample_random(SeededRandom& rng, const SpaceConstraints& c) {
    ArchSpec spec;
    const int ns = rng.uniform_int(c.min_stages, c.max_stages);
    spec.stages.resize(static_cast<std::size_t>(ns));
    for (StageSpec& st : spec.stages) {
        st.la = rng.coin();
        st.nb = rng.uniform_int(c.min_blocks, c.max_blocks);
        st.ef = rng.uniform_int(1, c.max_ef);
        st.sk = rng.coin();
        st.ci = rng.uniform_int(0, c.max_ci);
        do {
            for (EdgeOp& op : st.edges) op = static_cast<EdgeOp>(rng.uniform_int(0, kNumEdgeOps - 1));
        } while (NonIdentityCount(st) == 0);
    }
    return spec;
}

ArchSpec mutate(const ArchSpec& spec, SeededRandom& rng, const SpaceConstraints& c) {
    if (spec.stages.empty()) throw ValidationError("cannot mutate an empty architecture");
    // LA/SK toggles are always legal, so the loop terminates.
    for (;;) {
        ArchSpec out = spec;
        StageSpec& st = out.stages[static_cast<std::size_t>(rng.uniform_int(0, out.num_stages() - 1))];
        const int step = rng.coin() ? 1 : -1;
        switch (rng.uniform_int(0, 5)) {
            case 0: {
                EdgeOp& op = st.edges[static_cast<std::size_t>(rng.uniform_int(0, space::kEdgesPerBlock - 1))];
                int code = rng.uniform_int(0, kNumEdgeOps - 2);
                if (code >= static_cast<int>(op)) ++code;
                op = static_cast<EdgeOp>(code);
                if (NonIdentityCount(st) == 0) continue;
                break;
            }
            case 1:
                if (st.nb + step < c.min_blocks || st.nb + step > c.max_blocks) continue;
                st.nb += step;
                break;
            case 2:
                st.la = !st.la;
                break;
            case 3:
                st.sk = !st.sk;
                break;
            case 4:
                if (st.ci + step < 0 || st.ci + step > c.max_ci) continue;
                st.ci += step;
                break;
            default:
                if (st.ef + step < 1 || st.ef + step > c.max_ef) continue;
                st.ef += step;
                break;
        }
        return out;
    }
}

}  // namespace isynas
