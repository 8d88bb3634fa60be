// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/search_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <set>

#include "isynas/io.hpp"

namespace isynas {

void MetaDataset::append(const MetaRecord& record) {
    (void)decode(record.encoding);
    records_.push_back(record);
}

bool MetaDataset::contains(const EncodingVector& enc) const noexcept {
    return std::any_of(records_.begin(), records_.end(), [&](const MetaRecord& r) { return r.encoding == enc; });
}

// ---------------------------------------------------------------------------
// propose

std::vector<ArchSpec> propose(const ProposalConfig& config, const Surrogate& accuracy, const Surrogate& latency,
                              SeededRandom& rng, const MetaDataset* parents) {
    if (config.k == 0) return {};
    if (config.pool_size == 0) throw SearchError("proposal pool size must be positive");

    std::vector<EncodingVector> elite;
    if (parents && !parents->empty()) {
        std::vector<const MetaRecord*> ranked;
        for (const auto& r : parents->records()) ranked.push_back(&r);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const MetaRecord* a, const MetaRecord* b) { return a->response > b->response; });
        ranked.resize(std::min(ranked.size(), std::max<std::size_t>(config.parent_pool, 1)));
        for (const auto* r : ranked) elite.push_back(r->encoding);
    }

    std::set<EncodingVector> seen;
    std::vector<EncodingVector> pool;
    pool.reserve(config.pool_size);
    // bounded so a tiny space cannot stall the loop
    const std::size_t max_draws = config.pool_size * 20;
    for (std::size_t draw = 0; pool.size() < config.pool_size && draw < max_draws; ++draw) {
        ArchSpec cand;
        if (!elite.empty() && rng.coin(config.mutation_share)) {
            cand = decode(elite[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(elite.size()) - 1))]);
            const int steps = rng.uniform_int(1, 3);
            for (int i = 0; i < steps; ++i) cand = mutate(cand, rng, config.space);
        } else {
            cand = sample_random(rng, config.space);
        }
        EncodingVector enc = encode(cand);
        if (parents && parents->contains(enc)) continue;
        if (seen.insert(enc).second) pool.push_back(enc);
    }

    const std::vector<double> lat = latency.predict_batch(pool);
    const std::vector<double> acc = accuracy.predict_batch(pool);

    std::vector<std::size_t> feasible;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (lat[i] <= config.budget_ms) feasible.push_back(i);
    if (feasible.empty()) {
        const double lo = lat.empty() ? 0.0 : *std::min_element(lat.begin(), lat.end());
        throw SearchError(fmt::format(
            "no candidate meets the latency budget of {} ms (lowest predicted latency {} ms); "
            "use a larger budget",
            config.budget_ms, lo));
    }

    std::sort(feasible.begin(), feasible.end(), [&](std::size_t a, std::size_t b) {
        if (acc[a] != acc[b]) return acc[a] > acc[b];
        return pool[a] < pool[b];
    });
    feasible.resize(std::min(feasible.size(), config.k));

    std::vector<ArchSpec> out;
    out.reserve(feasible.size());
    for (std::size_t i : feasible) out.push_back(decode(pool[i]));
    return out;
}

// ---------------------------------------------------------------------------
// search loops

namespace {

void update_best(SearchResult& result, const ArchSpec& spec, const Evaluation& ev, double budget_ms) {
    if (ev.latency_ms <= budget_ms && ev.response > result.best_response) {
        result.best_response = ev.response;
        result.best = spec;
    }
}

Evaluation evaluate_or_abort(const ResponseFunction& evaluator, const ArchSpec& spec, const SearchResult& result,
                             const std::string& checkpoint) {
    try {
        Evaluation ev = evaluator(spec);
        if (!std::isfinite(ev.response) || !std::isfinite(ev.latency_ms))
            throw SearchError("evaluator returned a non-finite response or latency");
        return ev;
    } catch (const std::exception& e) {
        std::string msg = fmt::format("evaluator failed after {} records: {}", result.history.size(), e.what());
        if (!checkpoint.empty()) {
            io::write_meta_csv(checkpoint, result.history);
            msg += fmt::format(" (partial history written to {})", checkpoint);
        }
        throw SmboAborted(msg, result.history);
    }
}

void record(SearchResult& result, const ArchSpec& spec, const Evaluation& ev, double budget_ms) {
    result.history.append({encode(spec), ev.response, ev.latency_ms});
    update_best(result, spec, ev, budget_ms);
}

}  // namespace

SearchResult run_smbo(const SmboConfig& config, const ResponseFunction& evaluator, SeededRandom& rng) {
    if (!evaluator) throw SearchError("run_smbo needs an evaluator");
    if (config.rounds > 0 && config.warmup < std::max<std::size_t>(config.surrogate.min_records, 2))
        throw SearchError(fmt::format("warm-up of {} is below the surrogate minimum of {} records", config.warmup,
                                      std::max<std::size_t>(config.surrogate.min_records, 2)));

    SearchResult result;
    for (std::size_t i = 0; i < config.warmup; ++i) {
        const ArchSpec spec = sample_random(rng, config.space);
        record(result, spec, evaluate_or_abort(evaluator, spec, result, config.checkpoint_path), config.budget_ms);
    }

    ProposalConfig pc;
    pc.pool_size = config.pool_size;
    pc.budget_ms = config.budget_ms;
    pc.k = config.per_round;
    pc.space = config.space;
    for (std::size_t round = 0; round < config.rounds; ++round) {
        SurrogateConfig sc = config.surrogate;
        sc.seed = config.surrogate.seed + round;
        const auto acc = fit_surrogate(result.history, SurrogateTarget::Accuracy, sc);
        const auto lat = fit_surrogate(result.history, SurrogateTarget::Latency, sc);
        const auto batch = propose(pc, *acc, *lat, rng, &result.history);
        for (const ArchSpec& spec : batch)
            record(result, spec, evaluate_or_abort(evaluator, spec, result, config.checkpoint_path),
                   config.budget_ms);
    }
    return result;
}

SearchResult random_search(std::size_t evaluations, double budget_ms, const ResponseFunction& evaluator,
                           SeededRandom& rng, const SpaceConstraints& space) {
    if (!evaluator) throw SearchError("random_search needs an evaluator");
    SearchResult result;
    for (std::size_t i = 0; i < evaluations; ++i) {
        const ArchSpec spec = sample_random(rng, space);
        record(result, spec, evaluate_or_abort(evaluator, spec, result, {}), budget_ms);
    }
    return result;
}

// ---------------------------------------------------------------------------
// SyntheticObjective

SyntheticObjective::SyntheticObjective(const Options& options) : options_(options) {
    // Per-op quality shared by every edge slot, perturbed per slot, so the
    // signal is structured enough to learn from a few hundred samples.
    SeededRandom rng(options.seed ^ 0x5eed0b1ec7ULL);
    std::array<double, kNumEdgeOps> op_value{};
    for (double& v : op_value) v = rng.normal(0.0, 1.0);
    op_value[static_cast<int>(EdgeOp::Identity)] = 0.0;
    const double la = rng.normal(0.0, 0.5), sk = rng.normal(0.5, 0.5), ef = rng.normal(0.0, 0.5),
                 ci = rng.normal(0.5, 0.5);

    feature_weights_.assign(kFeatureDim, 0.0);
    feature_weights_[0] = rng.normal(0.0, 0.5);
    for (int s = 0; s < space::kMaxStages; ++s) {
        double* g = feature_weights_.data() + 1 + s * kStageFeatureDim;
        g[0] = la + rng.normal(0.0, 0.1);
        g[1] = sk + rng.normal(0.0, 0.1);
        g[2] = 0.0;  // depth enters through the concave term
        g[3] = ef + rng.normal(0.0, 0.1);
        g[4] = ci + rng.normal(0.0, 0.1);
        for (int e = 0; e < space::kEdgesPerBlock; ++e)
            for (int op = 0; op < kNumEdgeOps; ++op)
                g[5 + e * kNumEdgeOps + op] = 0.25 * (op_value[op] + rng.normal(0.0, 0.3));
    }
}

double SyntheticObjective::clean_score(const ArchSpec& spec) const {
    const auto f = encode_features(encode(spec));
    const double linear = std::inner_product(f.begin(), f.end(), feature_weights_.begin(), 0.0);
    double depth = 0.0;
    for (const auto& st : spec.stages) depth += st.nb;
    const double gap = (depth - options_.depth_target) / options_.depth_target;
    return linear - options_.depth_weight * gap * gap;
}

double SyntheticObjective::latency_ms(const ArchSpec& spec) const {
    return latency_estimate(arch_cost(spec, options_.cost), options_.weights);
}

Evaluation SyntheticObjective::operator()(const ArchSpec& spec) const {
    const EncodingVector enc = encode(spec);
    // noise keyed by (seed, architecture) so a re-evaluation repeats itself
    std::uint64_t h = options_.seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
    for (int v : enc.values) h = (h ^ static_cast<std::uint64_t>(v + 1)) * 0x100000001b3ULL;
    SeededRandom noise(h);
    return {clean_score(spec) + noise.normal(0.0, options_.noise), latency_ms(spec)};
}

}  // namespace isynas
