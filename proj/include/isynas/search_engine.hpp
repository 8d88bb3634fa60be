// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Surrogate-model-based search: a meta-dataset of evaluated architectures,
// accuracy and latency surrogates fitted on it, latency-filtered proposals,
// and the loop that ties them together.
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isynas/arch_ir.hpp"
#include "isynas/cost_model.hpp"
#include "isynas/error.hpp"
#include "isynas/mem_measure.hpp"
#include "isynas/random.hpp"

namespace isynas {

struct MetaRecord {
    EncodingVector encoding;
    double response = 0.0;  // accuracy-like, higher is better
    double latency_ms = 0.0;
};

/// Append-only search history.
class MetaDataset {
public:
    /// Throws DecodeError if the encoding is not a valid architecture.
    void append(const MetaRecord& record);

    std::span<const MetaRecord> records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    bool contains(const EncodingVector& enc) const noexcept;

private:
    std::vector<MetaRecord> records_;
};

// ---------------------------------------------------------------------------
// Features

/// Per stage: LA, SK, NB/20, EF/6, CI/2, then a one-hot block of 8 per edge.
inline constexpr std::size_t kStageFeatureDim = 5 + 4 * kNumEdgeOps;
/// Leading NS/6 plus six stage blocks; blocks past NS are all zero.
inline constexpr std::size_t kFeatureDim = 1 + space::kMaxStages * kStageFeatureDim;

std::vector<double> encode_features(const EncodingVector& vec);

// ---------------------------------------------------------------------------
// Surrogates

enum class SurrogateTarget { Accuracy, Latency };
enum class SurrogateKind { LinearBaseline, Recurrent };

std::string_view surrogate_kind_name(SurrogateKind kind) noexcept;
std::optional<SurrogateKind> parse_surrogate_kind(std::string_view name) noexcept;

struct SurrogateConfig {
    SurrogateKind kind = SurrogateKind::LinearBaseline;
    std::size_t min_records = 8;
    double ridge_alpha = 1.0;

    // recurrent encoder
    int hidden = 16;
    int epochs = 400;
    double learning_rate = 0.01;
    std::uint64_t seed = 0;
};

class Surrogate {
public:
    virtual ~Surrogate() = default;

    virtual void fit(const MetaDataset& history, SurrogateTarget target) = 0;
    virtual double predict(const EncodingVector& vec) const = 0;
    virtual std::vector<double> predict_batch(std::span<const EncodingVector> vecs) const;
    virtual SurrogateKind kind() const noexcept = 0;
};

/// Ridge regression on encode_features with an unpenalized intercept.
class LinearSurrogate final : public Surrogate {
public:
    explicit LinearSurrogate(double ridge_alpha = 1.0, std::size_t min_records = 8)
        : alpha_(ridge_alpha), min_records_(min_records) {}

    void fit(const MetaDataset& history, SurrogateTarget target) override;
    double predict(const EncodingVector& vec) const override;
    std::vector<double> predict_batch(std::span<const EncodingVector> vecs) const override;
    SurrogateKind kind() const noexcept override { return SurrogateKind::LinearBaseline; }

    std::span<const double> weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }

private:
    double alpha_;
    std::size_t min_records_;
    std::vector<double> weights_;
    double bias_ = 0.0;
};

/// Elman recurrent encoder run over the NS stage groups (tanh cell), with a
/// linear head on the final state. Trained full-batch with Adam on squared
/// error of the standardized target.
class RecurrentSurrogate final : public Surrogate {
public:
    explicit RecurrentSurrogate(const SurrogateConfig& config) : config_(config) {}
    ~RecurrentSurrogate() override;

    void fit(const MetaDataset& history, SurrogateTarget target) override;
    double predict(const EncodingVector& vec) const override;
    SurrogateKind kind() const noexcept override { return SurrogateKind::Recurrent; }

    double final_training_loss() const noexcept { return final_loss_; }

private:
    struct Params;
    SurrogateConfig config_;
    std::shared_ptr<const Params> params_;
    double y_mean_ = 0.0;
    double y_scale_ = 1.0;
    double final_loss_ = 0.0;
};

/// Throws SearchError when history holds fewer than config.min_records.
std::unique_ptr<Surrogate> fit_surrogate(const MetaDataset& history, SurrogateTarget target,
                                         const SurrogateConfig& config = {});

// ---------------------------------------------------------------------------
// Proposals and the search loop

struct ProposalConfig {
    std::size_t pool_size = 1000;
    double budget_ms = std::numeric_limits<double>::infinity();
    std::size_t k = 10;
    double mutation_share = 0.5;  // of the pool, when parents are given
    std::size_t parent_pool = 10;  // mutate among the best this many records
    SpaceConstraints space;
};

/// Draws a candidate pool (random samples plus mutations of the best parents,
/// minus anything already in `parents`), drops candidates whose predicted
/// latency exceeds the budget and returns the top k by predicted accuracy.
/// Ties break on the encoding's lexicographic order. Throws SearchError if no
/// candidate is feasible.
std::vector<ArchSpec> propose(const ProposalConfig& config, const Surrogate& accuracy, const Surrogate& latency,
                              SeededRandom& rng, const MetaDataset* parents = nullptr);

struct Evaluation {
    double response = 0.0;
    double latency_ms = 0.0;
};

using ResponseFunction = std::function<Evaluation(const ArchSpec&)>;

struct SmboConfig {
    std::size_t warmup = 50;
    std::size_t rounds = 10;
    std::size_t per_round = 10;
    std::size_t pool_size = 1000;
    double budget_ms = std::numeric_limits<double>::infinity();
    SurrogateConfig surrogate;
    SpaceConstraints space;
    std::string checkpoint_path;  // meta-dataset CSV written if the evaluator fails
};

struct SearchResult {
    MetaDataset history;
    std::optional<ArchSpec> best;  // best response among budget-feasible records
    double best_response = -std::numeric_limits<double>::infinity();
};

/// Raised when the evaluator throws; carries everything evaluated so far.
class SmboAborted : public SearchError {
public:
    SmboAborted(const std::string& what, MetaDataset partial)
        : SearchError(what), partial_(std::move(partial)) {}
    const MetaDataset& partial() const noexcept { return partial_; }

private:
    MetaDataset partial_;
};

SearchResult run_smbo(const SmboConfig& config, const ResponseFunction& evaluator, SeededRandom& rng);

/// Baseline: `evaluations` uniform samples.
SearchResult random_search(std::size_t evaluations, double budget_ms, const ResponseFunction& evaluator,
                           SeededRandom& rng, const SpaceConstraints& space = {});

// ---------------------------------------------------------------------------
// Synthetic response used in place of training runs

/// Deterministic stand-in for "train and measure": response is a seeded
/// weighted feature score with a concave depth term and per-architecture
/// noise; latency is the linear latency model over the cost counts.
class SyntheticObjective {
public:
    struct Options {
        std::uint64_t seed = 0;
        double noise = 0.02;
        double depth_target = 24.0;   // total blocks where the depth term peaks
        double depth_weight = 0.25;
        CostConfig cost;
        MemWeights weights;
    };

    explicit SyntheticObjective(const Options& options);

    Evaluation operator()(const ArchSpec& spec) const;
    double clean_score(const ArchSpec& spec) const;
    double latency_ms(const ArchSpec& spec) const;

private:
    Options options_;
    std::vector<double> feature_weights_;
};

}  // namespace isynas
