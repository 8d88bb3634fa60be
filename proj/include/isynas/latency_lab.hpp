// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Regression families for latency ~ (matrix ops, vector ops, data ops), and
// the synthetic measurement generator used as a stand-in for device data.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isynas/mem_measure.hpp"

namespace isynas {

struct LatencyRow {
    std::string arch_id;
    double matrix_ops = 0.0;
    double vector_ops = 0.0;
    double data_ops = 0.0;
    double latency_ms = 0.0;
};

struct LatencyDataset {
    std::vector<LatencyRow> rows;

    /// Throws FitError unless there are >= 4 rows, all finite, latencies > 0.
    void check() const;
};

enum class FitMethod { Ols, Ridge, BayesRidge, Omp, Sgd, Svr };

inline constexpr std::array<FitMethod, 6> kAllFitMethods{FitMethod::Ols, FitMethod::Ridge, FitMethod::BayesRidge,
                                                         FitMethod::Omp, FitMethod::Sgd, FitMethod::Svr};

std::string_view method_name(FitMethod method) noexcept;
std::optional<FitMethod> parse_method(std::string_view name) noexcept;

/// Hyperparameters for every family. Features (and, for the iterative
/// methods, the target) are standardized internally; reported coefficients
/// are always on the raw scale.
struct FitHyperparams {
    double ridge_alpha = 1.0;  // L2 penalty on standardized features

    double bayes_tol = 1e-8;
    int bayes_max_iter = 300;

    int omp_nonzero = 3;

    double epsilon = 0.01;  // insensitivity band of the squared eps-insensitive loss, in target std units

    int sgd_epochs = 200;
    double sgd_eta0 = 0.01;
    double sgd_power_t = 0.25;  // eta_t = eta0 / t^power_t
    double sgd_alpha = 1e-4;    // L2 penalty

    int svr_epochs = 1000;
    double svr_c = 1.0;

    std::uint64_t seed = 0;
};

struct FitDiagnostics {
    double r2 = 0.0;
    double mape = 0.0;  // percent
};

struct FittedLatencyModel {
    FitMethod method = FitMethod::Ols;
    MemWeights weights;
    FitDiagnostics train;
    int iterations = 0;
    std::string settings;  // hyperparameters that shaped this fit, human readable
};

/// Throws FitError on invalid data, and for OLS on a rank-deficient design
/// (the message points at ridge).
FittedLatencyModel fit(const LatencyDataset& data, FitMethod method, const FitHyperparams& hp = {});

/// R^2 = 1 - SSres/SStot, MAPE = mean(|yhat - y| / y) * 100. Throws FitError
/// on empty data or any zero latency.
FitDiagnostics evaluate(const MemWeights& w, const LatencyDataset& data);
FitDiagnostics evaluate(const FittedLatencyModel& model, const LatencyDataset& data);

/// Throws FitError if the fitted matrix weight is not positive.
MemWeights derive_mem_weights(const FittedLatencyModel& model);

struct SyntheticLatencyConfig {
    std::size_t rows = 400;
    double noise = 0.05;  // multiplicative Gaussian noise, relative std
    std::uint64_t seed = 2022;
    MemWeights truth;
    // log-uniform draw ranges for the three counts
    double m_lo = 1e8, m_hi = 2e9;
    double v_lo = 1e5, v_hi = 2e8;
    double d_lo = 1e6, d_hi = 1e8;
    double min_latency_ms = 0.25;  // draws with a smaller noiseless latency are rejected
};

LatencyDataset synthesize_latency_dataset(const SyntheticLatencyConfig& config = {});

}  // namespace isynas
