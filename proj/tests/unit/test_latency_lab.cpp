// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include <cmath>

#include "isynas/error.hpp"
#include "isynas/latency_lab.hpp"
#include "isynas/random.hpp"

using namespace isynas;

namespace {

LatencyDataset noiseless(const MemWeights& w, std::size_t n, std::uint64_t seed) {
    SeededRandom rng(seed);
    LatencyDataset ds;
    for (std::size_t i = 0; i < n; ++i) {
        LatencyRow r;
        r.arch_id = "a" + std::to_string(i);
        r.matrix_ops = rng.uniform(1e8, 2e9);
        r.vector_ops = rng.uniform(1e5, 2e8);
        r.data_ops = rng.uniform(1e6, 1e8);
        r.latency_ms = w.w0 + w.wm * r.matrix_ops + w.wv * r.vector_ops + w.wd * r.data_ops;
        ds.rows.push_back(r);
    }
    return ds;
}

}  // namespace

TEST_CASE("method names round-trip") {
    for (FitMethod m : kAllFitMethods) CHECK(parse_method(method_name(m)) == m);
    CHECK_FALSE(parse_method("lasso").has_value());
}

TEST_CASE("OLS recovers exact weights from noiseless data") {
    const MemWeights truth{1.5, 3e-9, 2e-9, 4e-8};
    const auto fitted = fit(noiseless(truth, 60, 3), FitMethod::Ols);
    CHECK(fitted.weights.w0 == doctest::Approx(truth.w0).epsilon(1e-8));
    CHECK(fitted.weights.wm == doctest::Approx(truth.wm).epsilon(1e-8));
    CHECK(fitted.weights.wv == doctest::Approx(truth.wv).epsilon(1e-8));
    CHECK(fitted.weights.wd == doctest::Approx(truth.wd).epsilon(1e-8));
    CHECK(fitted.train.r2 == doctest::Approx(1.0));
    CHECK(fitted.train.mape < 1e-6);
}

TEST_CASE("OLS residuals are orthogonal to every regressor") {
    const auto ds = synthesize_latency_dataset({});
    const auto w = fit(ds, FitMethod::Ols).weights;
    double s1 = 0, sm = 0, sv = 0, sd = 0, scale_m = 0, scale_v = 0, scale_d = 0, scale_1 = 0;
    for (const auto& r : ds.rows) {
        const double e = r.latency_ms - (w.w0 + w.wm * r.matrix_ops + w.wv * r.vector_ops + w.wd * r.data_ops);
        s1 += e;
        sm += e * r.matrix_ops;
        sv += e * r.vector_ops;
        sd += e * r.data_ops;
        scale_1 += std::abs(r.latency_ms);
        scale_m += std::abs(r.latency_ms * r.matrix_ops);
        scale_v += std::abs(r.latency_ms * r.vector_ops);
        scale_d += std::abs(r.latency_ms * r.data_ops);
    }
    CHECK(std::abs(s1) / scale_1 < 1e-9);
    CHECK(std::abs(sm) / scale_m < 1e-9);
    CHECK(std::abs(sv) / scale_v < 1e-9);
    CHECK(std::abs(sd) / scale_d < 1e-9);
}

TEST_CASE("collinear features make OLS refuse and point at ridge") {
    auto ds = noiseless({1, 1e-9, 1e-9, 1e-8}, 20, 9);
    for (auto& r : ds.rows) {
        r.data_ops = 3.0 * r.matrix_ops;
        r.latency_ms = 1 + 1e-9 * r.matrix_ops + 1e-9 * r.vector_ops + 1e-8 * r.data_ops;
    }
    try {
        (void)fit(ds, FitMethod::Ols);
        FAIL("expected FitError");
    } catch (const FitError& e) {
        CHECK(std::string(e.what()).find("ridge") != std::string::npos);
    }
    FitHyperparams hp;
    hp.ridge_alpha = 1e-6;
    const auto ridge = fit(ds, FitMethod::Ridge, hp);
    CHECK(std::isfinite(ridge.weights.wm));
    CHECK(ridge.train.r2 > 0.999);
}

TEST_CASE("every method fits the shipped-style synthetic data well") {
    const auto ds = synthesize_latency_dataset({});
    const auto ols = fit(ds, FitMethod::Ols);
    for (FitMethod m : kAllFitMethods) {
        CAPTURE(method_name(m));
        const auto f = fit(ds, m);
        CHECK(f.train.r2 > 0.95);
        CHECK(f.train.r2 <= ols.train.r2 + 1e-9);
        CHECK_FALSE(f.settings.empty());
    }
    const auto omp = fit(ds, FitMethod::Omp);
    CHECK(omp.weights.wm == doctest::Approx(ols.weights.wm).epsilon(1e-9));
    CHECK(omp.weights.wd == doctest::Approx(ols.weights.wd).epsilon(1e-9));
}

TEST_CASE("OLS lands near the generating weights") {
    const auto ds = synthesize_latency_dataset({});
    const MemWeights truth;
    const MemWeights w = derive_mem_weights(fit(ds, FitMethod::Ols));
    CHECK(std::abs(w.wm - truth.wm) / std::abs(truth.wm) < 0.05);
    CHECK(std::abs(w.wd - truth.wd) / std::abs(truth.wd) < 0.05);
}

TEST_CASE("evaluate reproduces the training diagnostics") {
    const auto ds = synthesize_latency_dataset({});
    const auto f = fit(ds, FitMethod::Ridge);
    const auto d = evaluate(f, ds);
    CHECK(d.r2 == doctest::Approx(f.train.r2));
    CHECK(d.mape == doctest::Approx(f.train.mape));
}

TEST_CASE("dataset checks") {
    LatencyDataset tiny = noiseless({}, 3, 1);
    CHECK_THROWS_AS(fit(tiny, FitMethod::Ols), FitError);
    LatencyDataset bad = noiseless({}, 10, 1);
    bad.rows[4].latency_ms = 0.0;
    CHECK_THROWS_AS(bad.check(), FitError);
    bad.rows[4].latency_ms = NAN;
    CHECK_THROWS_AS(bad.check(), FitError);
    LatencyDataset flat = noiseless({}, 10, 1);
    for (auto& r : flat.rows) r.vector_ops = 5.0;
    CHECK_THROWS_AS(fit(flat, FitMethod::Ridge), FitError);
}

TEST_CASE("synthetic generator is deterministic per seed") {
    SyntheticLatencyConfig c;
    c.rows = 50;
    const auto a = synthesize_latency_dataset(c);
    const auto b = synthesize_latency_dataset(c);
    REQUIRE(a.rows.size() == 50);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].latency_ms == b.rows[i].latency_ms);
        CHECK(a.rows[i].latency_ms >= c.min_latency_ms * 0.5);
    }
    c.seed = 7;
    CHECK(synthesize_latency_dataset(c).rows[0].latency_ms != a.rows[0].latency_ms);
}

TEST_CASE("seeded iterative fits are reproducible") {
    const auto ds = synthesize_latency_dataset({});
    for (FitMethod m : {FitMethod::Sgd, FitMethod::Svr}) {
        FitHyperparams hp;
        hp.seed = 11;
        CHECK(fit(ds, m, hp).weights == fit(ds, m, hp).weights);
    }
}
