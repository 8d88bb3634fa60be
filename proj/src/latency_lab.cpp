// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/latency_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "isynas/error.hpp"
#include "isynas/kernels.hpp"
#include "isynas/random.hpp"

namespace isynas {
namespace {

constexpr int kFeatures = 3;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

Matrix RawFeatures(const LatencyDataset& data) {
    Matrix x(static_cast<Eigen::Index>(data.rows.size()), kFeatures);
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        x(r, 0) = data.rows[i].matrix_ops;
        x(r, 1) = data.rows[i].vector_ops;
        x(r, 2) = data.rows[i].data_ops;
    }
    return x;
}

Vector Targets(const LatencyDataset& data) {
    Vector y(static_cast<Eigen::Index>(data.rows.size()));
    for (std::size_t i = 0; i < data.rows.size(); ++i) y(static_cast<Eigen::Index>(i)) = data.rows[i].latency_ms;
    return y;
}

/// z = (x - mean) / scale, column-wise.
struct Standardized {
    Matrix z;
    Eigen::RowVectorXd mean;
    Eigen::RowVectorXd scale;
};

Standardized Standardize(const Matrix& x) {
    Standardized s;
    const double n = static_cast<double>(x.rows());
    s.mean = x.colwise().mean();
    s.z = x.rowwise() - s.mean;
    s.scale = (s.z.colwise().squaredNorm() / n).cwiseSqrt();
    for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
        if (!(s.scale(j) > 0.0)) throw FitError(fmt::format("feature {} is constant; cannot fit", j));
    }
    s.z = s.z.array().rowwise() / s.scale.array();
    return s;
}

/// Maps coefficients fitted on standardized features (with target mean
/// `y_mean` and target scale `y_scale`) back to the raw latency model.
MemWeights Destandardize(const Standardized& s, const Vector& beta_z, double intercept_z, double y_mean,
                         double y_scale) {
    double w[kFeatures];
    double w0 = y_mean + y_scale * intercept_z;
    for (int j = 0; j < kFeatures; ++j) {
        w[j] = y_scale * beta_z(j) / s.scale(j);
        w0 -= w[j] * s.mean(j);
    }
    return {w0, w[0], w[1], w[2]};
}

MemWeights FitOls(const LatencyDataset& data) {
    const Matrix x = RawFeatures(data);
    const Vector y = Targets(data);
    Matrix design(x.rows(), kFeatures + 1);
    design.col(0).setOnes();
    design.rightCols(kFeatures) = x;
    // column scaling keeps the QR well conditioned across 1e0..1e11 magnitudes
    const Eigen::RowVectorXd scale = design.cwiseAbs().colwise().maxCoeff();
    for (Eigen::Index j = 0; j < scale.size(); ++j) {
        if (!(scale(j) > 0.0)) {
            throw FitError("design matrix is rank-deficient (all-zero feature); use ridge instead of ols");
        }
    }
    const Matrix scaled = design.array().rowwise() / scale.array();
    Eigen::ColPivHouseholderQR<Matrix> qr(scaled);
    qr.setThreshold(1e-10);
    if (qr.rank() < scaled.cols()) {
        throw FitError(fmt::format("design matrix is rank-deficient (rank {} < {}); use ridge instead of ols",
                                   qr.rank(), scaled.cols()));
    }
    const Vector c = qr.solve(y).array() / scale.transpose().array();
    return {c(0), c(1), c(2), c(3)};
}

MemWeights FitRidge(const LatencyDataset& data, double alpha) {
    if (alpha < 0.0) throw FitError("ridge penalty must be non-negative");
    const Standardized s = Standardize(RawFeatures(data));
    const Vector y = Targets(data);
    const double y_mean = y.mean();
    Matrix gram = s.z.transpose() * s.z;
    gram.diagonal().array() += alpha;
    const Vector beta = gram.ldlt().solve(s.z.transpose() * (y.array() - y_mean).matrix());
    return Destandardize(s, beta, 0.0, y_mean, 1.0);
}

MemWeights FitBayesRidge(const LatencyDataset& data, const FitHyperparams& hp, int& iterations) {
    // Evidence maximization over the noise precision (alpha) and the weight
    // precision (lambda) with weak Gamma(1e-6, 1e-6) hyperpriors.
    constexpr double kA1 = 1e-6, kA2 = 1e-6, kL1 = 1e-6, kL2 = 1e-6;
    const Standardized s = Standardize(RawFeatures(data));
    const Vector y = Targets(data);
    const double y_mean = y.mean();
    const Vector yc = y.array() - y_mean;
    const double n = static_cast<double>(y.size());

    Eigen::SelfAdjointEigenSolver<Matrix> eig(s.z.transpose() * s.z);
    const Vector ev = eig.eigenvalues();
    const Matrix vecs = eig.eigenvectors();
    const Vector zty = s.z.transpose() * yc;

    double alpha = 1.0 / (yc.squaredNorm() / n + 1e-12);
    double lambda = 1.0;
    Vector coef = Vector::Zero(kFeatures);
    iterations = 0;
    for (int it = 0; it < hp.bayes_max_iter; ++it) {
        iterations = it + 1;
        const Vector shrink = (ev.array() + lambda / alpha).inverse();
        const Vector next = vecs * shrink.asDiagonal() * vecs.transpose() * zty;
        const double rss = (yc - s.z * next).squaredNorm();
        const double gamma = (alpha * ev.array() / (lambda + alpha * ev.array())).sum();
        lambda = (gamma + 2.0 * kL1) / (next.squaredNorm() + 2.0 * kL2);
        alpha = (n - gamma + 2.0 * kA1) / (rss + 2.0 * kA2);
        const double change = (next - coef).cwiseAbs().sum();
        coef = next;
        if (it > 0 && change < hp.bayes_tol) break;
    }
    // final coefficients at the converged precisions
    const Vector shrink = (ev.array() + lambda / alpha).inverse();
    coef = vecs * shrink.asDiagonal() * vecs.transpose() * zty;
    return Destandardize(s, coef, 0.0, y_mean, 1.0);
}

MemWeights FitOmp(const LatencyDataset& data, int nonzero) {
    if (nonzero < 1) throw FitError("omp needs at least one nonzero coefficient");
    const Standardized s = Standardize(RawFeatures(data));
    const Vector y = Targets(data);
    const double y_mean = y.mean();
    const Vector yc = y.array() - y_mean;

    std::vector<Eigen::Index> selected;
    Vector residual = yc;
    Vector beta_sel;
    const int steps = std::min(nonzero, kFeatures);
    for (int step = 0; step < steps; ++step) {
        const Vector corr = s.z.transpose() * residual;
        Eigen::Index best = -1;
        double best_abs = -1.0;
        for (Eigen::Index j = 0; j < kFeatures; ++j) {
            if (std::find(selected.begin(), selected.end(), j) != selected.end()) continue;
            if (std::abs(corr(j)) > best_abs) {
                best_abs = std::abs(corr(j));
                best = j;
            }
        }
        selected.push_back(best);
        Matrix sub(s.z.rows(), static_cast<Eigen::Index>(selected.size()));
        for (std::size_t k = 0; k < selected.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = s.z.col(selected[k]);
        beta_sel = sub.colPivHouseholderQr().solve(yc);
        residual = yc - sub * beta_sel;
    }
    Vector beta = Vector::Zero(kFeatures);
    for (std::size_t k = 0; k < selected.size(); ++k) beta(selected[k]) = beta_sel(static_cast<Eigen::Index>(k));
    return Destandardize(s, beta, 0.0, y_mean, 1.0);
}

/// Row-major standardized features and standardized target for the
/// iterative solvers.
struct IterativeProblem {
    Standardized s;
    std::vector<double> rows;  // n x kFeatures, row-major
    std::vector<double> y;
    double y_mean = 0.0;
    double y_scale = 1.0;
};

IterativeProblem MakeIterative(const LatencyDataset& data) {
    IterativeProblem p;
    p.s = Standardize(RawFeatures(data));
    const Vector y = Targets(data);
    p.y_mean = y.mean();
    p.y_scale = std::sqrt((y.array() - p.y_mean).square().mean());
    if (!(p.y_scale > 0.0)) throw FitError("latency column is constant; cannot fit");
    const auto n = static_cast<std::size_t>(y.size());
    p.rows.resize(n * kFeatures);
    p.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < kFeatures; ++j) p.rows[i * kFeatures + static_cast<std::size_t>(j)] = p.s.z(static_cast<Eigen::Index>(i), j);
        p.y[i] = (y(static_cast<Eigen::Index>(i)) - p.y_mean) / p.y_scale;
    }
    return p;
}

MemWeights FitSgd(const LatencyDataset& data, const FitHyperparams& hp, int& iterations) {
    IterativeProblem p = MakeIterative(data);
    const auto& k = kernels::active();
    const std::size_t n = p.y.size();
    std::vector<double> w(kFeatures, 0.0);
    double b = 0.0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SeededRandom rng(hp.seed);
    double t = 1.0;
    for (int epoch = 0; epoch < hp.sgd_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng.engine());
        for (std::size_t i : order) {
            const double* xi = &p.rows[i * kFeatures];
            const double r = b + k.dot(w.data(), xi, kFeatures) - p.y[i];
            const double eta = hp.sgd_eta0 / std::pow(t, hp.sgd_power_t);
            double g = 0.0;
            if (r > hp.epsilon) g = 2.0 * (r - hp.epsilon);
            else if (r < -hp.epsilon) g = 2.0 * (r + hp.epsilon);
            for (double& wj : w) wj *= 1.0 - eta * hp.sgd_alpha;
            if (g != 0.0) {
                k.axpy(-eta * g, xi, w.data(), kFeatures);
                b -= eta * g;
            }
            t += 1.0;
        }
    }
    iterations = hp.sgd_epochs;
    return Destandardize(p.s, Eigen::Map<const Vector>(w.data(), kFeatures), b, p.y_mean, p.y_scale);
}

MemWeights FitSvr(const LatencyDataset& data, const FitHyperparams& hp, int& iterations) {
    // Dual coordinate descent for L2-regularized, squared eps-insensitive
    // (L2-loss) linear SVR. The bias is a constant feature of value 1.
    if (!(hp.svr_c > 0.0)) throw FitError("svr needs C > 0");
    IterativeProblem p = MakeIterative(data);
    constexpr std::size_t kDim = kFeatures + 1;
    const std::size_t n = p.y.size();
    std::vector<double> x(n * kDim);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < kFeatures; ++j) x[i * kDim + static_cast<std::size_t>(j)] = p.rows[i * kFeatures + static_cast<std::size_t>(j)];
        x[i * kDim + kFeatures] = 1.0;
    }
    const auto& k = kernels::active();
    const double lambda = 0.5 / hp.svr_c;
    for (std::size_t i = 0; i < n; ++i) diag[i] = k.dot(&x[i * kDim], &x[i * kDim], kDim) + lambda;

    std::vector<double> beta(n, 0.0);
    std::vector<double> w(kDim, 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SeededRandom rng(hp.seed);
    iterations = 0;
    for (int epoch = 0; epoch < hp.svr_epochs; ++epoch) {
        iterations = epoch + 1;
        std::shuffle(order.begin(), order.end(), rng.engine());
        double max_step = 0.0;
        for (std::size_t i : order) {
            const double* xi = &x[i * kDim];
            const double g = k.dot(w.data(), xi, kDim) - p.y[i] + lambda * beta[i];
            const double h = diag[i];
            const double gp = g + hp.epsilon;
            const double gn = g - hp.epsilon;
            double z;
            if (gp < h * beta[i]) z = -gp / h;
            else if (gn > h * beta[i]) z = -gn / h;
            else z = -beta[i];
            if (z == 0.0) continue;
            beta[i] += z;
            k.axpy(z, xi, w.data(), kDim);
            max_step = std::max(max_step, std::abs(z));
        }
        if (max_step < 1e-12) break;
    }
    return Destandardize(p.s, Eigen::Map<const Vector>(w.data(), kFeatures), w[kFeatures], p.y_mean, p.y_scale);
}

std::string Settings(FitMethod method, const FitHyperparams& hp) {
    switch (method) {
        case FitMethod::Ols: return "closed-form least squares (column-pivoted QR)";
        case FitMethod::Ridge: return fmt::format("alpha={} on standardized features", hp.ridge_alpha);
        case FitMethod::BayesRidge: return fmt::format("tol={} max_iter={}", hp.bayes_tol, hp.bayes_max_iter);
        case FitMethod::Omp: return fmt::format("n_nonzero={}", hp.omp_nonzero);
        case FitMethod::Sgd:
            return fmt::format("loss=squared_epsilon_insensitive epsilon={} epochs={} eta0={} power_t={} alpha={} seed={}",
                               hp.epsilon, hp.sgd_epochs, hp.sgd_eta0, hp.sgd_power_t, hp.sgd_alpha, hp.seed);
        case FitMethod::Svr:
            return fmt::format("loss=squared_epsilon_insensitive epsilon={} C={} max_epochs={} seed={} (dual coordinate descent)",
                               hp.epsilon, hp.svr_c, hp.svr_epochs, hp.seed);
    }
    return {};
}

}  // namespace

void LatencyDataset::check() const {
    if (rows.size() < 4) {
        throw FitError(fmt::format("need at least 4 rows for a 3-feature fit with intercept, got {}", rows.size()));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!std::isfinite(r.matrix_ops) || !std::isfinite(r.vector_ops) || !std::isfinite(r.data_ops) ||
            !std::isfinite(r.latency_ms)) {
            throw FitError(fmt::format("row {} ({}) has a non-finite value", i, r.arch_id));
        }
        if (!(r.latency_ms > 0.0)) {
            throw FitError(fmt::format("row {} ({}): latency must be > 0, got {}", i, r.arch_id, r.latency_ms));
        }
    }
}

std::string_view method_name(FitMethod method) noexcept {
    switch (method) {
        case FitMethod::Ols: return "ols";
        case FitMethod::Ridge: return "ridge";
        case FitMethod::BayesRidge: return "bayes_ridge";
        case FitMethod::Omp: return "omp";
        case FitMethod::Sgd: return "sgd";
        case FitMethod::Svr: return "svr";
    }
    return "unknown";
}

std::optional<FitMethod> parse_method(std::string_view name) noexcept {
    for (FitMethod m : kAllFitMethods) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

FittedLatencyModel fit(const LatencyDataset& data, FitMethod method, const FitHyperparams& hp) {
    data.check();
    FittedLatencyModel model;
    model.method = method;
    model.settings = Settings(method, hp);
    switch (method) {
        case FitMethod::Ols:
            model.weights = FitOls(data);
            break;
        case FitMethod::Ridge:
            model.weights = FitRidge(data, hp.ridge_alpha);
            break;
        case FitMethod::BayesRidge:
            model.weights = FitBayesRidge(data, hp, model.iterations);
            break;
        case FitMethod::Omp:
            model.weights = FitOmp(data, hp.omp_nonzero);
            break;
        case FitMethod::Sgd:
            model.weights = FitSgd(data, hp, model.iterations);
            break;
        case FitMethod::Svr:
            model.weights = FitSvr(data, hp, model.iterations);
            break;
    }
    model.train = evaluate(model.weights, data);
    return model;
}

FitDiagnostics evaluate(const MemWeights& w, const LatencyDataset& data) {
    if (data.rows.empty()) throw FitError("cannot evaluate on an empty dataset");
    const std::size_t n = data.rows.size();
    std::vector<double> m(n), v(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (data.rows[i].latency_ms == 0.0) {
            throw FitError(fmt::format("row {} ({}) has zero latency; MAPE undefined", i, data.rows[i].arch_id));
        }
        m[i] = data.rows[i].matrix_ops;
        v[i] = data.rows[i].vector_ops;
        d[i] = data.rows[i].data_ops;
    }
    const std::vector<double> pred = latency_batch(m, v, d, w);
    double mean = 0.0;
    for (const auto& r : data.rows) mean += r.latency_ms;
    mean /= static_cast<double>(n);
    double ss_res = 0.0, ss_tot = 0.0, ape = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = data.rows[i].latency_ms;
        ss_res += (pred[i] - y) * (pred[i] - y);
        ss_tot += (y - mean) * (y - mean);
        ape += std::abs(pred[i] - y) / std::abs(y);
    }
    FitDiagnostics out;
    out.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    out.mape = 100.0 * ape / static_cast<double>(n);
    return out;
}

FitDiagnostics evaluate(const FittedLatencyModel& model, const LatencyDataset& data) {
    return evaluate(model.weights, data);
}

MemWeights derive_mem_weights(const FittedLatencyModel& model) {
    if (!(model.weights.wm > 0.0)) {
        throw FitError(fmt::format("{} fit produced wm={}; MEM needs a positive matrix weight",
                                   method_name(model.method), model.weights.wm));
    }
    return model.weights;
}

LatencyDataset synthesize_latency_dataset(const SyntheticLatencyConfig& cfg) {
    SeededRandom rng(cfg.seed);
    auto log_uniform = [&](double lo, double hi) { return std::exp(rng.uniform(std::log(lo), std::log(hi))); };
    LatencyDataset data;
    data.rows.reserve(cfg.rows);
    while (data.rows.size() < cfg.rows) {
        LatencyRow row;
        row.matrix_ops = std::round(log_uniform(cfg.m_lo, cfg.m_hi));
        row.vector_ops = std::round(log_uniform(cfg.v_lo, cfg.v_hi));
        row.data_ops = std::round(log_uniform(cfg.d_lo, cfg.d_hi));
        const double clean = latency_estimate({row.matrix_ops, row.vector_ops, row.data_ops}, cfg.truth);
        if (clean < cfg.min_latency_ms) continue;
        double noisy;
        do {
            noisy = clean * (1.0 + cfg.noise * rng.normal());
        } while (!(noisy > 0.0));
        row.latency_ms = noisy;
        row.arch_id = fmt::format("synth-{:04d}", data.rows.size());
        data.rows.push_back(std::move(row));
    }
    return data;
}

}  // namespace isynas
