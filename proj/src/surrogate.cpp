// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "isynas/kernels.hpp"
#include "isynas/search_engine.hpp"

namespace isynas {

std::vector<double> encode_features(const EncodingVector& vec) {
    const ArchSpec spec = decode(vec);  // rejects malformed vectors
    std::vector<double> f(kFeatureDim, 0.0);
    f[0] = static_cast<double>(spec.num_stages()) / space::kMaxStages;
    for (int s = 0; s < spec.num_stages(); ++s) {
        const StageSpec& st = spec.stages[s];
        double* g = f.data() + 1 + static_cast<std::size_t>(s) * kStageFeatureDim;
        g[0] = st.la ? 1.0 : 0.0;
        g[1] = st.sk ? 1.0 : 0.0;
        g[2] = static_cast<double>(st.nb) / space::kMaxBlocks;
        g[3] = static_cast<double>(st.ef) / 6.0;
        g[4] = static_cast<double>(st.ci) / space::kMaxChannelIncrement;
        for (int e = 0; e < space::kEdgesPerBlock; ++e)
            g[5 + e * kNumEdgeOps + static_cast<int>(st.edges[e])] = 1.0;
    }
    return f;
}

std::string_view surrogate_kind_name(SurrogateKind kind) noexcept {
    switch (kind) {
        case SurrogateKind::LinearBaseline: return "linear";
        case SurrogateKind::Recurrent: return "rnn";
    }
    return "?";
}

std::optional<SurrogateKind> parse_surrogate_kind(std::string_view name) noexcept {
    if (name == "linear") return SurrogateKind::LinearBaseline;
    if (name == "rnn") return SurrogateKind::Recurrent;
    return std::nullopt;
}

std::vector<double> Surrogate::predict_batch(std::span<const EncodingVector> vecs) const {
    std::vector<double> out;
    out.reserve(vecs.size());
    for (const auto& v : vecs) out.push_back(predict(v));
    return out;
}

namespace {

double target_of(const MetaRecord& r, SurrogateTarget t) {
    return t == SurrogateTarget::Accuracy ? r.response : r.latency_ms;
}

void require_records(const MetaDataset& h, std::size_t min_records) {
    if (h.size() < std::max<std::size_t>(min_records, 2))
        throw SearchError(fmt::format("surrogate needs at least {} records, history has {}",
                                      std::max<std::size_t>(min_records, 2), h.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearSurrogate

void LinearSurrogate::fit(const MetaDataset& history, SurrogateTarget target) {
    require_records(history, min_records_);
    if (!(alpha_ >= 0.0)) throw SearchError("ridge alpha must be non-negative");

    const auto n = static_cast<Eigen::Index>(history.size());
    const auto p = static_cast<Eigen::Index>(kFeatureDim);
    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const MetaRecord& r = history.records()[static_cast<std::size_t>(i)];
        const auto f = encode_features(r.encoding);
        x.row(i) = Eigen::Map<const Eigen::RowVectorXd>(f.data(), p);
        y(i) = target_of(r, target);
    }
    if (!y.allFinite()) throw SearchError("surrogate target contains non-finite values");

    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const double y_mean = y.mean();
    const Eigen::MatrixXd xc = x.rowwise() - x_mean;
    const Eigen::VectorXd yc = y.array() - y_mean;

    // Dual form when there are fewer records than features keeps the solve small.
    Eigen::VectorXd w;
    const double ridge = std::max(alpha_, 1e-12);
    if (n < p) {
        Eigen::MatrixXd k = xc * xc.transpose();
        k.diagonal().array() += ridge;
        w = xc.transpose() * k.ldlt().solve(yc);
    } else {
        Eigen::MatrixXd g = xc.transpose() * xc;
        g.diagonal().array() += ridge;
        w = g.ldlt().solve(xc.transpose() * yc);
    }
    if (!w.allFinite()) throw SearchError("linear surrogate solve produced non-finite weights");

    weights_.assign(w.data(), w.data() + w.size());
    bias_ = y_mean - x_mean.dot(w);
}

double LinearSurrogate::predict(const EncodingVector& vec) const {
    if (weights_.empty()) throw SearchError("surrogate used before fit");
    const auto f = encode_features(vec);
    return bias_ + kernels::dot(f, weights_);
}

std::vector<double> LinearSurrogate::predict_batch(std::span<const EncodingVector> vecs) const {
    if (weights_.empty()) throw SearchError("surrogate used before fit");
    std::vector<double> rows;
    rows.reserve(vecs.size() * kFeatureDim);
    for (const auto& v : vecs) {
        const auto f = encode_features(v);
        rows.insert(rows.end(), f.begin(), f.end());
    }
    std::vector<double> out(vecs.size());
    kernels::active().gemv(rows.data(), vecs.size(), kFeatureDim, weights_.data(), bias_, out.data());
    return out;
}

// ---------------------------------------------------------------------------
// RecurrentSurrogate

struct RecurrentSurrogate::Params {
    Eigen::MatrixXd wx;  // hidden x stage features
    Eigen::MatrixXd wh;  // hidden x hidden
    Eigen::VectorXd b;
    Eigen::VectorXd v;
    double c = 0.0;
};

RecurrentSurrogate::~RecurrentSurrogate() = default;

namespace {

using StageSeq = std::vector<Eigen::VectorXd>;

StageSeq stage_sequence(const EncodingVector& vec) {
    const auto f = encode_features(vec);
    const int ns = vec.values[0];
    StageSeq seq;
    seq.reserve(static_cast<std::size_t>(ns));
    for (int s = 0; s < ns; ++s)
        seq.push_back(Eigen::Map<const Eigen::VectorXd>(f.data() + 1 + s * kStageFeatureDim, kStageFeatureDim));
    return seq;
}

template <class P>
double forward(const P& p, const StageSeq& seq, std::vector<Eigen::VectorXd>* states) {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(p.b.size());
    if (states) states->assign(1, h);
    for (const auto& x : seq) {
        h = (p.wx * x + p.wh * h + p.b).array().tanh().matrix();
        if (states) states->push_back(h);
    }
    return p.v.dot(h) + p.c;
}

struct Adam {
    Eigen::ArrayXd m, s;
    void init(Eigen::Index n) {
        m = Eigen::ArrayXd::Zero(n);
        s = Eigen::ArrayXd::Zero(n);
    }
    template <class Dense, class Grad>
    void step(Dense& param, const Grad& grad, double lr, int t) {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        Eigen::Map<Eigen::ArrayXd> p(param.data(), param.size());
        Eigen::Map<const Eigen::ArrayXd> g(grad.data(), grad.size());
        m = b1 * m + (1 - b1) * g;
        s = b2 * s + (1 - b2) * g.square();
        const double mhat = 1.0 / (1.0 - std::pow(b1, t));
        const double shat = 1.0 / (1.0 - std::pow(b2, t));
        p -= lr * (m * mhat) / ((s * shat).sqrt() + eps);
    }
};

}  // namespace

void RecurrentSurrogate::fit(const MetaDataset& history, SurrogateTarget target) {
    require_records(history, config_.min_records);
    if (config_.hidden < 1 || config_.epochs < 1 || !(config_.learning_rate > 0.0))
        throw SearchError("recurrent surrogate needs hidden >= 1, epochs >= 1 and a positive learning rate");

    const std::size_t n = history.size();
    std::vector<StageSeq> seqs;
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    seqs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const MetaRecord& r = history.records()[i];
        seqs.push_back(stage_sequence(r.encoding));
        y(static_cast<Eigen::Index>(i)) = target_of(r, target);
    }
    if (!y.allFinite()) throw SearchError("surrogate target contains non-finite values");
    y_mean_ = y.mean();
    const double sd = std::sqrt((y.array() - y_mean_).square().mean());
    y_scale_ = sd > 0.0 ? sd : 1.0;
    const Eigen::VectorXd z = (y.array() - y_mean_) / y_scale_;

    const int hdim = config_.hidden;
    const auto fdim = static_cast<Eigen::Index>(kStageFeatureDim);
    SeededRandom rng(config_.seed);
    auto init = [&](Eigen::Index r, Eigen::Index c, double scale) {
        Eigen::MatrixXd m(r, c);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal(0.0, scale);
        return m;
    };
    Params p;
    p.wx = init(hdim, fdim, 1.0 / std::sqrt(static_cast<double>(fdim)));
    p.wh = init(hdim, hdim, 0.5 / std::sqrt(static_cast<double>(hdim)));
    p.b = Eigen::VectorXd::Zero(hdim);
    p.v = init(hdim, 1, 1.0 / std::sqrt(static_cast<double>(hdim)));
    p.c = 0.0;

    Adam a_wx, a_wh, a_b, a_v, a_c;
    a_wx.init(p.wx.size());
    a_wh.init(p.wh.size());
    a_b.init(p.b.size());
    a_v.init(p.v.size());
    a_c.init(1);

    std::vector<Eigen::VectorXd> states;
    for (int epoch = 1; epoch <= config_.epochs; ++epoch) {
        Eigen::MatrixXd g_wx = Eigen::MatrixXd::Zero(hdim, fdim);
        Eigen::MatrixXd g_wh = Eigen::MatrixXd::Zero(hdim, hdim);
        Eigen::VectorXd g_b = Eigen::VectorXd::Zero(hdim);
        Eigen::VectorXd g_v = Eigen::VectorXd::Zero(hdim);
        double g_c = 0.0;
        double loss = 0.0;

        for (std::size_t i = 0; i < n; ++i) {
            const StageSeq& seq = seqs[i];
            const double pred = forward(p, seq, &states);
            const double err = pred - z(static_cast<Eigen::Index>(i));
            loss += err * err;
            const double dy = 2.0 * err / static_cast<double>(n);
            g_v += dy * states.back();
            g_c += dy;
            Eigen::VectorXd dh = dy * p.v;
            for (std::size_t t = seq.size(); t >= 1; --t) {
                const Eigen::VectorXd& h = states[t];
                const Eigen::VectorXd da = dh.array() * (1.0 - h.array().square());
                g_wx.noalias() += da * seq[t - 1].transpose();
                g_wh.noalias() += da * states[t - 1].transpose();
                g_b += da;
                dh = p.wh.transpose() * da;
            }
        }
        final_loss_ = loss / static_cast<double>(n);

        const double lr = config_.learning_rate;
        a_wx.step(p.wx, g_wx, lr, epoch);
        a_wh.step(p.wh, g_wh, lr, epoch);
        a_b.step(p.b, g_b, lr, epoch);
        a_v.step(p.v, g_v, lr, epoch);
        Eigen::VectorXd pc(1), gc(1);
        pc(0) = p.c;
        gc(0) = g_c;
        a_c.step(pc, gc, lr, epoch);
        p.c = pc(0);
    }
    params_ = std::make_shared<const Params>(std::move(p));
}

double RecurrentSurrogate::predict(const EncodingVector& vec) const {
    if (!params_) throw SearchError("surrogate used before fit");
    return y_mean_ + y_scale_ * forward(*params_, stage_sequence(vec), nullptr);
}

std::unique_ptr<Surrogate> fit_surrogate(const MetaDataset& history, SurrogateTarget target,
                                         const SurrogateConfig& config) {
    std::unique_ptr<Surrogate> model;
    if (config.kind == SurrogateKind::Recurrent)
        model = std::make_unique<RecurrentSurrogate>(config);
    else
        model = std::make_unique<LinearSurrogate>(config.ridge_alpha, config.min_records);
    model->fit(history, target);
    return model;
}

}  // namespace isynas
