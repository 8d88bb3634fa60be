// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, with the measured values
// underneath. Criteria listed in kKnownDeviations still print FAIL when they
// fail; they do not change the exit status (README, "Known deviations").
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fmt/format.h>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isynas/cli.hpp"
#include "isynas/cost_model.hpp"
#include "isynas/io.hpp"
#include "isynas/latency_lab.hpp"
#include "isynas/mem_measure.hpp"
#include "isynas/pareto.hpp"
#include "isynas/presets.hpp"
#include "isynas/scaler.hpp"
#include "isynas/search_engine.hpp"

#ifndef ISYNAS_DATA_DIR
#define ISYNAS_DATA_DIR "data"
#endif

using namespace isynas;

namespace {

const std::set<int> kKnownDeviations{1};

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, std::string note) {
        pass = pass && ok;
        notes.push_back(fmt::format("{} {}", ok ? "ok  " : "MISS", note));
    }
};

double rel(double got, double want) { return got / want - 1.0; }

// --- criterion 1 -----------------------------------------------------------

Outcome param_counts() {
    Outcome o;
    struct Row {
        const char* name;
        double want;
        double tol;
    };
    const Row rows[] = {
        {"isynet-n0", 9.59e6, 0.10},   {"isynet-n1", 7.42e6, 0.10},  {"isynet-n1-s1", 7.82e6, 0.10},
        {"isynet-n1-s2", 8.86e6, 0.10}, {"isynet-n1-s3", 10.81e6, 0.10}, {"isynet-n2", 19.43e6, 0.10},
        {"isynet-n3", 20.47e6, 0.10},  {"resnet-18", 11.69e6, 0.05},  {"resnet-34", 21.8e6, 0.05},
        {"resnet-50", 25.56e6, 0.05},
    };
    for (const Row& r : rows) {
        const double got = static_cast<double>(param_count(to_network(builtin(r.name))));
        const double d = rel(got, r.want);
        o.check(std::abs(d) <= r.tol, fmt::format("{:<13} params {:>10.0f} vs {:.4g} ({:+.1f}%, tol {:.0f}%)", r.name,
                                                  got, r.want, 100 * d, 100 * r.tol));
    }
    return o;
}

// --- criterion 2 -----------------------------------------------------------

Outcome mac_counts() {
    Outcome o;
    const std::pair<const char*, double> rows[] = {
        {"isynet-n0", 1.13e9}, {"isynet-n1", 2.85e9}, {"isynet-n1-s3", 4.12e9}, {"isynet-n3", 7.32e9}};
    for (const auto& [name, want] : rows) {
        const double got = static_cast<double>(mac_count(to_network(builtin(name))));
        const double d = rel(got, want);
        o.check(std::abs(d) <= 0.10, fmt::format("{:<13} MACs {:.4g} vs {:.4g} ({:+.1f}%)", name, got, want, 100 * d));
    }
    return o;
}

// --- criterion 3 -----------------------------------------------------------

Outcome mem_formula() {
    Outcome o;
    const MemWeights w;
    // wm*M = 2.57, wv*V = -0.0126, wd*D = 0.336
    const double hand = 2.57 / (2.57 - 0.0126 + 0.336);
    const double got = mem({1e9, 1e6, 1e7}, w);
    o.check(std::abs(got - 0.888) <= 1e-3 && std::abs(got - hand) < 1e-12,
            fmt::format("MEM(1e9,1e6,1e7) = {:.6f} (hand value {:.6f})", got, hand));

    SeededRandom rng(3);
    NetworkBuilder vb("vector-only", {56, 56, 64});
    vb.max_pool("p", 3, 2).add("a", vb.shape()).activation("r", OpKind::ReLU).global_avg_pool("g");
    const double vector_only = mem(network_cost(std::move(vb).build(), 16, true).total, w);
    o.check(vector_only == 0.0, fmt::format("vector-only network MEM = {}", vector_only));

    // the range property holds where the non-matrix share wv*V + wd*D is positive
    int in_range = 0, invariant = 0, redrawn = 0;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        CostBreakdown c;
        do {
            c = {std::pow(10.0, rng.uniform(6, 12)), std::pow(10.0, rng.uniform(3, 10)),
                 std::pow(10.0, rng.uniform(5, 10))};
        } while (w.wv * c.vector_ops + w.wd * c.data_ops <= 0.0 && ++redrawn);
        const double v = mem(c, w);
        in_range += v >= 0.0 && v < 1.0;
        const double k = std::pow(10.0, rng.uniform(-3, 3));
        const double scaled = mem({c.matrix_ops * k, c.vector_ops * k, c.data_ops * k}, w);
        const double r = std::abs(scaled - v) / v;
        worst = std::max(worst, r);
        invariant += r <= 1e-12;
    }
    o.check(in_range == 10000, fmt::format("{} / 10000 random triples in [0,1) ({} draws outside the domain redrawn)", in_range, redrawn));
    o.check(invariant == 10000, fmt::format("scale invariance worst relative change {:.2e}", worst));
    return o;
}

// --- criterion 4 -----------------------------------------------------------

Outcome mmem_ordering() {
    Outcome o;
    const CostConfig cfg;
    const MemWeights w;
    for (std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
        auto space_mmem = [&](DesignSpace s, std::size_t n) {
            SeededRandom rng(seed);
            std::vector<CostBreakdown> costs;
            for (const auto& sn : space_sampler(s, n, rng))
                costs.push_back(network_cost(sn.net, cfg.batch, cfg.fusion).total);
            return mmem(costs, w);
        };
        const double isy = space_mmem(DesignSpace::ISyNet, 1000);
        const double res = space_mmem(DesignSpace::ResNetLike, 1000);
        const double mob = space_mmem(DesignSpace::MobileNetV2Like, 100);
        const double mnas = space_mmem(DesignSpace::MnasNetLike, 100);
        o.check(isy > res && res > std::max(mob, mnas),
                fmt::format("seed {}: isynet {:.4f} > resnet_like {:.4f} > max(mobilenetv2 {:.4f}, mnasnet {:.4f})",
                            seed, isy, res, mob, mnas));
    }
    return o;
}

// --- criterion 5 -----------------------------------------------------------

Outcome latency_lab() {
    Outcome o;
    const auto path = std::filesystem::path(ISYNAS_DATA_DIR) / "synthetic_latency_400.csv";
    const LatencyDataset data = io::read_latency_csv(path);

    // the shipped file must be exactly what the generator produces
    std::ostringstream regenerated;
    io::write_latency_csv(regenerated, synthesize_latency_dataset());
    o.check(regenerated.str() == io::read_text(path),
            fmt::format("{} rows, byte-identical to the seed-2022 generator", data.rows.size()));

    const MemWeights truth;
    const auto ols = fit(data, FitMethod::Ols);
    const double coef[4][2] = {{ols.weights.w0, truth.w0},
                               {ols.weights.wm, truth.wm},
                               {ols.weights.wv, truth.wv},
                               {ols.weights.wd, truth.wd}};
    const char* names[4] = {"w0", "wm", "wv", "wd"};
    for (int i = 0; i < 4; ++i) {
        const double d = rel(coef[i][0], coef[i][1]);
        o.check(std::abs(d) <= 0.10, fmt::format("ols {} = {:.4g} vs {:.4g} ({:+.2f}%)", names[i], coef[i][0],
                                                 coef[i][1], 100 * d));
    }
    o.check(ols.train.r2 >= 0.9 && ols.train.mape <= 15.0,
            fmt::format("ols R2 {:.4f}, MAPE {:.2f}%", ols.train.r2, ols.train.mape));

    const auto omp = fit(data, FitMethod::Omp);
    const double gap = std::max({std::abs(omp.weights.w0 - ols.weights.w0) / std::abs(ols.weights.w0),
                                 std::abs(omp.weights.wm - ols.weights.wm) / std::abs(ols.weights.wm),
                                 std::abs(omp.weights.wv - ols.weights.wv) / std::abs(ols.weights.wv),
                                 std::abs(omp.weights.wd - ols.weights.wd) / std::abs(ols.weights.wd)});
    o.check(gap <= 1e-9, fmt::format("omp(3) vs ols max relative coefficient gap {:.2e}", gap));

    double lo = 1.0, hi = 0.0;
    for (FitMethod m : kAllFitMethods) {
        const double r2 = fit(data, m).train.r2;
        lo = std::min(lo, r2);
        hi = std::max(hi, r2);
    }
    o.check(hi - lo <= 0.05, fmt::format("R2 over six methods in [{:.5f}, {:.5f}], spread {:.2e}", lo, hi, hi - lo));
    return o;
}

// --- criterion 6 -----------------------------------------------------------

std::vector<std::size_t> brute_force_front(const std::vector<ParetoPoint>& pts) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
            dominated = j != i && pts[j].latency <= pts[i].latency && pts[j].score >= pts[i].score &&
                        (pts[j].latency < pts[i].latency || pts[j].score > pts[i].score);
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

Outcome pareto_oracle() {
    Outcome o;
    SeededRandom rng(6);
    int agree = 0;
    for (int set = 0; set < 1000; ++set) {
        const int n = rng.uniform_int(0, 200);
        const bool coarse = set % 3 == 0;  // ties on both axes
        std::vector<ParetoPoint> pts;
        for (int i = 0; i < n; ++i) {
            const double l = coarse ? rng.uniform_int(0, 9) : rng.uniform(0, 1);
            const double s = coarse ? rng.uniform_int(0, 9) : rng.uniform(0, 1);
            pts.push_back({l, s, static_cast<std::size_t>(i)});
        }
        auto expected = brute_force_front(pts);
        std::vector<std::size_t> got;
        for (const auto& m : pareto_front(pts).members) got.push_back(m.index);
        std::sort(got.begin(), got.end());
        agree += got == expected;
    }
    o.check(agree == 1000, fmt::format("{} / 1000 point sets equal the O(n^2) oracle", agree));
    return o;
}

// --- criterion 7 -----------------------------------------------------------

constexpr double kSearchBudgetMs = 20000.0;  // near the median latency of uniform samples

Outcome smbo_vs_random() {
    Outcome o;
    int wins = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SyntheticObjective::Options opts;
        opts.seed = seed;
        const SyntheticObjective objective(opts);

        SmboConfig cfg;
        cfg.warmup = 50;
        cfg.rounds = 10;
        cfg.per_round = 10;
        cfg.budget_ms = kSearchBudgetMs;
        SeededRandom r1(seed * 1000 + 1), r2(seed * 1000 + 2);
        const auto smbo = run_smbo(cfg, std::cref(objective), r1);
        const auto rand = random_search(150, kSearchBudgetMs, std::cref(objective), r2);
        const bool win = smbo.best_response >= rand.best_response;
        wins += win;
        detail += win ? '+' : '-';
        if (smbo.history.size() != 150) o.check(false, fmt::format("seed {}: {} records", seed, smbo.history.size()));
    }
    o.check(wins >= 15, fmt::format("SMBO >= random search in {} / 20 seeds [{}]", wins, detail));
    return o;
}

// --- criterion 8 -----------------------------------------------------------

Outcome scaler() {
    Outcome o;
    const ArchSpec n1 = isynet_preset("isynet-n1");
    const auto variants = enumerate_scaled(n1, ScalingGrid{});
    const bool has_s1 = std::any_of(variants.begin(), variants.end(),
                                    [&](const ArchSpec& v) { return v == isynet_preset("isynet-n1-s1"); });
    o.check(has_s1, fmt::format("{} variants of N1 include depths (1,1,4,6,3)", variants.size()));

    const CostConfig cfg;
    const MemWeights w;
    double lat[4];
    const char* names[4] = {"isynet-n1", "isynet-n1-s1", "isynet-n1-s2", "isynet-n1-s3"};
    for (int i = 0; i < 4; ++i) lat[i] = latency_estimate(arch_cost(isynet_preset(names[i]), cfg), w);
    o.check(lat[0] < lat[1] && lat[1] < lat[2] && lat[2] < lat[3],
            fmt::format("estimated latency N1 {:.2f} < S1 {:.2f} < S2 {:.2f} < S3 {:.2f} ms", lat[0], lat[1], lat[2],
                        lat[3]));

    int wins = 0;
    const ScalingGrid grid;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SeededRandom rng(seed);
        SyntheticObjective::Options opts;
        opts.seed = seed;
        opts.depth_target = rng.uniform(15.0, 45.0);
        const SyntheticObjective objective(opts);
        const ScoreFunction score = [&](const ArchSpec& s) { return objective.clean_score(s); };
        const double budget = lat[0] * rng.uniform(1.2, 3.0);

        ScaleOptions so;
        so.grid = grid;
        const auto res = scale_to_budget(n1, {budget}, score, so);
        double per_stage = -INFINITY;
        for (const auto& m : res.fronts[0].members) per_stage = std::max(per_stage, m.score);

        double uniform = -INFINITY;
        for (double c : grid.per_stage[0]) {
            const ArchSpec u = uniform_depth_scale(n1, c);
            if (latency_estimate(arch_cost(u, cfg), w) <= budget) uniform = std::max(uniform, score(u));
        }
        wins += per_stage >= uniform;
    }
    o.check(wins >= 15, fmt::format("per-stage >= uniform depth scaling in {} / 20 seeds", wins));
    return o;
}

// --- criterion 9 -----------------------------------------------------------

std::string run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != 0) return fmt::format("<exit {}: {}>", code, err.str());
    return out.str();
}

Outcome roundtrip() {
    Outcome o;
    int preset_ok = 0, preset_total = 0;
    for (auto name : preset_names()) {
        if (is_reference_preset(name)) continue;
        ++preset_total;
        const ArchSpec spec = isynet_preset(name);
        preset_ok += decode(encode(spec)) == spec && io::arch_from_json(io::arch_to_json(spec)) == spec;
    }
    o.check(preset_ok == preset_total, fmt::format("{} / {} presets roundtrip", preset_ok, preset_total));

    SeededRandom rng(9);
    int random_ok = 0;
    for (int i = 0; i < 10000; ++i) {
        const ArchSpec spec = sample_random(rng);
        const EncodingVector enc = encode(spec);
        random_ok += decode(enc) == spec && encode(decode(enc)) == enc;
    }
    o.check(random_ok == 10000, fmt::format("{} / 10000 random specs roundtrip", random_ok));

    const std::vector<std::vector<std::string>> commands = {
        {"search", "--seed", "5", "--rounds", "3", "--warmup", "20", "--pool", "300"},
        {"scale", "--preset", "isynet-n1", "--budgets", "300,400"},
        {"sample-space", "--space", "mnasnet_like", "--n", "20", "--seed", "4"},
        {"synth-latency", "--rows", "50", "--seed", "8"},
    };
    for (const auto& args : commands) {
        const std::string a = run_cli(args), b = run_cli(args);
        o.check(a == b && !a.starts_with("<exit"),
                fmt::format("`isynas {}` reruns byte-identical ({} bytes)", fmt::join(args, " "), a.size()));
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "preset parameter counts", param_counts},
        {2, "preset MAC counts at 224x224", mac_counts},
        {3, "MEM formula, range and scale invariance", mem_formula},
        {4, "mMEM ordering across design spaces", mmem_ordering},
        {5, "latency regression on the synthetic dataset", latency_lab},
        {6, "Pareto front equals brute-force oracle", pareto_oracle},
        {7, "SMBO beats random search at equal budget", smbo_vs_random},
        {8, "depth scaler coverage, ordering and per-stage advantage", scaler},
        {9, "encoding roundtrip and CLI determinism", roundtrip},
    };

    int blocking = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.check(false, fmt::format("threw: {}", e.what()));
        }
        const bool known = kKnownDeviations.count(c.id) > 0;
        std::printf("%s criterion %d: %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                    (!o.pass && known) ? " [known deviation]" : "");
        for (const auto& n : o.notes) std::printf("      %s\n", n.c_str());
        if (!o.pass && !known) ++blocking;
    }
    std::fflush(stdout);
    return blocking == 0 ? 0 : 1;
}
