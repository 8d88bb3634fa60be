// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

#include "isynas/cli.hpp"
#include "isynas/cost_model.hpp"
#include "isynas/error.hpp"
#include "isynas/io.hpp"
#include "isynas/latency_lab.hpp"
#include "isynas/mem_measure.hpp"
#include "isynas/pareto.hpp"
#include "isynas/presets.hpp"
#include "isynas/scaler.hpp"
#include "isynas/search_engine.hpp"
#include "isynas/svg.hpp"

namespace isynas::cli {

namespace {

using io::format_number;

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

struct CostOptions {
    int batch = 16;
    int resolution = 224;
    bool no_fusion = false;
    int classes = 1000;

    CostConfig config() const {
        CostConfig c;
        c.input = {resolution, resolution, 3};
        c.batch = batch;
        c.fusion = !no_fusion;
        c.num_classes = classes;
        return c;
    }
};

void add_common(CLI::App* cmd, Common& common, std::vector<std::string> formats) {
    cmd->add_option("--seed", common.seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", common.out, "Output file (default: stdout)");
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember(std::move(formats)))
        ->capture_default_str();
}

void add_cost(CLI::App* cmd, CostOptions& cost) {
    cmd->add_option("--batch", cost.batch, "Batch size for operation counts")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--resolution", cost.resolution, "Square input side")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--classes", cost.classes, "Classifier width")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_flag("--no-fusion", cost.no_fusion, "Count BN and activations after convolutions separately");
}

void emit(const Common& common, const std::string& content, std::ostream& out) {
    if (common.out.empty())
        out << content;
    else
        io::write_text(common.out, content);
}

MemWeights load_weights(const std::string& path) {
    return path.empty() ? MemWeights{} : io::weights_from_json(io::read_text(path));
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(fmt::format("{}: '{}' is not a number", what, item));
        }
    }
    if (out.empty()) throw ValidationError(fmt::format("{} is empty", what));
    return out;
}

struct Target {
    std::string name;
    std::optional<ArchSpec> arch;
    Network net;
};

Target load_target(const std::string& preset, const std::string& arch_path, const CostConfig& cfg) {
    if (preset.empty() == arch_path.empty()) throw ValidationError("give exactly one of --preset or --arch");
    if (!preset.empty()) {
        Builtin b = builtin(preset, cfg.input, cfg.num_classes);
        Target t{preset, std::nullopt, to_network(b, cfg.input, cfg.num_classes)};
        if (auto* spec = std::get_if<ArchSpec>(&b)) t.arch = *spec;
        return t;
    }
    ArchSpec spec = io::arch_from_json(io::read_text(arch_path));
    return {arch_path, spec, lower(spec, cfg.input, cfg.num_classes)};
}

// ---------------------------------------------------------------------------
// mem

struct MemArgs {
    Common common;
    CostOptions cost;
    std::string preset, arch, weights;
    bool layers = false;
};

int cmd_mem(const MemArgs& a, std::ostream& out) {
    const CostConfig cfg = a.cost.config();
    const Target t = load_target(a.preset, a.arch, cfg);
    const MemWeights w = load_weights(a.weights);
    const CostReport report = network_cost(t.net, cfg.batch, cfg.fusion, cfg.rules);
    const double m = mem(report.total, w);
    const double lat = latency_estimate(report.total, w);
    const auto params = param_count(t.net);
    const auto macs = mac_count(t.net);

    std::ostringstream ss;
    if (a.common.format == "json") {
        nlohmann::json doc{{"model", t.name},
                           {"matrix_ops", report.total.matrix_ops},
                           {"vector_ops", report.total.vector_ops},
                           {"data_ops", report.total.data_ops},
                           {"mem", m},
                           {"latency_ms", lat},
                           {"params", params},
                           {"macs", macs}};
        if (a.layers) doc["layers"] = nlohmann::json::parse(io::cost_to_json(report))["layers"];
        ss << doc.dump(2) << '\n';
    } else if (a.layers) {
        io::write_cost_csv(ss, report);
    } else {
        ss << "model,matrix_ops,vector_ops,data_ops,mem,latency_ms,params,macs\n";
        ss << fmt::format("{},{},{},{},{},{},{},{}\n", t.name, format_number(report.total.matrix_ops),
                          format_number(report.total.vector_ops), format_number(report.total.data_ops),
                          format_number(m), format_number(lat), params, macs);
    }
    emit(a.common, ss.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit-latency

struct FitArgs {
    Common common;
    std::string dataset;
    std::string method = "all";
    std::string weights_out;
    std::string weights_method = "ols";
    std::size_t probe_samples = 20;
};

svg::ScatterPlot latency_scatter(const LatencyDataset& data) {
    svg::ScatterPlot plot;
    plot.title = "Latency against operation counts";
    plot.x_label = "count";
    plot.y_label = "latency, ms";
    plot.log_x = true;
    svg::Series sm{"matrix ops", {}, {}, "#1f77b4"}, sv{"vector ops", {}, {}, "#ff7f0e"},
        sd{"data ops", {}, {}, "#2ca02c"};
    for (const auto& r : data.rows) {
        sm.x.push_back(r.matrix_ops), sm.y.push_back(r.latency_ms);
        sv.x.push_back(r.vector_ops), sv.y.push_back(r.latency_ms);
        sd.x.push_back(r.data_ops), sd.y.push_back(r.latency_ms);
    }
    plot.series = {sm, sv, sd};
    return plot;
}

int cmd_fit_latency(const FitArgs& a, std::ostream& out, std::ostream& err) {
    const LatencyDataset data = io::read_latency_csv(std::filesystem::path(a.dataset));
    if (a.common.format == "svg") {
        emit(a.common, svg::render(latency_scatter(data)), out);
        return kExitOk;
    }

    std::vector<FitMethod> methods;
    if (a.method == "all") {
        methods.assign(kAllFitMethods.begin(), kAllFitMethods.end());
    } else {
        const auto m = parse_method(a.method);
        if (!m) throw ValidationError(fmt::format("unknown method '{}'", a.method));
        methods.push_back(*m);
    }
    FitHyperparams hp;
    hp.seed = a.common.seed;

    // probe spaces are costed once; each method's weights are applied to them
    constexpr std::array<DesignSpace, 4> kProbes{DesignSpace::ISyNet, DesignSpace::ResNetLike,
                                                 DesignSpace::MobileNetV2Like, DesignSpace::MnasNetLike};
    std::vector<std::vector<CostBreakdown>> probe_costs;
    if (a.probe_samples > 0) {
        SeededRandom rng(a.common.seed);
        const CostConfig cfg;
        for (DesignSpace s : kProbes) {
            std::vector<CostBreakdown> costs;
            for (const auto& sn : space_sampler(s, a.probe_samples, rng, cfg.input, cfg.num_classes))
                costs.push_back(network_cost(sn.net, cfg.batch, cfg.fusion, cfg.rules).total);
            probe_costs.push_back(std::move(costs));
        }
    }

    std::vector<FittedLatencyModel> fits;
    for (FitMethod m : methods) fits.push_back(fit(data, m, hp));

    auto probe_value = [&](const FittedLatencyModel& f, std::size_t k) -> std::optional<double> {
        try {
            return mmem(probe_costs[k], f.weights);
        } catch (const Error&) {
            return std::nullopt;
        }
    };

    std::ostringstream ss;
    if (a.common.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& f : fits) {
            nlohmann::json row{{"method", std::string(method_name(f.method))},
                               {"r2", f.train.r2},
                               {"mape", f.train.mape},
                               {"w0", f.weights.w0},
                               {"wm", f.weights.wm},
                               {"wv", f.weights.wv},
                               {"wd", f.weights.wd},
                               {"settings", f.settings}};
            for (std::size_t k = 0; k < probe_costs.size(); ++k) {
                const auto v = probe_value(f, k);
                row[fmt::format("mmem_{}", design_space_name(kProbes[k]))] =
                    v ? nlohmann::json(*v) : nlohmann::json(nullptr);
            }
            rows.push_back(std::move(row));
        }
        ss << rows.dump(2) << '\n';
    } else {
        ss << "method,r2,mape,w0,wm,wv,wd";
        for (std::size_t k = 0; k < probe_costs.size(); ++k) ss << ",mmem_" << design_space_name(kProbes[k]);
        ss << '\n';
        for (const auto& f : fits) {
            ss << fmt::format("{},{},{},{},{},{},{}", method_name(f.method), format_number(f.train.r2),
                              format_number(f.train.mape), format_number(f.weights.w0), format_number(f.weights.wm),
                              format_number(f.weights.wv), format_number(f.weights.wd));
            for (std::size_t k = 0; k < probe_costs.size(); ++k) {
                const auto v = probe_value(f, k);
                ss << ',' << (v ? format_number(*v) : "");
            }
            ss << '\n';
        }
    }
    emit(a.common, ss.str(), out);

    if (!a.weights_out.empty()) {
        const auto wm = parse_method(a.weights_method);
        if (!wm) throw ValidationError(fmt::format("unknown method '{}'", a.weights_method));
        auto it = std::find_if(fits.begin(), fits.end(), [&](const auto& f) { return f.method == *wm; });
        const FittedLatencyModel chosen = it != fits.end() ? *it : fit(data, *wm, hp);
        io::write_text(a.weights_out, io::weights_to_json(derive_mem_weights(chosen)));
        err << fmt::format("wrote {} weights to {}\n", method_name(chosen.method), a.weights_out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// synth-latency

struct SynthArgs {
    Common common;
    std::size_t rows = 400;
    double noise = 0.05;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    SyntheticLatencyConfig cfg;
    cfg.rows = a.rows;
    cfg.noise = a.noise;
    cfg.seed = a.common.seed;
    std::ostringstream ss;
    io::write_latency_csv(ss, synthesize_latency_dataset(cfg));
    emit(a.common, ss.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
    Common common;
    CostOptions cost;
    std::size_t warmup = 50;
    std::size_t rounds = 10;
    std::size_t per_round = 10;
    std::size_t pool = 1000;
    double budget = std::numeric_limits<double>::infinity();
    std::string surrogate = "linear";
    std::string best_out;
    std::string manifest_out;
    std::string checkpoint;
    std::string weights;
    double noise = 0.02;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
    const auto kind = parse_surrogate_kind(a.surrogate);
    if (!kind) throw ValidationError(fmt::format("unknown surrogate '{}' (linear, rnn)", a.surrogate));
    if (!(a.budget > 0.0)) throw ValidationError("--budget must be positive");

    SyntheticObjective::Options opts;
    opts.seed = a.common.seed;
    opts.noise = a.noise;
    opts.cost = a.cost.config();
    opts.weights = load_weights(a.weights);
    const SyntheticObjective objective(opts);

    SmboConfig cfg;
    cfg.warmup = a.warmup;
    cfg.rounds = a.rounds;
    cfg.per_round = a.per_round;
    cfg.pool_size = a.pool;
    cfg.budget_ms = a.budget;
    cfg.surrogate.kind = *kind;
    cfg.surrogate.seed = a.common.seed;
    cfg.checkpoint_path = a.checkpoint;

    SeededRandom rng(a.common.seed);
    const SearchResult result = run_smbo(cfg, std::cref(objective), rng);

    std::ostringstream ss;
    io::write_meta_csv(ss, result.history);
    emit(a.common, ss.str(), out);

    if (!a.best_out.empty()) {
        if (result.best)
            io::write_text(a.best_out, io::arch_to_json(*result.best));
        else
            err << "warning: no evaluated architecture met the budget; best-architecture file not written\n";
    }
    if (!a.manifest_out.empty()) {
        nlohmann::json manifest{{"seed", a.common.seed},
                                {"warmup", a.warmup},
                                {"rounds", a.rounds},
                                {"per_round", a.per_round},
                                {"pool", a.pool},
                                {"budget_ms", std::isfinite(a.budget) ? nlohmann::json(a.budget) : nlohmann::json("inf")},
                                {"surrogate", std::string(surrogate_kind_name(*kind))},
                                {"evaluator", "synthetic"},
                                {"records", result.history.size()},
                                {"best_response", result.best ? nlohmann::json(result.best_response) : nlohmann::json(nullptr)}};
        io::write_text(a.manifest_out, manifest.dump(2) + "\n");
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// scale

struct ScaleArgs {
    Common common;
    CostOptions cost;
    std::string preset, arch, weights;
    std::string grid = "1,1.25,1.5,2,3";
    std::string budgets;
    std::size_t max_variants = 100000;
};

int cmd_scale(const ScaleArgs& a, std::ostream& out, std::ostream& err) {
    const CostConfig cfg = a.cost.config();
    const Target t = load_target(a.preset, a.arch, cfg);
    if (!t.arch) throw ValidationError(fmt::format("'{}' is a reference network and cannot be depth-scaled", t.name));

    ScaleOptions opts;
    opts.grid = ScalingGrid::uniform(parse_list(a.grid, "--grid"), a.max_variants);
    opts.weights = load_weights(a.weights);
    opts.cost = cfg;
    std::vector<double> budgets;
    if (!a.budgets.empty()) budgets = parse_list(a.budgets, "--budgets");

    const ScoreFunction score = [&](const ArchSpec& s) { return macs_proxy_score(s, cfg); };
    const ScalingResult res = scale_to_budget(*t.arch, budgets, score, opts);
    for (const auto& w : res.warnings) err << "warning: " << w << '\n';

    // unbudgeted front when no budgets are given
    std::vector<std::vector<bool>> member(std::max<std::size_t>(budgets.size(), 1),
                                          std::vector<bool>(res.variants.size(), false));
    auto mark = [&](std::size_t col, const std::vector<ParetoPoint>& pts) {
        for (const auto& p : pareto_front(pts).members) member[col][p.index] = true;
    };
    for (std::size_t b = 0; b < member.size(); ++b) {
        std::vector<ParetoPoint> pts;
        for (std::size_t i = 0; i < res.variants.size(); ++i)
            if (budgets.empty() || res.variants[i].latency_ms <= budgets[b])
                pts.push_back({res.variants[i].latency_ms, res.variants[i].score, i});
        mark(b, pts);
    }

    std::ostringstream ss;
    if (a.common.format == "svg") {
        svg::ScatterPlot plot;
        plot.title = fmt::format("Depth-scaled variants of {}", t.name);
        plot.x_label = "estimated latency, ms";
        plot.y_label = "score";
        svg::Series all{"variants", {}, {}, "#9e9e9e"}, front{"pareto", {}, {}, "#d62728", true};
        for (std::size_t i = 0; i < res.variants.size(); ++i) {
            all.x.push_back(res.variants[i].latency_ms);
            all.y.push_back(res.variants[i].score);
            if (member.back()[i]) {
                front.x.push_back(res.variants[i].latency_ms);
                front.y.push_back(res.variants[i].score);
            }
        }
        plot.series = {all, front};
        ss << svg::render(plot);
    } else {
        const std::size_t ns = t.arch->stages.size();
        ss << "variant";
        for (std::size_t s = 0; s < ns; ++s) ss << ",nb" << s + 1;
        ss << ",latency_ms,score";
        if (budgets.empty())
            ss << ",pareto";
        else
            for (double b : budgets) ss << ",pareto_" << format_number(b);
        ss << '\n';
        for (std::size_t i = 0; i < res.variants.size(); ++i) {
            const auto& v = res.variants[i];
            ss << 'v' << i;
            for (const auto& st : v.spec.stages) ss << ',' << st.nb;
            ss << ',' << format_number(v.latency_ms) << ',' << format_number(v.score);
            for (const auto& col : member) ss << ',' << (col[i] ? 1 : 0);
            ss << '\n';
        }
    }
    emit(a.common, ss.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// pareto

struct ParetoArgs {
    Common common;
    std::string input;
};

int cmd_pareto(const ParetoArgs& a, std::ostream& out) {
    std::ifstream in(a.input);
    if (!in) throw Error(fmt::format("cannot open {} for reading", a.input));
    std::vector<std::string> ids;
    std::vector<LatencyScore> pts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
        if (pts.empty() && ids.empty() && !f.empty() && (f[0] == "id" || f[0] == "latency")) continue;
        if (f.size() != 2 && f.size() != 3)
            throw ParseError(line_no, "expected 'latency,score' or 'id,latency,score'");
        try {
            const std::size_t o = f.size() - 2;
            pts.push_back({std::stod(f[o]), std::stod(f[o + 1])});
            ids.push_back(o ? f[0] : std::to_string(ids.size()));
        } catch (const std::exception&) {
            throw ParseError(line_no, "latency and score must be numbers");
        }
        if (!std::isfinite(pts.back().latency) || !std::isfinite(pts.back().score))
            throw ParseError(line_no, "latency and score must be finite");
    }
    const ParetoFront front = pareto_front(pts);

    std::ostringstream ss;
    if (a.common.format == "svg") {
        svg::ScatterPlot plot;
        plot.title = "Pareto front";
        plot.x_label = "latency";
        plot.y_label = "score";
        svg::Series all{"points", {}, {}, "#9e9e9e"}, fr{"front", {}, {}, "#d62728", true};
        for (const auto& p : pts) all.x.push_back(p.latency), all.y.push_back(p.score);
        for (const auto& m : front.members) fr.x.push_back(m.latency), fr.y.push_back(m.score);
        plot.series = {all, fr};
        ss << svg::render(plot);
    } else if (a.common.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& m : front.members)
            rows.push_back({{"id", ids[m.index]}, {"latency", m.latency}, {"score", m.score}});
        ss << rows.dump(2) << '\n';
    } else {
        ss << "id,latency,score\n";
        for (const auto& m : front.members)
            ss << ids[m.index] << ',' << format_number(m.latency) << ',' << format_number(m.score) << '\n';
    }
    emit(a.common, ss.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// export

struct ExportArgs {
    Common common;
    std::string preset;
    bool list = false;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
    std::ostringstream ss;
    if (a.list) {
        for (auto name : preset_names()) ss << name << '\n';
    } else {
        if (a.preset.empty()) throw ValidationError("--preset is required (or --list)");
        const ArchSpec spec = isynet_preset(a.preset);
        if (a.common.format == "json")
            ss << io::arch_to_json(spec);
        else
            ss << io::encoding_row(encode(spec)) << '\n';
    }
    emit(a.common, ss.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sample-space

struct SampleArgs {
    Common common;
    CostOptions cost;
    std::string space = "isynet";
    std::size_t n = 100;
    std::string weights;
};

int cmd_sample_space(const SampleArgs& a, std::ostream& out, std::ostream& err) {
    const auto sp = parse_design_space(a.space);
    if (!sp) throw ValidationError(fmt::format("unknown space '{}'", a.space));
    const CostConfig cfg = a.cost.config();
    const MemWeights w = load_weights(a.weights);
    SeededRandom rng(a.common.seed);
    const auto nets = space_sampler(*sp, a.n, rng, cfg.input, cfg.num_classes);

    std::vector<CostBreakdown> costs;
    std::ostringstream ss;
    nlohmann::json rows = nlohmann::json::array();
    if (a.common.format == "csv") ss << "index,name,matrix_ops,vector_ops,data_ops,mem,params,macs,encoding\n";
    for (std::size_t i = 0; i < nets.size(); ++i) {
        const CostBreakdown c = network_cost(nets[i].net, cfg.batch, cfg.fusion, cfg.rules).total;
        costs.push_back(c);
        const double m = mem(c, w);
        const std::string enc = nets[i].arch ? io::encoding_row(encode(*nets[i].arch)) : "";
        if (a.common.format == "json") {
            nlohmann::json row{{"index", i},
                               {"name", nets[i].net.name},
                               {"matrix_ops", c.matrix_ops},
                               {"vector_ops", c.vector_ops},
                               {"data_ops", c.data_ops},
                               {"mem", m},
                               {"params", param_count(nets[i].net)},
                               {"macs", mac_count(nets[i].net)}};
            if (nets[i].arch) row["arch"] = nlohmann::json::parse(io::arch_to_json(*nets[i].arch));
            rows.push_back(std::move(row));
        } else {
            ss << fmt::format("{},{},{},{},{},{},{},{},\"{}\"\n", i, nets[i].net.name, format_number(c.matrix_ops),
                              format_number(c.vector_ops), format_number(c.data_ops), format_number(m),
                              param_count(nets[i].net), mac_count(nets[i].net), enc);
        }
    }
    if (a.common.format == "json") ss << rows.dump(2) << '\n';
    emit(a.common, ss.str(), out);
    err << fmt::format("mMEM({}, n={}) = {}\n", a.space, a.n, format_number(mmem(costs, w)));
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"isynas: NPU-aware architecture search toolkit", "isynas"};
    app.require_subcommand(1);

    MemArgs mem_args;
    auto* mem_cmd = app.add_subcommand("mem", "Matrix efficiency, latency estimate and cost breakdown");
    add_common(mem_cmd, mem_args.common, {"csv", "json"});
    add_cost(mem_cmd, mem_args.cost);
    mem_cmd->add_option("--preset", mem_args.preset, "Built-in architecture name");
    mem_cmd->add_option("--arch", mem_args.arch, "Architecture JSON file");
    mem_cmd->add_option("--weights", mem_args.weights, "Latency weights JSON {w0,wm,wv,wd}");
    mem_cmd->add_flag("--layers", mem_args.layers, "Emit the per-layer cost report");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit-latency", "Fit latency models on a measurement CSV");
    add_common(fit_cmd, fit_args.common, {"csv", "json", "svg"});
    fit_cmd->add_option("dataset", fit_args.dataset, "CSV: arch_id,matrix_ops,vector_ops,data_ops,latency_ms")->required();
    fit_cmd->add_option("--method", fit_args.method, "all, ols, ridge, bayes_ridge, omp, sgd or svr")->capture_default_str();
    fit_cmd->add_option("--weights-out", fit_args.weights_out, "Write derived weights JSON here");
    fit_cmd->add_option("--weights-method", fit_args.weights_method, "Method whose weights are written")->capture_default_str();
    fit_cmd->add_option("--probe-samples", fit_args.probe_samples, "Samples per probe space for mMEM columns (0: off)")
        ->capture_default_str();

    SynthArgs synth_args;
    synth_args.common.seed = 2022;
    auto* synth_cmd = app.add_subcommand("synth-latency", "Generate a synthetic latency measurement CSV");
    add_common(synth_cmd, synth_args.common, {"csv"});
    synth_cmd->add_option("--rows", synth_args.rows, "Row count")->check(CLI::PositiveNumber)->capture_default_str();
    synth_cmd->add_option("--noise", synth_args.noise, "Relative Gaussian noise")->check(CLI::NonNegativeNumber)->capture_default_str();

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "Surrogate-model-based search on the synthetic objective");
    add_common(search_cmd, search_args.common, {"csv"});
    add_cost(search_cmd, search_args.cost);
    search_cmd->add_option("--warmup", search_args.warmup, "Random warm-up evaluations")->capture_default_str();
    search_cmd->add_option("--rounds", search_args.rounds, "Search rounds")->capture_default_str();
    search_cmd->add_option("--per-round", search_args.per_round, "Evaluations per round")->capture_default_str();
    search_cmd->add_option("--pool", search_args.pool, "Candidate pool per round")->check(CLI::PositiveNumber)->capture_default_str();
    search_cmd->add_option("--budget", search_args.budget, "Latency budget, ms");
    search_cmd->add_option("--surrogate", search_args.surrogate, "linear or rnn")->capture_default_str();
    search_cmd->add_option("--noise", search_args.noise, "Objective noise")->check(CLI::NonNegativeNumber)->capture_default_str();
    search_cmd->add_option("--weights", search_args.weights, "Latency weights JSON");
    search_cmd->add_option("--best", search_args.best_out, "Write the best architecture JSON here");
    search_cmd->add_option("--manifest", search_args.manifest_out, "Write the run manifest JSON here");
    search_cmd->add_option("--checkpoint", search_args.checkpoint, "Meta-dataset CSV written if evaluation fails");

    ScaleArgs scale_args;
    auto* scale_cmd = app.add_subcommand("scale", "Per-stage depth scaling under latency budgets");
    add_common(scale_cmd, scale_args.common, {"csv", "svg"});
    add_cost(scale_cmd, scale_args.cost);
    scale_cmd->add_option("--preset", scale_args.preset, "Built-in architecture name");
    scale_cmd->add_option("--arch", scale_args.arch, "Architecture JSON file");
    scale_cmd->add_option("--weights", scale_args.weights, "Latency weights JSON");
    scale_cmd->add_option("--grid", scale_args.grid, "Comma separated multipliers")->capture_default_str();
    scale_cmd->add_option("--budgets", scale_args.budgets, "Comma separated latency budgets, ms");
    scale_cmd->add_option("--max-variants", scale_args.max_variants, "Enumeration cap")->capture_default_str();

    ParetoArgs pareto_args;
    auto* pareto_cmd = app.add_subcommand("pareto", "Pareto front of (latency, score) points");
    add_common(pareto_cmd, pareto_args.common, {"csv", "json", "svg"});
    pareto_cmd->add_option("points", pareto_args.input, "CSV: [id,]latency,score")->required();

    ExportArgs export_args;
    export_args.common.format = "json";
    auto* export_cmd = app.add_subcommand("export", "Export a preset as architecture JSON or encoding row");
    add_common(export_cmd, export_args.common, {"csv", "json"});
    export_cmd->add_option("--preset", export_args.preset, "Built-in architecture name");
    export_cmd->add_flag("--list", export_args.list, "List the catalog");

    SampleArgs sample_args;
    auto* sample_cmd = app.add_subcommand("sample-space", "Sample a design space and report per-network MEM");
    add_common(sample_cmd, sample_args.common, {"csv", "json"});
    add_cost(sample_cmd, sample_args.cost);
    sample_cmd->add_option("--space", sample_args.space, "isynet, resnet_like, mobilenetv2_like or mnasnet_like")
        ->capture_default_str();
    sample_cmd->add_option("--n", sample_args.n, "Sample count")->check(CLI::PositiveNumber)->capture_default_str();
    sample_cmd->add_option("--weights", sample_args.weights, "Latency weights JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUser;
    }

    try {
        if (*mem_cmd) return cmd_mem(mem_args, out);
        if (*fit_cmd) return cmd_fit_latency(fit_args, out, err);
        if (*synth_cmd) return cmd_synth(synth_args, out);
        if (*search_cmd) return cmd_search(search_args, out, err);
        if (*scale_cmd) return cmd_scale(scale_args, out, err);
        if (*pareto_cmd) return cmd_pareto(pareto_args, out);
        if (*export_cmd) return cmd_export(export_args, out);
        if (*sample_cmd) return cmd_sample_space(sample_args, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    err << "error: no command\n";
    return kExitUser;
}

}  // namespace isynas::cli
