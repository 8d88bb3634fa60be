// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "isynas/cli.hpp"
#include "isynas/io.hpp"

using namespace isynas;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> v;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) v.push_back(f);
    return v;
}

std::string column(const std::string& csv, const std::string& name, std::size_t row = 0) {
    const auto ls = lines(csv);
    const auto head = fields(ls.at(0));
    const auto it = std::find(head.begin(), head.end(), name);
    REQUIRE(it != head.end());
    return fields(ls.at(row + 1)).at(static_cast<std::size_t>(it - head.begin()));
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("isynas_cli_" + name); }

const std::string kData = std::string(ISYNAS_DATA_DIR) + "/synthetic_latency_400.csv";

}  // namespace

TEST_CASE("mem on a preset") {
    const Run r = run({"mem", "--preset", "isynet-n1"});
    REQUIRE(r.code == cli::kExitOk);
    const double m = std::stod(column(r.out, "mem"));
    CHECK(m >= 0.0);
    CHECK(m < 1.0);
    CHECK(column(r.out, "model") == "isynet-n1");

    const Run j = run({"mem", "--preset", "resnet-18", "--format", "json"});
    CHECK(j.code == cli::kExitOk);
    CHECK(j.out.find("\"mem\"") != std::string::npos);
}

TEST_CASE("mem with custom weights changes the result") {
    const auto w = temp("weights.json");
    io::write_text(w, R"({"w0": 0.1, "wm": 1e-9, "wv": 1e-8, "wd": 1e-8})");
    const Run base = run({"mem", "--preset", "isynet-n0"});
    const Run custom = run({"mem", "--preset", "isynet-n0", "--weights", w.string()});
    REQUIRE(custom.code == cli::kExitOk);
    CHECK(column(base.out, "mem") != column(custom.out, "mem"));
    fs::remove(w);
}

TEST_CASE("invalid architecture files are user errors") {
    const auto a = temp("bad_arch.json");
    io::write_text(a, R"({"stages": [{"la": 1, "nb": 0, "ef": 1, "sk": 0, "ci": 0, "edges": [1,0,0,0]}]})");
    const Run r = run({"mem", "--arch", a.string()});
    CHECK(r.code == cli::kExitUser);
    CHECK(r.err.find("NB=0") != std::string::npos);
    fs::remove(a);
    CHECK(run({"mem", "--preset", "nope"}).code == cli::kExitUser);
    CHECK(run({"mem"}).code == cli::kExitUser);
    CHECK(run({"frobnicate"}).code == cli::kExitUser);
    CHECK(run({"mem", "--preset", "isynet-n0", "--format", "xml"}).code == cli::kExitUser);
}

TEST_CASE("fit-latency reports every method") {
    const Run r = run({"fit-latency", kData, "--probe-samples", "0"});
    REQUIRE(r.code == cli::kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 7);
    CHECK(ls[0].rfind("method,r2,mape,w0,wm,wv,wd", 0) == 0);
    CHECK(std::stod(column(r.out, "r2")) > 0.95);

    const auto w = temp("fitted.json");
    CHECK(run({"fit-latency", kData, "--method", "ridge", "--weights-out", w.string(), "--weights-method", "ridge"})
              .code == cli::kExitOk);
    CHECK(fs::exists(w));
    fs::remove(w);
}

TEST_CASE("fit-latency names the bad line") {
    const auto p = temp("bad.csv");
    io::write_text(p, "arch_id,matrix_ops,vector_ops,data_ops,latency_ms\na,1,2,3,4\nb,1,2,3,4\nc,1,oops,3,4\n");
    const Run r = run({"fit-latency", p.string()});
    CHECK(r.code == cli::kExitUser);
    CHECK(r.err.find("line 4") != std::string::npos);
    fs::remove(p);
    CHECK(run({"fit-latency", "/nonexistent.csv"}).code == cli::kExitUser);
}

TEST_CASE("search with zero rounds is the warm-up only") {
    const Run r = run({"search", "--warmup", "12", "--rounds", "0", "--seed", "3"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(lines(r.out).size() == 13);
    const Run s = run({"search", "--warmup", "12", "--rounds", "2", "--per-round", "4", "--pool", "100"});
    REQUIRE(s.code == cli::kExitOk);
    CHECK(lines(s.out).size() == 21);
    CHECK(run({"search", "--surrogate", "forest"}).code == cli::kExitUser);
}

TEST_CASE("search reruns are byte-identical") {
    const std::vector<std::string> args{"search", "--warmup", "16", "--rounds", "2", "--per-round", "3",
                                        "--pool", "100", "--seed", "5", "--budget", "20000"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("scale over grid {1,3} contains the S1 depths") {
    const Run r = run({"scale", "--preset", "isynet-n1", "--grid", "1,3"});
    REQUIRE(r.code == cli::kExitOk);
    const auto ls = lines(r.out);
    CHECK(ls.size() == 33);
    bool found = false;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto f = fields(ls[i]);
        found = found || (f[1] == "1" && f[2] == "1" && f[3] == "4" && f[4] == "6" && f[5] == "3");
    }
    CHECK(found);
    const Run tight = run({"scale", "--preset", "isynet-n1", "--grid", "1,3", "--budgets", "1"});
    CHECK(tight.code == cli::kExitOk);
    CHECK(tight.err.find("budget") != std::string::npos);
    CHECK(run({"scale", "--preset", "isynet-n1", "--grid", "1,x"}).code == cli::kExitUser);
    CHECK(run({"scale", "--preset", "isynet-n1", "--max-variants", "10"}).code == cli::kExitUser);
}

TEST_CASE("pareto subcommand") {
    const auto p = temp("points.csv");
    io::write_text(p, "id,latency,score\na,1,5\nb,2,6\nc,3,4\n");
    const Run r = run({"pareto", p.string()});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("a") != std::string::npos);
    CHECK(r.out.find("c,") == std::string::npos);
    CHECK(run({"pareto", p.string(), "--format", "svg"}).out.find("<svg") != std::string::npos);
    fs::remove(p);
}

TEST_CASE("export and sample-space") {
    const Run list = run({"export", "--list"});
    CHECK(lines(list.out).size() == 10);
    const Run j = run({"export", "--preset", "isynet-n2"});
    REQUIRE(j.code == cli::kExitOk);
    CHECK(io::arch_from_json(j.out).stages[3].nb == 17);
    CHECK(run({"export", "--preset", "resnet-50"}).code == cli::kExitUser);

    const Run s = run({"sample-space", "--space", "mobilenetv2_like", "--n", "5", "--seed", "2"});
    REQUIRE(s.code == cli::kExitOk);
    CHECK(lines(s.out).size() == 6);
    CHECK(s.err.find("mMEM") != std::string::npos);
    CHECK(run({"sample-space", "--space", "transformer"}).code == cli::kExitUser);
}

TEST_CASE("--out writes the primary output to a file") {
    const auto p = temp("mem.csv");
    const Run r = run({"mem", "--preset", "isynet-n0", "--out", p.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    CHECK(io::read_text(p).find("isynet-n0") != std::string::npos);
    fs::remove(p);
}
