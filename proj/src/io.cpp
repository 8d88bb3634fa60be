// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "isynas/error.hpp"

namespace isynas::io {

using nlohmann::json;

std::string format_number(double value) { return fmt::format("{}", value); }

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open {} for reading", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot open {} for writing", path.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(fmt::format("failed writing {}", path.string()));
}

// ---------------------------------------------------------------------------
// JSON

std::string arch_to_json(const ArchSpec& spec) {
    json stages = json::array();
    for (const auto& st : spec.stages) {
        json edges = json::array();
        for (EdgeOp e : st.edges) edges.push_back(static_cast<int>(e));
        stages.push_back(json{{"la", st.la ? 1 : 0},
                              {"nb", st.nb},
                              {"ef", st.ef},
                              {"sk", st.sk ? 1 : 0},
                              {"ci", st.ci},
                              {"edges", std::move(edges)}});
    }
    return json{{"stages", std::move(stages)}}.dump(2) + "\n";
}

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("invalid JSON: {}", e.what()));
    }
}

int int_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(fmt::format("{}: missing \"{}\"", where, key));
    if (it->is_boolean()) return it->get<bool>() ? 1 : 0;
    if (!it->is_number_integer()) throw ParseError(fmt::format("{}: \"{}\" must be an integer", where, key));
    return it->get<int>();
}

bool flag_field(const json& obj, const char* key, const std::string& where) {
    const int v = int_field(obj, key, where);
    if (v != 0 && v != 1) throw ParseError(fmt::format("{}: \"{}\" must be 0 or 1", where, key));
    return v == 1;
}

double number_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) throw ParseError(fmt::format("weights: \"{}\" must be a number", key));
    return it->get<double>();
}

}  // namespace

ArchSpec arch_from_json(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("stages") || !doc["stages"].is_array())
        throw ParseError("architecture JSON needs a \"stages\" array");
    ArchSpec spec;
    for (std::size_t s = 0; s < doc["stages"].size(); ++s) {
        const json& js = doc["stages"][s];
        const std::string where = fmt::format("stages[{}]", s);
        if (!js.is_object()) throw ParseError(where + ": expected an object");
        StageSpec st;
        st.la = flag_field(js, "la", where);
        st.nb = int_field(js, "nb", where);
        st.ef = int_field(js, "ef", where);
        st.sk = flag_field(js, "sk", where);
        st.ci = int_field(js, "ci", where);
        const auto edges = js.find("edges");
        if (edges == js.end() || !edges->is_array() || edges->size() != 4)
            throw ParseError(where + ": \"edges\" must hold 4 integers");
        for (std::size_t e = 0; e < 4; ++e) {
            const json& code = (*edges)[e];
            if (!code.is_number_integer() || code.get<int>() < 0 || code.get<int>() >= kNumEdgeOps)
                throw ParseError(fmt::format("{}.edges[{}]: edge code must be in 0..{}", where, e, kNumEdgeOps - 1));
            st.edges[e] = static_cast<EdgeOp>(code.get<int>());
        }
        spec.stages.push_back(st);
    }
    const auto report = validate(spec);
    if (!report.ok()) throw ValidationError(report.summary());
    return spec;
}

std::string weights_to_json(const MemWeights& w) {
    return fmt::format("{{\n  \"w0\": {},\n  \"wm\": {},\n  \"wv\": {},\n  \"wd\": {}\n}}\n", format_number(w.w0),
                       format_number(w.wm), format_number(w.wv), format_number(w.wd));
}

MemWeights weights_from_json(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("weights JSON must be an object");
    return {number_field(doc, "w0"), number_field(doc, "wm"), number_field(doc, "wv"), number_field(doc, "wd")};
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) return out;
        start = comma + 1;
    }
}

double parse_double(std::string_view field, std::size_t line, std::string_view column) {
    double v = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end || field.empty())
        throw ParseError(line, fmt::format("column {}: '{}' is not a number", column, field));
    if (!std::isfinite(v)) throw ParseError(line, fmt::format("column {}: value must be finite", column));
    return v;
}

int parse_int(std::string_view field, std::size_t line, std::string_view column) {
    int v = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end || field.empty())
        throw ParseError(line, fmt::format("column {}: '{}' is not an integer", column, field));
    return v;
}

constexpr std::array<std::string_view, 5> kLatencyColumns{"arch_id", "matrix_ops", "vector_ops", "data_ops",
                                                          "latency_ms"};

}  // namespace

LatencyDataset read_latency_csv(std::istream& in) {
    LatencyDataset data;
    std::string raw;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split(line);
        if (!seen_header) {
            seen_header = true;
            if (fields[0] == kLatencyColumns[0]) {
                if (fields.size() != kLatencyColumns.size())
                    throw ParseError(line_no, fmt::format("header needs {} columns, found {}", kLatencyColumns.size(), fields.size()));
                for (std::size_t i = 0; i < fields.size(); ++i)
                    if (fields[i] != kLatencyColumns[i])
                        throw ParseError(line_no, fmt::format("expected header column '{}', found '{}'",
                                                              kLatencyColumns[i], fields[i]));
                continue;
            }
        }
        if (fields.size() != kLatencyColumns.size())
            throw ParseError(line_no, fmt::format("expected {} columns, found {}", kLatencyColumns.size(), fields.size()));
        LatencyRow row;
        row.arch_id = std::string(fields[0]);
        if (row.arch_id.empty()) throw ParseError(line_no, "empty arch_id");
        row.matrix_ops = parse_double(fields[1], line_no, kLatencyColumns[1]);
        row.vector_ops = parse_double(fields[2], line_no, kLatencyColumns[2]);
        row.data_ops = parse_double(fields[3], line_no, kLatencyColumns[3]);
        row.latency_ms = parse_double(fields[4], line_no, kLatencyColumns[4]);
        if (row.matrix_ops < 0 || row.vector_ops < 0 || row.data_ops < 0)
            throw ParseError(line_no, "operation counts must be non-negative");
        if (!(row.latency_ms > 0)) throw ParseError(line_no, "latency_ms must be positive");
        data.rows.push_back(std::move(row));
    }
    if (data.rows.empty()) throw ParseError(line_no, "no data rows");
    return data;
}

LatencyDataset read_latency_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open {} for reading", path.string()));
    return read_latency_csv(in);
}

void write_latency_csv(std::ostream& out, const LatencyDataset& data) {
    out << fmt::format("{}\n", fmt::join(kLatencyColumns, ","));
    for (const auto& r : data.rows)
        out << fmt::format("{},{},{},{},{}\n", r.arch_id, format_number(r.matrix_ops), format_number(r.vector_ops),
                           format_number(r.data_ops), format_number(r.latency_ms));
}

std::string encoding_row(const EncodingVector& vec) { return fmt::format("{}", fmt::join(vec.values, ",")); }

EncodingVector parse_encoding_row(std::string_view row) {
    const auto fields = split(trim(row));
    if (fields.size() != kEncodingLength)
        throw ParseError(fmt::format("encoding row needs {} integers, found {}", kEncodingLength, fields.size()));
    EncodingVector vec;
    for (std::size_t i = 0; i < kEncodingLength; ++i) vec.values[i] = parse_int(fields[i], 1, fmt::format("e{}", i));
    return vec;
}

void write_meta_csv(std::ostream& out, const MetaDataset& data) {
    for (std::size_t i = 0; i < kEncodingLength; ++i) out << 'e' << i << ',';
    out << "accuracy,latency_ms\n";
    for (const auto& r : data.records())
        out << encoding_row(r.encoding) << ',' << format_number(r.response) << ',' << format_number(r.latency_ms)
            << '\n';
}

void write_meta_csv(const std::filesystem::path& path, const MetaDataset& data) {
    std::ostringstream ss;
    write_meta_csv(ss, data);
    write_text(path, ss.str());
}

MetaDataset read_meta_csv(std::istream& in) {
    MetaDataset data;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.starts_with("e0,")) continue;
        const auto fields = split(line);
        if (fields.size() != kEncodingLength + 2)
            throw ParseError(line_no, fmt::format("expected {} columns, found {}", kEncodingLength + 2, fields.size()));
        MetaRecord rec;
        for (std::size_t i = 0; i < kEncodingLength; ++i)
            rec.encoding.values[i] = parse_int(fields[i], line_no, fmt::format("e{}", i));
        rec.response = parse_double(fields[kEncodingLength], line_no, "accuracy");
        rec.latency_ms = parse_double(fields[kEncodingLength + 1], line_no, "latency_ms");
        try {
            data.append(rec);
        } catch (const DecodeError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return data;
}

void write_cost_csv(std::ostream& out, const CostReport& report) {
    out << "layer,kind,m,v,d\n";
    for (const auto& l : report.layers)
        out << fmt::format("{},{},{},{},{}\n", l.id, op_kind_name(l.kind), format_number(l.cost.matrix_ops),
                           format_number(l.cost.vector_ops), format_number(l.cost.data_ops));
    out << fmt::format("total,,{},{},{}\n", format_number(report.total.matrix_ops),
                       format_number(report.total.vector_ops), format_number(report.total.data_ops));
}

std::string cost_to_json(const CostReport& report) {
    json layers = json::array();
    for (const auto& l : report.layers)
        layers.push_back(json{{"id", l.id},
                              {"kind", std::string(op_kind_name(l.kind))},
                              {"m", l.cost.matrix_ops},
                              {"v", l.cost.vector_ops},
                              {"d", l.cost.data_ops}});
    json doc{{"layers", std::move(layers)},
             {"total", {{"m", report.total.matrix_ops}, {"v", report.total.vector_ops}, {"d", report.total.data_ops}}}};
    return doc.dump(2) + "\n";
}

}  // namespace isynas::io
