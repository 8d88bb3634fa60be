// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// File formats: architecture and weight JSON, latency and meta-dataset CSV,
// cost reports. Readers throw ParseError; CSV readers report 1-based lines.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "isynas/arch_ir.hpp"
#include "isynas/cost_model.hpp"
#include "isynas/latency_lab.hpp"
#include "isynas/mem_measure.hpp"
#include "isynas/search_engine.hpp"

namespace isynas::io {

/// Shortest text that reads back to the same double.
std::string format_number(double value);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view contents);

// {"stages":[{"la":0|1,"nb":int,"ef":int,"sk":0|1,"ci":int,"edges":[int x4]}]}
std::string arch_to_json(const ArchSpec& spec);
ArchSpec arch_from_json(std::string_view text);

// {"w0":..,"wm":..,"wv":..,"wd":..}
std::string weights_to_json(const MemWeights& w);
MemWeights weights_from_json(std::string_view text);

// arch_id,matrix_ops,vector_ops,data_ops,latency_ms
LatencyDataset read_latency_csv(std::istream& in);
LatencyDataset read_latency_csv(const std::filesystem::path& path);
void write_latency_csv(std::ostream& out, const LatencyDataset& data);

// e0..e54 as one comma separated row
std::string encoding_row(const EncodingVector& vec);
EncodingVector parse_encoding_row(std::string_view row);

// e0..e54,accuracy,latency_ms
void write_meta_csv(std::ostream& out, const MetaDataset& data);
void write_meta_csv(const std::filesystem::path& path, const MetaDataset& data);
MetaDataset read_meta_csv(std::istream& in);

// layer,kind,m,v,d rows then a "total" row
void write_cost_csv(std::ostream& out, const CostReport& report);
std::string cost_to_json(const CostReport& report);

}  // namespace isynas::io
