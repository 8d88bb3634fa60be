// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal standalone SVG scatter plots for reports.
#pragma once

#include <string>
#include <vector>

namespace isynas::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool connect = false;  // draw a polyline through the points in order
};

struct ScatterPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    bool log_x = false;
    int width = 640;
    int height = 420;
};

/// Non-finite points (and non-positive x under log_x) are skipped.
std::string render(const ScatterPlot& plot);

}  // namespace isynas::svg
