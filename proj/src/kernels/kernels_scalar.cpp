// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "kernels_impl.hpp"

namespace isynas::kernels::generic {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void Gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double bias,
          double* out) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = bias + Dot(a + r * cols, x, cols);
}

void Affine4Eval(const Affine4& w, const double* m, const double* v, const double* d, double* out,
                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = w.w0 + w.wm * m[i] + w.wv * v[i] + w.wd * d[i];
}

void MatrixShare(const Affine4& w, const double* m, const double* v, const double* d, double* out,
                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double mat = w.wm * m[i];
        out[i] = mat / (mat + w.wv * v[i] + w.wd * d[i]);
    }
}

}  // namespace

const KernelTable table{Isa::Scalar, Dot, Axpy, Gemv, Affine4Eval, MatrixShare};

}  // namespace isynas::kernels::generic
