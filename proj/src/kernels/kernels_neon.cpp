// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace isynas::kernels::neon {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void Gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double bias,
          double* out) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = bias + Dot(a + r * cols, x, cols);
}

void Affine4Eval(const Affine4& w, const double* m, const double* v, const double* d, double* out,
                 std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t acc = vfmaq_f64(vdupq_n_f64(w.w0), vdupq_n_f64(w.wm), vld1q_f64(m + i));
        acc = vfmaq_f64(acc, vdupq_n_f64(w.wv), vld1q_f64(v + i));
        acc = vfmaq_f64(acc, vdupq_n_f64(w.wd), vld1q_f64(d + i));
        vst1q_f64(out + i, acc);
    }
    for (; i < n; ++i) out[i] = w.w0 + w.wm * m[i] + w.wv * v[i] + w.wd * d[i];
}

void MatrixShare(const Affine4& w, const double* m, const double* v, const double* d, double* out,
                 std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t mat = vmulq_f64(vdupq_n_f64(w.wm), vld1q_f64(m + i));
        float64x2_t den = vfmaq_f64(mat, vdupq_n_f64(w.wv), vld1q_f64(v + i));
        den = vfmaq_f64(den, vdupq_n_f64(w.wd), vld1q_f64(d + i));
        vst1q_f64(out + i, vdivq_f64(mat, den));
    }
    for (; i < n; ++i) {
        const double mat = w.wm * m[i];
        out[i] = mat / (mat + w.wv * v[i] + w.wd * d[i]);
    }
}

}  // namespace

const KernelTable table{Isa::Neon, Dot, Axpy, Gemv, Affine4Eval, MatrixShare};

}  // namespace isynas::kernels::neon
