// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace isynas::kernels::avx2 {
namespace {

inline double HorizontalSum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double Dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    // two independent accumulators hide the FMA latency
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double acc = HorizontalSum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void Gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double bias,
          double* out) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = bias + Dot(a + r * cols, x, cols);
}

void Affine4Eval(const Affine4& w, const double* m, const double* v, const double* d, double* out,
                 std::size_t n) {
    const __m256d w0 = _mm256_set1_pd(w.w0);
    const __m256d wm = _mm256_set1_pd(w.wm);
    const __m256d wv = _mm256_set1_pd(w.wv);
    const __m256d wd = _mm256_set1_pd(w.wd);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_fmadd_pd(wm, _mm256_loadu_pd(m + i), w0);
        acc = _mm256_fmadd_pd(wv, _mm256_loadu_pd(v + i), acc);
        acc = _mm256_fmadd_pd(wd, _mm256_loadu_pd(d + i), acc);
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) out[i] = w.w0 + w.wm * m[i] + w.wv * v[i] + w.wd * d[i];
}

void MatrixShare(const Affine4& w, const double* m, const double* v, const double* d, double* out,
                 std::size_t n) {
    const __m256d wm = _mm256_set1_pd(w.wm);
    const __m256d wv = _mm256_set1_pd(w.wv);
    const __m256d wd = _mm256_set1_pd(w.wd);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mat = _mm256_mul_pd(wm, _mm256_loadu_pd(m + i));
        __m256d den = _mm256_fmadd_pd(wv, _mm256_loadu_pd(v + i), mat);
        den = _mm256_fmadd_pd(wd, _mm256_loadu_pd(d + i), den);
        _mm256_storeu_pd(out + i, _mm256_div_pd(mat, den));
    }
    for (; i < n; ++i) {
        const double mat = w.wm * m[i];
        out[i] = mat / (mat + w.wv * v[i] + w.wd * d[i]);
    }
}

}  // namespace

const KernelTable table{Isa::Avx2, Dot, Axpy, Gemv, Affine4Eval, MatrixShare};

}  // namespace isynas::kernels::avx2
