// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner loops shared by the latency regressions, the surrogate
// models and the batch MEM/latency evaluators. Every kernel has a scalar
// reference implementation; SIMD variants (AVX2+FMA on x86-64, NEON on
// aarch64) are selected once at startup from the host's CPU features and are
// equivalence-tested against the scalar path.
#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace isynas::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

/// Coefficients of lat = w0 + wm*m + wv*v + wd*d.
struct Affine4 {
    double w0;
    double wm;
    double wv;
    double wd;
};

/// Function table for one instruction set. All spans passed to a kernel must
/// have matching lengths; kernels do not check.
struct KernelTable {
    Isa isa;
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // out[r] = bias + dot(row r of row-major `a` (rows x cols), x)
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double bias,
                 double* out);
    // out[i] = w0 + wm*m[i] + wv*v[i] + wd*d[i]
    void (*affine4)(const Affine4& w, const double* m, const double* v, const double* d, double* out,
                    std::size_t n);
    // out[i] = wm*m[i] / (wm*m[i] + wv*v[i] + wd*d[i])
    void (*matrix_share)(const Affine4& w, const double* m, const double* v, const double* d,
                         double* out, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// Tables compiled into this binary that the running CPU can execute,
/// scalar first.
std::span<const KernelTable* const> available_tables() noexcept;

/// Table used by the library. Defaults to the widest supported ISA; the
/// ISYNAS_ISA environment variable ("scalar", "avx2", "neon") overrides it.
const KernelTable& active() noexcept;

/// Forces a specific ISA; returns false (and changes nothing) if unsupported.
bool select(Isa isa) noexcept;

// Convenience wrappers over active().

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace isynas::kernels
