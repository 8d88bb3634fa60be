// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <random>

namespace isynas {

/// Deterministic random source. Every stochastic operation takes one of these
/// by reference so that a run is fully determined by its seed.
class SeededRandom {
public:
    explicit SeededRandom(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::mt19937_64& engine() noexcept { return engine_; }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    double normal(double mean = 0.0, double stddev = 1.0) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

    /// Independent child stream; useful for handing a sub-task its own RNG.
    SeededRandom fork() { return SeededRandom(engine_()); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace isynas
