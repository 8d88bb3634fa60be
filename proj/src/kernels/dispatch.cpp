// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include <atomic>
#include <cstdlib>
#include <string_view>
#include <vector>

#include "kernels_impl.hpp"

namespace isynas::kernels {
namespace {

bool HostSupports(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(ISYNAS_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(ISYNAS_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable* TableFor(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return &generic::table;
        case Isa::Avx2:
#if defined(ISYNAS_HAVE_AVX2)
            return &avx2::table;
#else
            return nullptr;
#endif
        case Isa::Neon:
#if defined(ISYNAS_HAVE_NEON)
            return &neon::table;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

std::vector<const KernelTable*> BuildAvailable() {
    std::vector<const KernelTable*> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (HostSupports(isa) && TableFor(isa) != nullptr) out.push_back(TableFor(isa));
    }
    return out;
}

const std::vector<const KernelTable*>& Available() {
    static const std::vector<const KernelTable*> tables = BuildAvailable();
    return tables;
}

const KernelTable* Initial() noexcept {
    if (const char* env = std::getenv("ISYNAS_ISA")) {
        const std::string_view want(env);
        for (const KernelTable* t : Available()) {
            if (isa_name(t->isa) == want) return t;
        }
    }
    return Available().back();
}

std::atomic<const KernelTable*>& Current() noexcept {
    static std::atomic<const KernelTable*> current{Initial()};
    return current;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
        case Isa::Neon:
            return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_table() noexcept { return generic::table; }

std::span<const KernelTable* const> available_tables() noexcept { return Available(); }

const KernelTable& active() noexcept { return *Current().load(std::memory_order_relaxed); }

bool select(Isa isa) noexcept {
    for (const KernelTable* t : Available()) {
        if (t->isa == isa) {
            Current().store(t, std::memory_order_relaxed);
            return true;
        }
    }
    return false;
}

}  // namespace isynas::kernels
