// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include "isynas/kernels.hpp"

namespace isynas::kernels {

namespace generic {
extern const KernelTable table;
}

#if defined(ISYNAS_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif

#if defined(ISYNAS_HAVE_NEON)
namespace neon {
extern const KernelTable table;
}
#endif

}  // namespace isynas::kernels
