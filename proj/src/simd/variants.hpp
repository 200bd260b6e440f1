#pragma once

#include "rbq/simd/kernels.hpp"

namespace rbq::simd {

#if defined(RBQ_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(RBQ_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

} // namespace rbq::simd
