#include <cstdlib>
#include <string_view>

#include "rbq/simd/kernels.hpp"
#include "simd/variants.hpp"

namespace rbq::simd {

std::string_view isa_name(Isa isa) {
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

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return &scalar_kernels();
  case Isa::Avx2:
#if defined(RBQ_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_kernels();
#endif
    return nullptr;
  case Isa::Neon:
#if defined(RBQ_HAVE_NEON)
    return &neon_kernels(); // baseline on aarch64
#else
    return nullptr;
#endif
  }
  return nullptr;
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("RBQ_SIMD"); env && std::string_view(env) == "scalar") {
    return scalar_kernels();
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (const KernelTable* t = kernels_for(isa)) return *t;
  }
  return scalar_kernels();
}

} // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

} // namespace rbq::simd
