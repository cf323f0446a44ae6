#include "bmforge/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace bmforge::simd {

namespace {

#define BMFORGE_TABLE(ns, isa_tag)                                                   \
  Kernels {                                                                          \
    isa_tag, &detail::ns::dot, &detail::ns::axpy, &detail::ns::xpay,                 \
        &detail::ns::halfspace_gauge_row, &detail::ns::masked_sum, &detail::ns::stencil5 \
  }

const Kernels kScalar = BMFORGE_TABLE(scalar, Isa::Scalar);

#if defined(BMFORGE_HAVE_AVX2)
const Kernels kAvx2 = BMFORGE_TABLE(avx2, Isa::Avx2);

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#undef BMFORGE_TABLE

const Kernels& select() {
  const char* forced = std::getenv("BMFORGE_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalar;
  if (const Kernels* wide = avx2_kernels()) return *wide;
  return kScalar;
}

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels* avx2_kernels() {
#if defined(BMFORGE_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& kernels() {
  static const Kernels& active = select();
  return active;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace bmforge::simd
