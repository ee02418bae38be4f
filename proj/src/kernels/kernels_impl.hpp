#pragma once

#include "vcbench/kernels.hpp"

namespace vcbench::kernels {

const Backend& scalar_backend();

#if defined(VCBENCH_BUILD_AVX2)
const Backend& avx2_backend();
bool cpu_has_avx2();
#endif
#if defined(VCBENCH_BUILD_NEON)
const Backend& neon_backend();
#endif

}  // namespace vcbench::kernels
