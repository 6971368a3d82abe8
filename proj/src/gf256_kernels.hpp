/*
 * Copyright 2026 The ncrest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "ncrest/gf256.hpp"

// Kernel sets provided by the architecture-specific translation units.
// Availability macros are set per target by the build.

namespace ncrest::gf::detail {

#if defined(NCREST_HAVE_SSSE3)
const KernelTable& ssse3_kernels() noexcept;
#endif
#if defined(NCREST_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(NCREST_HAVE_NEON)
const KernelTable& neon_kernels() noexcept;
#endif

}  // namespace ncrest::gf::detail
