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

#include "ncrest/gf256.hpp"

#include <atomic>
#include <cstring>
#include <vector>

#include "gf256_kernels.hpp"
#include "gf256_tables.hpp"

namespace ncrest::gf {

std::uint8_t add(std::uint8_t a, std::uint8_t b) noexcept { return a ^ b; }

std::uint8_t sub(std::uint8_t a, std::uint8_t b) noexcept { return a ^ b; }

std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept { return detail::mul(a, b); }

std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw ZeroInverse();
  return detail::kTables.inv[a];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw ZeroInverse();
  if (a == 0) return 0;
  return detail::kTables.exp[static_cast<std::size_t>(detail::kTables.log[a]) + 255 - detail::kTables.log[b]];
}

namespace {

// Reference kernels. These define the contract the SIMD variants must match
// byte for byte.

void add_region_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void mul_region_scalar(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) {
    std::memset(dst, 0, n);
    return;
  }
  if (c == 1) {
    std::memmove(dst, src, n);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) dst[i] = detail::mul(c, src[i]);
}

void mul_add_region_scalar(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    add_region_scalar(dst, src, n);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= detail::mul(c, src[i]);
}

constexpr KernelTable kScalarKernels{Backend::kScalar, add_region_scalar, mul_region_scalar, mul_add_region_scalar};

std::vector<KernelTable> build_available() {
  std::vector<KernelTable> tables{kScalarKernels};
#if defined(NCREST_HAVE_SSSE3)
  if (__builtin_cpu_supports("ssse3")) tables.push_back(detail::ssse3_kernels());
#endif
#if defined(NCREST_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) tables.push_back(detail::avx2_kernels());
#endif
#if defined(NCREST_HAVE_NEON)
  tables.push_back(detail::neon_kernels());
#endif
  return tables;
}

const std::vector<KernelTable>& available() {
  static const std::vector<KernelTable> tables = build_available();
  return tables;
}

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = &available().back();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

std::span<const KernelTable> kernel_tables() noexcept { return available(); }

Backend active_backend() noexcept { return active().backend; }

bool select_backend(Backend backend) noexcept {
  for (const KernelTable& t : available()) {
    if (t.backend == backend) {
      g_active.store(&t, std::memory_order_release);
      return true;
    }
  }
  return false;
}

std::string_view backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kSsse3: return "ssse3";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

void add_region(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) noexcept {
  active().add_region(dst, src, n);
}

void mul_region(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) noexcept {
  active().mul_region(dst, src, c, n);
}

void mul_add_region(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) noexcept {
  active().mul_add_region(dst, src, c, n);
}

}  // namespace ncrest::gf
