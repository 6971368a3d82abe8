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

// TBL nibble-split GF(2^8) kernels for AArch64, 16 bytes per step.

#include <arm_neon.h>

#include <cstring>

#include "gf256_kernels.hpp"
#include "gf256_tables.hpp"

namespace ncrest::gf::detail {

namespace {

void add_region_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint8x16_t d = vld1q_u8(dst + i);
    uint8x16_t s = vld1q_u8(src + i);
    vst1q_u8(dst + i, veorq_u8(d, s));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

inline uint8x16_t product16(uint8x16_t s, uint8x16_t lo, uint8x16_t hi, uint8x16_t mask) {
  uint8x16_t lo_part = vqtbl1q_u8(lo, vandq_u8(s, mask));
  uint8x16_t hi_part = vqtbl1q_u8(hi, vshrq_n_u8(s, 4));
  return veorq_u8(lo_part, hi_part);
}

void mul_region_neon(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) {
    std::memset(dst, 0, n);
    return;
  }
  if (c == 1) {
    std::memmove(dst, src, n);
    return;
  }
  const uint8x16_t lo = vld1q_u8(kNibbles.lo[c].data());
  const uint8x16_t hi = vld1q_u8(kNibbles.hi[c].data());
  const uint8x16_t mask = vdupq_n_u8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint8x16_t s = vld1q_u8(src + i);
    vst1q_u8(dst + i, product16(s, lo, hi, mask));
  }
  for (; i < n; ++i) dst[i] = mul(c, src[i]);
}

void mul_add_region_neon(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    add_region_neon(dst, src, n);
    return;
  }
  const uint8x16_t lo = vld1q_u8(kNibbles.lo[c].data());
  const uint8x16_t hi = vld1q_u8(kNibbles.hi[c].data());
  const uint8x16_t mask = vdupq_n_u8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint8x16_t s = vld1q_u8(src + i);
    uint8x16_t d = vld1q_u8(dst + i);
    vst1q_u8(dst + i, veorq_u8(d, product16(s, lo, hi, mask)));
  }
  for (; i < n; ++i) dst[i] ^= mul(c, src[i]);
}

constexpr KernelTable kNeonKernels{Backend::kNeon, add_region_neon, mul_region_neon, mul_add_region_neon};

}  // namespace

const KernelTable& neon_kernels() noexcept { return kNeonKernels; }

}  // namespace ncrest::gf::detail
