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

// VPSHUFB nibble-split GF(2^8) kernels, 32 bytes per step. The 16-entry
// product tables are broadcast to both 128-bit lanes.

#include <immintrin.h>

#include <cstring>

#include "gf256_kernels.hpp"
#include "gf256_tables.hpp"

namespace ncrest::gf::detail {

namespace {

void add_region_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

inline __m256i product32(__m256i s, __m256i lo, __m256i hi, __m256i mask) {
  __m256i lo_part = _mm256_shuffle_epi8(lo, _mm256_and_si256(s, mask));
  __m256i hi_part = _mm256_shuffle_epi8(hi, _mm256_and_si256(_mm256_srli_epi64(s, 4), mask));
  return _mm256_xor_si256(lo_part, hi_part);
}

inline __m256i broadcast_table(const std::uint8_t* table16) {
  return _mm256_broadcastsi128_si256(_mm_loadu_si128(reinterpret_cast<const __m128i*>(table16)));
}

void mul_region_avx2(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) {
    std::memset(dst, 0, n);
    return;
  }
  if (c == 1) {
    std::memmove(dst, src, n);
    return;
  }
  const __m256i lo = broadcast_table(kNibbles.lo[c].data());
  const __m256i hi = broadcast_table(kNibbles.hi[c].data());
  const __m256i mask = _mm256_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), product32(s, lo, hi, mask));
  }
  for (; i < n; ++i) dst[i] = mul(c, src[i]);
}

void mul_add_region_avx2(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    add_region_avx2(dst, src, n);
    return;
  }
  const __m256i lo = broadcast_table(kNibbles.lo[c].data());
  const __m256i hi = broadcast_table(kNibbles.hi[c].data());
  const __m256i mask = _mm256_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, product32(s, lo, hi, mask)));
  }
  for (; i < n; ++i) dst[i] ^= mul(c, src[i]);
}

constexpr KernelTable kAvx2Kernels{Backend::kAvx2, add_region_avx2, mul_region_avx2, mul_add_region_avx2};

}  // namespace

const KernelTable& avx2_kernels() noexcept { return kAvx2Kernels; }

}  // namespace ncrest::gf::detail
