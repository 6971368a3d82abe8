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

// PSHUFB nibble-split GF(2^8) kernels, 16 bytes per step.

#include <tmmintrin.h>

#include <cstring>

#include "gf256_kernels.hpp"
#include "gf256_tables.hpp"

namespace ncrest::gf::detail {

namespace {

void add_region_ssse3(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm_xor_si128(d, s));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

inline __m128i product16(__m128i s, __m128i lo, __m128i hi, __m128i mask) {
  __m128i lo_part = _mm_shuffle_epi8(lo, _mm_and_si128(s, mask));
  __m128i hi_part = _mm_shuffle_epi8(hi, _mm_and_si128(_mm_srli_epi64(s, 4), mask));
  return _mm_xor_si128(lo_part, hi_part);
}

void mul_region_ssse3(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) {
    std::memset(dst, 0, n);
    return;
  }
  if (c == 1) {
    std::memmove(dst, src, n);
    return;
  }
  const __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(kNibbles.lo[c].data()));
  const __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(kNibbles.hi[c].data()));
  const __m128i mask = _mm_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), product16(s, lo, hi, mask));
  }
  for (; i < n; ++i) dst[i] = mul(c, src[i]);
}

void mul_add_region_ssse3(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    add_region_ssse3(dst, src, n);
    return;
  }
  const __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(kNibbles.lo[c].data()));
  const __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(kNibbles.hi[c].data()));
  const __m128i mask = _mm_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm_xor_si128(d, product16(s, lo, hi, mask)));
  }
  for (; i < n; ++i) dst[i] ^= mul(c, src[i]);
}

constexpr KernelTable kSsse3Kernels{Backend::kSsse3, add_region_ssse3, mul_region_ssse3, mul_add_region_ssse3};

}  // namespace

const KernelTable& ssse3_kernels() noexcept { return kSsse3Kernels; }

}  // namespace ncrest::gf::detail
