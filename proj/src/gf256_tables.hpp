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

#include <array>
#include <cstdint>

// Internal lookup tables shared by the scalar and SIMD kernels.

namespace ncrest::gf::detail {

// Reduction polynomial x^8 + x^4 + x^3 + x + 1.
inline constexpr std::uint16_t kPoly = 0x11B;

struct ElementTables {
  std::array<std::uint8_t, 510> exp;  // exp[i] = g^i, doubled so products skip a modulo
  std::array<std::uint8_t, 256> log;  // log[exp[i]] = i; log[0] unused
  std::array<std::uint8_t, 256> inv;  // inv[0] unused, guarded at the API level
};

// 0x03 generates the full multiplicative group for 0x11B.
consteval ElementTables build_element_tables() {
  ElementTables t{};
  std::uint8_t x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[static_cast<std::size_t>(i)] = x;
    t.log[x] = static_cast<std::uint8_t>(i);
    std::uint16_t doubled = static_cast<std::uint16_t>(x) << 1;
    if (doubled & 0x100) doubled ^= kPoly;
    x = static_cast<std::uint8_t>(doubled ^ x);  // x *= 0x03
  }
  for (int i = 255; i < 510; ++i) t.exp[static_cast<std::size_t>(i)] = t.exp[static_cast<std::size_t>(i - 255)];
  for (int a = 1; a < 256; ++a)
    t.inv[static_cast<std::size_t>(a)] = t.exp[static_cast<std::size_t>(255 - t.log[static_cast<std::size_t>(a)])];
  return t;
}

inline constexpr ElementTables kTables = build_element_tables();

constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  return kTables.exp[static_cast<std::size_t>(kTables.log[a]) + kTables.log[b]];
}

// Per-coefficient nibble product tables for the byte-shuffle kernels:
// c*b == lo[c][b & 0xF] ^ hi[c][b >> 4].
struct NibbleTables {
  std::array<std::array<std::uint8_t, 16>, 256> lo;
  std::array<std::array<std::uint8_t, 16>, 256> hi;
};

consteval NibbleTables build_nibble_tables() {
  NibbleTables t{};
  for (int c = 0; c < 256; ++c) {
    for (int x = 0; x < 16; ++x) {
      t.lo[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] =
          mul(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(x));
      t.hi[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] =
          mul(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(x << 4));
    }
  }
  return t;
}

inline constexpr NibbleTables kNibbles = build_nibble_tables();

}  // namespace ncrest::gf::detail
