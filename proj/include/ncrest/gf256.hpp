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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "ncrest/errors.hpp"

// Arithmetic over GF(2^8). All coding coefficients and payload symbols are
// elements of this field; addition is XOR, multiplication is the carry-less
// polynomial product reduced modulo kReductionPoly.

namespace ncrest::gf {

inline constexpr std::uint16_t kReductionPoly = 0x11B;  // x^8 + x^4 + x^3 + x + 1

std::uint8_t add(std::uint8_t a, std::uint8_t b) noexcept;
std::uint8_t sub(std::uint8_t a, std::uint8_t b) noexcept;  // same as add in characteristic 2
std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept;
std::uint8_t inv(std::uint8_t a);                  // ZeroInverse when a == 0
std::uint8_t div(std::uint8_t a, std::uint8_t b);  // ZeroInverse when b == 0

// Bulk kernels over byte regions. dst and src must not partially overlap;
// dst == src is allowed.
void add_region(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) noexcept;                      // dst ^= src
void mul_region(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) noexcept;      // dst = c*src
void mul_add_region(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) noexcept;  // dst ^= c*src

enum class Backend { kScalar, kSsse3, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  void (*add_region)(std::uint8_t*, const std::uint8_t*, std::size_t);
  void (*mul_region)(std::uint8_t*, const std::uint8_t*, std::uint8_t, std::size_t);
  void (*mul_add_region)(std::uint8_t*, const std::uint8_t*, std::uint8_t, std::size_t);
};

// Kernel sets usable on this machine: scalar first, fastest last. The bulk
// entry points above dispatch through the active set (best available unless
// overridden with select_backend).
std::span<const KernelTable> kernel_tables() noexcept;
Backend active_backend() noexcept;
bool select_backend(Backend backend) noexcept;  // false if unavailable here
std::string_view backend_name(Backend backend) noexcept;

}  // namespace ncrest::gf

namespace ncrest {

/// One element of GF(2^8), stored as a single byte.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint8_t value) : value_(value) {}

  constexpr std::uint8_t value() const noexcept { return value_; }

  friend constexpr bool operator==(FieldElement, FieldElement) = default;

  friend FieldElement operator+(FieldElement a, FieldElement b) noexcept {
    return FieldElement(gf::add(a.value_, b.value_));
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) noexcept {
    return FieldElement(gf::sub(a.value_, b.value_));
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) noexcept {
    return FieldElement(gf::mul(a.value_, b.value_));
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    return FieldElement(gf::div(a.value_, b.value_));
  }

  FieldElement inverse() const { return FieldElement(gf::inv(value_)); }

 private:
  std::uint8_t value_ = 0;
};

}  // namespace ncrest
