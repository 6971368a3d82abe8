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
#include <vector>

#include "ncrest/errors.hpp"

// Coded-message model and wire format.
//
// A coded message carries a random linear combination of the client's
// buffered request messages over a contiguous id window. On the wire
// (big-endian throughout):
//
//   magic "NCR1"      4 bytes
//   id_oldest         8 bytes
//   id_newest         8 bytes
//   window_count w    2 bytes   (= id_newest - id_oldest + 1)
//   length[w]         4 bytes each
//   coefficient[w]    1 byte each
//   payload           max(length) bytes, shorter messages zero padded
//
// The feedback response is:
//
//   magic "NCA1"      4 bytes
//   seen_newest       8 bytes
//   unseen_newest     8 bytes

namespace ncrest {

using MessageId = std::uint64_t;

inline constexpr std::size_t kMaxWindow = 0xFFFF;
inline constexpr std::size_t kMessageHeaderMinSize = 4 + 8 + 8 + 2;
inline constexpr std::size_t kResponseSize = 4 + 8 + 8;

/// One request message as handed over by the REST layer. Ids are assigned
/// in submission order starting at 1 and never reused.
struct NativeMessage {
  MessageId id = 0;
  std::vector<std::uint8_t> payload;

  std::uint32_t length() const noexcept { return static_cast<std::uint32_t>(payload.size()); }
};

/// Window bounds, per-message true lengths and per-message coefficients of
/// one linear combination.
struct CodingHeader {
  MessageId id_oldest = 0;
  MessageId id_newest = 0;
  std::vector<std::uint32_t> lengths;
  std::vector<std::uint8_t> coefficients;

  std::size_t window_size() const noexcept {
    return static_cast<std::size_t>(id_newest - id_oldest + 1);
  }
  std::uint32_t max_length() const noexcept;

  void validate() const;  // throws MalformedHeader

  friend bool operator==(const CodingHeader&, const CodingHeader&) = default;
};

struct CodedMessage {
  CodingHeader header;
  std::vector<std::uint8_t> payload;  // max_length() bytes

  friend bool operator==(const CodedMessage&, const CodedMessage&) = default;
};

/// Server feedback: ids of the newest seen and newest unseen message after
/// row reduction. seen_newest is 0 while nothing has been seen.
struct NcResponse {
  MessageId seen_newest = 0;
  MessageId unseen_newest = 0;

  friend bool operator==(const NcResponse&, const NcResponse&) = default;
};

/// Forms the linear combination sum(coefficients[i] * messages[i]) with
/// shorter payloads zero-extended to the longest one.
///
/// Throws EmptyWindow, NonContiguousIds, CoefficientCountMismatch,
/// ZeroNewestCoefficient, DomainError (payload size out of range).
CodedMessage combine(std::span<const NativeMessage> messages, std::span<const std::uint8_t> coefficients);

/// Throws MalformedHeader when the message violates a header invariant.
void validate_message(const CodedMessage& msg);

std::vector<std::uint8_t> serialize(const CodedMessage& msg);
CodedMessage deserialize(std::span<const std::uint8_t> bytes);  // throws MalformedHeader

std::vector<std::uint8_t> serialize_response(const NcResponse& response);
NcResponse deserialize_response(std::span<const std::uint8_t> bytes);  // throws MalformedHeader

/// Drops the padding appended during coding: returns the first true_length
/// bytes. Throws LengthExceedsPayload.
std::vector<std::uint8_t> prune(std::span<const std::uint8_t> payload, std::uint32_t true_length);

}  // namespace ncrest
