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

#include "ncrest/codec.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ncrest/gf256.hpp"

namespace ncrest {

namespace {

constexpr std::uint8_t kMessageMagic[4] = {'N', 'C', 'R', '1'};
constexpr std::uint8_t kResponseMagic[4] = {'N', 'C', 'A', '1'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((static_cast<std::uint16_t>(p[0]) << 8) | p[1]);
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | p[i];
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

std::uint32_t CodingHeader::max_length() const noexcept {
  std::uint32_t m = 0;
  for (std::uint32_t len : lengths) m = std::max(m, len);
  return m;
}

void CodingHeader::validate() const {
  if (id_oldest == 0) throw MalformedHeader("id_oldest must be at least 1");
  if (id_newest < id_oldest) throw MalformedHeader("id_newest precedes id_oldest");
  if (id_newest - id_oldest + 1 > kMaxWindow) throw MalformedHeader("window exceeds " + std::to_string(kMaxWindow));
  const std::size_t w = window_size();
  if (lengths.size() != w) throw MalformedHeader("length list does not match window size");
  if (coefficients.size() != w) throw MalformedHeader("coefficient list does not match window size");
  for (std::uint32_t len : lengths)
    if (len == 0) throw MalformedHeader("zero message length");
  if (coefficients.back() == 0) throw MalformedHeader("newest coefficient is zero");
}

void validate_message(const CodedMessage& msg) {
  msg.header.validate();
  if (msg.payload.size() != msg.header.max_length())
    throw MalformedHeader("payload size does not equal the window's maximum length");
}

CodedMessage combine(std::span<const NativeMessage> messages, std::span<const std::uint8_t> coefficients) {
  if (messages.empty()) throw EmptyWindow();
  if (coefficients.size() != messages.size()) throw CoefficientCountMismatch();
  for (std::size_t i = 1; i < messages.size(); ++i)
    if (messages[i].id != messages[i - 1].id + 1) throw NonContiguousIds();
  if (coefficients.back() == 0) throw ZeroNewestCoefficient();

  std::size_t max_len = 0;
  for (const NativeMessage& m : messages) {
    if (m.payload.empty()) throw DomainError("message payload is empty");
    if (m.payload.size() > std::numeric_limits<std::uint32_t>::max())
      throw DomainError("message payload exceeds 4 GiB");
    max_len = std::max(max_len, m.payload.size());
  }

  CodedMessage out;
  out.header.id_oldest = messages.front().id;
  out.header.id_newest = messages.back().id;
  out.header.lengths.reserve(messages.size());
  for (const NativeMessage& m : messages) out.header.lengths.push_back(m.length());
  out.header.coefficients.assign(coefficients.begin(), coefficients.end());

  out.payload.assign(max_len, 0);
  for (std::size_t i = 0; i < messages.size(); ++i)
    gf::mul_add_region(out.payload.data(), messages[i].payload.data(), coefficients[i], messages[i].payload.size());
  return out;
}

std::vector<std::uint8_t> serialize(const CodedMessage& msg) {
  validate_message(msg);
  const std::size_t w = msg.header.window_size();
  std::vector<std::uint8_t> out;
  out.reserve(kMessageHeaderMinSize + 5 * w + msg.payload.size());
  out.insert(out.end(), std::begin(kMessageMagic), std::end(kMessageMagic));
  put_u64(out, msg.header.id_oldest);
  put_u64(out, msg.header.id_newest);
  put_u16(out, static_cast<std::uint16_t>(w));
  for (std::uint32_t len : msg.header.lengths) put_u32(out, len);
  out.insert(out.end(), msg.header.coefficients.begin(), msg.header.coefficients.end());
  out.insert(out.end(), msg.payload.begin(), msg.payload.end());
  return out;
}

CodedMessage deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMessageHeaderMinSize) throw MalformedHeader("truncated header");
  if (!std::equal(std::begin(kMessageMagic), std::end(kMessageMagic), bytes.begin()))
    throw MalformedHeader("bad magic");

  CodedMessage msg;
  msg.header.id_oldest = get_u64(bytes.data() + 4);
  msg.header.id_newest = get_u64(bytes.data() + 12);
  const std::uint16_t w = get_u16(bytes.data() + 20);
  if (msg.header.id_oldest == 0) throw MalformedHeader("id_oldest must be at least 1");
  if (msg.header.id_newest < msg.header.id_oldest) throw MalformedHeader("id_newest precedes id_oldest");
  if (msg.header.id_newest - msg.header.id_oldest + 1 != w)
    throw MalformedHeader("window count does not match the id range");

  std::size_t offset = kMessageHeaderMinSize;
  if (bytes.size() < offset + 5u * w) throw MalformedHeader("truncated length or coefficient list");
  msg.header.lengths.reserve(w);
  for (std::uint16_t i = 0; i < w; ++i, offset += 4) msg.header.lengths.push_back(get_u32(bytes.data() + offset));
  msg.header.coefficients.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(offset + w));
  offset += w;

  msg.header.validate();
  const std::size_t payload_len = msg.header.max_length();
  if (bytes.size() != offset + payload_len) throw MalformedHeader("payload size does not match the length list");
  msg.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset), bytes.end());
  return msg;
}

std::vector<std::uint8_t> serialize_response(const NcResponse& response) {
  std::vector<std::uint8_t> out;
  out.reserve(kResponseSize);
  out.insert(out.end(), std::begin(kResponseMagic), std::end(kResponseMagic));
  put_u64(out, response.seen_newest);
  put_u64(out, response.unseen_newest);
  return out;
}

NcResponse deserialize_response(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kResponseSize) throw MalformedHeader("response must be exactly 20 bytes");
  if (!std::equal(std::begin(kResponseMagic), std::end(kResponseMagic), bytes.begin()))
    throw MalformedHeader("bad response magic");
  return NcResponse{get_u64(bytes.data() + 4), get_u64(bytes.data() + 12)};
}

std::vector<std::uint8_t> prune(std::span<const std::uint8_t> payload, std::uint32_t true_length) {
  if (true_length > payload.size()) throw LengthExceedsPayload();
  return std::vector<std::uint8_t>(payload.begin(), payload.begin() + true_length);
}

}  // namespace ncrest
