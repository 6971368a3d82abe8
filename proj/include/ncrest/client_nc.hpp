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
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ncrest/codec.hpp"

// Client-side network coding layer. Submitted requests are buffered until
// the server confirms them as seen; every submission emits one random
// linear combination over the buffered window, and server feedback drives
// exactly as many additional combinations as the reported loss gap.

namespace ncrest {

/// Supplies per-combination coefficient vectors. The last entry (newest
/// message) must be nonzero.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;
  virtual void draw(std::span<std::uint8_t> out) = 0;
};

/// Seeded uniform draw: older messages over 0..255, the newest over 1..255
/// so it always participates.
class RandomCoefficientSource final : public CoefficientSource {
 public:
  explicit RandomCoefficientSource(std::uint64_t seed) : rng_(seed) {}
  void draw(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 rng_;
};

/// Replays a fixed list of coefficient vectors; used by the reference trace
/// and by tests that need specific combinations.
class ScriptedCoefficientSource final : public CoefficientSource {
 public:
  explicit ScriptedCoefficientSource(std::vector<std::vector<std::uint8_t>> script)
      : script_(std::move(script)) {}
  void draw(std::span<std::uint8_t> out) override;

 private:
  std::vector<std::vector<std::uint8_t>> script_;
  std::size_t next_ = 0;
};

class ClientNc {
 public:
  struct Options {
    std::size_t subset_limit = 16;  // max messages per combination, bounds header size
    std::uint64_t seed = 0;
  };

  ClientNc();
  explicit ClientNc(Options options);

  void set_coefficient_source(std::unique_ptr<CoefficientSource> source);

  /// Buffers the payload under the next id and returns a fresh combination
  /// over the whole buffered window. Throws WindowFull when the buffer
  /// already holds subset_limit unconfirmed messages (the REST layer is
  /// expected to retry later); the state is unchanged in that case.
  CodedMessage submit(const std::vector<std::uint8_t>& payload);

  /// Applies server feedback: removes every buffered message with
  /// id <= seen_newest, and when the response reveals not-yet-compensated
  /// losses (unseen_newest - seen_newest > 0 and unseen_newest above the
  /// redundancy guard) returns exactly that many additional combinations.
  /// Throws InvalidResponse when seen_newest > unseen_newest.
  std::vector<CodedMessage> handle_response(const NcResponse& response);

  /// Timeout action: one fresh combination over the current window, or
  /// nothing when the buffer is empty.
  std::optional<CodedMessage> resend_window();

  std::size_t buffered_count() const noexcept { return buffer_.size(); }
  std::vector<MessageId> buffered_ids() const;
  MessageId next_id() const noexcept { return next_id_; }
  /// Highest id_newest among additional combinations already sent.
  MessageId redundancy_guard_id() const noexcept { return redundancy_guard_id_; }
  std::size_t subset_limit() const noexcept { return subset_limit_; }

 private:
  CodedMessage make_combination();

  std::vector<NativeMessage> buffer_;  // contiguous ascending ids
  MessageId next_id_ = 1;
  MessageId redundancy_guard_id_ = 0;
  std::size_t subset_limit_;
  std::unique_ptr<CoefficientSource> coefficients_;
};

}  // namespace ncrest
