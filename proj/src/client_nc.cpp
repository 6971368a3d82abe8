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

#include "ncrest/client_nc.hpp"

#include <algorithm>
#include <limits>

namespace ncrest {

void RandomCoefficientSource::draw(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = static_cast<std::uint8_t>(rng_() & 0xFF);
  out.back() = static_cast<std::uint8_t>(1 + rng_() % 255);
}

void ScriptedCoefficientSource::draw(std::span<std::uint8_t> out) {
  if (next_ >= script_.size()) throw Error("coefficient script exhausted");
  const std::vector<std::uint8_t>& entry = script_[next_++];
  if (entry.size() != out.size())
    throw Error("scripted coefficient vector has wrong size for the current window");
  std::copy(entry.begin(), entry.end(), out.begin());
}

ClientNc::ClientNc() : ClientNc(Options{}) {}

ClientNc::ClientNc(Options options)
    : subset_limit_(options.subset_limit),
      coefficients_(std::make_unique<RandomCoefficientSource>(options.seed)) {
  if (subset_limit_ == 0) throw DomainError("subset_limit must be at least 1");
}

void ClientNc::set_coefficient_source(std::unique_ptr<CoefficientSource> source) {
  coefficients_ = std::move(source);
}

CodedMessage ClientNc::make_combination() {
  std::vector<std::uint8_t> coeffs(buffer_.size());
  coefficients_->draw(coeffs);
  return combine(buffer_, coeffs);
}

CodedMessage ClientNc::submit(const std::vector<std::uint8_t>& payload) {
  if (payload.empty()) throw DomainError("request payload is empty");
  if (payload.size() > std::numeric_limits<std::uint32_t>::max())
    throw DomainError("request payload exceeds 4 GiB");
  if (buffer_.size() >= subset_limit_) throw WindowFull();

  buffer_.push_back(NativeMessage{next_id_, payload});
  ++next_id_;
  return make_combination();
}

std::vector<CodedMessage> ClientNc::handle_response(const NcResponse& response) {
  if (response.seen_newest > response.unseen_newest) throw InvalidResponse();

  // Everything up to seen_newest is decodable at the server, drop it.
  const auto keep_from = std::find_if(buffer_.begin(), buffer_.end(), [&](const NativeMessage& m) {
    return m.id > response.seen_newest;
  });
  buffer_.erase(buffer_.begin(), keep_from);

  const MessageId gap = response.unseen_newest - response.seen_newest;
  if (gap == 0 || response.unseen_newest <= redundancy_guard_id_ || buffer_.empty()) return {};

  // Losses on the way to the server: owe exactly `gap` extra combinations,
  // and guard against re-compensating the same gap on later responses.
  redundancy_guard_id_ = buffer_.back().id;
  std::vector<CodedMessage> additional;
  additional.reserve(static_cast<std::size_t>(gap));
  for (MessageId i = 0; i < gap; ++i) additional.push_back(make_combination());
  return additional;
}

std::optional<CodedMessage> ClientNc::resend_window() {
  if (buffer_.empty()) return std::nullopt;
  return make_combination();
}

std::vector<MessageId> ClientNc::buffered_ids() const {
  std::vector<MessageId> ids;
  ids.reserve(buffer_.size());
  for (const NativeMessage& m : buffer_) ids.push_back(m.id);
  return ids;
}

}  // namespace ncrest
