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

#include "ncrest/server_nc.hpp"

#include <algorithm>
#include <cassert>

#include "ncrest/gf256.hpp"

namespace ncrest {

std::size_t DecodingMatrix::column_index(MessageId id) const {
  auto it = std::lower_bound(columns_.begin(), columns_.end(), id);
  assert(it != columns_.end() && *it == id);
  return static_cast<std::size_t>(it - columns_.begin());
}

void DecodingMatrix::ensure_column(MessageId id) {
  auto it = std::lower_bound(columns_.begin(), columns_.end(), id);
  if (it != columns_.end() && *it == id) return;
  const std::size_t pos = static_cast<std::size_t>(it - columns_.begin());
  columns_.insert(it, id);
  for (Row& row : rows_) row.coeffs.insert(row.coeffs.begin() + static_cast<std::ptrdiff_t>(pos), 0);
}

std::size_t DecodingMatrix::find_row(MessageId pivot_id) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].pivot == pivot_id) return i;
  return rows_.size();
}

void DecodingMatrix::add_scaled(Row& dst, const Row& src, std::uint8_t factor) {
  gf::mul_add_region(dst.coeffs.data(), src.coeffs.data(), factor, src.coeffs.size());
  if (dst.payload.size() < src.payload.size()) dst.payload.resize(src.payload.size(), 0);
  gf::mul_add_region(dst.payload.data(), src.payload.data(), factor, src.payload.size());
}

DecodingMatrix::InsertResult DecodingMatrix::insert(const CodingHeader& header,
                                                    std::span<const std::uint8_t> payload) {
  for (MessageId id = header.id_oldest; id <= header.id_newest; ++id) ensure_column(id);

  Row incoming;
  incoming.coeffs.assign(columns_.size(), 0);
  for (std::size_t i = 0; i < header.window_size(); ++i)
    incoming.coeffs[column_index(header.id_oldest + i)] = header.coefficients[i];
  incoming.payload.assign(payload.begin(), payload.end());

  // Forward pass: cancel every known pivot out of the incoming row.
  for (const Row& row : rows_) {
    const std::uint8_t factor = incoming.coeffs[column_index(row.pivot)];
    if (factor != 0) add_scaled(incoming, row, factor);
  }

  const auto lead = std::find_if(incoming.coeffs.begin(), incoming.coeffs.end(),
                                 [](std::uint8_t c) { return c != 0; });
  if (lead == incoming.coeffs.end()) return {};  // dependent, discard

  const std::size_t lead_idx = static_cast<std::size_t>(lead - incoming.coeffs.begin());
  const std::uint8_t scale = gf::inv(incoming.coeffs[lead_idx]);
  gf::mul_region(incoming.coeffs.data(), incoming.coeffs.data(), scale, incoming.coeffs.size());
  gf::mul_region(incoming.payload.data(), incoming.payload.data(), scale, incoming.payload.size());
  incoming.pivot = columns_[lead_idx];

  // Backward pass: clear the new pivot column from every stored row.
  for (Row& row : rows_) {
    const std::uint8_t factor = row.coeffs[lead_idx];
    if (factor != 0) add_scaled(row, incoming, factor);
  }

  const auto pos = std::lower_bound(rows_.begin(), rows_.end(), incoming.pivot,
                                    [](const Row& r, MessageId id) { return r.pivot < id; });
  const MessageId pivot = incoming.pivot;
  rows_.insert(pos, std::move(incoming));
  return {true, pivot};
}

bool DecodingMatrix::is_pivot(MessageId id) const { return find_row(id) != rows_.size(); }

bool DecodingMatrix::is_unit_row(MessageId pivot_id) const {
  const std::size_t i = find_row(pivot_id);
  if (i == rows_.size()) return false;
  const Row& row = rows_[i];
  std::size_t nonzero = 0;
  for (std::uint8_t c : row.coeffs)
    if (c != 0 && ++nonzero > 1) return false;
  return nonzero == 1;
}

std::span<const std::uint8_t> DecodingMatrix::payload_of(MessageId pivot_id) const {
  const std::size_t i = find_row(pivot_id);
  assert(i != rows_.size());
  return rows_[i].payload;
}

bool DecodingMatrix::retire(MessageId pivot_id) {
  const std::size_t i = find_row(pivot_id);
  if (i == rows_.size() || !is_unit_row(pivot_id)) return false;
  const std::size_t col = column_index(pivot_id);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (r != i && rows_[r].coeffs[col] != 0) return false;  // deferred, still referenced
  rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
  columns_.erase(columns_.begin() + static_cast<std::ptrdiff_t>(col));
  for (Row& row : rows_) row.coeffs.erase(row.coeffs.begin() + static_cast<std::ptrdiff_t>(col));
  return true;
}

void DecodingMatrix::drop_zero_columns_below(MessageId id) {
  for (std::size_t col = columns_.size(); col-- > 0;) {
    if (columns_[col] >= id) continue;
    bool referenced = false;
    for (const Row& row : rows_) {
      if (row.coeffs[col] != 0) {
        referenced = true;
        break;
      }
    }
    if (referenced) continue;
    columns_.erase(columns_.begin() + static_cast<std::ptrdiff_t>(col));
    for (Row& row : rows_) row.coeffs.erase(row.coeffs.begin() + static_cast<std::ptrdiff_t>(col));
  }
}

std::vector<MessageId> DecodingMatrix::pivot_ids() const {
  std::vector<MessageId> ids;
  ids.reserve(rows_.size());
  for (const Row& row : rows_) ids.push_back(row.pivot);
  return ids;
}

bool DecodingMatrix::in_reduced_row_echelon_form() const {
  MessageId prev_pivot = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& row = rows_[i];
    if (row.pivot <= prev_pivot) return false;
    prev_pivot = row.pivot;
    const std::size_t col = column_index(row.pivot);
    for (std::size_t j = 0; j < col; ++j)
      if (row.coeffs[j] != 0) return false;  // pivot must be the leading entry
    if (row.coeffs[col] != 1) return false;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (r != i && rows_[r].coeffs[col] != 0) return false;
  }
  return true;
}

ServerNc::ReceiveResult ServerNc::receive(const CodedMessage& msg) {
  validate_message(msg);

  ReceiveResult result;
  result.retired = cleanup(msg.header.id_oldest);

  for (std::size_t i = 0; i < msg.header.window_size(); ++i)
    lengths_.try_emplace(msg.header.id_oldest + i, msg.header.lengths[i]);
  max_id_observed_ = std::max(max_id_observed_, msg.header.id_newest);

  const DecodingMatrix::InsertResult inserted = matrix_.insert(msg.header, msg.payload);
  if (inserted.innovative) seen_.insert(inserted.pivot);

  // The backward pass may have reduced several rows to unit form at once;
  // deliver them in ascending id order, each exactly once.
  for (std::size_t r = 0; r < matrix_.row_count(); ++r) {
    const MessageId id = matrix_.row_pivot(r);
    if (delivered_.contains(id) || !matrix_.is_unit_row(id)) continue;
    std::span<const std::uint8_t> row_payload = matrix_.payload_of(id);
    const auto it = lengths_.find(id);
    const std::uint32_t true_length =
        it != lengths_.end() ? it->second : static_cast<std::uint32_t>(row_payload.size());
    std::vector<std::uint8_t> payload(row_payload.begin(),
                                      row_payload.begin() + std::min<std::size_t>(true_length, row_payload.size()));
    payload.resize(true_length, 0);
    delivered_.insert(id);
    ++delivered_total_;
    if (on_deliver_) on_deliver_(id, payload);
    result.delivered.push_back(NativeMessage{id, std::move(payload)});
  }

  result.response = current_response();
  return result;
}

std::size_t ServerNc::cleanup(MessageId id_oldest) {
  std::size_t retired = 0;
  for (MessageId id : matrix_.pivot_ids()) {
    if (id >= id_oldest || !delivered_.contains(id)) continue;
    if (matrix_.retire(id)) {
      lengths_.erase(id);
      ++retired;
    }
  }
  matrix_.drop_zero_columns_below(id_oldest);
  return retired;
}

NcResponse ServerNc::current_response() const {
  const MessageId seen = seen_.prefix();
  return NcResponse{seen, std::max(max_id_observed_, seen)};
}

}  // namespace ncrest
