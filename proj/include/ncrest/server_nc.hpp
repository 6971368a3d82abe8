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
#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "ncrest/codec.hpp"

// Server-side network coding layer. Every received coded message is row
// reduced into a matrix kept in reduced row echelon form; pivot columns are
// the seen messages, rows reduced to a single unit coefficient are decoded
// and delivered. Feedback (seen_newest, unseen_newest) is derived from the
// matrix state alone, so it can be produced before anything is decodable.

namespace ncrest {

namespace detail {

// Set of ids optimized for the common case of a dense prefix 1..k.
class IdPrefixSet {
 public:
  void insert(MessageId id) {
    if (id <= prefix_) return;
    if (id == prefix_ + 1) {
      ++prefix_;
      auto it = sparse_.begin();
      while (it != sparse_.end() && *it == prefix_ + 1) {
        ++prefix_;
        it = sparse_.erase(it);
      }
    } else {
      sparse_.insert(id);
    }
  }
  bool contains(MessageId id) const { return id != 0 && (id <= prefix_ || sparse_.count(id) > 0); }
  /// Largest k such that every id in 1..k is present (0 when 1 is absent).
  MessageId prefix() const { return prefix_; }

 private:
  MessageId prefix_ = 0;
  std::set<MessageId> sparse_;
};

}  // namespace detail

/// Coefficient rows plus payload rows in reduced row echelon form over the
/// active id columns. Column j of every coefficient row corresponds to
/// column_ids()[j]; rows are ordered by pivot column.
class DecodingMatrix {
 public:
  struct InsertResult {
    bool innovative = false;   // false: linearly dependent row, discarded
    MessageId pivot = 0;       // pivot id claimed by the new row when innovative
  };

  InsertResult insert(const CodingHeader& header, std::span<const std::uint8_t> payload);

  std::size_t rank() const noexcept { return rows_.size(); }
  bool is_pivot(MessageId id) const;
  /// True when the pivot's row has a single nonzero coefficient, i.e. the
  /// message is fully decoded.
  bool is_unit_row(MessageId pivot_id) const;
  std::span<const std::uint8_t> payload_of(MessageId pivot_id) const;

  /// Drops a fully decoded row together with its column. Returns false when
  /// the id is not a decoded pivot or its column is still referenced.
  bool retire(MessageId pivot_id);
  /// Garbage-collects columns below `id` that no row references.
  void drop_zero_columns_below(MessageId id);

  std::span<const MessageId> column_ids() const noexcept { return columns_; }
  std::vector<MessageId> pivot_ids() const;

  std::size_t row_count() const noexcept { return rows_.size(); }
  MessageId row_pivot(std::size_t row) const { return rows_[row].pivot; }
  std::span<const std::uint8_t> row_coefficients(std::size_t row) const { return rows_[row].coeffs; }

  /// Structural check used by the tests: pivots strictly ascending, leading
  /// entries equal to one, pivot columns zero everywhere else.
  bool in_reduced_row_echelon_form() const;

 private:
  struct Row {
    MessageId pivot = 0;
    std::vector<std::uint8_t> coeffs;   // parallel to columns_
    std::vector<std::uint8_t> payload;  // grows to the widest combination it absorbed
  };

  std::size_t column_index(MessageId id) const;
  void ensure_column(MessageId id);
  std::size_t find_row(MessageId pivot_id) const;  // rows_.size() when absent
  static void add_scaled(Row& dst, const Row& src, std::uint8_t factor);

  std::vector<MessageId> columns_;  // ascending
  std::vector<Row> rows_;           // sorted by pivot
};

/// The server session state. Single writer; distinct sessions are independent.
class ServerNc {
 public:
  using DeliveryCallback = std::function<void(MessageId, std::span<const std::uint8_t>)>;

  ServerNc() = default;
  explicit ServerNc(DeliveryCallback on_deliver) : on_deliver_(std::move(on_deliver)) {}

  struct ReceiveResult {
    NcResponse response;
    std::vector<NativeMessage> delivered;  // ascending id order, each id at most once per session
    std::size_t retired = 0;
  };

  /// Inserts the message into the decoding matrix, delivers anything that
  /// became decodable and returns the feedback response. Dependent rows are
  /// discarded but still produce a response. Throws MalformedHeader.
  ReceiveResult receive(const CodedMessage& msg);

  /// Retires delivered messages with id below id_oldest; their matrix rows
  /// and columns are dropped. Returns the number retired. Messages that are
  /// seen but not yet decoded are kept regardless.
  std::size_t cleanup(MessageId id_oldest);

  NcResponse current_response() const;
  bool is_seen(MessageId id) const { return seen_.contains(id); }
  MessageId seen_newest() const { return seen_.prefix(); }
  MessageId max_id_observed() const { return max_id_observed_; }
  std::uint64_t delivered_count() const { return delivered_total_; }
  const DecodingMatrix& matrix() const { return matrix_; }

 private:
  DecodingMatrix matrix_;
  detail::IdPrefixSet seen_;       // cumulative, includes retired ids
  detail::IdPrefixSet delivered_;  // ids handed to the REST layer
  std::map<MessageId, std::uint32_t> lengths_;
  MessageId max_id_observed_ = 0;
  std::uint64_t delivered_total_ = 0;
  DeliveryCallback on_deliver_;
};

}  // namespace ncrest
