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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ncrest/errors.hpp"

// Closed-form expected counts of additional request messages needed to push
// n requests through a channel with round-trip loss probability p, of which
// the fraction alpha falls on the request direction.
//
// Plain retransmission re-sends on any loss:    n/(1-p) - n.
// The coded protocol re-sends only for requests
// lost on the way to the server:                n/(1-alpha*p) - n.

namespace ncrest::analysis {

struct AnalysisPoint {
  std::uint64_t n = 0;
  double p = 0.0;
  double alpha = 0.0;
  double a_wonc = 0.0;  // expected additional messages without coding
  double a_wnc = 0.0;   // expected additional messages with coding

  /// 100 * (a_wonc - a_wnc) / a_wnc; 0 when both vanish, +inf when only
  /// the coded count vanishes.
  double increase_percent() const;
};

double rest_additional(std::uint64_t n, double p);                // throws DomainError when p >= 1 or p < 0
double nc_additional(std::uint64_t n, double p, double alpha);    // throws DomainError when alpha*p >= 1

std::vector<AnalysisPoint> sweep(std::uint64_t n, std::span<const double> alphas,
                                 std::span<const double> p_grid);

/// CSV columns: alpha,p,a_wonc,a_wnc,increase_percent.
void write_sweep_csv(std::ostream& out, std::span<const AnalysisPoint> points);

}  // namespace ncrest::analysis
