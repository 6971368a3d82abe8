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
#include <string>
#include <vector>

#include "ncrest/errors.hpp"

// Command implementations behind the ncrest binary. Commands write CSV (or
// the trace transcript) to the given stream and return a process exit code;
// domain errors propagate as exceptions for the binary to report.

namespace ncrest::cli {

struct RunConfig {
  std::uint64_t n = 1000;
  std::vector<double> p_values;
  std::vector<double> alphas;
  std::uint64_t seeds = 100;
  std::uint64_t seed0 = 1;
  std::size_t subset_limit = 16;
  std::uint64_t timeout_rounds = 3;
  std::string mode = "both";  // nc | rest | both
  std::size_t threads = 0;    // 0: hardware concurrency
  std::string output_dir = "fig5";
};

/// Parses "0.5", "0.3,0.5,1" or "0:0.9:0.05" (inclusive grid).
std::vector<double> parse_values(const std::string& spec);

int cmd_analyze(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_trace(std::ostream& out);
int cmd_reproduce_fig5(const RunConfig& config, std::ostream& log);

}  // namespace ncrest::cli
