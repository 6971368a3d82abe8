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

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ncrest/cli.hpp"

namespace {

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"REST request/response coding toolkit: closed-form analysis and lossy-channel simulation"};
  app.require_subcommand(1);

  ncrest::cli::RunConfig config;
  std::string p_spec = "0.5";
  std::string alpha_spec = "0.5";
  std::string output_path;

  CLI::App* analyze = app.add_subcommand("analyze", "Closed-form additional-message sweep as CSV");
  analyze->add_option("--n", config.n, "number of request messages");
  analyze->add_option("--p", p_spec, "loss probability: value, list or start:end:step grid");
  analyze->add_option("--alpha", alpha_spec, "request-direction loss share: value or list");
  analyze->add_option("--out", output_path, "output CSV path (default stdout)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the coded protocol and the plain baseline");
  simulate->add_option("--n", config.n, "number of request messages per run");
  simulate->add_option("--p", p_spec, "loss probability: value, list or grid");
  simulate->add_option("--alpha", alpha_spec, "request-direction loss share: value or list");
  simulate->add_option("--seeds", config.seeds, "number of seeds per configuration");
  simulate->add_option("--seed0", config.seed0, "first seed");
  simulate->add_option("--subset-limit", config.subset_limit, "max messages per combination");
  simulate->add_option("--timeout-rounds", config.timeout_rounds, "silent rounds before a retransmission");
  simulate->add_option("--mode", config.mode, "nc, rest or both")
      ->check(CLI::IsMember({"nc", "rest", "both"}));
  simulate->add_option("--threads", config.threads, "worker threads (0 = hardware)");
  simulate->add_option("--out", output_path, "output CSV path (default stdout)");

  CLI::App* trace = app.add_subcommand("trace", "Scripted reference exchange with matrix states and feedback");

  CLI::App* fig5 = app.add_subcommand("reproduce-fig5", "Write the standard comparison sweep as per-alpha CSV files");
  fig5->add_option("--n", config.n, "number of request messages");
  fig5->add_option("--out-dir", config.output_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed() || simulate->parsed()) {
      config.p_values = ncrest::cli::parse_values(p_spec);
      config.alphas = ncrest::cli::parse_values(alpha_spec);
    }
    if (analyze->parsed())
      return with_output(output_path, [&](std::ostream& out) { return ncrest::cli::cmd_analyze(config, out); });
    if (simulate->parsed())
      return with_output(output_path, [&](std::ostream& out) { return ncrest::cli::cmd_simulate(config, out); });
    if (trace->parsed()) return ncrest::cli::cmd_trace(std::cout);
    if (fig5->parsed()) return ncrest::cli::cmd_reproduce_fig5(config, std::cout);
  } catch (const ncrest::NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
