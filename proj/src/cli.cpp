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

#include "ncrest/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ncrest/analysis.hpp"
#include "ncrest/transport_sim.hpp"

namespace ncrest::cli {

namespace {

double parse_double(const std::string& token) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw DomainError("cannot parse number: '" + token + "'");
  }
  if (consumed != token.size()) throw DomainError("cannot parse number: '" + token + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

sim::Mode parse_mode(const std::string& mode) {
  if (mode == "nc") return sim::Mode::kNc;
  if (mode == "rest") return sim::Mode::kRest;
  throw DomainError("unknown mode: '" + mode + "'");
}

void write_summary_row(std::ostream& out, std::uint64_t n, double p, double alpha, sim::Mode mode,
                       std::span<const sim::SimResult> results) {
  double tx = 0.0, additional = 0.0, delivered = 0.0, rounds = 0.0;
  for (const sim::SimResult& r : results) {
    tx += static_cast<double>(r.n_request_transmissions);
    additional += static_cast<double>(r.n_additional);
    delivered += static_cast<double>(r.n_delivered);
    rounds += static_cast<double>(r.elapsed_rounds);
  }
  const double count = results.empty() ? 1.0 : static_cast<double>(results.size());
  out << n << ',' << p << ',' << alpha << ",mean," << (mode == sim::Mode::kNc ? "nc" : "rest") << ','
      << std::fixed << std::setprecision(3) << tx / count << ',' << additional / count << ','
      << delivered / count << ',' << rounds / count << '\n';
  out.unsetf(std::ios_base::floatfield);
}

}  // namespace

std::vector<double> parse_values(const std::string& spec) {
  if (spec.empty()) throw DomainError("empty value list");
  if (spec.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.size() != 3) throw DomainError("grid spec must be start:end:step, got '" + spec + "'");
    const double start = parse_double(parts[0]);
    const double end = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (step <= 0.0) throw DomainError("grid step must be positive");
    if (end < start) throw DomainError("grid end precedes start");
    const std::size_t count = static_cast<std::size_t>(std::llround((end - start) / step)) + 1;
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double v = start + static_cast<double>(i) * step;
      if (v > end + 1e-12) break;
      values.push_back(v);
    }
    return values;
  }
  std::vector<double> values;
  for (const std::string& token : split(spec, ',')) values.push_back(parse_double(token));
  if (values.empty()) throw DomainError("empty value list");
  return values;
}

int cmd_analyze(const RunConfig& config, std::ostream& out) {
  const std::vector<analysis::AnalysisPoint> points = analysis::sweep(config.n, config.alphas, config.p_values);
  analysis::write_sweep_csv(out, points);
  return 0;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  std::vector<sim::Mode> modes;
  if (config.mode == "both") {
    modes = {sim::Mode::kNc, sim::Mode::kRest};
  } else {
    modes = {parse_mode(config.mode)};
  }

  sim::NcOptions options;
  options.subset_limit = config.subset_limit;
  options.timeout_rounds = config.timeout_rounds;

  sim::write_sim_csv_header(out);
  for (double alpha : config.alphas) {
    for (double p : config.p_values) {
      sim::LossModel{p, alpha, 0}.validate();
      for (sim::Mode mode : modes) {
        const std::vector<sim::SimResult> results =
            sim::run_batch(mode, config.n, p, alpha, config.seed0, config.seeds, options, config.threads);
        for (std::size_t i = 0; i < results.size(); ++i) {
          sim::RunRecord record{config.n, p, alpha, config.seed0 + i, mode, results[i]};
          sim::write_sim_csv_row(out, record);
        }
        write_summary_row(out, config.n, p, alpha, mode, results);
      }
    }
  }
  return 0;
}

int cmd_trace(std::ostream& out) {
  const sim::TraceResult trace = sim::run_reference_trace();
  for (const std::string& line : trace.transcript) out << line << '\n';
  out << "responses received:";
  for (const NcResponse& r : trace.responses_received)
    out << " (" << r.seen_newest << "," << r.unseen_newest << ")";
  out << "\nadditional combinations: " << trace.additional_requests.size() << '\n';
  out << "deliveries byte-exact: " << (trace.deliveries_match ? "yes" : "no") << '\n';
  out << (trace.ok() ? "TRACE OK" : "TRACE MISMATCH") << '\n';
  return trace.ok() ? 0 : 1;
}

int cmd_reproduce_fig5(const RunConfig& config, std::ostream& log) {
  const std::vector<double> alphas{0.3, 0.5, 0.7, 1.0};
  const std::vector<double> p_grid = parse_values("0:0.9:0.05");

  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path dir(config.output_dir);

  const std::vector<analysis::AnalysisPoint> all = analysis::sweep(config.n, alphas, p_grid);
  {
    std::ofstream out(dir / "fig5_all.csv");
    if (!out) throw Error("cannot write " + (dir / "fig5_all.csv").string());
    analysis::write_sweep_csv(out, all);
  }
  for (double alpha : alphas) {
    std::ostringstream name;
    name << "fig5_alpha_" << alpha << ".csv";
    std::ofstream out(dir / name.str());
    if (!out) throw Error("cannot write " + (dir / name.str()).string());
    const std::vector<double> one{alpha};
    analysis::write_sweep_csv(out, analysis::sweep(config.n, one, p_grid));
    log << "wrote " << (dir / name.str()).string() << '\n';
  }
  log << "wrote " << (dir / "fig5_all.csv").string() << '\n';
  return 0;
}

}  // namespace ncrest::cli
