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
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "ncrest/client_nc.hpp"
#include "ncrest/codec.hpp"
#include "ncrest/server_nc.hpp"

// Deterministic round-based simulator of the client/server exchange over a
// lossy channel. One submission is attempted per round; a request reaches
// the server in the round it is sent and its response reaches the client
// one round later. Both the coded protocol and a plain timeout-retransmit
// baseline are supported.

namespace ncrest::sim {

/// Round-trip loss model. p is the probability that a request/response
/// cycle fails in either direction; alpha is the request-direction share.
/// The per-direction probabilities are chosen so that the request leg is
/// lost with rate alpha*p and the full cycle with rate p.
struct LossModel {
  double p = 0.0;
  double alpha = 0.5;
  std::uint64_t seed = 0;

  double request_loss() const noexcept { return alpha * p; }
  double response_loss() const noexcept { return ((1.0 - alpha) * p) / (1.0 - alpha * p); }
  void validate() const;  // throws DomainError
};

/// Per-transmission drop decisions, consumed in transmission order.
class LossProcess {
 public:
  virtual ~LossProcess() = default;
  virtual bool drop_request() = 0;
  virtual bool drop_response() = 0;
};

class BernoulliLoss final : public LossProcess {
 public:
  explicit BernoulliLoss(const LossModel& model);
  bool drop_request() override { return next_unit() < request_loss_; }
  bool drop_response() override { return next_unit() < response_loss_; }

 private:
  double next_unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
  double request_loss_;
  double response_loss_;
};

/// Explicit drop lists; decisions beyond the scripted range keep everything.
class ScriptedLoss final : public LossProcess {
 public:
  ScriptedLoss(std::vector<bool> request_drops, std::vector<bool> response_drops)
      : request_drops_(std::move(request_drops)), response_drops_(std::move(response_drops)) {}
  bool drop_request() override {
    return request_index_ < request_drops_.size() && request_drops_[request_index_++];
  }
  bool drop_response() override {
    return response_index_ < response_drops_.size() && response_drops_[response_index_++];
  }

 private:
  std::vector<bool> request_drops_;
  std::vector<bool> response_drops_;
  std::size_t request_index_ = 0;
  std::size_t response_index_ = 0;
};

struct SimResult {
  std::uint64_t n_submitted = 0;
  std::uint64_t n_request_transmissions = 0;
  std::uint64_t n_additional = 0;  // n_request_transmissions - n_submitted
  std::uint64_t n_delivered = 0;
  std::uint64_t n_responses_sent = 0;
  std::uint64_t elapsed_rounds = 0;
};

enum class Mode { kNc, kRest };

enum class RequestKind { kSubmission, kRedundancy, kTimeout };

/// Optional simulation hooks; used by the trace command and the safety tests.
struct SimEvents {
  std::function<void(std::uint64_t round, const CodedMessage&, RequestKind, bool dropped)> on_request;
  std::function<void(std::uint64_t round, const NcResponse&, bool dropped)> on_response;
  std::function<void(std::uint64_t round, const NcResponse&)> on_client_response;
  std::function<void(std::uint64_t round, MessageId, std::span<const std::uint8_t>)> on_deliver;
  std::function<void(std::uint64_t round, MessageId)> on_client_remove;
  std::function<void(std::uint64_t round, const ServerNc&)> on_server_state;
};

struct NcOptions {
  std::size_t subset_limit = 16;
  std::uint64_t timeout_rounds = 3;   // silent rounds before the window is re-sent
  std::uint64_t max_rounds = 0;       // 0: derived from n
  std::uint32_t payload_max_bytes = 16;  // generated payload sizes are 1..payload_max_bytes
  bool run_until_client_drained = false;  // default stops once the server delivered everything
  std::function<std::vector<std::uint8_t>(MessageId)> payload_provider;  // overrides generation
};

/// Deterministic payload used by the simulator and reproducible by
/// verification code: id selects the length (1..max_bytes) and the bytes.
std::vector<std::uint8_t> generated_payload(std::uint64_t seed, MessageId id, std::uint32_t max_bytes);

SimResult run_nc(std::uint64_t n, const LossModel& loss, std::size_t subset_limit = 16,
                 std::uint64_t timeout_rounds = 3);
SimResult run_nc(std::uint64_t n, const LossModel& loss, const NcOptions& options, SimEvents* events = nullptr);
/// Core loop with injected collaborators (scripted losses, scripted
/// coefficients, pre-configured client/server).
SimResult run_nc_session(std::uint64_t n, LossProcess& loss, ClientNc& client, ServerNc& server,
                         const NcOptions& options, SimEvents* events = nullptr);

SimResult run_rest_baseline(std::uint64_t n, const LossModel& loss, std::uint64_t timeout_rounds = 3);
SimResult run_rest_session(std::uint64_t n, LossProcess& loss, std::uint64_t timeout_rounds,
                           std::uint64_t max_rounds);

/// Scripted reference exchange: four submissions, the first and third
/// requests and the first response are lost, feedback then drives exactly
/// two additional combinations over the two youngest messages.
struct TraceResult {
  std::vector<std::string> transcript;
  std::vector<NcResponse> responses_received;       // in arrival order
  std::vector<CodedMessage> additional_requests;    // redundancy transmissions
  bool deliveries_match = false;                    // payloads byte-identical to the originals
  SimResult stats;

  bool ok() const;
};

TraceResult run_reference_trace();

/// CSV row format: n,p,alpha,seed,mode,n_request_transmissions,n_additional,
/// n_delivered,elapsed_rounds.
struct RunRecord {
  std::uint64_t n = 0;
  double p = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  Mode mode = Mode::kNc;
  SimResult result;
};

void write_sim_csv_header(std::ostream& out);
void write_sim_csv_row(std::ostream& out, const RunRecord& record);

/// Runs `count` independent seeds (seed0, seed0+1, ...) across `threads`
/// workers; results are returned in seed order regardless of scheduling.
std::vector<SimResult> run_batch(Mode mode, std::uint64_t n, double p, double alpha, std::uint64_t seed0,
                                 std::size_t count, const NcOptions& options, std::size_t threads = 0);

double mean_additional(std::span<const SimResult> results);

}  // namespace ncrest::sim
