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

#include "ncrest/transport_sim.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace ncrest::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t default_max_rounds(std::uint64_t n) { return 10'000 + 200 * n; }

std::string hex_coeffs(std::span<const std::uint8_t> coeffs) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out << " ";
    static const char digits[] = "0123456789abcdef";
    out << digits[coeffs[i] >> 4] << digits[coeffs[i] & 0xF];
  }
  out << "]";
  return out.str();
}

const char* kind_name(RequestKind kind) {
  switch (kind) {
    case RequestKind::kSubmission: return "submission";
    case RequestKind::kRedundancy: return "redundancy";
    case RequestKind::kTimeout: return "timeout";
  }
  return "?";
}

}  // namespace

void LossModel::validate() const {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("loss probability p must be in [0,1)");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must be in [0,1]");
}

BernoulliLoss::BernoulliLoss(const LossModel& model) : rng_(model.seed) {
  model.validate();
  request_loss_ = model.request_loss();
  response_loss_ = model.response_loss();
}

std::vector<std::uint8_t> generated_payload(std::uint64_t seed, MessageId id, std::uint32_t max_bytes) {
  if (max_bytes == 0) max_bytes = 1;
  std::uint64_t state = splitmix64(seed ^ (id * 0xC2B2AE3D27D4EB4FULL));
  const std::uint32_t len = 1 + static_cast<std::uint32_t>(state % max_bytes);
  std::vector<std::uint8_t> payload(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    state = splitmix64(state);
    payload[i] = static_cast<std::uint8_t>(state);
  }
  return payload;
}

SimResult run_nc_session(std::uint64_t n, LossProcess& loss, ClientNc& client, ServerNc& server,
                         const NcOptions& options, SimEvents* events) {
  if (n == 0) throw DomainError("n must be at least 1");
  const std::uint64_t max_rounds = options.max_rounds ? options.max_rounds : default_max_rounds(n);

  SimResult result;
  std::map<std::uint64_t, std::vector<NcResponse>> response_inbox;  // arrival round -> responses
  std::uint64_t submitted = 0;
  std::uint64_t last_tx_round = 0;
  std::uint64_t round = 0;

  const auto make_payload = [&](MessageId id) {
    return options.payload_provider ? options.payload_provider(id)
                                    : generated_payload(0, id, options.payload_max_bytes);
  };

  const auto transmit = [&](const CodedMessage& msg, RequestKind kind) {
    ++result.n_request_transmissions;
    last_tx_round = round;
    const bool dropped = loss.drop_request();
    if (events && events->on_request) events->on_request(round, msg, kind, dropped);
    if (dropped) return;

    const std::vector<std::uint8_t> wire = serialize(msg);
    ServerNc::ReceiveResult received = server.receive(deserialize(wire));
    ++result.n_responses_sent;
    if (events) {
      for (const NativeMessage& m : received.delivered)
        if (events->on_deliver) events->on_deliver(round, m.id, m.payload);
      if (events->on_server_state) events->on_server_state(round, server);
    }
    const bool response_dropped = loss.drop_response();
    if (events && events->on_response) events->on_response(round, received.response, response_dropped);
    if (!response_dropped)
      response_inbox[round + 1].push_back(deserialize_response(serialize_response(received.response)));
  };

  const auto apply_response = [&](const NcResponse& response) {
    if (events && events->on_client_response) events->on_client_response(round, response);
    std::vector<MessageId> before;
    if (events && events->on_client_remove) before = client.buffered_ids();
    const std::vector<CodedMessage> additional = client.handle_response(response);
    if (events && events->on_client_remove) {
      for (MessageId id : before)
        if (id <= response.seen_newest) events->on_client_remove(round, id);
    }
    for (const CodedMessage& msg : additional) transmit(msg, RequestKind::kRedundancy);
  };

  const auto done = [&] {
    if (server.delivered_count() < n) return false;
    if (!options.run_until_client_drained) return true;
    return client.buffered_count() == 0 && response_inbox.empty();
  };

  for (round = 1; round <= max_rounds; ++round) {
    if (const auto it = response_inbox.find(round); it != response_inbox.end()) {
      const std::vector<NcResponse> arrivals = std::move(it->second);
      response_inbox.erase(it);
      for (const NcResponse& response : arrivals) apply_response(response);
    }

    if (submitted < n) {
      const MessageId id = submitted + 1;
      try {
        const CodedMessage msg = client.submit(make_payload(id));
        ++submitted;
        transmit(msg, RequestKind::kSubmission);
      } catch (const WindowFull&) {
        // REST layer keeps the request and retries next round.
      }
    }

    if (client.buffered_count() > 0 && last_tx_round > 0 && round - last_tx_round >= options.timeout_rounds) {
      if (const std::optional<CodedMessage> msg = client.resend_window()) transmit(*msg, RequestKind::kTimeout);
    }

    if (done()) break;
  }

  if (!done()) {
    std::ostringstream diag;
    diag << "nc mode: " << server.delivered_count() << "/" << n << " delivered after " << max_rounds
         << " rounds (submitted " << submitted << ", transmissions " << result.n_request_transmissions
         << ", client buffer " << client.buffered_count() << ")";
    throw NonConvergence(diag.str());
  }

  result.n_submitted = submitted;
  result.n_delivered = server.delivered_count();
  result.n_additional = result.n_request_transmissions - result.n_submitted;
  result.elapsed_rounds = std::min(round, max_rounds);
  return result;
}

SimResult run_nc(std::uint64_t n, const LossModel& loss, const NcOptions& options, SimEvents* events) {
  loss.validate();
  BernoulliLoss channel(loss);
  ClientNc client(ClientNc::Options{options.subset_limit, splitmix64(loss.seed ^ 0xA5A5A5A5A5A5A5A5ULL)});
  ServerNc server;
  NcOptions effective = options;
  if (!effective.payload_provider) {
    const std::uint64_t seed = loss.seed;
    const std::uint32_t max_bytes = options.payload_max_bytes;
    effective.payload_provider = [seed, max_bytes](MessageId id) {
      return generated_payload(seed, id, max_bytes);
    };
  }
  return run_nc_session(n, channel, client, server, effective, events);
}

SimResult run_nc(std::uint64_t n, const LossModel& loss, std::size_t subset_limit,
                 std::uint64_t timeout_rounds) {
  NcOptions options;
  options.subset_limit = subset_limit;
  options.timeout_rounds = timeout_rounds;
  return run_nc(n, loss, options);
}

SimResult run_rest_session(std::uint64_t n, LossProcess& loss, std::uint64_t timeout_rounds,
                           std::uint64_t max_rounds) {
  if (n == 0) throw DomainError("n must be at least 1");
  if (timeout_rounds == 0) throw DomainError("timeout_rounds must be at least 1");
  if (max_rounds == 0) max_rounds = default_max_rounds(n);

  SimResult result;
  result.n_submitted = n;
  std::vector<bool> confirmed(n, false);
  std::vector<bool> delivered(n, false);
  std::map<std::uint64_t, std::vector<std::uint64_t>> attempts;  // round -> message indices
  std::map<std::uint64_t, std::vector<std::uint64_t>> confirmations;
  std::uint64_t confirmed_count = 0;
  std::uint64_t round = 0;

  for (round = 1; round <= max_rounds; ++round) {
    if (const auto it = confirmations.find(round); it != confirmations.end()) {
      for (std::uint64_t idx : it->second) {
        if (!confirmed[idx]) {
          confirmed[idx] = true;
          ++confirmed_count;
        }
      }
      confirmations.erase(it);
    }

    if (round <= n) attempts[round].push_back(round - 1);  // one new request per round

    if (const auto it = attempts.find(round); it != attempts.end()) {
      const std::vector<std::uint64_t> due = std::move(it->second);
      attempts.erase(it);
      for (std::uint64_t idx : due) {
        if (confirmed[idx]) continue;
        ++result.n_request_transmissions;
        if (!loss.drop_request()) {
          if (!delivered[idx]) {
            delivered[idx] = true;
            ++result.n_delivered;
          }
          ++result.n_responses_sent;
          if (!loss.drop_response()) confirmations[round + 1].push_back(idx);
        }
        attempts[round + timeout_rounds].push_back(idx);  // retransmit unless confirmed by then
      }
    }

    if (confirmed_count == n) break;
  }

  if (confirmed_count < n) {
    std::ostringstream diag;
    diag << "rest mode: " << confirmed_count << "/" << n << " confirmed after " << max_rounds << " rounds";
    throw NonConvergence(diag.str());
  }

  result.n_additional = result.n_request_transmissions - n;
  result.elapsed_rounds = std::min(round, max_rounds);
  return result;
}

SimResult run_rest_baseline(std::uint64_t n, const LossModel& loss, std::uint64_t timeout_rounds) {
  loss.validate();
  BernoulliLoss channel(loss);
  return run_rest_session(n, channel, timeout_rounds, 0);
}

bool TraceResult::ok() const {
  const std::vector<NcResponse> expected{{2, 4}, {3, 4}, {4, 4}};
  if (responses_received != expected) return false;
  if (additional_requests.size() != 2) return false;
  for (const CodedMessage& msg : additional_requests)
    if (msg.header.id_oldest != 3 || msg.header.id_newest != 4) return false;
  return deliveries_match && stats.n_additional == 2 && stats.n_delivered == 4;
}

TraceResult run_reference_trace() {
  const std::vector<std::vector<std::uint8_t>> payloads = {
      {'P', 'O', 'S', 'T', ' ', '/', 'u', 'p', 'd', 'a', 't', 'e', '/', 'p', 'o', 's'},
      {'P', 'O', 'S', 'T', ' ', '/', 'u', 'p', 'd', 'a', 't', 'e', '/', 's', 'p', 'e', 'e', 'd'},
      {'P', 'O', 'S', 'T', ' ', '/', 'u', 'p', 'd', 'a', 't', 'e', '/', 't', 'm', 'p'},
      {'P', 'O', 'S', 'T', ' ', '/', 'u', 'p', 'd', 'a', 't', 'e', '/', 's', 't', 'a', 't', 'u', 's'},
  };

  // Requests: the lone first combination and the third one are lost.
  // Responses: the first one that is produced is lost.
  ScriptedLoss loss({true, false, true, false, false, false}, {true, false, false, false});

  ClientNc client(ClientNc::Options{16, 0});
  client.set_coefficient_source(std::make_unique<ScriptedCoefficientSource>(std::vector<std::vector<std::uint8_t>>{
      {1}, {1, 2}, {1, 3, 2}, {1, 4, 5, 1}, {2, 3}, {5, 6}}));
  ServerNc server;

  TraceResult trace;
  std::map<MessageId, std::vector<std::uint8_t>> delivered;

  SimEvents events;
  events.on_request = [&](std::uint64_t round, const CodedMessage& msg, RequestKind kind, bool dropped) {
    std::ostringstream line;
    line << "round " << round << ": request " << kind_name(kind) << " window [" << msg.header.id_oldest
         << ".." << msg.header.id_newest << "] coeffs " << hex_coeffs(msg.header.coefficients)
         << (dropped ? "  LOST" : "  delivered");
    trace.transcript.push_back(line.str());
    if (kind == RequestKind::kRedundancy) trace.additional_requests.push_back(msg);
  };
  events.on_server_state = [&](std::uint64_t round, const ServerNc& s) {
    std::ostringstream line;
    line << "round " << round << ": server matrix rank " << s.matrix().rank() << ", columns [";
    const auto cols = s.matrix().column_ids();
    for (std::size_t i = 0; i < cols.size(); ++i) line << (i ? " " : "") << cols[i];
    line << "]";
    trace.transcript.push_back(line.str());
    for (std::size_t r = 0; r < s.matrix().row_count(); ++r)
      trace.transcript.push_back("  row " + hex_coeffs(s.matrix().row_coefficients(r)));
  };
  events.on_response = [&](std::uint64_t round, const NcResponse& response, bool dropped) {
    std::ostringstream line;
    line << "round " << round << ": Response(" << response.seen_newest << "," << response.unseen_newest << ")"
         << (dropped ? "  LOST" : "  delivered");
    trace.transcript.push_back(line.str());
  };
  events.on_client_response = [&](std::uint64_t round, const NcResponse& response) {
    trace.responses_received.push_back(response);
    std::ostringstream line;
    line << "round " << round << ": client applies Response(" << response.seen_newest << ","
         << response.unseen_newest << ")";
    trace.transcript.push_back(line.str());
  };
  events.on_client_remove = [&](std::uint64_t round, MessageId id) {
    std::ostringstream line;
    line << "round " << round << ": client drops message " << id << " from the coding buffer";
    trace.transcript.push_back(line.str());
  };
  events.on_deliver = [&](std::uint64_t round, MessageId id, std::span<const std::uint8_t> payload) {
    delivered[id] = std::vector<std::uint8_t>(payload.begin(), payload.end());
    std::ostringstream line;
    line << "round " << round << ": server decodes and delivers message " << id << " (" << payload.size()
         << " bytes)";
    trace.transcript.push_back(line.str());
  };

  NcOptions options;
  options.subset_limit = 16;
  options.timeout_rounds = 3;
  options.max_rounds = 64;
  options.run_until_client_drained = true;
  options.payload_provider = [&payloads](MessageId id) { return payloads.at(static_cast<std::size_t>(id - 1)); };

  trace.stats = run_nc_session(4, loss, client, server, options, &events);

  trace.deliveries_match = delivered.size() == payloads.size();
  for (std::size_t i = 0; i < payloads.size() && trace.deliveries_match; ++i) {
    const auto it = delivered.find(static_cast<MessageId>(i + 1));
    trace.deliveries_match = it != delivered.end() && it->second == payloads[i];
  }
  return trace;
}

void write_sim_csv_header(std::ostream& out) {
  out << "n,p,alpha,seed,mode,n_request_transmissions,n_additional,n_delivered,elapsed_rounds\n";
}

void write_sim_csv_row(std::ostream& out, const RunRecord& record) {
  out << record.n << ',' << record.p << ',' << record.alpha << ',' << record.seed << ','
      << (record.mode == Mode::kNc ? "nc" : "rest") << ',' << record.result.n_request_transmissions << ','
      << record.result.n_additional << ',' << record.result.n_delivered << ','
      << record.result.elapsed_rounds << '\n';
}

std::vector<SimResult> run_batch(Mode mode, std::uint64_t n, double p, double alpha, std::uint64_t seed0,
                                 std::size_t count, const NcOptions& options, std::size_t threads) {
  std::vector<SimResult> results(count);
  if (count == 0) return results;
  if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, count);

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          const LossModel loss{p, alpha, seed0 + i};
          results[i] = mode == Mode::kNc ? run_nc(n, loss, options)
                                         : run_rest_baseline(n, loss, options.timeout_rounds);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

double mean_additional(std::span<const SimResult> results) {
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (const SimResult& r : results) sum += static_cast<double>(r.n_additional);
  return sum / static_cast<double>(results.size());
}

}  // namespace ncrest::sim
