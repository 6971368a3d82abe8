#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ncrest/analysis.hpp"
#include "ncrest/transport_sim.hpp"

using namespace ncrest;
using namespace ncrest::sim;

TEST_CASE("loss model decomposition reproduces the round-trip loss") {
  for (double p : {0.0, 0.1, 0.5, 0.9}) {
    for (double alpha : {0.0, 0.3, 0.5, 0.7, 1.0}) {
      const LossModel model{p, alpha, 0};
      model.validate();
      const double q_req = model.request_loss();
      const double q_resp = model.response_loss();
      CHECK(q_req == doctest::Approx(alpha * p));
      CHECK(1.0 - (1.0 - q_req) * (1.0 - q_resp) == doctest::Approx(p).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS((LossModel{1.0, 0.5, 0}.validate()), DomainError);
  CHECK_THROWS_AS((LossModel{-0.1, 0.5, 0}.validate()), DomainError);
  CHECK_THROWS_AS((LossModel{0.5, 1.5, 0}.validate()), DomainError);
}

TEST_CASE("bernoulli channel calibration") {
  const LossModel model{0.6, 0.4, 2024};
  BernoulliLoss channel(model);
  const int trials = 200000;
  int req_drops = 0, resp_drops = 0, round_trip_losses = 0;
  for (int i = 0; i < trials; ++i) {
    const bool req = channel.drop_request();
    const bool resp = channel.drop_response();
    req_drops += req;
    resp_drops += resp;
    round_trip_losses += (req || resp);
  }
  CHECK(std::abs(req_drops / double(trials) - model.request_loss()) < 0.01);
  CHECK(std::abs(resp_drops / double(trials) - model.response_loss()) < 0.01);
  CHECK(std::abs(round_trip_losses / double(trials) - model.p) < 0.01);
}

TEST_CASE("reference trace: responses (2,4),(3,4),(4,4) and two extra combinations") {
  const TraceResult trace = run_reference_trace();
  REQUIRE(trace.responses_received.size() == 3);
  CHECK(trace.responses_received[0] == NcResponse{2, 4});
  CHECK(trace.responses_received[1] == NcResponse{3, 4});
  CHECK(trace.responses_received[2] == NcResponse{4, 4});
  REQUIRE(trace.additional_requests.size() == 2);
  for (const CodedMessage& msg : trace.additional_requests) {
    CHECK(msg.header.id_oldest == 3);  // ids 1 and 2 left the coding buffer
    CHECK(msg.header.id_newest == 4);
  }
  CHECK(trace.additional_requests[0].header.coefficients == std::vector<std::uint8_t>{2, 3});
  CHECK(trace.additional_requests[1].header.coefficients == std::vector<std::uint8_t>{5, 6});
  CHECK(trace.deliveries_match);
  CHECK(trace.stats.n_submitted == 4);
  CHECK(trace.stats.n_request_transmissions == 6);
  CHECK(trace.stats.n_additional == 2);
  CHECK(trace.stats.n_delivered == 4);
  CHECK(trace.ok());
}

TEST_CASE("lossless channel needs no redundancy") {
  const LossModel loss{0.0, 0.5, 1};
  const SimResult nc = run_nc(4, loss);
  CHECK(nc.n_additional == 0);
  CHECK(nc.n_delivered == 4);
  CHECK(nc.n_submitted == 4);

  const SimResult rest = run_rest_baseline(4, loss);
  CHECK(rest.n_additional == 0);
  CHECK(rest.n_delivered == 4);
}

TEST_CASE("simulations are deterministic in the seed") {
  const LossModel loss{0.4, 0.6, 77};
  const SimResult a = run_nc(100, loss);
  const SimResult b = run_nc(100, loss);
  CHECK(a.n_request_transmissions == b.n_request_transmissions);
  CHECK(a.elapsed_rounds == b.elapsed_rounds);
  CHECK(a.n_responses_sent == b.n_responses_sent);

  const SimResult c = run_rest_baseline(100, loss);
  const SimResult d = run_rest_baseline(100, loss);
  CHECK(c.n_request_transmissions == d.n_request_transmissions);

  const LossModel other{0.4, 0.6, 78};
  const SimResult e = run_nc(100, other);
  const bool differs = e.n_request_transmissions != a.n_request_transmissions ||
                       e.elapsed_rounds != a.elapsed_rounds;
  CHECK(differs);
}

TEST_CASE("no duplicate deliveries and every client drop is already seen at the server") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t n = 1 + rng() % 40;
    const LossModel loss{(rng() % 90) / 100.0, (rng() % 101) / 100.0, rng()};

    BernoulliLoss channel(loss);
    ClientNc client(ClientNc::Options{8, rng()});
    ServerNc server;

    std::set<MessageId> delivered;
    NcResponse last{0, 0};
    bool ok = true;
    SimEvents events;
    events.on_deliver = [&](std::uint64_t, MessageId id, std::span<const std::uint8_t> payload) {
      ok = ok && delivered.insert(id).second;  // at most once
      const auto expected = generated_payload(loss.seed, id, 16);
      ok = ok && std::equal(payload.begin(), payload.end(), expected.begin(), expected.end());
    };
    events.on_response = [&](std::uint64_t, const NcResponse& r, bool) {
      ok = ok && r.seen_newest >= last.seen_newest && r.unseen_newest >= last.unseen_newest;
      ok = ok && r.seen_newest <= r.unseen_newest;
      last = r;
    };
    events.on_client_remove = [&](std::uint64_t, MessageId id) { ok = ok && server.is_seen(id); };

    NcOptions options;
    options.subset_limit = 8;
    options.payload_provider = [&](MessageId id) { return generated_payload(loss.seed, id, 16); };

    const SimResult result = run_nc_session(n, channel, client, server, options, &events);
    REQUIRE(ok);
    REQUIRE(result.n_delivered == n);
    REQUIRE(delivered.size() == n);
  }
}

TEST_CASE("monte-carlo means track the closed forms on a midsize run") {
  const std::uint64_t n = 400;
  const double p = 0.5, alpha = 0.5;
  NcOptions options;
  options.subset_limit = 64;

  const auto nc_runs = run_batch(Mode::kNc, n, p, alpha, 1, 60, options);
  const double nc_mean = mean_additional(nc_runs);
  const double nc_expected = analysis::nc_additional(n, p, alpha);
  CHECK(std::abs(nc_mean - nc_expected) / nc_expected < 0.15);

  const auto rest_runs = run_batch(Mode::kRest, n, p, alpha, 1, 60, options);
  const double rest_mean = mean_additional(rest_runs);
  const double rest_expected = analysis::rest_additional(n, p);
  CHECK(std::abs(rest_mean - rest_expected) / rest_expected < 0.15);

  CHECK(nc_mean < rest_mean);
}

TEST_CASE("scripted loss consumes decisions in order and defaults to no loss") {
  ScriptedLoss loss({true, false}, {true});
  CHECK(loss.drop_request());
  CHECK(!loss.drop_request());
  CHECK(loss.drop_request() == false);  // beyond the script
  CHECK(loss.drop_response());
  CHECK(!loss.drop_response());
}

TEST_CASE("non-convergence is reported when the round budget is exhausted") {
  ScriptedLoss drop_everything(std::vector<bool>(10000, true), {});
  ClientNc client(ClientNc::Options{4, 0});
  ServerNc server;
  NcOptions options;
  options.subset_limit = 4;
  options.max_rounds = 50;
  CHECK_THROWS_AS(run_nc_session(3, drop_everything, client, server, options), NonConvergence);
}

TEST_CASE("csv row format") {
  RunRecord record{10, 0.25, 0.5, 7, Mode::kNc, SimResult{10, 13, 3, 10, 11, 17}};
  std::ostringstream out;
  write_sim_csv_header(out);
  write_sim_csv_row(out, record);
  CHECK(out.str() ==
        "n,p,alpha,seed,mode,n_request_transmissions,n_additional,n_delivered,elapsed_rounds\n"
        "10,0.25,0.5,7,nc,13,3,10,17\n");
}

TEST_CASE("batch results are ordered by seed and reproducible") {
  NcOptions options;
  const auto batch = run_batch(Mode::kNc, 50, 0.3, 0.5, 10, 8, options, 4);
  REQUIRE(batch.size() == 8);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const SimResult direct = run_nc(50, LossModel{0.3, 0.5, 10 + i});
    CHECK(batch[i].n_request_transmissions == direct.n_request_transmissions);
    CHECK(batch[i].elapsed_rounds == direct.elapsed_rounds);
  }
}

TEST_CASE("generated payloads are deterministic with sizes in range") {
  for (MessageId id = 1; id <= 200; ++id) {
    const auto a = generated_payload(5, id, 16);
    const auto b = generated_payload(5, id, 16);
    CHECK(a == b);
    CHECK(a.size() >= 1);
    CHECK(a.size() <= 16);
  }
  CHECK(generated_payload(5, 1, 16) != generated_payload(6, 1, 16));
}
