#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <vector>

#include "ncrest/client_nc.hpp"
#include "ncrest/codec.hpp"

using namespace ncrest;

namespace {

std::unique_ptr<ScriptedCoefficientSource> script(std::vector<std::vector<std::uint8_t>> vectors) {
  return std::make_unique<ScriptedCoefficientSource>(std::move(vectors));
}

const std::vector<std::uint8_t> kBody{0xAB, 0xCD};

}  // namespace

TEST_CASE("first submission is the message itself under a nonzero scalar") {
  ClientNc client(ClientNc::Options{16, 123});
  const CodedMessage msg = client.submit({1, 2, 3});
  CHECK(msg.header.id_oldest == 1);
  CHECK(msg.header.id_newest == 1);
  REQUIRE(msg.header.coefficients.size() == 1);
  CHECK(msg.header.coefficients[0] != 0);
  CHECK(client.buffered_count() == 1);
  CHECK(client.next_id() == 2);
}

TEST_CASE("an unconfirmed message is combined with the next submission") {
  ClientNc client(ClientNc::Options{16, 0});
  client.set_coefficient_source(script({{1}, {1, 2}}));
  client.submit({9});
  const CodedMessage msg = client.submit({8, 7});
  CHECK(msg.header.id_oldest == 1);
  CHECK(msg.header.id_newest == 2);
  CHECK(msg.header.coefficients == std::vector<std::uint8_t>{1, 2});
  CHECK(msg.header.lengths == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("submit rejects bad payloads without state changes") {
  ClientNc client(ClientNc::Options{4, 0});
  CHECK_THROWS_AS(client.submit({}), DomainError);
  CHECK(client.buffered_count() == 0);
  CHECK(client.next_id() == 1);
}

TEST_CASE("window backpressure: full buffer raises WindowFull and leaves state untouched") {
  ClientNc client(ClientNc::Options{2, 0});
  client.submit(kBody);  // id 1
  client.submit(kBody);  // id 2
  client.handle_response(NcResponse{2, 2});
  CHECK(client.buffered_count() == 0);

  client.submit(kBody);  // id 3
  client.submit(kBody);  // id 4
  CHECK_THROWS_AS(client.submit(kBody), WindowFull);
  CHECK(client.buffered_ids() == std::vector<MessageId>{3, 4});
  CHECK(client.next_id() == 5);

  // Confirmation drains the window and the retry succeeds with the next id.
  client.handle_response(NcResponse{4, 4});
  const CodedMessage retry = client.submit(kBody);
  CHECK(retry.header.id_oldest == 5);
  CHECK(retry.header.id_newest == 5);
}

TEST_CASE("feedback drives exactly the reported gap in additional combinations") {
  ClientNc client(ClientNc::Options{16, 0});
  client.set_coefficient_source(script({{1}, {1, 2}, {1, 3, 2}, {1, 4, 5, 1}, {2, 3}, {5, 6}}));
  for (int i = 0; i < 4; ++i) client.submit(kBody);  // ids 1..4

  const std::vector<CodedMessage> additional = client.handle_response(NcResponse{2, 4});
  CHECK(client.buffered_ids() == std::vector<MessageId>{3, 4});
  REQUIRE(additional.size() == 2);
  CHECK(additional[0].header.id_oldest == 3);
  CHECK(additional[0].header.id_newest == 4);
  CHECK(additional[0].header.coefficients == std::vector<std::uint8_t>{2, 3});
  CHECK(additional[1].header.coefficients == std::vector<std::uint8_t>{5, 6});
  CHECK(client.redundancy_guard_id() == 4);

  // unseen_newest not above the guard: no re-compensation.
  CHECK(client.handle_response(NcResponse{3, 4}).empty());
  CHECK(client.buffered_ids() == std::vector<MessageId>{4});

  CHECK(client.handle_response(NcResponse{4, 4}).empty());
  CHECK(client.buffered_count() == 0);
}

TEST_CASE("equal seen and unseen means no loss and no redundancy") {
  ClientNc client(ClientNc::Options{16, 3});
  client.submit(kBody);
  CHECK(client.handle_response(NcResponse{1, 1}).empty());
  CHECK(client.buffered_count() == 0);
  CHECK(client.redundancy_guard_id() == 0);
}

TEST_CASE("the same gap reported twice is compensated once") {
  ClientNc client(ClientNc::Options{16, 5});
  for (int i = 0; i < 4; ++i) client.submit(kBody);
  CHECK(client.handle_response(NcResponse{2, 4}).size() == 2);
  CHECK(client.handle_response(NcResponse{2, 4}).empty());
  // A genuinely newer unseen id triggers again.
  client.submit(kBody);  // id 5
  const auto again = client.handle_response(NcResponse{2, 5});
  CHECK(again.size() == 3);
  CHECK(client.redundancy_guard_id() == 5);
}

TEST_CASE("responses claiming seen beyond unseen are rejected") {
  ClientNc client(ClientNc::Options{16, 0});
  client.submit(kBody);
  CHECK_THROWS_AS(client.handle_response(NcResponse{2, 1}), InvalidResponse);
}

TEST_CASE("timeout resend covers the whole current window") {
  ClientNc client(ClientNc::Options{16, 7});
  CHECK(!client.resend_window().has_value());
  client.submit(kBody);
  client.submit(kBody);
  const auto msg = client.resend_window();
  REQUIRE(msg.has_value());
  CHECK(msg->header.id_oldest == 1);
  CHECK(msg->header.id_newest == 2);
  CHECK(msg->header.coefficients.back() != 0);
  CHECK(client.buffered_count() == 2);  // resend does not change the buffer
}

TEST_CASE("random coefficient source always activates the newest message") {
  RandomCoefficientSource source(99);
  std::vector<std::uint8_t> coeffs(5);
  for (int i = 0; i < 2000; ++i) {
    source.draw(coeffs);
    CHECK(coeffs.back() != 0);
  }
}

TEST_CASE("scripted source validates sizes and exhaustion") {
  ScriptedCoefficientSource source({{1, 2}});
  std::vector<std::uint8_t> wrong(3);
  CHECK_THROWS_AS(source.draw(wrong), Error);
  std::vector<std::uint8_t> right(2);
  ScriptedCoefficientSource fresh({{1, 2}});
  fresh.draw(right);
  CHECK(right == std::vector<std::uint8_t>{1, 2});
  CHECK_THROWS_AS(fresh.draw(right), Error);
}
