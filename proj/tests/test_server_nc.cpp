#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "ncrest/codec.hpp"
#include "ncrest/server_nc.hpp"

using namespace ncrest;

namespace {

std::vector<NativeMessage> window(MessageId first, std::initializer_list<std::vector<std::uint8_t>> payloads) {
  std::vector<NativeMessage> messages;
  MessageId id = first;
  for (const auto& p : payloads) messages.push_back(NativeMessage{id++, p});
  return messages;
}

const std::vector<NativeMessage> kFour = window(1, {{0x11, 0x22}, {0x33}, {0x44, 0x55, 0x66}, {0x77}});

CodedMessage coded(const std::vector<NativeMessage>& messages, std::vector<std::uint8_t> coeffs,
                   std::size_t first_index, std::size_t count) {
  const std::span<const NativeMessage> span(messages.data() + first_index, count);
  return combine(span, coeffs);
}

}  // namespace

TEST_CASE("two partial combinations make the prefix seen before anything decodes") {
  ServerNc server;

  auto r1 = server.receive(coded(kFour, {1, 2}, 0, 2));
  CHECK(r1.response == NcResponse{1, 2});
  CHECK(r1.delivered.empty());

  auto r2 = server.receive(coded(kFour, {1, 4, 5, 1}, 0, 4));
  CHECK(r2.response == NcResponse{2, 4});
  CHECK(r2.delivered.empty());  // feedback is available before any decode
  CHECK(server.matrix().rank() == 2);
  CHECK(server.is_seen(1));
  CHECK(server.is_seen(2));
  CHECK(!server.is_seen(3));

  auto r3 = server.receive(coded(kFour, {2, 3}, 2, 2));
  CHECK(r3.response == NcResponse{3, 4});
  CHECK(r3.delivered.empty());

  auto r4 = server.receive(coded(kFour, {5, 6}, 2, 2));
  CHECK(r4.response == NcResponse{4, 4});
  REQUIRE(r4.delivered.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r4.delivered[i].id == i + 1);
    CHECK(r4.delivered[i].payload == kFour[i].payload);
  }
  CHECK(server.matrix().in_reduced_row_echelon_form());
  CHECK(server.delivered_count() == 4);
}

TEST_CASE("rows [1,2,3,4,5] and [1,1,7,8,9] leave exactly the first two seen") {
  const auto five = window(1, {{1}, {2}, {3}, {4}, {5}});
  ServerNc server;
  server.receive(coded(five, {1, 2, 3, 4, 5}, 0, 5));
  const auto result = server.receive(coded(five, {1, 1, 7, 8, 9}, 0, 5));

  CHECK(result.response == NcResponse{2, 5});
  CHECK(server.is_seen(1));
  CHECK(server.is_seen(2));
  CHECK(!server.is_seen(3));
  CHECK(!server.is_seen(4));
  CHECK(!server.is_seen(5));
  CHECK(server.matrix().rank() == 2);
  CHECK(server.matrix().in_reduced_row_echelon_form());
}

TEST_CASE("duplicate coded message is dependent and changes nothing") {
  ServerNc server;
  const CodedMessage msg = coded(kFour, {1, 4, 5, 1}, 0, 4);
  const auto first = server.receive(msg);
  const auto second = server.receive(msg);
  CHECK(first.response == second.response);
  CHECK(second.delivered.empty());
  CHECK(server.matrix().rank() == 1);
  CHECK(server.matrix().in_reduced_row_echelon_form());
}

TEST_CASE("a hole in the seen set keeps seen_newest at the prefix") {
  const auto three = window(1, {{1}, {2}, {3}});
  ServerNc server;
  server.receive(coded(three, {1, 1, 1}, 0, 3));   // pivot 1
  auto r = server.receive(coded(three, {1}, 2, 1));  // pivot 3, id 2 still unseen
  CHECK(server.is_seen(1));
  CHECK(!server.is_seen(2));
  CHECK(server.is_seen(3));
  CHECK(r.response == NcResponse{1, 3});  // reporting 3 would let the client drop id 2
  REQUIRE(r.delivered.size() == 1);        // the solo combination decodes id 3 outright
  CHECK(r.delivered[0].payload == three[2].payload);

  // Closing the hole makes the rest decodable at once.
  auto done = server.receive(coded(three, {1, 1}, 1, 2));
  CHECK(done.response == NcResponse{3, 3});
  REQUIRE(done.delivered.size() == 2);
  CHECK(done.delivered[0].payload == three[0].payload);
  CHECK(done.delivered[1].payload == three[1].payload);
}

TEST_CASE("fresh session reports (0,0) style state via current_response") {
  ServerNc server;
  CHECK(server.current_response() == NcResponse{0, 0});
  CHECK(!server.is_seen(0));
  CHECK(!server.is_seen(1));
}

TEST_CASE("responses are monotone across a lossy-looking sequence") {
  ServerNc server;
  NcResponse last{0, 0};
  const auto check_monotone = [&](const NcResponse& r) {
    CHECK(r.seen_newest >= last.seen_newest);
    CHECK(r.unseen_newest >= last.unseen_newest);
    CHECK(r.seen_newest <= r.unseen_newest);
    last = r;
  };
  check_monotone(server.receive(coded(kFour, {3, 7}, 0, 2)).response);
  check_monotone(server.receive(coded(kFour, {3, 7}, 0, 2)).response);   // duplicate
  check_monotone(server.receive(coded(kFour, {1, 4, 5, 1}, 0, 4)).response);
  check_monotone(server.receive(coded(kFour, {2, 3}, 2, 2)).response);
  check_monotone(server.receive(coded(kFour, {5, 6}, 2, 2)).response);
}

TEST_CASE("cleanup retires only delivered messages below id_oldest") {
  const auto four = kFour;
  ServerNc server;

  // Decode ids 1 and 2 outright.
  server.receive(coded(four, {1}, 0, 1));
  server.receive(coded(four, {0, 1}, 0, 2));
  CHECK(server.delivered_count() == 2);
  CHECK(server.matrix().rank() == 2);

  SUBCASE("explicit cleanup") {
    CHECK(server.cleanup(1) == 0);  // nothing below 1
    CHECK(server.cleanup(3) == 2);
    CHECK(server.matrix().rank() == 0);
    CHECK(server.matrix().column_ids().empty());
    CHECK(server.is_seen(1));  // seen set is cumulative
    CHECK(server.current_response() == NcResponse{2, 2});
  }

  SUBCASE("cleanup happens implicitly on receive") {
    const auto r = server.receive(coded(four, {2, 3}, 2, 2));  // id_oldest 3
    CHECK(r.retired == 2);
    CHECK(r.response == NcResponse{3, 4});
    CHECK(server.matrix().rank() == 1);
  }

  SUBCASE("undecoded rows are retained") {
    server.receive(coded(four, {1, 1, 1, 1}, 0, 4));  // pivot 3, not decodable
    const std::size_t before = server.matrix().rank();
    CHECK(server.cleanup(4) == 2);  // ids 1,2 retired; the pivot-3 row must stay
    CHECK(server.matrix().rank() == before - 2);
    CHECK(server.is_seen(3));
  }
}

TEST_CASE("retired ids no longer block later windows") {
  ServerNc server;
  const auto six = window(1, {{1}, {2}, {3}, {4}, {5}, {6}});
  server.receive(coded(six, {1}, 0, 1));
  server.receive(coded(six, {0, 1}, 0, 2));
  server.receive(coded(six, {7, 9}, 2, 2));  // window [3..4]; retires 1,2
  CHECK(server.matrix().column_ids().size() == 2);
  const auto r = server.receive(coded(six, {8, 1}, 2, 2));
  REQUIRE(r.delivered.size() == 2);
  CHECK(r.response == NcResponse{4, 4});
  CHECK(r.delivered[0].payload == six[2].payload);
  CHECK(r.delivered[1].payload == six[3].payload);
}

TEST_CASE("receive validates the message") {
  ServerNc server;
  CodedMessage bad = coded(kFour, {1, 2}, 0, 2);
  bad.payload.push_back(0);  // no longer max(lengths)
  CHECK_THROWS_AS(server.receive(bad), MalformedHeader);
}

TEST_CASE("delivery callback fires once per id in ascending order") {
  std::vector<MessageId> order;
  ServerNc server([&](MessageId id, std::span<const std::uint8_t>) { order.push_back(id); });
  server.receive(coded(kFour, {1, 4, 5, 1}, 0, 4));
  server.receive(coded(kFour, {1, 2, 3, 4}, 0, 4));
  server.receive(coded(kFour, {5, 5, 1, 2}, 0, 4));
  server.receive(coded(kFour, {9, 1, 1, 3}, 0, 4));
  server.receive(coded(kFour, {9, 1, 1, 3}, 0, 4));  // dependent
  CHECK(order == std::vector<MessageId>{1, 2, 3, 4});
}

TEST_CASE("random combination streams keep the matrix in reduced form with exact rank") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    std::vector<NativeMessage> messages;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint8_t> payload(1 + rng() % 24);
      for (auto& b : payload) b = static_cast<std::uint8_t>(rng());
      messages.push_back(NativeMessage{i + 1, std::move(payload)});
    }

    ServerNc server;
    for (int shots = 0; shots < 200 && server.delivered_count() < n; ++shots) {
      const std::size_t first = rng() % n;
      const std::size_t count = 1 + rng() % (n - first);
      std::vector<std::uint8_t> coeffs(count);
      for (auto& c : coeffs) c = static_cast<std::uint8_t>(rng());
      coeffs.back() = static_cast<std::uint8_t>(1 + rng() % 255);

      server.receive(coded(messages, coeffs, first, count));
      REQUIRE(server.matrix().in_reduced_row_echelon_form());
      REQUIRE(server.matrix().rank() >= server.matrix().pivot_ids().size());
    }
    REQUIRE(server.delivered_count() == n);
  }
}
