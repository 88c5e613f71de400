//------------------------------------------------------------------------------
//
//   Copyright 2026 The Agora Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <gtest/gtest.h>

#include <random>

#include "agora/ingest/feed.hpp"
#include "test_support.hpp"

namespace {

using namespace agora;
using namespace agora::ingest;
using advisor::AdviceRequest;
using advisor::AdviceResponse;
using agora::testing::at;
using agora::testing::read_fixture;
using warehouse::ClosedAuctionRecord;

std::string random_text(std::mt19937_64 &gen, bool allow_empty)
{
  static std::vector<std::string> const pieces{"a",  "Z", "7", " ", "&", "<",  ">",
                                               "\"", "'", "-", ".", "é", "日本", "\t"};
  std::size_t const len = (allow_empty ? 0 : 1) + gen() % 12;
  std::string       s;
  for (std::size_t i = 0; i < len; ++i)
  {
    s += pieces[gen() % pieces.size()];
  }
  if (!allow_empty && s.find_first_not_of(" \t") == std::string::npos)
  {
    s = "x" + s;
  }
  return s;
}

TEST(AdviceRequestXml, PaperExampleRoundTrips)
{
  AdviceRequest const req{"Sony Digital Camera C-3020", Money{7252}, 12, Seconds{600}};
  auto const          doc = serialize_advice_request(req);
  EXPECT_EQ(doc,
            "<advice-request><item-name>Sony Digital Camera C-3020</item-name>"
            "<current-bid>7252</current-bid><num-bids>12</num-bids>"
            "<remaining-duration-seconds>600</remaining-duration-seconds></advice-request>");
  EXPECT_EQ(parse_advice_request(doc), req);
}

TEST(AdviceRequestXml, ZeroDuration)
{
  AdviceRequest const req{"x", Money{0}, 0, Seconds{0}};
  EXPECT_EQ(parse_advice_request(serialize_advice_request(req)), req);
}

TEST(AdviceRequestXml, MissingNumBids)
{
  try
  {
    parse_advice_request("<advice-request><item-name>x</item-name><current-bid>1</current-bid>"
                         "<remaining-duration-seconds>0</remaining-duration-seconds></advice-request>");
    FAIL();
  }
  catch (ParseError const &ex)
  {
    ASSERT_EQ(ex.issues().size(), 1u);
    EXPECT_EQ(ex.issues()[0].path, "advice-request/num-bids");
    EXPECT_EQ(ex.issues()[0].kind, IssueKind::MissingField);
  }
}

TEST(AdviceRequestXml, BadNumbersAndRoot)
{
  for (auto const *bad : {"+5", "1,000", "-1", "", "1.5", "99999999999999999999"})
  {
    std::string const doc = std::string("<advice-request><item-name>x</item-name><current-bid>") + bad +
                            "</current-bid><num-bids>1</num-bids>"
                            "<remaining-duration-seconds>0</remaining-duration-seconds></advice-request>";
    try
    {
      parse_advice_request(doc);
      ADD_FAILURE() << bad;
    }
    catch (ParseError const &ex)
    {
      EXPECT_EQ(ex.issues().at(0).kind, IssueKind::BadNumber) << bad;
      EXPECT_EQ(ex.issues().at(0).path, "advice-request/current-bid");
    }
  }
  EXPECT_THROW(parse_advice_request("<other/>"), ParseError);
  EXPECT_THROW(parse_advice_request("<advice-request>"), ParseError);
}

TEST(AdviceRequestXml, RandomRoundTrip)
{
  std::mt19937_64 gen(2026);
  for (int i = 0; i < 1000; ++i)
  {
    AdviceRequest const req{random_text(gen, false), Money{static_cast<std::int64_t>(gen() % 10000000)},
                            static_cast<std::int64_t>(gen() % 500),
                            Seconds{static_cast<std::int64_t>(gen() % 864000)}};
    auto const doc = serialize_advice_request(req);
    EXPECT_EQ(parse_advice_request(doc), req) << doc;
    EXPECT_EQ(serialize_advice_request(parse_advice_request(doc)), doc);
  }
}

TEST(AdviceRequestXml, Unrepresentable)
{
  EXPECT_THROW(serialize_advice_request({"", Money{1}, 0, Seconds{0}}), UnrepresentableValue);
  EXPECT_THROW(serialize_advice_request({std::string("a\x01", 2), Money{1}, 0, Seconds{0}}),
               UnrepresentableValue);
}

TEST(AdviceResponseXml, RoundTripDropsMedians)
{
  AdviceResponse resp;
  resp.recommended_bid      = Money{7322};
  resp.recommended_bid_time = at("2026-09-21T14:13:20Z");
  resp.should_bid           = true;
  resp.basis                = {4, Money{7322}, 5.5};
  auto const doc            = serialize_advice_response(resp);
  EXPECT_EQ(doc,
            "<advice-response><recommended-bid>7322</recommended-bid>"
            "<recommended-bid-time>2026-09-21T14:13:20Z</recommended-bid-time>"
            "<should-bid>true</should-bid><sample-size>4</sample-size></advice-response>");
  auto const back = parse_advice_response(doc);
  EXPECT_EQ(back.recommended_bid, resp.recommended_bid);
  EXPECT_EQ(back.recommended_bid_time, resp.recommended_bid_time);
  EXPECT_TRUE(back.should_bid);
  EXPECT_EQ(back.basis.sample_size, 4u);
}

TEST(AdviceRefusalXml, RoundTrip)
{
  AdviceRefusal const r{"insufficient-history", 2};
  EXPECT_EQ(parse_advice_refusal(serialize_advice_refusal(r)), r);
}

TEST(Feed, TableTwoRow)
{
  auto const res = parse_feed(read_fixture("table2.xml"));
  ASSERT_EQ(res.records.size(), 3u);
  EXPECT_TRUE(res.issues.empty());
  auto const &r = res.records[0];
  EXPECT_EQ(r.item_code, "10747");
  EXPECT_EQ(r.closed_price, Money{19000});
  EXPECT_EQ(r.site, "auctionagent.com");
  EXPECT_EQ(r.item_name, "Ring With 2.30ctw Precious Stones 8.2g - Size 7.5.");
}

TEST(Feed, TableOne)
{
  auto const res = parse_feed(read_fixture("table1.xml"));
  ASSERT_EQ(res.records.size(), 7u);
  EXPECT_EQ(res.elements, 7u);
  EXPECT_FALSE(res.records[0].item_code);
}

TEST(Feed, Empty)
{
  auto const res = parse_feed("<auction-feed/>");
  EXPECT_TRUE(res.records.empty());
  EXPECT_TRUE(res.issues.empty());
}

TEST(Feed, MissingPrice)
{
  auto const res = parse_feed(read_fixture("malformed_missing_price.xml"));
  EXPECT_EQ(res.records.size(), 2u);
  ASSERT_EQ(res.issues.size(), 1u);
  EXPECT_EQ(res.issues[0], (ParseIssue{9, "auction-feed/auction[2]/closed-price", IssueKind::MissingField,
                                       res.issues[0].detail}));
}

TEST(Feed, BadNumber)
{
  auto const res = parse_feed(read_fixture("malformed_bad_number.xml"));
  EXPECT_EQ(res.records.size(), 1u);
  ASSERT_EQ(res.issues.size(), 1u);
  EXPECT_EQ(res.issues[0].kind, IssueKind::BadNumber);
  EXPECT_EQ(res.issues[0].line, 5);
  EXPECT_EQ(res.issues[0].path, "auction-feed/auction[1]/closed-price");
}

TEST(Feed, BadTimestamp)
{
  auto const res = parse_feed(read_fixture("malformed_bad_timestamp.xml"));
  EXPECT_TRUE(res.records.empty());
  ASSERT_EQ(res.issues.size(), 1u);
  EXPECT_EQ(res.issues[0].kind, IssueKind::BadTimestamp);
  EXPECT_EQ(res.issues[0].line, 6);
  EXPECT_EQ(res.issues[0].path, "auction-feed/auction[1]/close-time");
}

TEST(Feed, UnknownChildIsIssue)
{
  auto const res = parse_feed("<auction-feed><note/></auction-feed>");
  EXPECT_EQ(res.elements, 1u);
  ASSERT_EQ(res.issues.size(), 1u);
  EXPECT_EQ(res.issues[0].kind, IssueKind::Malformed);
}

TEST(Feed, NotWellFormed)
{
  EXPECT_THROW(parse_feed("<auction-feed><auction>"), MalformedDocument);
  EXPECT_THROW(parse_feed("<other/>"), MalformedDocument);
  EXPECT_THROW(parse_feed("<!DOCTYPE x [<!ENTITY a 'b'>]><auction-feed/>"), MalformedDocument);
  std::string deep;
  for (int i = 0; i < 100; ++i)
  {
    deep += "<a>";
  }
  EXPECT_THROW(parse_feed("<auction-feed>" + deep), MalformedDocument);
}

TEST(Feed, ArbitraryBytesNeverCrash)
{
  std::mt19937_64   gen(99);
  std::string const seed = read_fixture("table1.xml");
  for (int i = 0; i < 2000; ++i)
  {
    std::string doc = seed;
    for (int k = 0; k < 4; ++k)
    {
      doc[gen() % doc.size()] = static_cast<char>(gen() % 256);
    }
    if (i % 3 == 0)
    {
      doc.resize(gen() % doc.size());
    }
    try
    {
      auto const res = parse_feed(doc);
      EXPECT_EQ(res.records.size() + res.issues.size(), res.elements);
    }
    catch (MalformedDocument const &)
    {
    }
  }
}

TEST(Feed, RecordRoundTrip)
{
  std::mt19937_64                  gen(5);
  std::vector<ClosedAuctionRecord> records;
  for (int i = 0; i < 1000; ++i)
  {
    ClosedAuctionRecord r;
    r.site = random_text(gen, false);
    if (gen() % 2)
    {
      r.item_code = random_text(gen, false);
    }
    r.item_name    = random_text(gen, false);
    r.category     = random_text(gen, true);
    r.closed_price = Money{static_cast<std::int64_t>(gen() % 100000000)};
    r.num_bids     = static_cast<std::int64_t>(gen() % 1000);
    r.close_time   = Timestamp{Seconds{static_cast<std::int64_t>(gen() % 4000000000ULL)}};
    r.quantity     = 1 + static_cast<std::int64_t>(gen() % 50);
    records.push_back(r);

    auto const one = serialize_feed(std::span(&r, 1));
    auto const res = parse_feed(one);
    ASSERT_EQ(res.records.size(), 1u) << one;
    EXPECT_EQ(res.records[0], r) << one;
  }
  auto const doc = serialize_feed(records);
  auto const res = parse_feed(doc);
  EXPECT_EQ(res.records, records);
  EXPECT_EQ(serialize_feed(res.records), doc);
}

TEST(Load, TableFixtures)
{
  warehouse::Warehouse w;
  auto const           one = ingest_feed(read_fixture("table1.xml"), w);
  EXPECT_EQ(one.loaded, 7u);
  EXPECT_EQ(one.duplicates, 0u);
  auto const two = ingest_feed(read_fixture("table2.xml"), w);
  EXPECT_EQ(two.loaded, 3u);
  EXPECT_EQ(two.duplicates, 0u);
  auto const again = ingest_feed(read_fixture("table1.xml"), w);
  EXPECT_EQ(again.loaded, 0u);
  EXPECT_EQ(again.duplicates, 7u);
  EXPECT_EQ(w.size(), 10u);
}

TEST(Load, InvalidRecordBecomesIssue)
{
  warehouse::Warehouse w;
  auto                 records = parse_feed(read_fixture("table2.xml")).records;
  records[1].quantity          = 0;
  auto const s                 = load(records, w);
  EXPECT_EQ(s.parsed, 3u);
  EXPECT_EQ(s.loaded, 2u);
  ASSERT_EQ(s.issues.size(), 1u);
  EXPECT_EQ(s.parsed, s.loaded + s.duplicates + s.issues.size());
}

TEST(Load, SummaryCountsParseIssues)
{
  warehouse::Warehouse w;
  auto const           s = ingest_feed(read_fixture("malformed_missing_price.xml"), w);
  EXPECT_EQ(s.parsed, 3u);
  EXPECT_EQ(s.loaded, 2u);
  EXPECT_EQ(s.issues.size(), 1u);
}

TEST(Load, Idempotent)
{
  warehouse::Warehouse a;
  warehouse::Warehouse b;
  ingest_feed(read_fixture("table1.xml"), a);
  ingest_feed(read_fixture("table1.xml"), b);
  ingest_feed(read_fixture("table1.xml"), b);
  EXPECT_EQ(*a.snapshot(), *b.snapshot());
}

TEST(Numbers, ParseUnsigned)
{
  EXPECT_EQ(parse_unsigned(" 42 "), 42);
  EXPECT_EQ(parse_unsigned("0"), 0);
  EXPECT_FALSE(parse_unsigned("+1"));
  EXPECT_FALSE(parse_unsigned("1 000"));
  EXPECT_FALSE(parse_unsigned(""));
  EXPECT_FALSE(parse_unsigned("9223372036854775808"));
  EXPECT_EQ(parse_unsigned("9223372036854775807"), INT64_MAX);
}

}  // namespace
