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

#include "agora/ingest/feed.hpp"

#include <limits>

namespace agora::ingest {

using advisor::AdviceRequest;
using advisor::AdviceResponse;
using warehouse::ClosedAuctionRecord;

std::string_view to_string(IssueKind kind)
{
  switch (kind)
  {
  case IssueKind::MissingField:
    return "MISSING_FIELD";
  case IssueKind::BadNumber:
    return "BAD_NUMBER";
  case IssueKind::BadTimestamp:
    return "BAD_TIMESTAMP";
  case IssueKind::Malformed:
    return "MALFORMED";
  }
  return "MALFORMED";
}

namespace {

std::string describe(std::vector<ParseIssue> const &issues)
{
  std::string out = "document rejected";
  for (auto const &issue : issues)
  {
    out += "; ";
    out += std::string(to_string(issue.kind)) + " at " + issue.path + " (line " +
           std::to_string(issue.line) + "): " + issue.detail;
  }
  return out;
}

std::string_view trim(std::string_view s)
{
  auto const ws    = " \t\r\n";
  auto const first = s.find_first_not_of(ws);
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

/// Reads the child fields of one element, recording issues against `base_path`.
class FieldReader
{
public:
  FieldReader(xml::Element const &element, std::string base_path, std::vector<ParseIssue> &issues)
    : element_(element)
    , base_path_(std::move(base_path))
    , issues_(issues)
  {}

  std::optional<std::string> optional_text(std::string_view name)
  {
    auto const found = element_.children_named(name);
    if (found.empty())
    {
      return std::nullopt;
    }
    if (found.size() > 1)
    {
      report(found[1]->line, name, IssueKind::Malformed, "element appears more than once");
      return std::nullopt;
    }
    return found.front()->text;
  }

  std::optional<std::string> text(std::string_view name, bool non_empty = false)
  {
    auto const found = element_.children_named(name);
    if (found.empty())
    {
      report(element_.line, name, IssueKind::MissingField, "required element missing");
      return std::nullopt;
    }
    if (found.size() > 1)
    {
      report(found[1]->line, name, IssueKind::Malformed, "element appears more than once");
      return std::nullopt;
    }
    if (non_empty && found.front()->text.empty())
    {
      report(found.front()->line, name, IssueKind::MissingField, "element is empty");
      return std::nullopt;
    }
    return found.front()->text;
  }

  std::optional<std::int64_t> number(std::string_view name)
  {
    auto const raw = text(name);
    if (!raw)
    {
      return std::nullopt;
    }
    auto const value = parse_unsigned(*raw);
    if (!value)
    {
      report(line_of(name), name, IssueKind::BadNumber, "not an unsigned integer: '" + *raw + "'");
    }
    return value;
  }

  std::optional<Timestamp> timestamp(std::string_view name)
  {
    auto const raw = text(name);
    if (!raw)
    {
      return std::nullopt;
    }
    auto const value = parse_iso8601(trim(*raw));
    if (!value)
    {
      report(line_of(name), name, IssueKind::BadTimestamp, "not an ISO-8601 UTC time: '" + *raw + "'");
    }
    return value;
  }

  std::optional<bool> boolean(std::string_view name)
  {
    auto const raw = text(name);
    if (!raw)
    {
      return std::nullopt;
    }
    auto const t = trim(*raw);
    if (t == "true")
    {
      return true;
    }
    if (t == "false")
    {
      return false;
    }
    report(line_of(name), name, IssueKind::Malformed, "expected true or false");
    return std::nullopt;
  }

  void report(int line, std::string_view field, IssueKind kind, std::string detail)
  {
    issues_.push_back({line, base_path_ + "/" + std::string(field), kind, std::move(detail)});
  }

private:
  int line_of(std::string_view name) const
  {
    auto const found = element_.children_named(name);
    return found.empty() ? element_.line : found.front()->line;
  }

  xml::Element const      &element_;
  std::string              base_path_;
  std::vector<ParseIssue> &issues_;
};

std::optional<ClosedAuctionRecord> read_auction(xml::Element const &el, std::string const &path,
                                                std::vector<ParseIssue> &issues)
{
  // One issue per rejected candidate: collect locally, keep the first.
  std::vector<ParseIssue> local;
  FieldReader             read(el, path, local);

  ClosedAuctionRecord rec;
  if (auto const site = el.attribute("site"); site && !site->empty())
  {
    rec.site = std::string(*site);
  }
  else
  {
    read.report(el.line, "@site", IssueKind::MissingField, "site attribute missing");
  }
  rec.item_code = read.optional_text("item-code");
  if (auto v = read.text("item-name", true))
  {
    rec.item_name = std::move(*v);
  }
  rec.category = read.optional_text("category").value_or("");
  if (auto v = read.number("closed-price"))
  {
    rec.closed_price = Money{*v};
  }
  if (auto v = read.number("num-bids"))
  {
    rec.num_bids = *v;
  }
  if (auto v = read.timestamp("close-time"))
  {
    rec.close_time = *v;
  }
  if (auto v = read.number("quantity"))
  {
    rec.quantity = *v;
  }

  if (!local.empty())
  {
    issues.push_back(std::move(local.front()));
    return std::nullopt;
  }
  return rec;
}

void append_element(std::string &out, std::string_view name, std::string_view text)
{
  out += '<';
  out += name;
  out += '>';
  out += xml::escape(text);
  out += "</";
  out += name;
  out += '>';
}

void require_representable(std::string_view what, std::string_view text, bool non_empty)
{
  if (non_empty && text.empty())
  {
    throw UnrepresentableValue(std::string(what) + " must be non-empty");
  }
  if (!xml::is_representable(text))
  {
    throw UnrepresentableValue(std::string(what) + " contains characters XML cannot carry");
  }
}

xml::Element parse_rooted(std::string_view document, std::string_view root_name)
{
  xml::Element root;
  try
  {
    root = xml::parse(document);
  }
  catch (MalformedDocument const &ex)
  {
    throw ParseError({{ex.line(), std::string(root_name), IssueKind::Malformed, ex.what()}});
  }
  if (root.name != root_name)
  {
    throw ParseError({{root.line, std::string(root_name), IssueKind::Malformed,
                       "unexpected root element <" + root.name + ">"}});
  }
  return root;
}

}  // namespace

ParseError::ParseError(std::vector<ParseIssue> issues)
  : Error(describe(issues))
  , issues_(std::move(issues))
{}

std::optional<std::int64_t> parse_unsigned(std::string_view text)
{
  auto const t = trim(text);
  if (t.empty())
  {
    return std::nullopt;
  }
  std::int64_t value = 0;
  for (char const c : t)
  {
    if (c < '0' || c > '9')
    {
      return std::nullopt;
    }
    int const digit = c - '0';
    if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
    {
      return std::nullopt;
    }
    value = value * 10 + digit;
  }
  return value;
}

FeedParseResult parse_feed(std::string_view document)
{
  auto const root = xml::parse(document);
  if (root.name != "auction-feed")
  {
    throw MalformedDocument(root.line, "expected <auction-feed> root, found <" + root.name + ">");
  }

  FeedParseResult result;
  std::size_t     index = 0;
  for (auto const &child : root.children)
  {
    ++index;
    ++result.elements;
    std::string const path = "auction-feed/" + child.name + "[" + std::to_string(index) + "]";
    if (child.name != "auction")
    {
      result.issues.push_back(
          {child.line, path, IssueKind::Malformed, "unexpected element <" + child.name + ">"});
      continue;
    }
    if (auto rec = read_auction(child, path, result.issues))
    {
      result.records.push_back(std::move(*rec));
    }
  }
  return result;
}

std::string serialize_feed(std::span<ClosedAuctionRecord const> records)
{
  std::string out = "<auction-feed>";
  for (auto const &rec : records)
  {
    require_representable("site", rec.site, true);
    require_representable("item name", rec.item_name, true);
    require_representable("category", rec.category, false);
    if (rec.item_code)
    {
      require_representable("item code", *rec.item_code, false);
    }
    if (rec.num_bids < 0 || rec.quantity < 0)
    {
      throw UnrepresentableValue("counts must be non-negative");
    }

    out += "<auction site=\"";
    out += xml::escape(rec.site);
    out += "\">";
    if (rec.item_code)
    {
      append_element(out, "item-code", *rec.item_code);
    }
    append_element(out, "item-name", rec.item_name);
    if (!rec.category.empty())
    {
      append_element(out, "category", rec.category);
    }
    append_element(out, "closed-price", to_string(rec.closed_price));
    append_element(out, "num-bids", std::to_string(rec.num_bids));
    append_element(out, "close-time", format_iso8601(rec.close_time));
    append_element(out, "quantity", std::to_string(rec.quantity));
    out += "</auction>";
  }
  out += "</auction-feed>";
  return out;
}

LoadSummary load(std::span<ClosedAuctionRecord const> records, warehouse::Warehouse &warehouse)
{
  LoadSummary summary;
  summary.parsed      = records.size();
  auto const outcomes = warehouse.add_records(records);
  for (std::size_t i = 0; i < outcomes.size(); ++i)
  {
    switch (outcomes[i].kind)
    {
    case warehouse::Warehouse::InsertOutcome::Kind::Added:
      ++summary.loaded;
      break;
    case warehouse::Warehouse::InsertOutcome::Kind::Duplicate:
      ++summary.duplicates;
      break;
    case warehouse::Warehouse::InsertOutcome::Kind::Invalid:
      summary.issues.push_back({0, "record[" + std::to_string(i + 1) + "]", IssueKind::Malformed,
                                outcomes[i].detail});
      break;
    }
  }
  return summary;
}

LoadSummary ingest_feed(std::string_view document, warehouse::Warehouse &warehouse)
{
  auto parsed  = parse_feed(document);
  auto summary = load(parsed.records, warehouse);
  summary.parsed = parsed.elements;
  summary.issues.insert(summary.issues.begin(), parsed.issues.begin(), parsed.issues.end());
  return summary;
}

std::string serialize_advice_request(AdviceRequest const &req)
{
  require_representable("item name", req.item_name, true);
  if (req.num_bids < 0 || req.remaining_duration.count() < 0)
  {
    throw UnrepresentableValue("counts and durations must be non-negative");
  }
  std::string out = "<advice-request>";
  append_element(out, "item-name", req.item_name);
  append_element(out, "current-bid", to_string(req.current_bid));
  append_element(out, "num-bids", std::to_string(req.num_bids));
  append_element(out, "remaining-duration-seconds", std::to_string(req.remaining_duration.count()));
  out += "</advice-request>";
  return out;
}

AdviceRequest parse_advice_request(std::string_view document)
{
  auto const              root = parse_rooted(document, "advice-request");
  std::vector<ParseIssue> issues;
  FieldReader             read(root, "advice-request", issues);

  AdviceRequest req;
  if (auto v = read.text("item-name", true))
  {
    req.item_name = std::move(*v);
  }
  if (auto v = read.number("current-bid"))
  {
    req.current_bid = Money{*v};
  }
  if (auto v = read.number("num-bids"))
  {
    req.num_bids = *v;
  }
  if (auto v = read.number("remaining-duration-seconds"))
  {
    req.remaining_duration = Seconds{*v};
  }
  if (!issues.empty())
  {
    throw ParseError(std::move(issues));
  }
  return req;
}

std::string serialize_advice_response(AdviceResponse const &resp)
{
  std::string out = "<advice-response>";
  append_element(out, "recommended-bid", to_string(resp.recommended_bid));
  append_element(out, "recommended-bid-time", format_iso8601(resp.recommended_bid_time));
  append_element(out, "should-bid", resp.should_bid ? "true" : "false");
  append_element(out, "sample-size", std::to_string(resp.basis.sample_size));
  out += "</advice-response>";
  return out;
}

AdviceResponse parse_advice_response(std::string_view document)
{
  auto const              root = parse_rooted(document, "advice-response");
  std::vector<ParseIssue> issues;
  FieldReader             read(root, "advice-response", issues);

  AdviceResponse resp;
  if (auto v = read.number("recommended-bid"))
  {
    resp.recommended_bid           = Money{*v};
    resp.basis.median_closed_price = resp.recommended_bid;
  }
  if (auto v = read.timestamp("recommended-bid-time"))
  {
    resp.recommended_bid_time = *v;
  }
  if (auto v = read.boolean("should-bid"))
  {
    resp.should_bid = *v;
  }
  if (auto v = read.number("sample-size"))
  {
    resp.basis.sample_size = static_cast<std::size_t>(*v);
  }
  if (!issues.empty())
  {
    throw ParseError(std::move(issues));
  }
  return resp;
}

std::string serialize_advice_refusal(AdviceRefusal const &refusal)
{
  require_representable("reason", refusal.reason, false);
  std::string out = "<advice-refusal>";
  append_element(out, "reason", refusal.reason);
  append_element(out, "sample-size", std::to_string(refusal.sample_size));
  out += "</advice-refusal>";
  return out;
}

AdviceRefusal parse_advice_refusal(std::string_view document)
{
  auto const              root = parse_rooted(document, "advice-refusal");
  std::vector<ParseIssue> issues;
  FieldReader             read(root, "advice-refusal", issues);

  AdviceRefusal refusal;
  refusal.reason = read.text("reason").value_or("");
  if (auto v = read.number("sample-size"))
  {
    refusal.sample_size = static_cast<std::size_t>(*v);
  }
  if (!issues.empty())
  {
    throw ParseError(std::move(issues));
  }
  return refusal;
}

}  // namespace agora::ingest
