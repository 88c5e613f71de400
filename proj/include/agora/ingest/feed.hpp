#pragma once
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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agora/advisor/advice.hpp"
#include "agora/core/error.hpp"
#include "agora/ingest/xml.hpp"
#include "agora/warehouse/record.hpp"
#include "agora/warehouse/warehouse.hpp"

namespace agora::ingest {

using xml::MalformedDocument;

enum class IssueKind
{
  MissingField,
  BadNumber,
  BadTimestamp,
  Malformed,
};

std::string_view to_string(IssueKind kind);

struct ParseIssue
{
  int         line = 0;
  std::string path;
  IssueKind   kind = IssueKind::Malformed;
  std::string detail;

  friend bool operator==(ParseIssue const &, ParseIssue const &) = default;
};

/// A single document (advice request or response) was rejected; carries every issue found.
class ParseError : public Error
{
public:
  explicit ParseError(std::vector<ParseIssue> issues);

  std::vector<ParseIssue> const &issues() const noexcept
  {
    return issues_;
  }

private:
  std::vector<ParseIssue> issues_;
};

/// A value cannot be written into the canonical documents (empty name, control characters).
class UnrepresentableValue : public Error
{
public:
  using Error::Error;
};

struct FeedParseResult
{
  std::vector<warehouse::ClosedAuctionRecord> records;
  std::vector<ParseIssue>                     issues;
  /// Number of record candidates (children of the feed root) examined.
  std::size_t elements = 0;
};

/**
 * Parses an <auction-feed>. Each child element is a record candidate; a candidate that is
 * not a complete <auction> yields exactly one ParseIssue and the batch carries on. Throws
 * MalformedDocument only when the input is not well-formed XML or the root is not
 * <auction-feed>.
 */
FeedParseResult parse_feed(std::string_view document);

/// Canonical feed document: fixed element order, no whitespace, optional elements omitted
/// when absent (item-code) or empty (category).
std::string serialize_feed(std::span<warehouse::ClosedAuctionRecord const> records);

struct LoadSummary
{
  std::size_t             parsed     = 0;
  std::size_t             loaded     = 0;
  std::size_t             duplicates = 0;
  std::vector<ParseIssue> issues;
};

/// Adds `records` to the warehouse; duplicates are counted, invalid records become issues.
LoadSummary load(std::span<warehouse::ClosedAuctionRecord const> records,
                 warehouse::Warehouse &warehouse);

/// parse_feed followed by load; parse issues are merged into the summary.
LoadSummary ingest_feed(std::string_view document, warehouse::Warehouse &warehouse);

std::string            serialize_advice_request(advisor::AdviceRequest const &req);
advisor::AdviceRequest parse_advice_request(std::string_view document);

/// The response document carries the sample size but not the two medians.
std::string             serialize_advice_response(advisor::AdviceResponse const &resp);
advisor::AdviceResponse parse_advice_response(std::string_view document);

struct AdviceRefusal
{
  std::string reason;
  std::size_t sample_size = 0;

  friend bool operator==(AdviceRefusal const &, AdviceRefusal const &) = default;
};

std::string   serialize_advice_refusal(AdviceRefusal const &refusal);
AdviceRefusal parse_advice_refusal(std::string_view document);

/// Unsigned decimal integer, surrounding whitespace allowed, no sign or separators.
std::optional<std::int64_t> parse_unsigned(std::string_view text);

}  // namespace agora::ingest
