#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "regrkit/dataset.hpp"

namespace regrkit {

/// Parses an analytics cell such as "1k", "$2,500", "1,150k" or "12.5k".
///
/// Grammar, after trimming surrounding whitespace:
///   ["$"] digits ("," three-digits)* ["." digits] ["k" | "K"]
/// The "k" suffix multiplies by exactly 1000. The result is the correctly
/// rounded double of the scaled decimal. Throws MalformedQuantityError.
double parse_quantity(std::string_view token);

/// Splits CSV text into records (RFC 4180 quoting: fields containing commas,
/// quotes or newlines are double-quoted, quotes doubled). Accepts LF or CRLF.
/// Trailing blank lines are dropped. Throws ParseError on an unterminated
/// quote.
std::vector<std::vector<std::string>> read_csv_records(std::string_view text);

/// Builds a Dataset from a raw analytics export.
///
/// The first record is the header. Columns named in `label_columns` are kept
/// as text; every other cell goes through parse_quantity. Exact duplicate
/// rows (compared after parsing) are dropped, keeping the first occurrence.
Dataset ingest_csv(std::string_view text, const std::vector<std::string>& label_columns);

}  // namespace regrkit
