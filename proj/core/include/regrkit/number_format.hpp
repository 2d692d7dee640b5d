#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace regrkit {

/// Shortest decimal text that parses back to exactly `value`; fixed notation for ordinary magnitudes.
std::string format_shortest(double value);

/// printf-style "%.<digits>g".
std::string format_significant(double value, int digits);

/// Rounds to `decimals` places and prints without trailing zeros, so 0.90 prints as "0.9" and 1.00 as "1".
std::string format_rounded(double value, int decimals);

double round_to(double value, int decimals);

/// Strict full-string decimal parse (no leading/trailing junk).
std::optional<double> parse_decimal(std::string_view text);

}  // namespace regrkit
