#include <algorithm>
#include <cctype>
#include <string>

#include "regrkit/error.hpp"
#include "regrkit/ingest.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void malformed(std::string_view token) {
  throw MalformedQuantityError("malformed quantity '" + std::string(token) + "'");
}

}  // namespace

double parse_quantity(std::string_view token) {
  std::string_view s = trim(token);
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);

  bool kilo = false;
  if (!s.empty() && (s.back() == 'k' || s.back() == 'K')) {
    kilo = true;
    s.remove_suffix(1);
  }

  // Integer part: a leading group of digits, then optional ",ddd" groups.
  std::string integer;
  std::size_t i = 0;
  while (i < s.size() && is_digit(s[i])) integer += s[i++];
  if (integer.empty()) malformed(token);
  const bool grouped = i < s.size() && s[i] == ',';
  if (grouped && integer.size() > 3) malformed(token);
  while (i < s.size() && s[i] == ',') {
    ++i;
    std::size_t run = 0;
    while (i < s.size() && is_digit(s[i])) {
      integer += s[i++];
      ++run;
    }
    if (run != 3) malformed(token);
  }

  std::string fraction;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) fraction += s[i++];
    if (fraction.empty()) malformed(token);
  }
  if (i != s.size()) malformed(token);

  // Apply the multiplier by shifting the decimal point, so "12.5k" is parsed
  // as the exact decimal 12500 rather than 12.5 * 1000.
  if (kilo) {
    fraction.resize(std::max<std::size_t>(fraction.size(), 3), '0');
    integer += fraction.substr(0, 3);
    fraction.erase(0, 3);
  }
  std::string plain = integer;
  if (!fraction.empty()) plain += "." + fraction;
  auto value = parse_decimal(plain);
  if (!value) malformed(token);
  return *value;
}

}  // namespace regrkit
