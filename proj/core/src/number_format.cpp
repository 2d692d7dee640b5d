#include "regrkit/number_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace regrkit {

std::string format_shortest(double value) {
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 400> buf{};
  const double mag = std::abs(value);
  const auto fmt = mag >= 1e-6 && mag < 1e21 ? std::chars_format::fixed : std::chars_format::scientific;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt);
  return std::string(buf.data(), end);
}

std::string format_significant(double value, int digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g", digits, value);
  std::string out(buf.data());
  if (out == "-0") out = "0";
  return out;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

std::string format_rounded(double value, int decimals) {
  // Round via fixed-point printing, which is exact on the binary value, then
  // strip the trailing zeros.
  std::array<char, 128> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
  std::string out(buf.data());
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  if (out == "-0") out = "0";
  return out;
}

std::optional<double> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace regrkit
