#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "regrkit/error.hpp"
#include "regrkit/evaluate.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {

std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::nil:
      return "NIL";
    case Trend::inc:
      return "INC";
    case Trend::dec:
      return "DEC";
    case Trend::flat:
      return "FLAT";
  }
  return "NIL";
}

namespace {

std::optional<std::int64_t> as_integer(double v) {
  constexpr double kLimit = 9007199254740992.0;  // 2^53
  if (std::abs(v) > kLimit || std::floor(v) != v) return std::nullopt;
  return static_cast<std::int64_t>(v);
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t q = num / den;
  return (num % den != 0 && num > 0) ? q + 1 : q;
}

/// ceil(num_a * num_b / den), computed exactly when the operands are integers
/// and the product fits in 64 bits.
double ceil_ratio(double num_a, double num_b, double den) {
  auto a = as_integer(num_a), b = as_integer(num_b), c = as_integer(den);
  std::int64_t product = 0;
  if (a && b && c && *c != 0 && !__builtin_mul_overflow(*a, *b, &product))
    return static_cast<double>(ceil_div(product, *c));
  const double q = num_a * num_b / den;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, std::abs(q))) return nearest;
  return std::ceil(q);
}

}  // namespace

std::vector<GrowthRow> growth_report(const Dataset& d, std::string_view pv_attr,
                                     const std::vector<std::string>& cost_attrs, std::size_t baseline_row) {
  if (cost_attrs.empty()) throw DataError("growth report needs at least one cost attribute");
  const auto pv = d.column(pv_attr);
  std::vector<std::vector<double>> costs;
  for (const auto& c : cost_attrs) costs.push_back(d.column(c));
  if (baseline_row < 1 || baseline_row > d.size())
    throw DataError("baseline row " + std::to_string(baseline_row) + " is outside 1.." + std::to_string(d.size()));

  std::vector<double> total(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t k = 0; k < costs.size(); ++k) {
      if (costs[k][i] < 0.0)
        throw DataError("row " + std::to_string(i + 1) + ": negative cost in '" + cost_attrs[k] + "'");
      total[i] += costs[k][i];
    }
  }

  const std::size_t base = baseline_row - 1;
  const double base_views = pv[base];
  const double base_cost = total[base];
  if (!(base_views > 0.0) || !(base_cost > 0.0))
    throw DataError("baseline row " + std::to_string(baseline_row) + " needs positive page views and cost");

  std::vector<GrowthRow> rows;
  for (std::size_t i = 0; i < d.size(); ++i) {
    GrowthRow r;
    r.label = d.label(i);
    r.page_views = pv[i];
    r.total_cost = total[i];
    // cost / (base_cost / base_views) == cost * base_views / base_cost
    r.estimated_views = ceil_ratio(total[i], base_views, base_cost);
    r.diff = r.page_views - r.estimated_views;
    if (r.page_views == 0.0) throw DataError("row " + std::to_string(i + 1) + ": zero page views");
    r.profit_pct = ceil_ratio(100.0, r.diff, r.page_views);
    if (!rows.empty()) {
      const double prev = rows.back().profit_pct;
      r.trend = r.profit_pct > prev ? Trend::inc : r.profit_pct < prev ? Trend::dec : Trend::flat;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string growth_table_csv(const std::vector<GrowthRow>& rows) {
  std::string out = "label,page_views,total_cost,estimated_views,diff,profit_pct,trend\n";
  for (const auto& r : rows) {
    std::string label = r.label;
    if (label.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : label) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      label = q + "\"";
    }
    out += label + "," + format_shortest(r.page_views) + "," + format_shortest(r.total_cost) + "," +
           format_shortest(r.estimated_views) + "," + format_shortest(r.diff) + "," +
           format_shortest(r.profit_pct) + "," + std::string(to_string(r.trend)) + "\n";
  }
  return out;
}

}  // namespace regrkit
