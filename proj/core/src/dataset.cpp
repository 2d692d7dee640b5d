#include "regrkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "regrkit/error.hpp"

namespace regrkit {

Dataset build_dataset(std::vector<AttributeSpec> specs, std::vector<Row> rows) {
  if (specs.empty()) throw DataError("dataset needs at least one attribute");

  Dataset d;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto& spec = specs[i];
    if (spec.name.empty()) throw DataError("attribute " + std::to_string(i) + " has an empty name");
    spec.index = i;
    if (!d.index_.emplace(spec.name, i).second)
      throw DuplicateAttributeError("duplicate attribute name '" + spec.name + "'");
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != specs.size()) throw WidthMismatchError(r, specs.size(), row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      const bool numeric = specs[c].kind == AttributeKind::numeric;
      if (numeric != std::holds_alternative<double>(row[c])) {
        throw DataError("row " + std::to_string(r) + ", attribute '" + specs[c].name +
                        "': expected " + (numeric ? "a number" : "text"));
      }
      if (numeric && !std::isfinite(std::get<double>(row[c]))) {
        throw NonFiniteValueError("row " + std::to_string(r) + ", attribute '" +
                                  specs[c].name + "': non-finite value");
      }
    }
  }

  d.attributes_ = std::move(specs);
  d.rows_ = std::move(rows);
  return d;
}

const AttributeSpec& Dataset::attribute(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw UnknownAttributeError(std::string(name));
  return attributes_[it->second];
}

bool Dataset::contains(std::string_view name) const noexcept {
  return index_.contains(std::string(name));
}

std::vector<std::string> Dataset::numeric_names() const {
  std::vector<std::string> names;
  for (const auto& a : attributes_)
    if (a.kind == AttributeKind::numeric) names.push_back(a.name);
  return names;
}

std::vector<double> Dataset::column(std::string_view name) const {
  const auto& spec = attribute(name);
  if (spec.kind != AttributeKind::numeric) throw LabelAttributeError(spec.name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(std::get<double>(row[spec.index]));
  return out;
}

double Dataset::value(std::size_t row, std::string_view name) const {
  const auto& spec = attribute(name);
  if (spec.kind != AttributeKind::numeric) throw LabelAttributeError(spec.name);
  return std::get<double>(rows_.at(row)[spec.index]);
}

std::string Dataset::label(std::size_t row) const {
  for (const auto& a : attributes_)
    if (a.kind == AttributeKind::label) return std::get<std::string>(rows_.at(row)[a.index]);
  return {};
}

Instance Dataset::instance(std::size_t row) const {
  Instance out;
  for (const auto& a : attributes_)
    if (a.kind == AttributeKind::numeric) out.emplace(a.name, std::get<double>(rows_.at(row)[a.index]));
  return out;
}

ColumnStats column_stats(std::span<const double> values) {
  if (values.empty()) throw EmptyDatasetError("statistics need at least one instance");
  ColumnStats s;
  s.n = values.size();
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  // Rounding can push the mean a hair outside [min, max] on constant data.
  s.mean = std::clamp(s.mean, s.min, s.max);
  if (s.n > 1 && s.min != s.max) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

ColumnStats column_stats(const Dataset& d, std::string_view attr) {
  const auto& spec = d.attribute(attr);
  if (spec.kind != AttributeKind::numeric) throw LabelAttributeError(spec.name);
  if (d.empty()) throw EmptyDatasetError("attribute '" + spec.name + "': dataset has no instances");
  return column_stats(d.column(attr));
}

namespace {

bool is_constant(std::span<const double> v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo == *hi;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("pearson: length mismatch");
  if (x.size() < 2) throw DataError("pearson: need at least two instances");
  if (is_constant(x) || is_constant(y)) throw ConstantColumnError("pearson: constant column, correlation undefined");

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson(const Dataset& d, std::string_view a, std::string_view b) {
  const auto xa = d.column(a);
  const auto xb = d.column(b);
  try {
    return pearson(xa, xb);
  } catch (const ConstantColumnError&) {
    const std::string which = is_constant(xa) ? std::string(a) : std::string(b);
    throw ConstantColumnError("attribute '" + which + "' is constant; correlation of '" +
                              std::string(a) + "' with '" + std::string(b) + "' is undefined");
  }
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> names, std::vector<double> values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (values_.size() != names_.size() * names_.size())
    throw DataError("correlation matrix: value count does not match names");
}

std::size_t CorrelationMatrix::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownAttributeError(std::string(name));
  return static_cast<std::size_t>(it - names_.begin());
}

double CorrelationMatrix::at(std::string_view a, std::string_view b) const {
  return (*this)(index_of(a), index_of(b));
}

CorrelationMatrix correlation_matrix(const Dataset& d) {
  auto names = d.numeric_names();
  const std::size_t p = names.size();
  if (p < 2) throw DataError("correlation matrix needs at least two numeric attributes");

  std::vector<std::vector<double>> cols;
  cols.reserve(p);
  for (const auto& n : names) cols.push_back(d.column(n));

  std::vector<double> values(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    values[i * p + i] = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      double r = 0.0;
      try {
        r = pearson(cols[i], cols[j]);
      } catch (const ConstantColumnError&) {
        throw ConstantColumnError("correlation of '" + names[i] + "' with '" + names[j] +
                                  "' is undefined: '" +
                                  (is_constant(cols[i]) ? names[i] : names[j]) + "' is constant");
      } catch (const DataError& e) {
        throw DataError("correlation of '" + names[i] + "' with '" + names[j] + "': " + e.what());
      }
      values[i * p + j] = r;
      values[j * p + i] = r;
    }
  }
  return CorrelationMatrix(std::move(names), std::move(values));
}

}  // namespace regrkit
