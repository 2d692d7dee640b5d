#include "regrkit/filter.hpp"

#include <algorithm>

#include "regrkit/error.hpp"

namespace regrkit {

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::none:
      return "none";
    case FilterKind::normalize:
      return "normalize";
    case FilterKind::standardize:
      return "standardize";
  }
  return "none";
}

FilterKind parse_filter_kind(std::string_view text) {
  if (text == "none") return FilterKind::none;
  if (text == "normalize") return FilterKind::normalize;
  if (text == "standardize") return FilterKind::standardize;
  throw UsageError("unknown filter '" + std::string(text) + "' (expected none, normalize or standardize)");
}

FilterModel::FilterModel(FilterKind kind, std::vector<FilterParam> params)
    : kind_(kind), params_(std::move(params)) {
  if (kind_ == FilterKind::none) {
    params_.clear();
    return;
  }
  for (const auto& p : params_) {
    if (kind_ == FilterKind::normalize && !(p.second > p.first))
      throw ConstantColumnError("cannot normalize '" + p.attribute + "': max must exceed min");
    if (kind_ == FilterKind::standardize && !(p.second > 0.0))
      throw ConstantColumnError("cannot standardize '" + p.attribute + "': standard deviation is zero");
  }
}

bool FilterModel::covers(std::string_view attribute) const noexcept {
  return std::any_of(params_.begin(), params_.end(), [&](const auto& p) { return p.attribute == attribute; });
}

const FilterParam& FilterModel::param(std::string_view attribute) const {
  auto it = std::find_if(params_.begin(), params_.end(), [&](const auto& p) { return p.attribute == attribute; });
  if (it == params_.end()) throw UnknownAttributeError(std::string(attribute));
  return *it;
}

double FilterModel::transform(std::string_view attribute, double x) const {
  if (kind_ == FilterKind::none) return x;
  const auto& p = param(attribute);
  if (kind_ == FilterKind::normalize) return (x - p.first) / (p.second - p.first);
  return (x - p.first) / p.second;
}

double FilterModel::inverse(std::string_view attribute, double v) const {
  if (kind_ == FilterKind::none) return v;
  const auto& p = param(attribute);
  if (kind_ == FilterKind::normalize) return p.first + v * (p.second - p.first);
  return p.first + v * p.second;
}

FilterModel fit_filter(const Dataset& d, FilterKind kind, const std::vector<std::string>& attrs) {
  for (const auto& a : attrs)
    if (d.attribute(a).kind != AttributeKind::numeric) throw LabelAttributeError(a);
  if (kind == FilterKind::none) return FilterModel{};
  if (d.size() < 2) throw DataError("fitting a filter needs at least two instances");

  std::vector<FilterParam> params;
  for (const auto& a : attrs) {
    const auto s = column_stats(d, a);
    if (s.min == s.max) throw ConstantColumnError("attribute '" + a + "' is constant and cannot be " +
                                                  std::string(kind == FilterKind::normalize ? "normalized" : "standardized"));
    if (kind == FilterKind::normalize)
      params.push_back({a, s.min, s.max});
    else
      params.push_back({a, s.mean, s.stddev});
  }
  return FilterModel(kind, std::move(params));
}

Dataset apply_filter(const FilterModel& f, const Dataset& d) {
  if (f.kind() == FilterKind::none) return d;
  std::vector<std::size_t> columns;
  for (const auto& p : f.params()) {
    if (!d.contains(p.attribute)) throw DataError("dataset lacks filtered attribute '" + p.attribute + "'");
    const auto& spec = d.attribute(p.attribute);
    if (spec.kind != AttributeKind::numeric) throw LabelAttributeError(spec.name);
    columns.push_back(spec.index);
  }
  std::vector<Row> rows = d.rows();
  for (auto& row : rows) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      double& x = std::get<double>(row[columns[k]]);
      x = f.transform(f.params()[k].attribute, x);
    }
  }
  return build_dataset(d.attributes(), std::move(rows));
}

double invert_target(const FilterModel& f, std::string_view target, double v) {
  return f.inverse(target, v);
}

}  // namespace regrkit
