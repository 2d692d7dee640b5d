#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "regrkit/dataset.hpp"

namespace regrkit {

enum class FilterKind { none, normalize, standardize };

std::string_view to_string(FilterKind kind);
/// Throws UsageError for anything other than none/normalize/standardize.
FilterKind parse_filter_kind(std::string_view text);

/// Scaling parameters of one attribute. For normalize `first`/`second` are
/// min/max, for standardize mean/stddev.
struct FilterParam {
  std::string attribute;
  double first = 0.0;
  double second = 0.0;

  friend bool operator==(const FilterParam&, const FilterParam&) = default;
};

/// Fitted per-attribute affine scaling. Once fitted, parameters never change;
/// applying the filter to new rows (including values outside the fitted range)
/// extrapolates linearly.
class FilterModel {
 public:
  FilterModel() = default;
  /// Validates spreads; throws ConstantColumnError.
  FilterModel(FilterKind kind, std::vector<FilterParam> params);

  FilterKind kind() const noexcept { return kind_; }
  const std::vector<FilterParam>& params() const noexcept { return params_; }
  bool covers(std::string_view attribute) const noexcept;

  /// Filtered value of `x` for `attribute`. Identity for kind none; throws
  /// UnknownAttributeError when the attribute was not fitted.
  double transform(std::string_view attribute, double x) const;
  /// Exact inverse of transform.
  double inverse(std::string_view attribute, double v) const;

  friend bool operator==(const FilterModel&, const FilterModel&) = default;

 private:
  const FilterParam& param(std::string_view attribute) const;

  FilterKind kind_ = FilterKind::none;
  std::vector<FilterParam> params_;
};

/// Fits `kind` on `attrs` of `d` (min/max or mean/sample stddev).
/// Needs n >= 2 for normalize/standardize.
FilterModel fit_filter(const Dataset& d, FilterKind kind, const std::vector<std::string>& attrs);

/// Copy of `d` with every fitted attribute transformed; label columns and
/// unfitted attributes pass through. Throws DataError if `d` lacks a fitted
/// attribute.
Dataset apply_filter(const FilterModel& f, const Dataset& d);

/// Maps a filtered target value back to raw units. Identity for kind none.
double invert_target(const FilterModel& f, std::string_view target, double v);

}  // namespace regrkit
