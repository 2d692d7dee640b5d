#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace regrkit {

enum class AttributeKind { numeric, label };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  std::size_t index = 0;

  friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

/// A single cell: numeric attributes hold doubles, label attributes text.
using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

/// Attribute name -> numeric value, the input shape for model prediction.
using Instance = std::unordered_map<std::string, double>;

/// Immutable, validated table. Rows keep their source order.
class Dataset {
 public:
  Dataset() = default;

  const std::vector<AttributeSpec>& attributes() const noexcept { return attributes_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  /// Throws UnknownAttributeError.
  const AttributeSpec& attribute(std::string_view name) const;
  bool contains(std::string_view name) const noexcept;

  /// Names of numeric attributes, in dataset order.
  std::vector<std::string> numeric_names() const;

  /// Numeric column; throws UnknownAttributeError / LabelAttributeError.
  std::vector<double> column(std::string_view name) const;

  double value(std::size_t row, std::string_view name) const;

  /// Text of the first label attribute for `row`, or "" when there is none.
  std::string label(std::size_t row) const;

  /// Numeric attributes of one row keyed by name.
  Instance instance(std::size_t row) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  friend Dataset build_dataset(std::vector<AttributeSpec> specs, std::vector<Row> rows);

  std::vector<AttributeSpec> attributes_;
  std::vector<Row> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Validates and assembles a dataset. Spec indices are reassigned to their
/// positions. Throws WidthMismatchError, NonFiniteValueError,
/// DuplicateAttributeError, or DataError for an empty/ill-typed spec list.
Dataset build_dataset(std::vector<AttributeSpec> specs, std::vector<Row> rows);

struct ColumnStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  ///< sample (n-1) standard deviation, 0 when n == 1
  std::size_t n = 0;
};

ColumnStats column_stats(const Dataset& d, std::string_view attr);
ColumnStats column_stats(std::span<const double> values);

/// Pearson product-moment correlation. Throws ConstantColumnError when either
/// side has zero spread and DataError when fewer than two values are given.
double pearson(std::span<const double> x, std::span<const double> y);
double pearson(const Dataset& d, std::string_view a, std::string_view b);

/// Symmetric correlation matrix over a fixed, ordered set of attributes.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  CorrelationMatrix(std::vector<std::string> names, std::vector<double> values);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  double at(std::string_view a, std::string_view b) const;

  /// Throws UnknownAttributeError.
  std::size_t index_of(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
};

/// Correlations between all numeric attributes in dataset order.
CorrelationMatrix correlation_matrix(const Dataset& d);

}  // namespace regrkit
