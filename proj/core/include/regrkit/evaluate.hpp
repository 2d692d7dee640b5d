#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "regrkit/dataset.hpp"
#include "regrkit/model_io.hpp"

namespace regrkit {

struct PredictionRow {
  std::string label;  ///< label column text when the dataset has one
  double actual = 0.0;
  double predicted = 0.0;
  double difference = 0.0;  ///< predicted - actual
  double error_pct = 0.0;   ///< 100 * (prediction - actual) / actual
};

/// How predictions are turned into reported values.
enum class PredictionRounding {
  none,
  /// Predictions rounded up to whole units. Error percent comes from the unrounded
  /// prediction, rounded away from zero to 3 decimals.
  ceiling,
};

double predict(const Model& m, const Instance& instance);

/// One row per instance, in dataset order. Throws DataError naming the row
/// when an actual value is zero.
std::vector<PredictionRow> evaluate_model(const Model& m, const Dataset& d,
                                          PredictionRounding rounding = PredictionRounding::none);

/// Pearson correlation between predicted and actual values.
double correlation_coefficient(const std::vector<PredictionRow>& rows);

/// CSV with header actual,predicted,difference,error_pct. error_pct is
/// rounded to `error_decimals` places; the other columns are exact.
std::string prediction_table_csv(const std::vector<PredictionRow>& rows, int error_decimals);

enum class Trend { nil, inc, dec, flat };
std::string_view to_string(Trend t);

struct GrowthRow {
  std::string label;
  double page_views = 0.0;
  double total_cost = 0.0;
  double estimated_views = 0.0;  ///< ceil(total_cost / baseline cost per view)
  double diff = 0.0;             ///< page_views - estimated_views
  double profit_pct = 0.0;       ///< ceil(100 * diff / page_views)
  Trend trend = Trend::nil;
};

/// Growth/profit table. The baseline cost per view is total cost over page
/// views of `baseline_row` (1-based). Quotients that are whole numbers are
/// kept exact; integral inputs are divided in integer arithmetic.
std::vector<GrowthRow> growth_report(const Dataset& d, std::string_view pv_attr,
                                     const std::vector<std::string>& cost_attrs, std::size_t baseline_row = 1);

/// CSV with header label,page_views,total_cost,estimated_views,diff,profit_pct,trend.
std::string growth_table_csv(const std::vector<GrowthRow>& rows);

}  // namespace regrkit
