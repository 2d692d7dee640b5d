#include "regrkit/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "regrkit/error.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {

double predict(const Model& m, const Instance& instance) {
  if (const auto* lin = std::get_if<LinearModel>(&m)) return predict_linear(*lin, instance);
  return predict_svr(std::get<SvrModel>(m), instance);
}

namespace {

/// Rounds away from zero to `decimals` places; values already on the grid stay put.
double round_away(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::abs(v) * scale;
  const double nearest = std::round(scaled);
  const double units = std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, scaled) ? nearest : std::ceil(scaled);
  return std::copysign(units / scale, v);
}

}  // namespace

std::vector<PredictionRow> evaluate_model(const Model& m, const Dataset& d, PredictionRounding rounding) {
  const auto actual = d.column(model_target(m));
  std::vector<PredictionRow> rows;
  rows.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (actual[i] == 0.0)
      throw DataError("row " + std::to_string(i + 1) + ": actual value of '" + model_target(m) +
                      "' is zero, error percentage undefined");
    PredictionRow r;
    r.label = d.label(i);
    r.actual = actual[i];
    const double raw = predict(m, d.instance(i));
    r.error_pct = 100.0 * (raw - r.actual) / r.actual;
    r.predicted = raw;
    if (rounding == PredictionRounding::ceiling) {
      r.predicted = std::ceil(raw);
      r.error_pct = round_away(r.error_pct, 3);
    }
    r.difference = r.predicted - r.actual;
    rows.push_back(std::move(r));
  }
  return rows;
}

double correlation_coefficient(const std::vector<PredictionRow>& rows) {
  std::vector<double> predicted, actual;
  for (const auto& r : rows) {
    predicted.push_back(r.predicted);
    actual.push_back(r.actual);
  }
  try {
    return pearson(predicted, actual);
  } catch (const ConstantColumnError&) {
    throw ConstantColumnError("correlation coefficient undefined: predictions or actuals are constant");
  }
}

std::string prediction_table_csv(const std::vector<PredictionRow>& rows, int error_decimals) {
  std::string out = "actual,predicted,difference,error_pct\n";
  for (const auto& r : rows) {
    out += format_shortest(r.actual) + "," + format_shortest(r.predicted) + "," + format_shortest(r.difference) +
           "," + format_rounded(r.error_pct, error_decimals) + "\n";
  }
  return out;
}

}  // namespace regrkit
