#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regrkit/dataset.hpp"
#include "regrkit/filter.hpp"
#include "regrkit/linreg.hpp"

namespace regrkit {

struct SvrParams {
  double c = 1.0;              ///< box constraint on every dual variable
  double epsilon = 1e-3;       ///< tube half-width, filtered target units
  double tolerance = 1e-3;     ///< stop when the KKT gap falls to this
  long max_updates = 1000000;  ///< pair-update guard

  void validate() const;  ///< throws UsageError

  friend bool operator==(const SvrParams&, const SvrParams&) = default;
};

/// Whether the target column goes through the filter with the inputs.
enum class TargetScaling { filtered, raw };

/// Linear-kernel epsilon-SVR: f(x) = w . filter(x) + b, mapped back through
/// the target filter.
struct SvrModel {
  std::string target;
  std::vector<LinearTerm> weights;  ///< filtered-space weights
  double bias = 0.0;                ///< filtered target units
  FilterModel filter;
  SvrParams params;
  std::vector<double> duals;  ///< beta_i = alpha_i - alpha*_i; empty when loaded from file

  bool target_filtered() const { return filter.covers(target); }

  friend bool operator==(const SvrModel&, const SvrModel&) = default;
};

// --- dual solver ------------------------------------------------------------

/// Observer payload, delivered after every pair update.
struct SmoStep {
  long update = 0;
  double dual_objective = 0.0;
  std::span<const double> beta;
};
using SmoObserver = std::function<void(const SmoStep&)>;

struct SvrSolution {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> beta;
  long updates = 0;
  double violation = 0.0;  ///< final KKT gap (max up-set value minus min low-set value)
};

/// Maximises  -1/2 |sum_i beta_i x_i|^2 - eps * sum_i |beta_i| + sum_i y_i beta_i
/// subject to sum_i beta_i = 0 and |beta_i| <= C.
///
/// Works on the usual split beta_i = alpha_i - alpha*_i. Each step takes the
/// maximal KKT violator as the first variable and, among the variables that
/// can move against it, the one promising the largest decrease of the
/// quadratic (second-order selection); ties go to the lowest index. The pair
/// is solved in closed form and clipped to the box. The bias is the midpoint
/// of the final KKT interval. Throws NonConvergenceError after
/// params.max_updates updates.
SvrSolution solve_svr_dual(const std::vector<std::vector<double>>& x, std::span<const double> y,
                           const SvrParams& params, const SmoObserver& observer = {});

/// Dual objective above, evaluated directly from `beta`.
double svr_dual_objective(const std::vector<std::vector<double>>& x, std::span<const double> y,
                          std::span<const double> beta, double epsilon);

// --- model-level operations -------------------------------------------------

SvrModel fit_smoreg(const Dataset& d, std::string_view target, const std::vector<std::string>& attrs,
                    FilterKind filter_kind, const SvrParams& params = {},
                    TargetScaling target_scaling = TargetScaling::filtered);

/// Largest per-instance violation of the epsilon-SVR optimality conditions
/// for the model's duals and bias on `d`, in filtered target units.
double kkt_report(const SvrModel& m, const Dataset& d);

/// Prediction in raw target units.
double predict_svr(const SvrModel& m, const Instance& instance);

/// Copy with weights and bias rounded to `decimals` places.
SvrModel round_coefficients(const SvrModel& m, int decimals);

}  // namespace regrkit
