#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "regrkit/dataset.hpp"

namespace regrkit {

struct LinearTerm {
  std::string attribute;
  double coefficient = 0.0;  ///< target units per attribute unit

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

struct LinearModel {
  std::string target;
  std::vector<LinearTerm> terms;
  double intercept = 0.0;

  double coefficient(std::string_view attribute) const;  ///< throws UnknownAttributeError

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// Ordinary least squares with intercept.
///
/// Solves the normal equations of the mean-centred problem by Cholesky
/// factorisation; the intercept is recovered as ybar - sum(w_j * xbar_j).
/// When a pivot drops below 1e-12 of its (Jacobi-scaled) diagonal the system
/// is retried once with a ridge of 1e-8 * trace / p added to the diagonal.
/// Rows are accumulated in a canonical order, so permuting rows gives
/// bit-identical coefficients. Throws DegenerateSystemError if the ridge retry
/// also fails.
LinearModel fit_ols(const Dataset& d, std::string_view target, const std::vector<std::string>& attrs);

/// Residual sum of squares of `m` over `d`.
double sse(const LinearModel& m, const Dataset& d);

/// AIC used for subset comparison: n * ln(SSE / n) + 2 * (k + 1).
double aic(double sse, std::size_t n, std::size_t k);

enum class Selection {
  none,        ///< keep every candidate
  greedy,      ///< backward elimination on AIC
  exhaustive,  ///< minimum AIC over all non-empty subsets (at most 20 candidates)
  m5,          ///< backward elimination of the smallest standardized coefficient
};

std::string_view to_string(Selection s);
Selection parse_selection(std::string_view text);  ///< throws UsageError

/// Chooses a subset of `candidates` for predicting `target`.
///
/// greedy and exhaustive score subsets with aic(); exhaustive breaks ties
/// toward fewer attributes, then toward the lexicographically smaller list of
/// candidate positions.
///
/// m5 repeatedly drops the attribute with the smallest |w_j * sd_j / sd_y|
/// while doing so lowers SSE_S / SSE_full * (n - p_full) + 2 * p_S, where p
/// counts attributes plus the intercept.
///
/// Returns attributes in candidate order.
std::vector<std::string> select_attributes_aic(const Dataset& d, std::string_view target,
                                               const std::vector<std::string>& candidates, Selection mode);

LinearModel fit_linreg(const Dataset& d, std::string_view target, const std::vector<std::string>& candidates,
                       Selection selection);

/// intercept + sum(coefficient * value). Throws DataError naming a missing
/// attribute.
double predict_linear(const LinearModel& m, const Instance& instance);

/// Copy with every coefficient and the intercept rounded to `decimals`
/// places, i.e. the model exactly as a printed equation states it.
LinearModel round_coefficients(const LinearModel& m, int decimals);

}  // namespace regrkit
