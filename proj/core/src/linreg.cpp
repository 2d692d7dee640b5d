#include "regrkit/linreg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "regrkit/error.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {

double LinearModel::coefficient(std::string_view attribute) const {
  for (const auto& t : terms)
    if (t.attribute == attribute) return t.coefficient;
  throw UnknownAttributeError(std::string(attribute));
}

namespace {

void check_attrs(const Dataset& d, std::string_view target, const std::vector<std::string>& attrs) {
  if (d.attribute(target).kind != AttributeKind::numeric) throw LabelAttributeError(std::string(target));
  if (attrs.empty()) throw DataError("regression needs at least one attribute");
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (d.attribute(attrs[i]).kind != AttributeKind::numeric) throw LabelAttributeError(attrs[i]);
    if (attrs[i] == target) throw DataError("attribute '" + attrs[i] + "' is the target");
    for (std::size_t j = 0; j < i; ++j)
      if (attrs[j] == attrs[i]) throw DataError("attribute '" + attrs[i] + "' listed twice");
  }
}

/// In-place Cholesky of the p x p row-major matrix `a` followed by the
/// solve for `b`. Fails when a pivot falls below `rel_tol` times the
/// original diagonal entry of its column.
std::optional<std::vector<double>> cholesky_solve(std::vector<double> a, std::vector<double> b, std::size_t p,
                                                  double rel_tol) {
  std::vector<double> diag(p);
  for (std::size_t i = 0; i < p; ++i) diag[i] = a[i * p + i];
  for (std::size_t j = 0; j < p; ++j) {
    double pivot = a[j * p + j];
    for (std::size_t k = 0; k < j; ++k) pivot -= a[j * p + k] * a[j * p + k];
    if (!(pivot > rel_tol * diag[j])) return std::nullopt;
    const double l = std::sqrt(pivot);
    a[j * p + j] = l;
    for (std::size_t i = j + 1; i < p; ++i) {
      double s = a[i * p + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * p + k] * a[j * p + k];
      a[i * p + j] = s / l;
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= a[i * p + k] * b[k];
    b[i] /= a[i * p + i];
  }
  for (std::size_t i = p; i-- > 0;) {
    for (std::size_t k = i + 1; k < p; ++k) b[i] -= a[k * p + i] * b[k];
    b[i] /= a[i * p + i];
  }
  return b;
}

/// Row indices sorted by row content (target first), so accumulations do not
/// depend on input order.
std::vector<std::size_t> canonical_order(const std::vector<double>& y, const std::vector<std::vector<double>>& x) {
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (y[a] != y[b]) return y[a] < y[b];
    for (const auto& col : x)
      if (col[a] != col[b]) return col[a] < col[b];
    return false;
  });
  return order;
}

}  // namespace

LinearModel fit_ols(const Dataset& d, std::string_view target, const std::vector<std::string>& attrs) {
  check_attrs(d, target, attrs);
  if (d.empty()) throw EmptyDatasetError("regression on an empty dataset");

  const std::size_t n = d.size();
  const std::size_t p = attrs.size();
  const auto y = d.column(target);
  std::vector<std::vector<double>> x;
  for (const auto& a : attrs) x.push_back(d.column(a));
  const auto order = canonical_order(y, x);

  double ybar = 0.0;
  std::vector<double> xbar(p, 0.0);
  for (std::size_t r : order) {
    ybar += y[r];
    for (std::size_t j = 0; j < p; ++j) xbar[j] += x[j][r];
  }
  ybar /= static_cast<double>(n);
  for (auto& m : xbar) m /= static_cast<double>(n);

  std::vector<double> xtx(p * p, 0.0), xty(p, 0.0);
  for (std::size_t r : order) {
    const double dy = y[r] - ybar;
    for (std::size_t i = 0; i < p; ++i) {
      const double di = x[i][r] - xbar[i];
      xty[i] += di * dy;
      for (std::size_t j = 0; j <= i; ++j) xtx[i * p + j] += di * (x[j][r] - xbar[j]);
    }
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j) xtx[j * p + i] = xtx[i * p + j];

  // Jacobi scaling keeps the pivot test meaningful when columns differ by
  // orders of magnitude (page views vs. e-mails).
  std::vector<double> scale(p, 1.0);
  for (std::size_t i = 0; i < p; ++i)
    if (xtx[i * p + i] > 0.0) scale[i] = 1.0 / std::sqrt(xtx[i * p + i]);
  std::vector<double> a(p * p), b(p);
  for (std::size_t i = 0; i < p; ++i) {
    b[i] = xty[i] * scale[i];
    for (std::size_t j = 0; j < p; ++j) a[i * p + j] = xtx[i * p + j] * scale[i] * scale[j];
  }

  constexpr double kPivotTol = 1e-12;
  auto solution = cholesky_solve(a, b, p, kPivotTol);
  if (!solution) {
    double trace = 0.0;
    for (std::size_t i = 0; i < p; ++i) trace += xtx[i * p + i];
    const double ridge = 1e-8 * trace / static_cast<double>(p);
    if (ridge > 0.0) {
      for (std::size_t i = 0; i < p; ++i) a[i * p + i] += ridge * scale[i] * scale[i];
      solution = cholesky_solve(a, b, p, kPivotTol);
    }
  }
  if (!solution) throw DegenerateSystemError("normal equations for '" + std::string(target) + "' are singular");

  LinearModel m;
  m.target = std::string(target);
  m.intercept = ybar;
  for (std::size_t j = 0; j < p; ++j) {
    const double w = (*solution)[j] * scale[j];
    if (!std::isfinite(w)) throw DegenerateSystemError("non-finite coefficient for '" + attrs[j] + "'");
    m.terms.push_back({attrs[j], w});
    m.intercept -= w * xbar[j];
  }
  return m;
}

double predict_linear(const LinearModel& m, const Instance& instance) {
  double v = m.intercept;
  for (const auto& t : m.terms) {
    auto it = instance.find(t.attribute);
    if (it == instance.end()) throw DataError("instance is missing attribute '" + t.attribute + "'");
    v += t.coefficient * it->second;
  }
  return v;
}

double sse(const LinearModel& m, const Dataset& d) {
  const auto y = d.column(m.target);
  double s = 0.0;
  for (std::size_t r = 0; r < d.size(); ++r) {
    const double e = y[r] - predict_linear(m, d.instance(r));
    s += e * e;
  }
  return s;
}

double aic(double sse, std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n);
  return nn * std::log(sse / nn) + 2.0 * static_cast<double>(k + 1);
}

std::string_view to_string(Selection s) {
  switch (s) {
    case Selection::none:
      return "none";
    case Selection::greedy:
      return "greedy";
    case Selection::exhaustive:
      return "exhaustive";
    case Selection::m5:
      return "m5";
  }
  return "none";
}

Selection parse_selection(std::string_view text) {
  if (text == "none") return Selection::none;
  if (text == "greedy") return Selection::greedy;
  if (text == "exhaustive") return Selection::exhaustive;
  if (text == "m5") return Selection::m5;
  throw UsageError("unknown selection '" + std::string(text) + "' (expected none, greedy, exhaustive or m5)");
}

namespace {

std::vector<std::string> pick(const std::vector<std::string>& candidates, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(candidates[i]);
  return out;
}

double subset_aic(const Dataset& d, std::string_view target, const std::vector<std::string>& attrs) {
  return aic(sse(fit_ols(d, target, attrs), d), d.size(), attrs.size());
}

std::vector<std::size_t> greedy_aic(const Dataset& d, std::string_view target,
                                    const std::vector<std::string>& candidates) {
  std::vector<std::size_t> current(candidates.size());
  std::iota(current.begin(), current.end(), 0);
  double best = subset_aic(d, target, candidates);
  while (current.size() > 1) {
    std::optional<std::size_t> drop;
    double drop_aic = best;
    for (std::size_t k = 0; k < current.size(); ++k) {
      auto trial = current;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
      const double v = subset_aic(d, target, pick(candidates, trial));
      if (v < drop_aic) {
        drop_aic = v;
        drop = k;
      }
    }
    if (!drop) break;
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(*drop));
    best = drop_aic;
  }
  return current;
}

std::vector<std::size_t> exhaustive_aic(const Dataset& d, std::string_view target,
                                        const std::vector<std::string>& candidates) {
  constexpr std::size_t kMaxCandidates = 20;
  if (candidates.size() > kMaxCandidates)
    throw UsageError("exhaustive selection supports at most " + std::to_string(kMaxCandidates) +
                     " candidates, got " + std::to_string(candidates.size()));

  const std::size_t p = candidates.size();
  std::vector<std::size_t> best;
  double best_aic = 0.0;
  for (unsigned long mask = 1; mask < (1UL << p); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < p; ++i)
      if (mask & (1UL << i)) subset.push_back(i);
    const double v = subset_aic(d, target, pick(candidates, subset));
    const bool better = best.empty() || v < best_aic ||
                        (v == best_aic && (subset.size() < best.size() ||
                                           (subset.size() == best.size() && subset < best)));
    if (better) {
      best = std::move(subset);
      best_aic = v;
    }
  }
  return best;
}

std::vector<std::size_t> m5_elimination(const Dataset& d, std::string_view target,
                                        const std::vector<std::string>& candidates) {
  const double n = static_cast<double>(d.size());
  const double sd_y = column_stats(d, target).stddev;
  std::vector<double> sd(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) sd[i] = column_stats(d, candidates[i]).stddev;

  std::vector<std::size_t> current(candidates.size());
  std::iota(current.begin(), current.end(), 0);
  LinearModel model = fit_ols(d, target, candidates);
  const double full_sse = sse(model, d);
  if (!(full_sse > 0.0)) return current;  // exact fit: nothing to gain
  const double full_params = static_cast<double>(candidates.size() + 1);
  double score = n + full_params;  // (n - p) + 2p for the full model

  while (current.size() > 1) {
    std::size_t weakest = 0;
    double weakest_sc = 0.0;
    for (std::size_t k = 0; k < current.size(); ++k) {
      const double sc = std::abs(model.terms[k].coefficient * sd[current[k]] / sd_y);
      if (k == 0 || sc < weakest_sc) {
        weakest = k;
        weakest_sc = sc;
      }
    }
    auto trial = current;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(weakest));
    LinearModel trial_model = fit_ols(d, target, pick(candidates, trial));
    const double trial_score =
        sse(trial_model, d) / full_sse * (n - full_params) + 2.0 * static_cast<double>(trial.size() + 1);
    if (!(trial_score < score)) break;
    current = std::move(trial);
    model = std::move(trial_model);
    score = trial_score;
  }
  return current;
}

}  // namespace

std::vector<std::string> select_attributes_aic(const Dataset& d, std::string_view target,
                                               const std::vector<std::string>& candidates, Selection mode) {
  check_attrs(d, target, candidates);
  switch (mode) {
    case Selection::none:
      return candidates;
    case Selection::greedy:
      return pick(candidates, greedy_aic(d, target, candidates));
    case Selection::exhaustive:
      return pick(candidates, exhaustive_aic(d, target, candidates));
    case Selection::m5:
      return pick(candidates, m5_elimination(d, target, candidates));
  }
  return candidates;
}

LinearModel fit_linreg(const Dataset& d, std::string_view target, const std::vector<std::string>& candidates,
                       Selection selection) {
  return fit_ols(d, target, select_attributes_aic(d, target, candidates, selection));
}

LinearModel round_coefficients(const LinearModel& m, int decimals) {
  LinearModel out = m;
  for (auto& t : out.terms) t.coefficient = round_to(t.coefficient, decimals);
  out.intercept = round_to(out.intercept, decimals);
  return out;
}

}  // namespace regrkit
