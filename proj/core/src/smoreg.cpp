#include "regrkit/smoreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regrkit/error.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {

void SvrParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw UsageError("C must be positive, got " + format_shortest(c));
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw UsageError("epsilon must be non-negative, got " + format_shortest(epsilon));
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw UsageError("tolerance must be positive, got " + format_shortest(tolerance));
  if (max_updates <= 0) throw UsageError("max_updates must be positive");
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

std::vector<double> primal_weights(const std::vector<std::vector<double>>& x, std::span<const double> beta,
                                   std::size_t p) {
  std::vector<double> w(p, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (beta[i] == 0.0) continue;
    for (std::size_t k = 0; k < p; ++k) w[k] += beta[i] * x[i][k];
  }
  return w;
}

/// Split-variable view of the dual. Variable t < n is alpha_t (sign +1),
/// t >= n is alpha*_{t-n} (sign -1).
class SmoState {
 public:
  SmoState(const std::vector<std::vector<double>>& x, std::span<const double> y, const SvrParams& params)
      : x_(x), y_(y), params_(params), n_(y.size()), p_(x.empty() ? 0 : x.front().size()),
        alpha_(2 * n_, 0.0), beta_(n_, 0.0), w_(p_, 0.0), f_(n_, 0.0), norms_(n_) {
    for (std::size_t i = 0; i < n_; ++i) norms_[i] = dot(x_[i], x_[i]);
  }

  std::size_t instance(std::size_t t) const { return t < n_ ? t : t - n_; }
  double sign(std::size_t t) const { return t < n_ ? 1.0 : -1.0; }

  bool in_up(std::size_t t) const { return t < n_ ? alpha_[t] < params_.c : alpha_[t] > 0.0; }
  bool in_low(std::size_t t) const { return t < n_ ? alpha_[t] > 0.0 : alpha_[t] < params_.c; }

  /// Negated signed gradient: y - f - s*eps (f excludes the bias).
  double score(std::size_t t) const {
    const std::size_t i = instance(t);
    return y_[i] - f_[i] - sign(t) * params_.epsilon;
  }

  void refresh_outputs() {
    for (std::size_t i = 0; i < n_; ++i) f_[i] = dot(w_, x_[i]);
  }

  void resync_weights() {
    w_ = primal_weights(x_, beta_, p_);
    dirty_ = false;
  }
  bool dirty() const { return dirty_; }

  struct Gap {
    std::size_t up = 0;
    double up_score = -std::numeric_limits<double>::infinity();
    double low_score = std::numeric_limits<double>::infinity();
  };

  Gap gap() const {
    Gap g;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      const double v = score(t);
      if (in_up(t) && v > g.up_score) {
        g.up_score = v;
        g.up = t;
      }
      if (in_low(t) && v < g.low_score) g.low_score = v;
    }
    return g;
  }

  /// Second-order partner for `up`; returns 2n when none can move.
  std::size_t partner(std::size_t up, double up_score) const {
    const std::size_t a = instance(up);
    std::size_t best = 2 * n_;
    double best_gain = -1.0;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      if (!in_low(t)) continue;
      const double diff = up_score - score(t);
      if (!(diff > 0.0)) continue;
      const double gain = diff * diff / curvature(a, instance(t));
      if (gain > best_gain) {
        best_gain = gain;
        best = t;
      }
    }
    return best;
  }

  double curvature(std::size_t a, std::size_t b) const {
    const double eta = norms_[a] + norms_[b] - 2.0 * dot(x_[a], x_[b]);
    return eta > kMinCurvature ? eta : kMinCurvature;
  }

  /// Moves beta_a up and beta_b down by the clipped Newton step.
  void update(std::size_t i, std::size_t j, double diff) {
    const std::size_t a = instance(i);
    const std::size_t b = instance(j);
    const double room_i = i < n_ ? params_.c - alpha_[i] : alpha_[i];
    const double room_j = j < n_ ? alpha_[j] : params_.c - alpha_[j];
    const double step = std::min(diff / curvature(a, b), std::min(room_i, room_j));

    alpha_[i] += sign(i) * step;
    alpha_[j] -= sign(j) * step;
    // Land exactly on the bound that limited the step.
    if (step == room_i) alpha_[i] = i < n_ ? params_.c : 0.0;
    if (step == room_j) alpha_[j] = j < n_ ? 0.0 : params_.c;
    alpha_[i] = std::clamp(alpha_[i], 0.0, params_.c);
    alpha_[j] = std::clamp(alpha_[j], 0.0, params_.c);

    beta_[a] = alpha_[a] - alpha_[a + n_];
    beta_[b] = alpha_[b] - alpha_[b + n_];
    if (a != b) {
      for (std::size_t k = 0; k < p_; ++k) w_[k] += step * (x_[a][k] - x_[b][k]);
      dirty_ = true;
    }
  }

  const std::vector<double>& beta() const { return beta_; }
  const std::vector<double>& weights() const { return w_; }

 private:
  static constexpr double kMinCurvature = 1e-12;

  const std::vector<std::vector<double>>& x_;
  std::span<const double> y_;
  const SvrParams& params_;
  std::size_t n_, p_;
  std::vector<double> alpha_, beta_, w_, f_, norms_;
  bool dirty_ = false;
};

}  // namespace

double svr_dual_objective(const std::vector<std::vector<double>>& x, std::span<const double> y,
                          std::span<const double> beta, double epsilon) {
  const std::size_t p = x.empty() ? 0 : x.front().size();
  const auto w = primal_weights(x, beta, p);
  double obj = -0.5 * dot(w, w);
  for (std::size_t i = 0; i < beta.size(); ++i) obj += y[i] * beta[i] - epsilon * std::abs(beta[i]);
  return obj;
}

SvrSolution solve_svr_dual(const std::vector<std::vector<double>>& x, std::span<const double> y,
                           const SvrParams& params, const SmoObserver& observer) {
  params.validate();
  if (x.size() != y.size()) throw DataError("SMO: instance count mismatch");
  if (y.size() < 2) throw DataError("SMO needs at least two instances");
  const std::size_t p = x.front().size();
  for (const auto& row : x)
    if (row.size() != p) throw DataError("SMO: ragged input matrix");

  constexpr long kResyncInterval = 1024;
  SmoState state(x, y, params);
  long updates = 0;
  SmoState::Gap g;
  while (true) {
    state.refresh_outputs();
    g = state.gap();
    if (g.up_score - g.low_score <= params.tolerance) {
      if (!state.dirty()) break;
      // Confirm on weights rebuilt from the duals before stopping.
      state.resync_weights();
      continue;
    }
    if (updates >= params.max_updates) throw NonConvergenceError(updates, g.up_score - g.low_score);

    const std::size_t j = state.partner(g.up, g.up_score);
    if (j == 2 * y.size()) break;  // nothing can move; gap is numerical noise
    state.update(g.up, j, g.up_score - state.score(j));
    ++updates;
    if (updates % kResyncInterval == 0) state.resync_weights();

    if (observer) {
      observer(SmoStep{updates, svr_dual_objective(x, y, state.beta(), params.epsilon), state.beta()});
    }
  }

  SvrSolution out;
  out.weights = state.weights();
  out.beta = state.beta();
  out.bias = 0.5 * (g.up_score + g.low_score);
  out.updates = updates;
  out.violation = std::max(0.0, g.up_score - g.low_score);
  return out;
}

namespace {

std::vector<std::vector<double>> design_matrix(const Dataset& d, const std::vector<std::string>& attrs) {
  std::vector<std::vector<double>> cols;
  for (const auto& a : attrs) cols.push_back(d.column(a));
  std::vector<std::vector<double>> x(d.size(), std::vector<double>(attrs.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = 0; k < attrs.size(); ++k) x[i][k] = cols[k][i];
  return x;
}

std::vector<std::string> model_attributes(const SvrModel& m) {
  std::vector<std::string> out;
  for (const auto& t : m.weights) out.push_back(t.attribute);
  return out;
}

}  // namespace

SvrModel fit_smoreg(const Dataset& d, std::string_view target, const std::vector<std::string>& attrs,
                    FilterKind filter_kind, const SvrParams& params, TargetScaling target_scaling) {
  params.validate();
  if (d.attribute(target).kind != AttributeKind::numeric) throw LabelAttributeError(std::string(target));
  if (attrs.empty()) throw DataError("SMO regression needs at least one attribute");
  for (const auto& a : attrs) {
    if (a == target) throw DataError("attribute '" + a + "' is the target");
    if (d.attribute(a).kind != AttributeKind::numeric) throw LabelAttributeError(a);
  }
  if (d.size() < 2) throw DataError("SMO regression needs at least two instances");

  auto filtered_attrs = attrs;
  if (target_scaling == TargetScaling::filtered) filtered_attrs.emplace_back(target);
  SvrModel m;
  m.target = std::string(target);
  m.filter = fit_filter(d, filter_kind, filtered_attrs);
  m.params = params;

  const Dataset fd = apply_filter(m.filter, d);
  const auto x = design_matrix(fd, attrs);
  const auto y = fd.column(target);
  auto sol = solve_svr_dual(x, y, params);

  for (std::size_t k = 0; k < attrs.size(); ++k) m.weights.push_back({attrs[k], sol.weights[k]});
  m.bias = sol.bias;
  m.duals = std::move(sol.beta);
  return m;
}

double kkt_report(const SvrModel& m, const Dataset& d) {
  if (m.duals.size() != d.size())
    throw DataError("model carries " + std::to_string(m.duals.size()) + " dual variables for " +
                    std::to_string(d.size()) + " instances");
  for (const auto& t : m.weights)
    if (!d.contains(t.attribute)) throw DataError("dataset lacks model attribute '" + t.attribute + "'");
  if (!d.contains(m.target)) throw DataError("dataset lacks target '" + m.target + "'");

  const Dataset fd = apply_filter(m.filter, d);
  const auto x = design_matrix(fd, model_attributes(m));
  const auto y = fd.column(m.target);
  const double c = m.params.c;
  const double eps = m.params.epsilon;

  std::vector<double> w;
  for (const auto& t : m.weights) w.push_back(t.coefficient);

  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = y[i] - (dot(w, x[i]) + m.bias);
    const double alpha = std::max(m.duals[i], 0.0);
    const double alpha_star = std::max(-m.duals[i], 0.0);
    if (alpha < c) worst = std::max(worst, r - eps);
    if (alpha > 0.0) worst = std::max(worst, eps - r);
    if (alpha_star > 0.0) worst = std::max(worst, r + eps);
    if (alpha_star < c) worst = std::max(worst, -eps - r);
  }
  return worst;
}

double predict_svr(const SvrModel& m, const Instance& instance) {
  double v = m.bias;
  for (const auto& t : m.weights) {
    auto it = instance.find(t.attribute);
    if (it == instance.end()) throw DataError("instance is missing attribute '" + t.attribute + "'");
    v += t.coefficient * m.filter.transform(t.attribute, it->second);
  }
  return m.target_filtered() ? invert_target(m.filter, m.target, v) : v;
}

SvrModel round_coefficients(const SvrModel& m, int decimals) {
  SvrModel out = m;
  for (auto& t : out.weights) t.coefficient = round_to(t.coefficient, decimals);
  out.bias = round_to(out.bias, decimals);
  return out;
}

}  // namespace regrkit
