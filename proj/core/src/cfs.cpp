#include "regrkit/cfs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "regrkit/error.hpp"

namespace regrkit {

double cfs_merit(const CorrelationMatrix& corr, const std::vector<std::string>& subset, std::string_view target,
                 std::span<const double> scale) {
  if (subset.empty()) return 0.0;
  if (!scale.empty() && scale.size() != corr.size())
    throw DataError("CFS scale has " + std::to_string(scale.size()) + " entries for " +
                    std::to_string(corr.size()) + " attributes");
  const std::size_t t = corr.index_of(target);
  std::vector<std::size_t> idx;
  for (const auto& a : subset) idx.push_back(corr.index_of(a));
  auto weight = [&](std::size_t i) { return scale.empty() ? 1.0 : scale[i]; };

  double num = 0.0;
  double den = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const double wa = weight(idx[a]);
    num += wa * std::abs(corr(idx[a], t));
    den += wa * wa;
    for (std::size_t b = a + 1; b < idx.size(); ++b) den += 2.0 * wa * weight(idx[b]) * std::abs(corr(idx[a], idx[b]));
  }
  if (!(den > 0.0)) return 0.0;
  return num / std::sqrt(den);
}

std::string_view to_string(CfsWeighting w) { return w == CfsWeighting::uniform ? "uniform" : "spread"; }

CfsWeighting parse_cfs_weighting(std::string_view text) {
  if (text == "uniform") return CfsWeighting::uniform;
  if (text == "spread") return CfsWeighting::spread;
  throw UsageError("unknown CFS weighting '" + std::string(text) + "' (expected uniform or spread)");
}

namespace {

using Subset = std::vector<std::size_t>;  // sorted candidate positions

std::vector<std::string> names_of(const Subset& s, const std::vector<std::string>& candidates) {
  std::vector<std::string> out;
  for (std::size_t i : s) out.push_back(candidates[i]);
  return out;
}

struct Node {
  Subset subset;
  double merit;
};

/// Strict "a ranks before b" for the open list and best tracking.
bool ranks_before(const Node& a, const Node& b) {
  if (a.merit != b.merit) return a.merit > b.merit;
  if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
  return a.subset < b.subset;
}

}  // namespace

CfsSearchResult best_first_search(const CorrelationMatrix& corr, const std::vector<std::string>& candidates,
                                  std::string_view target, int stale_limit, std::span<const double> scale) {
  if (candidates.empty()) throw DataError("CFS needs at least one candidate attribute");
  if (stale_limit < 1) throw UsageError("stale limit must be positive");
  corr.index_of(target);
  for (const auto& c : candidates) {
    corr.index_of(c);
    if (c == target) throw DataError("candidate '" + c + "' is the target");
  }

  CfsSearchResult result;
  std::vector<Node> open{{{}, 0.0}};
  std::set<Subset> seen{{}};
  Node best{{}, 0.0};
  int stale = 0;

  while (!open.empty() && stale < stale_limit) {
    auto head = std::min_element(open.begin(), open.end(), ranks_before);
    Node node = std::move(*head);
    open.erase(head);

    bool improved = false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (std::binary_search(node.subset.begin(), node.subset.end(), c)) continue;
      Subset child = node.subset;
      child.insert(std::upper_bound(child.begin(), child.end(), c), c);
      if (!seen.insert(child).second) continue;

      auto names = names_of(child, candidates);
      const double merit = cfs_merit(corr, names, target, scale);
      result.trace.push_back({std::move(names), merit});
      Node next{std::move(child), merit};
      if (best.subset.empty() || ranks_before(next, best)) {
        if (merit > best.merit) improved = true;
        best = next;
      }
      open.push_back(std::move(next));
    }
    stale = improved ? 0 : stale + 1;
  }

  result.subset = names_of(best.subset, candidates);
  result.merit = best.merit;
  return result;
}

std::vector<std::string> add_locally_predictive(const CorrelationMatrix& corr,
                                                const std::vector<std::string>& selected,
                                                const std::vector<std::string>& candidates,
                                                std::string_view target) {
  const std::size_t t = corr.index_of(target);
  std::vector<bool> chosen(candidates.size(), false);
  for (const auto& s : selected) {
    auto it = std::find(candidates.begin(), candidates.end(), s);
    if (it == candidates.end()) throw DataError("selected attribute '" + s + "' is not a candidate");
    chosen[static_cast<std::size_t>(it - candidates.begin())] = true;
  }

  std::vector<std::size_t> col(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) col[i] = corr.index_of(candidates[i]);

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(corr(col[a], t)) > std::abs(corr(col[b], t));
  });

  for (std::size_t a : order) {
    if (chosen[a]) continue;
    const double class_corr = std::abs(corr(col[a], t));
    double redundancy = 0.0;
    for (std::size_t s = 0; s < candidates.size(); ++s)
      if (chosen[s]) redundancy = std::max(redundancy, std::abs(corr(col[a], col[s])));
    if (class_corr > redundancy) chosen[a] = true;
  }

  std::vector<std::string> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (chosen[i]) out.push_back(candidates[i]);
  return out;
}

CfsResult cfs_select(const Dataset& d, std::string_view target, CfsWeighting weighting, int stale_limit) {
  if (d.attribute(target).kind != AttributeKind::numeric) throw LabelAttributeError(std::string(target));
  const auto numeric = d.numeric_names();
  std::vector<std::string> candidates;
  for (const auto& n : numeric)
    if (n != target) candidates.push_back(n);
  if (candidates.empty()) throw DataError("CFS needs at least one numeric attribute besides the target");

  const auto corr = correlation_matrix(d);
  std::vector<double> scale;
  if (weighting == CfsWeighting::spread) {
    for (const auto& n : corr.names()) {
      const auto s = column_stats(d, n);
      const double count = static_cast<double>(s.n);
      scale.push_back(s.stddev * std::sqrt((count - 1.0) / count));
    }
  }
  auto search = best_first_search(corr, candidates, target, stale_limit, scale);

  CfsResult r;
  r.selected = add_locally_predictive(corr, search.subset, candidates, target);
  r.merit = cfs_merit(corr, r.selected, target, scale);
  for (const auto& s : r.selected) {
    auto it = std::find(numeric.begin(), numeric.end(), s);
    r.indices.push_back(static_cast<std::size_t>(it - numeric.begin()) + 1);
  }
  r.search_subset = std::move(search.subset);
  r.search_merit = search.merit;
  r.trace = std::move(search.trace);
  return r;
}

}  // namespace regrkit
