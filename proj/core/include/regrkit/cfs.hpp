#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regrkit/dataset.hpp"

namespace regrkit {

/// Correlation-based subset merit:
///   k * mean|r(a, target)| / sqrt(k + k(k-1) * mean|r(a, b)|)
/// over attributes a and unordered pairs a != b of `subset`. Zero for an
/// empty subset.
///
/// With a non-empty `scale` (one entry per matrix attribute) each attribute
/// is weighted by its entry:
///   sum s_a |r(a, target)| / sqrt(sum s_a^2 + 2 sum s_a s_b |r(a, b)|)
/// which reduces to the plain form for unit weights.
double cfs_merit(const CorrelationMatrix& corr, const std::vector<std::string>& subset, std::string_view target,
                 std::span<const double> scale = {});

struct CfsVisit {
  std::vector<std::string> subset;
  double merit = 0.0;
};

struct CfsSearchResult {
  std::vector<std::string> subset;  ///< in candidate order
  double merit = 0.0;
  std::vector<CfsVisit> trace;  ///< every subset evaluated, in evaluation order
};

/// Forward best-first search from the empty set. The open list is ordered by
/// merit (ties: fewer attributes, then lower candidate positions); each
/// expansion adds one attribute. Stops once `stale_limit` consecutive
/// expansions fail to improve the best merit, or when the open list empties.
CfsSearchResult best_first_search(const CorrelationMatrix& corr, const std::vector<std::string>& candidates,
                                  std::string_view target, int stale_limit = 5,
                                  std::span<const double> scale = {});

/// Adds "locally predictive" attributes: unselected candidates, visited in
/// decreasing |r(a, target)|, join when |r(a, target)| exceeds |r(a, s)| for
/// every attribute s selected so far (including ones added by this pass).
/// Returns the augmented subset in candidate order.
std::vector<std::string> add_locally_predictive(const CorrelationMatrix& corr,
                                                const std::vector<std::string>& selected,
                                                const std::vector<std::string>& candidates,
                                                std::string_view target);

/// Attribute weights used by cfs_select.
enum class CfsWeighting {
  uniform,  ///< every attribute weighs 1
  spread,   ///< weight = population standard deviation of the attribute
};

std::string_view to_string(CfsWeighting w);
CfsWeighting parse_cfs_weighting(std::string_view text);  ///< throws UsageError

struct CfsResult {
  std::vector<std::string> selected;  ///< dataset order
  std::vector<std::size_t> indices;   ///< 1-based positions among numeric attributes
  double merit = 0.0;                 ///< cfs_merit(selected) under the chosen weighting
  std::vector<std::string> search_subset;
  double search_merit = 0.0;
  std::vector<CfsVisit> trace;
};

/// Full pipeline: correlation matrix, best-first search over every numeric
/// non-target attribute, then the locally-predictive pass. The default
/// spread weighting matches the long-standing CFS implementation in common
/// data-mining workbenches.
CfsResult cfs_select(const Dataset& d, std::string_view target, CfsWeighting weighting = CfsWeighting::spread,
                     int stale_limit = 5);

}  // namespace regrkit
