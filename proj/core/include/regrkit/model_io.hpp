#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "regrkit/linreg.hpp"
#include "regrkit/smoreg.hpp"

namespace regrkit {

using Model = std::variant<LinearModel, SvrModel>;

/// Line-oriented text form shared by both model types:
///
///   # regrkit model v1
///   type: svr | linear
///   target: NAME
///   filter: none | normalize | standardize
///   filter_param: NAME A B      (min max, or mean stddev; one per attribute)
///   coef: NAME W
///   intercept: B
///   params: C=.. epsilon=.. tol=..   (svr only)
///
/// Numbers use the shortest round-trip form; names containing whitespace are
/// single-quoted. Duals are not persisted.
std::string write_model(const Model& m);

/// Inverse of write_model. Unknown keys, duplicate singleton keys and
/// malformed numbers are ParseErrors with line numbers.
Model read_model(std::string_view text);

const std::string& model_target(const Model& m);

}  // namespace regrkit
