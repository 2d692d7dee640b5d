#pragma once

#include <string>
#include <string_view>

#include "regrkit/dataset.hpp"

namespace regrkit {

/// Reads a dense ARFF document. numeric/real/integer attributes become numeric,
/// string attributes become labels. Nominal and date attributes are rejected,
/// as are missing values ("?"). Errors carry 1-based line numbers.
Dataset parse_arff(std::string_view text);

/// The name declared by the @relation line.
std::string arff_relation_name(std::string_view text);

/// Writes `d` as ARFF: lowercase keywords, single spaces, LF endings,
/// numbers in shortest round-trip form.
std::string write_arff(const Dataset& d, std::string_view relation_name);

}  // namespace regrkit
