#include "regrkit/error.hpp"

#include "regrkit/number_format.hpp"

namespace regrkit {

WidthMismatchError::WidthMismatchError(std::size_t row, std::size_t expected,
                                       std::size_t got)
    : DataError("row " + std::to_string(row) + " has " + std::to_string(got) +
                " values, expected " + std::to_string(expected)),
      row_(row) {}

UnknownAttributeError::UnknownAttributeError(const std::string& name)
    : DataError("unknown attribute '" + name + "'"), name_(name) {}

LabelAttributeError::LabelAttributeError(const std::string& name)
    : DataError("attribute '" + name + "' is a label, not numeric") {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : DataError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

NonConvergenceError::NonConvergenceError(long updates, double violation)
    : NumericalError("SMO did not converge after " + std::to_string(updates) +
                     " pair updates (max KKT violation " +
                     format_shortest(violation) + ")"),
      violation_(violation) {}

}  // namespace regrkit
