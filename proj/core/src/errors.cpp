#include "superres/errors.hpp"

namespace superres {

NumericalError::NumericalError(const std::string& what, double best_estimate, double error_bound)
    : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

} // namespace superres
