#include "fractel/errors.hpp"

#include <sstream>

namespace fractel {

namespace {
std::string with_numbers(const std::string& what, const char* k1, double v1, const char* k2,
                         double v2) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (" << k1 << "=" << v1 << ", " << k2 << "=" << v2 << ")";
  return os.str();
}
}  // namespace

ConvergenceError::ConvergenceError(const std::string& what, double partial_sum, double est_error)
    : Error(with_numbers(what, "partial_sum", partial_sum, "est_error", est_error)),
      partial_sum_(partial_sum),
      est_error_(est_error) {}

QuadratureError::QuadratureError(const std::string& what, double value, double achieved)
    : Error(with_numbers(what, "value", value, "achieved", achieved)),
      value_(value),
      achieved_(achieved) {}

ResolutionError::ResolutionError(const std::string& what, double reached_level, std::size_t steps)
    : Error(with_numbers(what, "reached", reached_level, "steps", static_cast<double>(steps))),
      reached_(reached_level),
      steps_(steps) {}

void require(bool cond, const char* msg) {
  if (!cond) throw DomainError(msg);
}

}  // namespace fractel
