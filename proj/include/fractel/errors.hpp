#pragma once

#include <stdexcept>
#include <string>

namespace fractel {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters (ranges, sizes, non-finite input).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

// A formula was asked for outside the real branch it is implemented on.
class BranchError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ContractError : public Error {
 public:
  using Error::Error;
};

// Series did not converge within the iteration budget, or lost too many
// digits to cancellation. Carries whatever had been summed.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double partial_sum, double est_error);
  double partial_sum() const noexcept { return partial_sum_; }
  double est_error() const noexcept { return est_error_; }

 private:
  double partial_sum_;
  double est_error_;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double value, double achieved);
  double value() const noexcept { return value_; }
  double achieved() const noexcept { return achieved_; }

 private:
  double value_;
  double achieved_;
};

// Path sampler failed to cross the target level within its step budget.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double reached_level, std::size_t steps);
  double reached_level() const noexcept { return reached_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  double reached_;
  std::size_t steps_;
};

void require(bool cond, const char* msg);

}  // namespace fractel
