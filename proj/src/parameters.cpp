#include "randcomplex/parameters.hpp"

#include <string>

#include "randcomplex/error.hpp"

namespace randcomplex {

ParameterVector::ParameterVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) fail(ErrorCode::InvalidArgument, "parameter vector must have length >= 1");
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0 && p_[i] <= 1.0)) {
      fail(ErrorCode::InvalidArgument,
           "p_" + std::to_string(i) + " = " + std::to_string(p_[i]) + " is outside [0, 1]");
    }
  }
}

LogProbability::LogProbability(double log_value) : value_(log_value) {
  if (!(log_value <= 0.0)) {
    fail(ErrorCode::InvalidArgument, "log-probability must be <= 0");
  }
}

LogProbability LogProbability::from_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidArgument, "probability outside [0, 1]");
  return p == 0.0 ? zero() : LogProbability(std::log(p));
}

LogProbability& LogProbability::times_power(double base, std::uint64_t exponent) {
  if (exponent == 0) return *this;
  if (base == 0.0) {
    value_ = -std::numeric_limits<double>::infinity();
  } else {
    value_ += static_cast<double>(exponent) * std::log(base);
  }
  return *this;
}

LogProbability& LogProbability::times_complement_power(double p, std::uint64_t exponent) {
  if (exponent == 0) return *this;
  if (p == 1.0) {
    value_ = -std::numeric_limits<double>::infinity();
  } else {
    value_ += static_cast<double>(exponent) * std::log1p(-p);
  }
  return *this;
}

}  // namespace randcomplex
