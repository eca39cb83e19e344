#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace randcomplex {

/// Multi-parameter (p_0, ..., p_r), each p_i in [0, 1]; q_i = 1 - p_i.
class ParameterVector {
 public:
  explicit ParameterVector(std::vector<double> p);
  ParameterVector(std::initializer_list<double> p)
      : ParameterVector(std::vector<double>(p)) {}

  /// Length minus one: the dimension cap this vector parameterises.
  int r() const noexcept { return static_cast<int>(p_.size()) - 1; }
  std::size_t size() const noexcept { return p_.size(); }
  double p(std::size_t i) const { return p_.at(i); }
  double q(std::size_t i) const { return 1.0 - p_.at(i); }
  double operator[](std::size_t i) const { return p_[i]; }
  /// omega = n * p_0.
  double omega(std::uint64_t n) const { return static_cast<double>(n) * p_.front(); }
  const std::vector<double>& values() const noexcept { return p_; }

  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

 private:
  std::vector<double> p_;
};

/// A probability held as its natural log; -inf encodes probability zero.
class LogProbability {
 public:
  constexpr LogProbability() = default;
  explicit LogProbability(double log_value);

  static constexpr LogProbability zero() {
    LogProbability z;
    z.value_ = -std::numeric_limits<double>::infinity();
    return z;
  }
  static constexpr LogProbability one() { return LogProbability(); }
  static LogProbability from_probability(double p);

  double log() const noexcept { return value_; }
  double probability() const noexcept { return std::exp(value_); }
  bool is_zero() const noexcept { return std::isinf(value_); }

  /// Accumulates base^exponent with 0^0 = 1.
  LogProbability& times_power(double base, std::uint64_t exponent);
  /// Same for (1 - p)^exponent, computed as log1p(-p) for accuracy.
  LogProbability& times_complement_power(double p, std::uint64_t exponent);

  friend LogProbability operator*(LogProbability a, LogProbability b) {
    a.value_ += b.value_;
    return a;
  }
  friend bool operator==(const LogProbability&, const LogProbability&) = default;

 private:
  double value_ = 0.0;
};

}  // namespace randcomplex
