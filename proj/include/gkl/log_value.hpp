#pragma once

// Signed values stored as (sign, log|value|). Kernel values underflow double
// precision long before they stop mattering in ratios, so everything that can
// get small is carried in this form.

#include <cmath>
#include <limits>
#include <span>

namespace gkl {

class LogValue {
 public:
  static constexpr double neg_inf = -std::numeric_limits<double>::infinity();

  constexpr LogValue() = default;

  static constexpr LogValue zero() { return LogValue{}; }

  static LogValue from_log(double log_magnitude, int sign = 1) {
    if (sign == 0 || log_magnitude == neg_inf) return LogValue{};
    LogValue v;
    v.log_magnitude_ = log_magnitude;
    v.sign_ = sign > 0 ? 1 : -1;
    return v;
  }

  static LogValue from_double(double x) {
    if (x == 0.0) return LogValue{};
    return from_log(std::log(std::abs(x)), x > 0 ? 1 : -1);
  }

  double log_magnitude() const { return log_magnitude_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }

  // exp(log_magnitude) with sign; underflows to 0 and overflows to inf.
  double value() const {
    return sign_ == 0 ? 0.0 : sign_ * std::exp(log_magnitude_);
  }

  LogValue abs() const { return from_log(log_magnitude_, sign_ == 0 ? 0 : 1); }
  LogValue operator-() const { return from_log(log_magnitude_, -sign_); }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return LogValue{};
    return from_log(a.log_magnitude_ + b.log_magnitude_, a.sign_ * b.sign_);
  }

  friend LogValue operator/(LogValue a, LogValue b) {
    if (a.is_zero()) return LogValue{};
    return from_log(a.log_magnitude_ - b.log_magnitude_, a.sign_ * b.sign_);
  }

  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.log_magnitude_ < b.log_magnitude_) std::swap(a, b);
    const double d = b.log_magnitude_ - a.log_magnitude_;  // <= 0
    if (a.sign_ == b.sign_) {
      return from_log(a.log_magnitude_ + std::log1p(std::exp(d)), a.sign_);
    }
    if (d == 0.0) return LogValue{};
    return from_log(a.log_magnitude_ + std::log1p(-std::exp(d)), a.sign_);
  }

  friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }

  LogValue& operator+=(LogValue b) { return *this = *this + b; }
  LogValue& operator*=(LogValue b) { return *this = *this * b; }

  // Magnitude comparisons only; sign is ignored.
  friend bool magnitude_less(LogValue a, LogValue b) {
    return a.log_magnitude_ < b.log_magnitude_;
  }

  friend bool operator==(const LogValue&, const LogValue&) = default;

 private:
  double log_magnitude_ = neg_inf;
  int sign_ = 0;
};

// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == LogValue::neg_inf) return a;
  return a + std::log1p(std::exp(b - a));
}

// Max-shifted signed accumulation of a batch of log-terms.
struct SignedLogSum {
  LogValue value;  // sum of signed terms
  LogValue abs;    // sum of magnitudes
};

inline SignedLogSum signed_log_sum(std::span<const double> log_terms,
                                   std::span<const int> signs) {
  double m = LogValue::neg_inf;
  for (std::size_t i = 0; i < log_terms.size(); ++i) {
    if (signs[i] != 0 && log_terms[i] > m) m = log_terms[i];
  }
  if (m == LogValue::neg_inf) return {};
  double pos = 0.0, neg = 0.0;
  for (std::size_t i = 0; i < log_terms.size(); ++i) {
    if (signs[i] > 0) {
      pos += std::exp(log_terms[i] - m);
    } else if (signs[i] < 0) {
      neg += std::exp(log_terms[i] - m);
    }
  }
  SignedLogSum out;
  out.abs = LogValue::from_log(m + std::log(pos + neg));
  const double diff = pos - neg;
  if (diff != 0.0) {
    out.value = LogValue::from_log(m + std::log(std::abs(diff)), diff > 0 ? 1 : -1);
  }
  return out;
}

}  // namespace gkl
