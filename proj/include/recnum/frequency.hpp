#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

#include "recnum/integer.hpp"

namespace recnum {

/// A frequency in [0, 1): either an exact rational h/q or a real number.
///
/// Rational frequencies compute frac(h/q * k) by modular arithmetic, so the
/// phase stays exact even when k = G_n is far beyond double precision.
class Frequency {
 public:
  Frequency() = default;

  static Frequency rational(std::int64_t num, std::uint64_t den);
  static Frequency real(double value);
  /// Accepts "H/Q" or a decimal literal.
  static Frequency parse(std::string_view text);

  [[nodiscard]] bool is_rational() const { return den_ != 0; }
  [[nodiscard]] std::uint64_t numerator() const { return num_; }
  [[nodiscard]] std::uint64_t denominator() const { return den_; }
  [[nodiscard]] long double value() const;

  /// frac(value * k) in [0, 1).
  [[nodiscard]] long double times(Natural k) const;

  [[nodiscard]] std::string to_string() const;

  bool operator==(const Frequency&) const = default;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;  // 0 marks a real frequency
  long double real_ = 0.0L;
};

/// e(phase) = exp(2 pi i phase).
inline std::complex<double> unit_phase(long double phase) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> * phase;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

/// Fractional part in [0, 1).
inline long double frac(long double x) {
  long double f = x - std::floor(x);
  return f >= 1.0L ? 0.0L : f;
}

}  // namespace recnum
