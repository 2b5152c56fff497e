#pragma once

#include <compare>
#include <limits>
#include <stdexcept>

namespace miclust {

/// A quantity measured in bits (base-2 logarithms throughout the library).
///
/// Information measures (entropy, KL divergence, mutual information) are
/// non-negative; `measure` clamps floating-point dust in [-1e-12, 0) to
/// exactly 0 and rejects anything more negative. Linear combinations such
/// as the deterministic-IB objective may be negative and use the plain
/// constructor. KL divergence with a support violation is the distinguished
/// infinite value.
class Bits {
 public:
  constexpr Bits() = default;
  explicit constexpr Bits(double value) : value_(value) {}

  static Bits measure(double raw) {
    if (raw < 0.0) {
      if (raw < -kClampTol) {
        throw std::logic_error("Bits::measure: information measure below -1e-12");
      }
      raw = 0.0;
    }
    return Bits(raw);
  }

  static constexpr Bits infinity() {
    return Bits(std::numeric_limits<double>::infinity());
  }

  [[nodiscard]] constexpr double value() const { return value_; }
  [[nodiscard]] constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<double>::infinity();
  }

  friend constexpr auto operator<=>(Bits, Bits) = default;

  friend constexpr Bits operator+(Bits a, Bits b) { return Bits(a.value_ + b.value_); }
  friend constexpr Bits operator-(Bits a, Bits b) { return Bits(a.value_ - b.value_); }
  friend constexpr Bits operator*(double s, Bits b) { return Bits(s * b.value_); }

 private:
  static constexpr double kClampTol = 1e-12;

  double value_ = 0.0;
};

}  // namespace miclust
