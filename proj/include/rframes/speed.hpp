#pragma once

#include <cmath>
#include <compare>
#include <concepts>
#include <limits>
#include <numbers>
#include <ostream>

#include "rframes/errors.hpp"

namespace rframes {

/// Nonnegative speed in units of c, extended with an exact infinity.
///
/// Infinity is a distinct state, not a large finite value: arithmetic that
/// would overflow to IEEE infinity never produces it implicitly except via
/// `Speed::finite(+inf)`, which is accepted and mapped to `infinite()`.
template <std::floating_point Scalar>
class Speed {
 public:
  constexpr Speed() = default;

  static Speed finite(Scalar value) {
    if (std::isnan(value)) throw DomainError("speed", "NaN is not a speed");
    if (value < Scalar(0))
      throw DomainError("speed", "must be >= 0 (got negative value)");
    if (std::isinf(value)) return infinite();
    Speed s;
    s.value_ = value;
    return s;
  }

  static constexpr Speed infinite() {
    Speed s;
    s.infinite_ = true;
    return s;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  // Finite magnitude; infinite speeds report IEEE +inf.
  constexpr Scalar value() const noexcept {
    return infinite_ ? std::numeric_limits<Scalar>::infinity() : value_;
  }

  friend constexpr bool operator==(const Speed& a, const Speed& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend constexpr std::strong_ordering operator<=>(const Speed& a,
                                                    const Speed& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Speed& s) {
    if (s.infinite_) return os << "inf";
    return os << s.value_;
  }

 private:
  Scalar value_{0};
  bool infinite_{false};
};

/// Angle to the boost axis in radians, confined to [0, pi].
template <std::floating_point Scalar>
class Angle {
 public:
  static constexpr Scalar pi = std::numbers::pi_v<Scalar>;

  constexpr Angle() = default;

  // Values within a few ulps outside [0, pi] are snapped to the boundary;
  // anything further out is rejected.
  static Angle radians(Scalar rad) {
    constexpr Scalar slack = 8 * std::numeric_limits<Scalar>::epsilon() * pi;
    if (!std::isfinite(rad) || rad < -slack || rad > pi + slack)
      throw DomainError("alpha", "angle must lie in [0, 180] degrees");
    Angle a;
    a.rad_ = rad < Scalar(0) ? Scalar(0) : (rad > pi ? pi : rad);
    return a;
  }

  static Angle degrees(Scalar deg) {
    if (deg == Scalar(90)) return radians(pi / 2);
    if (deg == Scalar(180)) return radians(pi);
    return radians(deg * (pi / Scalar(180)));
  }

  constexpr Scalar rad() const noexcept { return rad_; }
  constexpr Scalar deg() const noexcept {
    if (rad_ == pi / 2) return Scalar(90);
    if (rad_ == pi) return Scalar(180);
    return rad_ * (Scalar(180) / pi);
  }

  friend constexpr auto operator<=>(const Angle&, const Angle&) = default;

 private:
  Scalar rad_{0};
};

using Speedd = Speed<double>;
using Angled = Angle<double>;

}  // namespace rframes
