#pragma once

// Frame transformation of a hypothetical influence velocity between the
// center frame S_C of an entangled system and the lab frame S_L.
//
// Units: c = 1 throughout. The boost v is the signed lab-frame velocity of
// S_C along the boost axis; angles are measured from that axis.
//
// Angle convention: the lab angle is the direction of the lab velocity
// vector dx'/dt'. When the time ordering of the two events flips between
// frames (1 + u v cos(alpha) < 0, only possible for u > 1), that vector
// points opposite to the spatial displacement, so the angle is taken from
// atan2(perp, parallel) with both components carrying the sign of the
// denominator. This keeps forward and inverse composition mutually inverse
// over the whole domain.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rframes/errors.hpp"
#include "rframes/speed.hpp"

namespace rframes {

/// Tolerance for the exact-value conditions of the special-case taxonomy
/// (v = 0, |v| = 1, alpha = 0, cos(alpha) = 0).
inline constexpr double kCaseTolerance = 1e-12;

enum class Frame { Center, Lab };

enum class SpecialCase {
  DeBroglieWave,           // u_C = inf, alpha_C = 0: u_L = 1/v
  LightlikeBoost,          // |v| = 1: u_L = 1
  ZeroBoost,               // v = 0: u_L = u_C, alpha_L = alpha_C
  TransverseSimultaneity,  // u_C = inf, alpha_C = 90 deg: u_L = inf
  Generic,
};

constexpr std::string_view to_string(SpecialCase c) noexcept {
  switch (c) {
    case SpecialCase::DeBroglieWave: return "DE_BROGLIE_WAVE";
    case SpecialCase::LightlikeBoost: return "LIGHTLIKE_BOOST";
    case SpecialCase::ZeroBoost: return "ZERO_BOOST";
    case SpecialCase::TransverseSimultaneity: return "TRANSVERSE_SIMULTANEITY";
    case SpecialCase::Generic: return "GENERIC";
  }
  return "GENERIC";
}

constexpr std::string_view to_string(Frame f) noexcept {
  return f == Frame::Center ? "CENTER" : "LAB";
}

/// Signed relative velocity between S_C and S_L, |v| <= 1.
/// Composition additionally requires |v| < 1; v = +-1 is admitted only so
/// the classifier can report the lightlike case.
template <std::floating_point Scalar>
class Boost {
 public:
  constexpr Boost() = default;
  explicit Boost(Scalar v) : v_(v) {
    if (!std::isfinite(v) || std::abs(v) > Scalar(1))
      throw DomainError("v", "boost velocity must satisfy |v| <= 1");
  }

  constexpr Scalar v() const noexcept { return v_; }
  Boost reversed() const { return Boost(-v_); }
  // sqrt(1 - v^2) without cancellation near |v| = 1.
  Scalar inverse_gamma() const {
    return std::sqrt((Scalar(1) - v_) * (Scalar(1) + v_));
  }

 private:
  Scalar v_{0};
};

template <std::floating_point Scalar>
struct InfluenceVector {
  Speed<Scalar> speed;
  Angle<Scalar> angle;
  Frame frame{Frame::Center};
};

using Boostd = Boost<double>;
using InfluenceVectord = InfluenceVector<double>;

namespace detail {

template <typename Scalar>
void require_subluminal(const Boost<Scalar>& boost) {
  if (!(std::abs(boost.v()) < Scalar(1)))
    throw DomainError("v",
                      "composition requires |v| < 1 (formulas undefined for "
                      "v = c)");
}

template <typename Scalar>
void require_frame(const InfluenceVector<Scalar>& u, Frame expected) {
  if (u.frame != expected)
    throw DomainError("frame", "expected an influence vector tagged " +
                                   std::string(to_string(expected)));
}

// Core of the finite composition, frame tags excluded.
template <typename Scalar>
InfluenceVector<Scalar> transform_finite(Scalar u, Scalar alpha, Scalar v,
                                         Scalar g) {
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar c = std::cos(alpha);
  const Scalar s = std::sin(alpha);

  // Literal radicand u^2 + v^2 + 2 u v cos - (u v sin)^2; nonnegative for
  // |v| <= 1. Checked only, the magnitude uses the equivalent sum of squares.
  const Scalar uvs = u * v * s;
  const Scalar radicand = u * u + v * v + 2 * u * v * c - uvs * uvs;
  const Scalar scale = u * u + v * v + 2 * std::abs(u * v * c) + uvs * uvs;
  if (radicand < -64 * eps * scale)
    throw std::logic_error("negative composition radicand: " +
                           std::to_string(static_cast<double>(radicand)));

  const Scalar parallel = u * c + v;
  const Scalar perp = u * s * g;
  const Scalar denom = std::fma(u * v, c, Scalar(1));

  InfluenceVector<Scalar> out;
  if (std::abs(denom) <= 64 * eps * (1 + std::abs(u * v * c))) {
    // Simultaneous in the target frame; direction from the D -> 0+ limit.
    out.speed = Speed<Scalar>::infinite();
    out.angle = Angle<Scalar>::radians(std::atan2(perp, parallel));
    return out;
  }
  out.speed = Speed<Scalar>::finite(std::hypot(parallel, perp) /
                                    std::abs(denom));
  out.angle = Angle<Scalar>::radians(
      std::atan2(perp, denom < 0 ? -parallel : parallel));
  return out;
}

// u -> inf limit of transform_finite.
template <typename Scalar>
InfluenceVector<Scalar> transform_infinite(Scalar alpha, Scalar v, Scalar g,
                                           Scalar tol) {
  InfluenceVector<Scalar> out;
  out.speed = Speed<Scalar>::infinite();
  if (std::abs(v) <= tol) {
    out.angle = Angle<Scalar>::radians(alpha);
    return out;
  }
  const Scalar c = std::cos(alpha);
  if (std::abs(c) <= tol) {
    out.angle = Angle<Scalar>::radians(Angle<Scalar>::pi / 2);
    return out;
  }
  const Scalar s = std::sin(alpha);
  const Scalar vs = v * s;
  out.speed = Speed<Scalar>::finite(
      std::sqrt((Scalar(1) - vs) * (Scalar(1) + vs)) /
      (std::abs(v) * std::abs(c)));
  out.angle = Angle<Scalar>::radians(
      std::atan2(s * g, v > 0 ? std::abs(c) : -std::abs(c)));
  return out;
}

template <typename Scalar>
InfluenceVector<Scalar> transform(const InfluenceVector<Scalar>& u, Scalar v,
                                  Scalar g) {
  if (u.speed.is_infinite())
    return transform_infinite(u.angle.rad(), v, g, Scalar(kCaseTolerance));
  return transform_finite(u.speed.value(), u.angle.rad(), v, g);
}

}  // namespace detail

/// Literal radicand of the squared lab speed for a finite center-frame
/// speed. Exposed for property checks; composition never clamps it.
template <std::floating_point Scalar>
Scalar composition_radicand(Scalar u, const Angle<Scalar>& alpha, Scalar v) {
  const Scalar c = std::cos(alpha.rad());
  const Scalar uvs = u * v * std::sin(alpha.rad());
  return u * u + v * v + 2 * u * v * c - uvs * uvs;
}

/// Lab-frame image of a finite center-frame influence velocity.
///
/// Returns an infinite speed when the lab events become simultaneous
/// (1 + u v cos(alpha) = 0 up to rounding).
template <std::floating_point Scalar>
InfluenceVector<Scalar> compose_finite(const InfluenceVector<Scalar>& u,
                                       const Boost<Scalar>& boost) {
  detail::require_frame(u, Frame::Center);
  detail::require_subluminal(boost);
  if (u.speed.is_infinite())
    throw DomainError("u_c",
                      "finite composition needs a finite speed; use "
                      "compose_infinite");
  auto out = detail::transform_finite(u.speed.value(), u.angle.rad(),
                                      boost.v(), boost.inverse_gamma());
  out.frame = Frame::Lab;
  return out;
}

/// Lab-frame image of an influence that is instantaneous in S_C.
///
/// Speed is sqrt(1 - (v sin)^2) / |v cos|, always in [1, inf]. v = 0 and
/// cos(alpha) = 0 (within kCaseTolerance) give an infinite lab speed.
template <std::floating_point Scalar>
InfluenceVector<Scalar> compose_infinite(const Angle<Scalar>& alpha_c,
                                         const Boost<Scalar>& boost) {
  detail::require_subluminal(boost);
  auto out = detail::transform_infinite(alpha_c.rad(), boost.v(),
                                        boost.inverse_gamma(),
                                        Scalar(kCaseTolerance));
  out.frame = Frame::Lab;
  return out;
}

/// Dispatches to compose_finite or compose_infinite on the speed.
template <std::floating_point Scalar>
InfluenceVector<Scalar> compose(const InfluenceVector<Scalar>& u,
                                const Boost<Scalar>& boost) {
  if (u.speed.is_infinite()) {
    detail::require_frame(u, Frame::Center);
    return compose_infinite(u.angle, boost);
  }
  return compose_finite(u, boost);
}

/// Center-frame preimage of a lab-frame influence: the forward map with
/// the boost reversed.
template <std::floating_point Scalar>
InfluenceVector<Scalar> compose_inverse(const InfluenceVector<Scalar>& u_lab,
                                        const Boost<Scalar>& boost) {
  detail::require_frame(u_lab, Frame::Lab);
  detail::require_subluminal(boost);
  const Boost<Scalar> back = boost.reversed();
  auto out = detail::transform(u_lab, back.v(), back.inverse_gamma());
  out.frame = Frame::Center;
  return out;
}

/// Center-frame angle of a simultaneous influence observed at `alpha_lab`,
/// from tan(alpha_c) = tan(alpha_lab) / sqrt(1 - v^2), same quadrant as
/// alpha_lab. alpha_lab = 90 deg maps to exactly 90 deg.
template <std::floating_point Scalar>
Angle<Scalar> simultaneous_center_angle(const Angle<Scalar>& alpha_lab,
                                        const Boost<Scalar>& boost) {
  detail::require_subluminal(boost);
  const Scalar c = std::cos(alpha_lab.rad());
  if (std::abs(c) <= Scalar(kCaseTolerance))
    return Angle<Scalar>::radians(Angle<Scalar>::pi / 2);
  return Angle<Scalar>::radians(
      std::atan2(std::sin(alpha_lab.rad()), c * boost.inverse_gamma()));
}

/// Exactly one label per input. When several conditions hold the priority
/// is LightlikeBoost > ZeroBoost > DeBroglieWave > TransverseSimultaneity.
template <std::floating_point Scalar>
SpecialCase classify_special_case(const Angle<Scalar>& alpha_c,
                                  const Boost<Scalar>& boost,
                                  const Speed<Scalar>& u_c,
                                  Scalar tol = Scalar(kCaseTolerance)) {
  const Scalar av = std::abs(boost.v());
  if (std::abs(av - Scalar(1)) <= tol) return SpecialCase::LightlikeBoost;
  if (av <= tol) return SpecialCase::ZeroBoost;
  if (u_c.is_infinite()) {
    if (alpha_c.rad() <= tol) return SpecialCase::DeBroglieWave;
    if (std::abs(std::cos(alpha_c.rad())) <= tol)
      return SpecialCase::TransverseSimultaneity;
  }
  return SpecialCase::Generic;
}

}  // namespace rframes
