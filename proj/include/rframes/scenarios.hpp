#pragma once

// Two-receiver reduction experiments and the center-frame simultaneity test:
// predicted lab-frame influence speeds against measured lower bounds.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rframes/kinematics.hpp"

namespace rframes {

struct ExperimentScenario {
  std::string name;
  // Lab-frame velocity of the center frame in units of c. Unset means the
  // source does not give it; the verdict then evaluates v = 0 and says so.
  std::optional<double> boost_v;
  std::optional<Angled> alpha_lab;
  Speedd measured_lower_bound = Speedd::finite(1);
  std::string source_ref;

  /// Throws DomainError on |v| >= 1, an infinite bound, or a bound below c.
  void validate() const;
};

struct CurveSample {
  Angled alpha_c;
  Angled alpha_lab;
  Speedd u_lab;
};

struct PredictionCurve {
  double boost_v{0};
  std::vector<CurveSample> samples;  // strictly increasing in alpha_c
};

enum class Verdict { Compatible, Incompatible, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

struct CompatibilityVerdict {
  std::string scenario;
  Verdict verdict{Verdict::Inconclusive};
  bool compatible{false};
  std::optional<Speedd> predicted_u_lab;  // unset when inconclusive
  Speedd bound;
  SpecialCase special_case{SpecialCase::Generic};
  std::optional<Angled> alpha_c;  // inferred center-frame angle
  double boost_v{0};              // value actually evaluated
  bool boost_v_assumed{false};
  std::vector<std::string> notes;
};

/// Lab speed and angle of a center-frame-simultaneous influence for each
/// center angle in `alpha_grid` (which must be strictly increasing).
PredictionCurve predict_curve(double boost_v, std::span<const Angled> alpha_grid);

/// Inclusive grid min, min+step, ... up to max (max is kept when it lands
/// within 1e-9 step of a grid point). Degrees in, angles out.
std::vector<Angled> alpha_grid_degrees(double min_deg, double max_deg,
                                       double step_deg);

/// `count` evenly spaced angles from min to max inclusive.
std::vector<Angled> alpha_grid_degrees_count(double min_deg, double max_deg,
                                             int count);

/// Infers alpha_c from alpha_lab assuming simultaneity in S_C and compares
/// the predicted lab speed with the measured bound.
CompatibilityVerdict check_compatibility(const ExperimentScenario& scenario);

/// Presets for the four two-receiver experiments with moving or symmetric
/// receiver geometry. Only the v = 0 preset has a numeric boost; the others
/// leave boost_v unset.
std::vector<ExperimentScenario> builtin_scenarios();

}  // namespace rframes
