#include "rframes/scenarios.hpp"

#include <cmath>

#include "rframes/parallel.hpp"

namespace rframes {

void ExperimentScenario::validate() const {
  if (name.empty()) throw DomainError("name", "scenario name must not be empty");
  if (boost_v && !(std::abs(*boost_v) < 1))
    throw DomainError("boost_v", "scenario '" + name + "' needs |v| < 1");
  if (measured_lower_bound.is_infinite())
    throw DomainError("measured_lower_bound",
                      "scenario '" + name + "' bound must be finite");
  if (measured_lower_bound < Speedd::finite(1))
    throw DomainError("measured_lower_bound",
                      "scenario '" + name + "' bound must be >= 1 (units of c)");
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Compatible: return "compatible";
    case Verdict::Incompatible: return "incompatible";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PredictionCurve predict_curve(double boost_v, std::span<const Angled> alpha_grid) {
  const Boostd boost(boost_v);
  detail::require_subluminal(boost);
  for (std::size_t n = 1; n < alpha_grid.size(); ++n)
    if (!(alpha_grid[n - 1] < alpha_grid[n]))
      throw DomainError("alpha_grid", "angles must be strictly increasing");

  PredictionCurve curve;
  curve.boost_v = boost_v;
  curve.samples.resize(alpha_grid.size());
  parallel_for(alpha_grid.size(), [&](std::size_t n) {
    const auto lab = compose_infinite(alpha_grid[n], boost);
    curve.samples[n] = {alpha_grid[n], lab.angle, lab.speed};
  });
  return curve;
}

std::vector<Angled> alpha_grid_degrees(double min_deg, double max_deg,
                                       double step_deg) {
  if (!(step_deg > 0)) throw DomainError("alpha_step", "step must be > 0");
  if (!(min_deg >= 0) || !(max_deg <= 180))
    throw DomainError("alpha_range", "angles must lie in [0, 180] degrees");
  if (!(min_deg <= max_deg))
    throw DomainError("alpha_range", "alpha_min must not exceed alpha_max");
  const double span = (max_deg - min_deg) / step_deg;
  const auto steps = static_cast<long>(std::floor(span + 1e-9));
  if (steps > 10'000'000) throw DomainError("alpha_step", "grid too large");
  std::vector<Angled> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) {
    const double deg = i == steps && std::abs(span - double(steps)) < 1e-9
                           ? max_deg
                           : min_deg + double(i) * step_deg;
    grid.push_back(Angled::degrees(deg));
  }
  return grid;
}

std::vector<Angled> alpha_grid_degrees_count(double min_deg, double max_deg,
                                             int count) {
  if (count < 1) throw DomainError("alpha_count", "count must be >= 1");
  if (!(min_deg >= 0) || !(max_deg <= 180))
    throw DomainError("alpha_range", "angles must lie in [0, 180] degrees");
  if (count == 1 ? min_deg != max_deg : !(min_deg < max_deg))
    throw DomainError("alpha_range", "alpha_min must be below alpha_max");
  std::vector<Angled> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double deg = i == count - 1
                           ? max_deg
                           : min_deg + (max_deg - min_deg) * i / (count - 1);
    grid.push_back(Angled::degrees(deg));
  }
  return grid;
}

CompatibilityVerdict check_compatibility(const ExperimentScenario& scenario) {
  scenario.validate();
  CompatibilityVerdict out;
  out.scenario = scenario.name;
  out.bound = scenario.measured_lower_bound;
  out.boost_v = scenario.boost_v.value_or(0.0);
  out.boost_v_assumed = !scenario.boost_v;
  if (out.boost_v_assumed)
    out.notes.emplace_back("boost_v not given by the source; evaluated at v = 0");

  const Boostd boost(out.boost_v);
  const bool zero_boost = std::abs(out.boost_v) <= kCaseTolerance;

  if (!scenario.alpha_lab) {
    if (!zero_boost) {
      out.verdict = Verdict::Inconclusive;
      out.notes.emplace_back("alpha_lab unknown with nonzero boost_v");
      return out;
    }
    // Any center angle stays simultaneous in the lab when v = 0.
    out.predicted_u_lab = Speedd::infinite();
    out.special_case = SpecialCase::ZeroBoost;
    out.notes.emplace_back("alpha_lab unknown; v = 0 makes it irrelevant");
  } else {
    const Angled alpha_c = simultaneous_center_angle(*scenario.alpha_lab, boost);
    const auto lab = compose_infinite(alpha_c, boost);
    out.alpha_c = alpha_c;
    out.predicted_u_lab = lab.speed;
    out.special_case = classify_special_case(alpha_c, boost, Speedd::infinite());
    if (out.boost_v_assumed &&
        std::abs(std::cos(scenario.alpha_lab->rad())) <= kCaseTolerance) {
      // alpha_lab = 90 deg gives alpha_c = 90 deg and u_L = inf for every |v| < 1.
      out.special_case = SpecialCase::TransverseSimultaneity;
      out.notes.emplace_back("alpha_lab = 90 deg: verdict holds for every |v| < 1");
    }
    if (!zero_boost && std::abs(lab.angle.rad() - scenario.alpha_lab->rad()) > 1e-9)
      out.notes.emplace_back(
          "alpha_lab points against the boost; a center-frame simultaneous "
          "influence would arrive from the opposite side");
  }

  out.compatible = *out.predicted_u_lab >= out.bound;
  out.verdict = out.compatible ? Verdict::Compatible : Verdict::Incompatible;
  return out;
}

std::vector<ExperimentScenario> builtin_scenarios() {
  const Speedd bound = Speedd::finite(1e4);
  const Angled right = Angled::degrees(90);
  return {
      {"zbinden2001", std::nullopt, right, bound,
       "Zbinden et al., J. Phys. A 34, 7103 (2001); symmetric receivers"},
      {"salart2008", std::nullopt, right, bound,
       "Salart et al., Nature 454, 861 (2008); symmetric receivers"},
      {"cocciaro2011", 0.0, std::nullopt, bound,
       "Cocciaro et al., Phys. Lett. A 375, 379 (2011); v = 0"},
      {"yin2013", std::nullopt, right, bound,
       "Yin et al., Phys. Rev. Lett. 110, 260407 (2013); symmetric receivers"},
  };
}

}  // namespace rframes
