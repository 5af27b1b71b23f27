#include "rframes/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rframes/documents.hpp"
#include "rframes/kinematics.hpp"
#include "rframes/number_format.hpp"
#include "rframes/scenarios.hpp"
#include "rframes/wavepacket.hpp"

namespace rframes {
namespace {

using json = nlohmann::ordered_json;

constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

enum class Format { Csv, Json };

json number(double x) { return round_significant(x); }

json speed(const Speedd& s) {
  return s.is_infinite() ? json("inf") : number(s.value());
}

json vector3(const Eigen::Vector3d& v) {
  return json::array({number(v[0]), number(v[1]), number(v[2])});
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Format parse_format(const std::string& name, Format fallback) {
  if (name.empty()) return fallback;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw DomainError("format", "must be 'csv' or 'json'");
}

struct ComposeArgs {
  std::string u;
  double alpha_deg = 0;
  double v = 0;
  bool inverse = false;
};

std::string run_compose(const ComposeArgs& a, Format fmt) {
  const Speedd u = parse_speed(a.u, a.inverse ? "u_l" : "u_c");
  const Angled alpha = Angled::degrees(a.alpha_deg);
  const Boostd boost(a.v);

  InfluenceVectord result;
  SpecialCase sc;
  if (!a.inverse) {
    result = compose(InfluenceVectord{u, alpha, Frame::Center}, boost);
    sc = classify_special_case(alpha, boost, u);
  } else {
    result = compose_inverse(InfluenceVectord{u, alpha, Frame::Lab}, boost);
    sc = classify_special_case(result.angle, boost, result.speed);
  }

  const char* speed_key = a.inverse ? "u_center" : "u_lab";
  const char* angle_key = a.inverse ? "alpha_center_deg" : "alpha_lab_deg";
  if (fmt == Format::Csv) {
    return std::string(speed_key) + "_over_c," + angle_key + ",case\n" +
           format_speed(result.speed) + "," + format_real(result.angle.deg()) +
           "," + std::string(to_string(sc)) + "\n";
  }
  json j;
  j[speed_key] = speed(result.speed);
  j[angle_key] = number(result.angle.deg());
  j["case"] = to_string(sc);
  return dump(j);
}

struct SweepArgs {
  double v = 0;
  double alpha_min = 0;
  double alpha_max = 90;
  double alpha_step = 5;
  int count = 0;
};

std::string run_sweep(const SweepArgs& a, Format fmt) {
  const auto grid = a.count > 0
                        ? alpha_grid_degrees_count(a.alpha_min, a.alpha_max, a.count)
                        : alpha_grid_degrees(a.alpha_min, a.alpha_max, a.alpha_step);
  const PredictionCurve curve = predict_curve(a.v, grid);
  if (fmt == Format::Csv) {
    std::string out = "alpha_c_deg,alpha_lab_deg,u_lab_over_c\n";
    for (const auto& s : curve.samples)
      out += format_real(s.alpha_c.deg()) + "," + format_real(s.alpha_lab.deg()) +
             "," + format_speed(s.u_lab) + "\n";
    return out;
  }
  json rows = json::array();
  for (const auto& s : curve.samples)
    rows.push_back({{"alpha_c_deg", number(s.alpha_c.deg())},
                    {"alpha_lab_deg", number(s.alpha_lab.deg())},
                    {"u_lab_over_c", speed(s.u_lab)}});
  json j;
  j["v"] = number(curve.boost_v);
  j["samples"] = std::move(rows);
  return dump(j);
}

struct CenterArgs {
  std::vector<std::string> files;
  bool literal = false;
  double boundary_tol = 1e-6;
};

std::string run_center(const CenterArgs& a, Format fmt) {
  std::vector<EntangledPacketSystemd> snapshots;
  for (const auto& f : a.files)
    for (auto& s : load_snapshots(f)) snapshots.push_back(std::move(s));

  QuadratureOptions<double> opts;
  opts.normalize = !a.literal;
  opts.boundary_tol = a.boundary_tol;

  std::vector<CenterEstimate<double>> estimates;
  std::vector<double> tolerances;
  for (const auto& s : snapshots) {
    if (!(s.geometry() == snapshots.front().geometry()))
      throw GridInvariantError("congruence", "snapshots must share one grid geometry");
    estimates.push_back(center_position(s, opts));
    tolerances.push_back(quadrature_error_estimate(s, estimates.back(), opts));
  }
  std::optional<Eigen::Vector3d> velocity;
  if (estimates.size() >= 2) velocity = fit_velocity<double>(estimates);

  if (fmt == Format::Csv) {
    std::string out = "time_s,r_c_x_m,r_c_y_m,r_c_z_m,norm,tolerance_m\n";
    for (std::size_t n = 0; n < estimates.size(); ++n) {
      const auto& e = estimates[n];
      out += format_real(e.time) + "," + format_real(e.r_c[0]) + "," +
             format_real(e.r_c[1]) + "," + format_real(e.r_c[2]) + "," +
             format_real(e.norm) + "," + format_real(tolerances[n]) + "\n";
    }
    return out;
  }
  json snaps = json::array();
  for (std::size_t n = 0; n < estimates.size(); ++n) {
    const auto& e = estimates[n];
    snaps.push_back({{"time_s", number(e.time)},
                     {"r_c_m", vector3(e.r_c)},
                     {"norm", number(e.norm)},
                     {"tolerance_m", number(tolerances[n])}});
  }
  json j;
  j["normalized"] = !a.literal;
  j["snapshots"] = std::move(snaps);
  if (velocity) {
    j["velocity_m_per_s"] = vector3(*velocity);
    j["v_over_c"] = number(velocity->norm() / kSpeedOfLight);
  }
  return dump(j);
}

struct ScenarioArgs {
  bool builtin = false;
  std::vector<std::string> files;
  std::vector<std::string> overrides;  // name=v
};

std::pair<std::string, int> run_scenario(const ScenarioArgs& a, Format fmt) {
  std::vector<ExperimentScenario> scenarios;
  if (a.builtin) scenarios = builtin_scenarios();
  for (const auto& f : a.files)
    for (auto& s : load_scenarios(f)) scenarios.push_back(std::move(s));
  if (scenarios.empty())
    throw DomainError("scenarios", "no scenarios given (use --builtin or a file)");

  for (const auto& o : a.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw DomainError("boost-v", "expected NAME=VALUE, got '" + o + "'");
    const std::string name = o.substr(0, eq);
    auto it = std::find_if(scenarios.begin(), scenarios.end(),
                           [&](const auto& s) { return s.name == name; });
    if (it == scenarios.end())
      throw DomainError("boost-v", "no scenario named '" + name + "'");
    it->boost_v = parse_real(o.substr(eq + 1), "boost-v");
  }

  std::vector<CompatibilityVerdict> verdicts;
  for (const auto& s : scenarios) verdicts.push_back(check_compatibility(s));
  const bool any_incompatible =
      std::any_of(verdicts.begin(), verdicts.end(),
                  [](const auto& v) { return v.verdict == Verdict::Incompatible; });
  const int code = any_incompatible ? kExitIncompatible : kExitOk;

  if (fmt == Format::Csv) {
    std::string out = "scenario,verdict,predicted_u_lab_over_c,bound_over_c,case,"
                      "alpha_c_deg,boost_v\n";
    for (const auto& v : verdicts)
      out += v.scenario + "," + std::string(to_string(v.verdict)) + "," +
             (v.predicted_u_lab ? format_speed(*v.predicted_u_lab) : "") + "," +
             format_speed(v.bound) + "," + std::string(to_string(v.special_case)) +
             "," + (v.alpha_c ? format_real(v.alpha_c->deg()) : "") + "," +
             format_real(v.boost_v) + "\n";
    return {out, code};
  }
  json list = json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& v : verdicts) {
    ++counts[static_cast<int>(v.verdict)];
    json r;
    r["scenario"] = v.scenario;
    r["verdict"] = to_string(v.verdict);
    r["compatible"] = v.compatible;
    r["predicted_u_lab"] = v.predicted_u_lab ? speed(*v.predicted_u_lab) : json(nullptr);
    r["bound"] = speed(v.bound);
    r["case"] = to_string(v.special_case);
    r["alpha_c_deg"] = v.alpha_c ? number(v.alpha_c->deg()) : json(nullptr);
    r["boost_v"] = number(v.boost_v);
    r["boost_v_assumed"] = v.boost_v_assumed;
    r["notes"] = v.notes;
    list.push_back(std::move(r));
  }
  json j;
  j["verdicts"] = std::move(list);
  j["summary"] = {{"compatible", counts[0]},
                  {"incompatible", counts[1]},
                  {"inconclusive", counts[2]}};
  return {dump(j), code};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("output", "cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Center-frame simultaneity kinematics for entangled wavepackets",
               "reduction-frames"};
  app.require_subcommand(1);
  std::string format, output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json");
    sub->add_option("-o,--output", output, "write to file instead of stdout");
  };

  ComposeArgs compose_args;
  auto* compose = app.add_subcommand("compose", "transform one influence velocity");
  compose->add_option("--uc,--ul", compose_args.u, "speed in units of c, or 'inf'")
      ->required();
  compose->add_option("--alpha-c,--alpha-l", compose_args.alpha_deg,
                      "angle to the boost axis, degrees")
      ->required();
  compose->add_option("--v", compose_args.v, "boost velocity in units of c")
      ->required();
  compose->add_flag("--inverse", compose_args.inverse,
                    "input is a lab-frame vector; output the center-frame one");
  add_common(compose);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "tabulate u_L(alpha_L) for u_C = inf");
  sweep->add_option("--v", sweep_args.v, "boost velocity in units of c")->required();
  sweep->add_option("--alpha-min", sweep_args.alpha_min, "degrees");
  sweep->add_option("--alpha-max", sweep_args.alpha_max, "degrees");
  auto* step = sweep->add_option("--alpha-step", sweep_args.alpha_step, "degrees");
  sweep->add_option("--count", sweep_args.count, "number of evenly spaced angles")
      ->excludes(step);
  add_common(sweep);

  CenterArgs center_args;
  auto* center = app.add_subcommand("center", "center position and frame velocity");
  center->add_option("files", center_args.files, "fixture or grid documents")
      ->required();
  center->add_flag("--literal", center_args.literal,
                   "skip normalization by the integrated density");
  center->add_option("--boundary-tol", center_args.boundary_tol,
                     "boundary/peak amplitude ratio limit");
  add_common(center);

  ScenarioArgs scenario_args;
  auto* scenario = app.add_subcommand("scenario", "compatibility verdicts");
  scenario->add_flag("--builtin", scenario_args.builtin, "use the built-in presets");
  scenario->add_option("files", scenario_args.files, "scenario documents");
  scenario->add_option("--boost-v", scenario_args.overrides,
                       "override a scenario's boost: NAME=VALUE");
  add_common(scenario);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (compose->parsed()) {
      emit(run_compose(compose_args, parse_format(format, Format::Json)), output, out);
    } else if (sweep->parsed()) {
      emit(run_sweep(sweep_args, parse_format(format, Format::Csv)), output, out);
    } else if (center->parsed()) {
      emit(run_center(center_args, parse_format(format, Format::Json)), output, out);
    } else {
      auto [text, code] = run_scenario(scenario_args, parse_format(format, Format::Json));
      emit(text, output, out);
      return code;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace rframes
