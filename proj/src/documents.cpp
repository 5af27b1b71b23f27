#include "rframes/documents.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "rframes/number_format.hpp"

namespace rframes {
namespace {

using text::Document;
using text::Section;

int parse_sign(const Section& s) {
  const auto& e = s.require("sign");
  if (e.value == "+1" || e.value == "1" || e.value == "+") return 1;
  if (e.value == "-1" || e.value == "-") return -1;
  s.fail(e, "sign must be +1 or -1");
}

Index3 parse_dims(const Section& s) {
  const auto v = s.numbers("dims");
  if (v.size() != 3) s.fail(s.require("dims"), "expected 3 integers");
  Index3 d;
  for (int i = 0; i < 3; ++i) {
    if (v[i] != std::floor(v[i]) || v[i] < 2 || v[i] > 4096)
      s.fail(s.require("dims"), "each dim must be an integer in [2, 4096]");
    d[i] = static_cast<Eigen::Index>(v[i]);
  }
  return d;
}

// DomainError / GridInvariantError from construction, reported at a line.
template <typename F>
auto at_line(int line, const std::string& where, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ParseError(line, where + ": " + e.what());
  } catch (const GridInvariantError& e) {
    throw ParseError(line, where + ": " + e.what());
  }
}

GaussianPacketd parse_packet(const Section& s, const std::string& prefix) {
  GaussianPacketd p;
  p.center = s.vector3(prefix + ".center");
  p.width = s.number(prefix + ".width");
  if (!(p.width > 0)) s.fail(s.require(prefix + ".width"), "width must be > 0");
  p.wavevector = s.optional_vector3(prefix + ".wavevector").value_or(Eigen::Vector3d::Zero());
  p.velocity = s.optional_vector3(prefix + ".velocity").value_or(Eigen::Vector3d::Zero());
  return p;
}

GaussianBranchd parse_branch(const Section& s) {
  s.restrict_keys({"weight", "psi1.center", "psi1.width", "psi1.wavevector",
                   "psi1.velocity", "psi2.center", "psi2.width",
                   "psi2.wavevector", "psi2.velocity"});
  GaussianBranchd b;
  b.weight = s.number("weight");
  if (!(b.weight >= 0)) s.fail(s.require("weight"), "weight must be >= 0");
  b.first = parse_packet(s, "psi1");
  b.second = parse_packet(s, "psi2");
  return b;
}

std::string shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace

std::vector<ExperimentScenario> parse_scenarios(const Document& doc) {
  for (const auto& s : doc.sections)
    if (s.name != "scenario")
      throw ParseError(s.line, "unexpected section " + s.title() +
                                   " in scenario file");
  std::vector<ExperimentScenario> out;
  for (const Section* s : doc.all("scenario")) {
    s->restrict_keys({"name", "boost_v", "alpha_lab_deg",
                      "measured_lower_bound", "source_ref"});
    ExperimentScenario sc;
    sc.name = s->require("name").value;
    if (auto v = s->string("boost_v"); v && *v != "unknown")
      sc.boost_v = s->number("boost_v");
    if (auto a = s->string("alpha_lab_deg"); a && *a != "unknown") {
      const double deg = s->number("alpha_lab_deg");
      sc.alpha_lab = at_line(s->require("alpha_lab_deg").line, s->title(),
                             [&] { return Angled::degrees(deg); });
    }
    const auto& bound = s->require("measured_lower_bound");
    sc.measured_lower_bound = at_line(bound.line, s->title(), [&] {
      return parse_speed(bound.value, "measured_lower_bound");
    });
    sc.source_ref = s->string("source_ref").value_or("");
    at_line(s->line, s->title(), [&] {
      sc.validate();
      return 0;
    });
    out.push_back(std::move(sc));
  }
  if (out.empty()) throw ParseError(0, "scenario file contains no [scenario] sections");
  return out;
}

std::vector<ExperimentScenario> load_scenarios(const std::string& path) {
  return parse_scenarios(text::parse_file(path));
}

FixtureDocument parse_fixture(const Document& doc) {
  for (auto name : {"grid", "system", "branch"}) doc.require_unique(name);
  for (const auto& s : doc.sections)
    if (s.name != "grid" && s.name != "system" && s.name != "branch")
      throw ParseError(s.line, "unexpected section " + s.title() + " in fixture");

  FixtureDocument fx;
  const Section& grid = doc.require("grid");
  grid.restrict_keys({"lower", "upper", "dims"});
  const Eigen::Vector3d lower = grid.vector3("lower");
  const Eigen::Vector3d upper = grid.vector3("upper");
  const Index3 dims = parse_dims(grid);
  fx.spec.grid = at_line(grid.line, grid.title(), [&] {
    return GridGeometryd::cell_centered(lower, upper, dims);
  });

  const Section& sys = doc.require("system");
  sys.restrict_keys({"sign", "time", "boundary_tol", "snapshots"});
  fx.spec.sign = parse_sign(sys);
  fx.spec.time = sys.optional_number("time").value_or(0.0);
  fx.spec.boundary_tol = sys.optional_number("boundary_tol").value_or(1e-6);
  if (sys.find("snapshots")) {
    fx.snapshot_times = sys.numbers("snapshots");
    if (fx.snapshot_times.empty())
      sys.fail(sys.require("snapshots"), "expected at least one time");
  } else {
    fx.snapshot_times = {fx.spec.time};
  }

  fx.spec.a = parse_branch(doc.require("branch", "a"));
  fx.spec.b = parse_branch(doc.require("branch", "b"));
  for (const Section* s : doc.all("branch"))
    if (s->label != "a" && s->label != "b")
      throw ParseError(s->line, "branch label must be 'a' or 'b'");
  return fx;
}

std::vector<EntangledPacketSystemd> realize(const FixtureDocument& fixture) {
  std::vector<EntangledPacketSystemd> out;
  out.reserve(fixture.snapshot_times.size());
  for (double t : fixture.snapshot_times) {
    GaussianPairSpecd spec = fixture.spec;
    spec.time = t;
    out.push_back(make_gaussian_pair(spec));
  }
  return out;
}

EntangledPacketSystemd parse_grid_document(const Document& doc) {
  for (auto name : {"grid", "system", "samples"}) doc.require_unique(name);
  const Section& grid = doc.require("grid");
  grid.restrict_keys({"origin", "spacing", "dims"});
  GridGeometryd g;
  g.origin = grid.vector3("origin");
  g.spacing = grid.vector3("spacing");
  g.dims = parse_dims(grid);
  at_line(grid.line, grid.title(), [&] {
    g.validate();
    return 0;
  });

  const Section& sys = doc.require("system");
  sys.restrict_keys({"sign", "time"});
  const int sign = parse_sign(sys);
  const double time = sys.optional_number("time").value_or(0.0);

  auto samples = [&](const char* label) {
    const Section& s = doc.require("samples", label);
    s.restrict_keys({}, true);
    if (static_cast<Eigen::Index>(s.rows.size()) != g.size())
      throw ParseError(s.line, s.title() + ": expected " + std::to_string(g.size()) +
                                   " rows, got " + std::to_string(s.rows.size()));
    AmplitudeGridd::Values v(g.size());
    for (std::size_t n = 0; n < s.rows.size(); ++n) {
      const auto& row = s.rows[n];
      std::istringstream parts(row.text);
      std::string re, im, extra;
      parts >> re >> im;
      if (re.empty() || im.empty() || (parts >> extra))
        throw ParseError(row.line, s.title() + ": expected 're im'");
      const auto value = at_line(row.line, s.title(), [&] {
        return std::complex<double>(parse_real(re, "re"), parse_real(im, "im"));
      });
      v[static_cast<Eigen::Index>(n)] = value;
    }
    return AmplitudeGridd(g, std::move(v));
  };
  auto p1a = samples("psi1_a");
  auto p2a = samples("psi2_a");
  auto p1b = samples("psi1_b");
  auto p2b = samples("psi2_b");
  return EntangledPacketSystemd(std::move(p1a), std::move(p2a), std::move(p1b),
                                std::move(p2b), sign, time);
}

std::string write_grid_document(const EntangledPacketSystemd& system) {
  const auto& g = system.geometry();
  std::ostringstream os;
  auto vec = [](const auto& v) {
    return shortest(double(v[0])) + " " + shortest(double(v[1])) + " " +
           shortest(double(v[2]));
  };
  os << "[grid]\n"
     << "origin = " << vec(g.origin) << "\n"
     << "spacing = " << vec(g.spacing) << "\n"
     << "dims = " << g.dims[0] << " " << g.dims[1] << " " << g.dims[2] << "\n\n"
     << "[system]\n"
     << "sign = " << (system.sign() > 0 ? "+1" : "-1") << "\n"
     << "time = " << shortest(system.time()) << "\n";
  auto dump = [&](const char* label, const AmplitudeGridd& grid) {
    os << "\n[samples " << label << "]\n";
    for (Eigen::Index n = 0; n < grid.values().size(); ++n)
      os << shortest(grid[n].real()) << " " << shortest(grid[n].imag()) << "\n";
  };
  dump("psi1_a", system.psi1_a());
  dump("psi2_a", system.psi2_a());
  dump("psi1_b", system.psi1_b());
  dump("psi2_b", system.psi2_b());
  return os.str();
}

std::vector<EntangledPacketSystemd> load_snapshots(const std::string& path) {
  const Document doc = text::parse_file(path);
  if (!doc.all("branch").empty()) return realize(parse_fixture(doc));
  if (!doc.all("samples").empty()) return {parse_grid_document(doc)};
  throw ParseError(0, "'" + path + "' is neither a fixture ([branch] sections) "
                      "nor a grid document ([samples] sections)");
}

}  // namespace rframes
