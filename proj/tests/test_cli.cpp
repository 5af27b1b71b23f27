#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rframes/cli.hpp"
#include "rframes/number_format.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rframes::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return RFRAMES_TEST_DATA "/" + name; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("compose") {
  auto a = run({"compose", "--uc", "inf", "--alpha-c", "0", "--v", "0.5"});
  REQUIRE(a.code == 0);
  auto j = json::parse(a.out);
  CHECK(j["u_lab"] == 2.0);
  CHECK(j["alpha_lab_deg"] == 0.0);
  CHECK(j["case"] == "DE_BROGLIE_WAVE");
  CHECK(a.out.find("\"u_lab\": 2.0") != std::string::npos);

  j = json::parse(run({"compose", "--uc", "inf", "--alpha-c", "90", "--v", "0.5"}).out);
  CHECK(j["u_lab"] == "inf");
  CHECK(j["case"] == "TRANSVERSE_SIMULTANEITY");

  j = json::parse(run({"compose", "--uc", "1", "--alpha-c", "0", "--v", "0.5"}).out);
  CHECK(j["u_lab"] == 1.0);

  j = json::parse(run({"compose", "--ul", "2", "--alpha-l", "0", "--v", "0.5", "--inverse"}).out);
  CHECK(j["u_center"] == "inf");
  CHECK(j["alpha_center_deg"] == 0.0);
  CHECK(j["case"] == "DE_BROGLIE_WAVE");

  const auto csv = run({"compose", "--uc", "2", "--alpha-c", "60", "--v", "0.6", "--format", "csv"});
  CHECK(csv.out == "u_lab_over_c,alpha_lab_deg,case\n1.32287565553,40.8933946491,GENERIC\n");
}

TEST_CASE("compose: input errors exit 2 with a one-line message") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"compose", "--uc", "inf", "--alpha-c", "10", "--v", "1"},
           {"compose", "--uc", "-2", "--alpha-c", "10", "--v", "0.1"},
           {"compose", "--uc", "2", "--alpha-c", "190", "--v", "0.1"},
           {"compose", "--uc", "abc", "--alpha-c", "10", "--v", "0.1"},
           {"compose", "--alpha-c", "10", "--v", "0.1"},
           {"compose", "--uc", "2", "--alpha-c", "10", "--v", "0.1", "--format", "xml"},
           {"frobnicate"},
       }) {
    const auto r = run(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
  CHECK(run({"compose", "--uc", "inf", "--alpha-c", "10", "--v", "1"}).err.find("v:") !=
        std::string::npos);
}

TEST_CASE("sweep") {
  SUBCASE("zero boost: every speed is inf") {
    const auto r = run({"sweep", "--v", "0", "--alpha-step", "10"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"alpha_c_deg", "alpha_lab_deg", "u_lab_over_c"});
    CHECK(rows.size() == 11);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] == "inf");
  }
  SUBCASE("collinear row and the 45 deg row") {
    auto rows = csv_rows(run({"sweep", "--v", "0.5"}).out);
    CHECK(rows[1] == std::vector<std::string>{"0", "0", "2.0"});
    rows = csv_rows(run({"sweep", "--v", "0.6", "--alpha-min", "45", "--alpha-max", "45"}).out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "45");
    CHECK(rframes::parse_real(rows[1][1], "a") == doctest::Approx(38.659808254090091186));
    CHECK(rframes::parse_real(rows[1][2], "u") == doctest::Approx(2.1343747458109496585));
  }
  SUBCASE("rows sorted by alpha_c; count option; json") {
    const auto rows = csv_rows(run({"sweep", "--v", "-0.4", "--alpha-max", "180", "--count", "37"}).out);
    REQUIRE(rows.size() == 38);
    for (std::size_t i = 2; i < rows.size(); ++i)
      CHECK(rframes::parse_real(rows[i][0], "a") > rframes::parse_real(rows[i - 1][0], "a"));
    const auto j = json::parse(run({"sweep", "--v", "0.5", "--format", "json"}).out);
    CHECK(j["samples"][0]["u_lab_over_c"] == 2.0);
    CHECK(j["samples"].back()["u_lab_over_c"] == "inf");
  }
  SUBCASE("bad ranges") {
    CHECK(run({"sweep", "--v", "0.5", "--alpha-step", "0"}).code == 2);
    CHECK(run({"sweep", "--v", "0.5", "--alpha-min", "50", "--alpha-max", "10"}).code == 2);
    CHECK(run({"sweep", "--v", "0.5", "--alpha-max", "270"}).code == 2);
    CHECK(run({"sweep", "--v", "1.2"}).code == 2);
    CHECK(run({"sweep", "--v", "0.5", "--count", "5", "--alpha-step", "2"}).code == 2);
  }
}

TEST_CASE("center") {
  SUBCASE("symmetric fixture") {
    const auto r = run({"center", data("symmetric.fixture")});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    const auto& s = j["snapshots"][0];
    const double tol = std::max(s["tolerance_m"].get<double>(), 1e-9);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s["r_c_m"][i].get<double>()) <= tol);
    CHECK_FALSE(j.contains("velocity_m_per_s"));
  }
  SUBCASE("single branch at (3,0,0)") {
    const auto j = json::parse(run({"center", data("single_branch.fixture")}).out);
    CHECK(j["snapshots"][0]["r_c_m"][0] == 3.0);
    CHECK(std::abs(j["snapshots"][0]["r_c_m"][1].get<double>()) < 1e-12);
  }
  SUBCASE("weighted two-branch fixture") {
    const auto j = json::parse(run({"center", data("weighted.fixture")}).out);
    CHECK(j["snapshots"][0]["r_c_m"][0].get<double>() == doctest::Approx(1.4).epsilon(1e-10));
    CHECK(j["snapshots"][0]["norm"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("literal mode") {
    const auto j = json::parse(run({"center", "--literal", data("weighted.fixture")}).out);
    CHECK(j["normalized"] == false);
    CHECK(j["snapshots"][0]["r_c_m"][0].get<double>() == doctest::Approx(0.7).epsilon(1e-9));
  }
  SUBCASE("snapshots give a frame velocity") {
    const auto j = json::parse(run({"center", data("drift.fixture")}).out);
    CHECK(j["snapshots"].size() == 3);
    CHECK(j["velocity_m_per_s"][0].get<double>() == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(j["v_over_c"].get<double>() == doctest::Approx(3.0 / 299792458.0).epsilon(1e-8));
  }
  SUBCASE("grid-invariant violations exit 2 and name the invariant") {
    const auto r = run({"center", data("too_small.fixture")});
    CHECK(r.code == 2);
    CHECK(r.err.find("boundary_decay") != std::string::npos);
    CHECK(run({"center", data("missing.fixture")}).code == 2);
    CHECK(run({"center", data("incompatible.scenarios")}).code == 2);
  }
  SUBCASE("csv") {
    const auto rows = csv_rows(run({"center", "--format", "csv", data("single_branch.fixture")}).out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][1] == "3");
  }
}

TEST_CASE("scenario") {
  SUBCASE("builtin presets are all compatible") {
    const auto r = run({"scenario", "--builtin"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j["verdicts"].size() == 4);
    for (const auto& v : j["verdicts"]) {
      CHECK(v["verdict"] == "compatible");
      CHECK(v["predicted_u_lab"] == "inf");
      CHECK(v["bound"] == 10000.0);
    }
    CHECK(j["verdicts"][2]["boost_v"] == 0.0);
  }
  SUBCASE("collinear file is incompatible, exit 1") {
    const auto r = run({"scenario", data("incompatible.scenarios")});
    CHECK(r.code == 1);
    const auto j = json::parse(r.out);
    CHECK(j["verdicts"][0]["verdict"] == "incompatible");
    CHECK(j["verdicts"][0]["predicted_u_lab"] == 2.0);
  }
  SUBCASE("inconclusive does not fail the run") {
    const auto r = run({"scenario", data("mixed.scenarios")});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["summary"]["compatible"] == 1);
    CHECK(j["summary"]["inconclusive"] == 1);
    CHECK(j["verdicts"][1]["predicted_u_lab"].is_null());
  }
  SUBCASE("boost override") {
    const auto j = json::parse(run({"scenario", "--builtin", "--boost-v", "yin2013=0.4"}).out);
    CHECK(j["verdicts"][3]["boost_v"] == 0.4);
    CHECK(j["verdicts"][3]["boost_v_assumed"] == false);
    CHECK(run({"scenario", "--builtin", "--boost-v", "nobody=0.4"}).code == 2);
    CHECK(run({"scenario", "--builtin", "--boost-v", "yin2013=1.4"}).code == 2);
  }
  SUBCASE("input errors exit 2") {
    CHECK(run({"scenario", data("empty.scenarios")}).code == 2);
    CHECK(run({"scenario"}).code == 2);
    const auto r = run({"scenario", data("malformed.scenarios")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 4") != std::string::npos);
    CHECK(r.err.find("alpha_lab_deg") != std::string::npos);
  }
  SUBCASE("csv") {
    const auto rows = csv_rows(run({"scenario", "--builtin", "--format", "csv"}).out);
    CHECK(rows.size() == 5);
    CHECK(rows[1][1] == "compatible");
  }
}

TEST_CASE("determinism: outputs identical across runs and worker counts") {
  const std::vector<std::string> args{"center", data("drift.fixture")};
  const auto first = run(args);
  setenv("REDUCTION_FRAMES_THREADS", "3", 1);
  const auto second = run(args);
  setenv("REDUCTION_FRAMES_THREADS", "1", 1);
  const auto third = run(args);
  unsetenv("REDUCTION_FRAMES_THREADS");
  CHECK(first.out == second.out);
  CHECK(first.out == third.out);
}

TEST_CASE("round trip: printed numbers parse back to themselves") {
  const auto out = run({"sweep", "--v", "0.37", "--alpha-step", "7.5", "--alpha-max", "180"}).out;
  const auto rows = csv_rows(out);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (const auto& cell : rows[i]) {
      if (cell == "inf") continue;
      CHECK(rframes::format_real(rframes::parse_real(cell, "c")) ==
            (cell.size() > 2 && cell.substr(cell.size() - 2) == ".0"
                 ? cell.substr(0, cell.size() - 2)
                 : cell));
    }
  const auto j = json::parse(run({"center", data("weighted.fixture")}).out);
  CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("output file") {
  const std::string path = "test_cli_output.csv";
  CHECK(run({"sweep", "--v", "0.5", "-o", path}).out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "alpha_c_deg,alpha_lab_deg,u_lab_over_c");
  std::remove(path.c_str());
}

TEST_CASE("help") { CHECK(run({"--help"}).code == 0); }
