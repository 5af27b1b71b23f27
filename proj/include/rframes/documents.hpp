#pragma once

// Scenario, fixture and grid documents in the structured-text format
// (see text_format.hpp and docs/file-formats.md).

#include <string>
#include <vector>

#include "rframes/scenarios.hpp"
#include "rframes/text_format.hpp"
#include "rframes/wavepacket.hpp"

namespace rframes {

/// One ExperimentScenario per [scenario] section. An empty list is an error.
std::vector<ExperimentScenario> parse_scenarios(const text::Document& doc);
std::vector<ExperimentScenario> load_scenarios(const std::string& path);

struct FixtureDocument {
  GaussianPairSpecd spec;
  std::vector<double> snapshot_times;  // at least one entry
};

FixtureDocument parse_fixture(const text::Document& doc);

/// One sampled system per snapshot time.
std::vector<EntangledPacketSystemd> realize(const FixtureDocument& fixture);

/// Explicit amplitudes: [grid] origin/spacing/dims, [system] sign/time and
/// four [samples psiN_x] sections with one "re im" row per node, x fastest.
EntangledPacketSystemd parse_grid_document(const text::Document& doc);
std::string write_grid_document(const EntangledPacketSystemd& system);

/// Fixture or grid document, told apart by [branch] vs [samples] sections.
std::vector<EntangledPacketSystemd> load_snapshots(const std::string& path);

}  // namespace rframes
