#pragma once

#include <optional>
#include <string>

#include "decmon/netsim.hpp"
#include "decmon/specfile.hpp"

namespace decmon {

// Reference scenario: three components observing {a}, {b}, {c}; the property
// holds on traces where a, b and c are ever all observed at the same instant;
// monitor 1 leads; messages travel the cycle 1 -> 2 -> 3 -> 1; the trace is
// four instants long and makes the verdict definitive.
SpecFile golden_spec();
std::vector<std::vector<Event>> golden_trace();
CommConfig golden_config();

// The round transcript the current engine produces for the scenario.
std::string golden_transcript();

// The frozen reference transcript shipped with the binary.
const std::string& golden_fixture();

struct GoldenDiff {
  int line_no;  // 1-based line in the fixture
  std::string expected, actual;
};

// Replays the scenario and compares against a fixture text line by line.
std::optional<GoldenDiff> golden_check(const std::string& fixture_text);

}  // namespace decmon
