#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/monitor.hpp"

namespace decmon {

struct LoadError : std::runtime_error {
  int line;  // 1-based, 0 when not tied to a line
  LoadError(int line_no, const std::string& what)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what
                                       : what),
        line(line_no) {}
};

// A parsed automaton description: the proposition partition plus the acceptor.
struct SpecFile {
  std::string name;  // stem of the file name, or "spec" for streams
  DistributedAlphabet alphabet;
  Acceptor acceptor;
};

// Text format, one directive per line ('#' starts a comment):
//
//   aps: a b c
//   components: a | b c | d
//   states: q0 q1
//   init: q0
//   accept: q1
//   trans: q0 {a,b} -> q1
//   trans: q0 * -> q0
//
// Transition rules match top-down; '*' is a catch-all. Every state must cover
// every event (possibly via '*'), otherwise loading fails.
SpecFile load_spec(std::istream& in, const std::string& name = "spec");
SpecFile load_spec_file(const std::string& path);

std::string render_spec(const SpecFile& s);

// Trace files: one instant per line, component observations separated by '|',
// '-' for "nothing observed", otherwise comma-separated proposition names
// belonging to that component. Returns per-component traces, all of equal
// length: result[i][t] is component i's observation at instant t.
std::vector<std::vector<Event>> read_trace(std::istream& in,
                                           const DistributedAlphabet& alphabet);
std::vector<std::vector<Event>> read_trace_file(const std::string& path,
                                                const DistributedAlphabet& alphabet);

std::string render_trace(const DistributedAlphabet& alphabet,
                         const std::vector<std::vector<Event>>& locals);

// Recombines per-component observations into global events.
std::vector<Event> merge_locals(const DistributedAlphabet& alphabet,
                                const std::vector<std::vector<Event>>& locals);

// Splits a global trace into per-component projections.
std::vector<std::vector<Event>> project_trace(const DistributedAlphabet& alphabet,
                                              const std::vector<Event>& global);

}  // namespace decmon
