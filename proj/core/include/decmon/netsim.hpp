#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/decent.hpp"
#include "decmon/monitor.hpp"

namespace decmon {

struct ConfigError : std::runtime_error {
  enum class Kind { Routing, Leaders, Period, Trace };
  Kind kind;
  ConfigError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

struct CommConfig {
  // choose[i] is the monitor that monitor i addresses (0-based). Must be a
  // permutation forming a single cycle over all monitors; a monitor addressing
  // itself (only possible when n == 1) sends nothing.
  std::vector<int> choose;
  std::vector<bool> leaders;  // leaders volunteer their observations
  int event_period = 1;       // a new event every this many rounds
  int comm_period = 1;        // monitors step every this many rounds
  int post_cap_factor = 10;   // after the trace: at most factor * n extra rounds
  bool count_halt = false;    // include halt control messages in the counters

  static CommConfig defaults(int n_components);
};

void validate_config(const CommConfig& cfg, int n_components);

struct SimOptions {
  bool log_rounds = false;
  // Re-derives ground truth each round and throws MonitorError on violations:
  // every exact prefix must match the real trace, every memory entry must
  // agree with the projection it claims to be.
  bool check_invariants = false;
};

struct ReturnEvent {
  int round;  // 0-based
  int monitor;
  Verdict verdict;
};

struct CapExceeded : std::runtime_error {
  int cap;
  explicit CapExceeded(int cap_rounds)
      : std::runtime_error("no verdict after " + std::to_string(cap_rounds) +
                           " rounds past the end of the trace"),
        cap(cap_rounds) {}
};

struct SimResult {
  std::vector<Verdict> verdicts;  // per monitor (adopted verdicts included)
  std::vector<ReturnEvent> returns;
  int first_return_round = -1;  // 0-based; -1 when no monitor returned
  long n_messages = 0;
  long message_bits = 0;
  long halt_messages = 0;
  long halt_bits = 0;
  long peak_memory_bits = 0;
  int rounds = 0;           // rounds executed (1-based count)
  int events_consumed = 0;  // global events ingested
  bool quiesced = false;    // ended on a silent round past the trace
  std::vector<std::string> log;
};

// Runs the decentralized protocol over per-component traces. Ends when every
// monitor halted, or at the first silent round past the end of the trace
// (nothing can change then), or with CapExceeded.
SimResult simulate(const Monitor& m, const DistributedAlphabet& alphabet,
                   const std::vector<std::vector<Event>>& locals, const CommConfig& cfg,
                   const SimOptions& opt = {});

struct CentralResult {
  Verdict verdict = Verdict::Unknown;
  // 0-based index of the event that made the verdict definitive; -1 when the
  // initial state already is, or when the whole trace stays unknown.
  int verdict_index = -1;
  long n_messages = 0;
  long message_bits = 0;
  long peak_memory_bits = 0;
  int events_consumed = 0;
};

// Baseline: every component reports its observation to a central monitor
// whenever it differs from the previous one (the first is always reported);
// each report carries a full event. Stops at the first definitive verdict.
CentralResult run_centralized(const Monitor& m, const DistributedAlphabet& alphabet,
                              const std::vector<std::vector<Event>>& locals);

// Rounds past the centralized detection point; both runs must be definitive.
// Meaningful at equal event and step rates.
int detection_delay(const SimResult& decent, const CentralResult& central);

}  // namespace decmon
