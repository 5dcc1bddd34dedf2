#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/decent.hpp"
#include "decmon/ltl.hpp"
#include "decmon/monitor.hpp"
#include "decmon/verdict.hpp"

namespace decmon {

// Everything the bit-cost model needs to size an encoding.
struct SizeModel {
  int n_props = 0;
  int n_states = 0;
  int n_components = 0;
};

SizeModel size_model(const Monitor& m, const DistributedAlphabet& alphabet);

// Bits for one event: log2 of the event-space size.
int event_bits(const SizeModel& model);
// Bits for one state id.
int state_bits(const SizeModel& model);
// Bits for one clock value; at least one bit, negative clocks clamp to 0.
int time_bits(int t);

// State part: state + clock. Memory part: per entry the event plus one bit
// per component for the source set, then the base clock.
long message_bits(const Message& msg, const SizeModel& model);

// Local monitor footprint: entries + current state + the two clocks.
long memory_bits(const LocalMemory& mem, int t, const SizeModel& model);

// Halt control message: one verdict bit plus the sender's clock.
long halt_message_bits(int t_last);

// Bits to ship a formula: one symbol id per token of the canonical rendering.
// The symbol space is the propositions plus the 17 operators/punctuators.
int formula_bits(const FormulaPtr& f, const DistributedAlphabet& alphabet);

// ---------------------------------------------------------------------------
// Run records and aggregation

struct RunRecord {
  std::string mode;  // "central" or "decent"
  std::string spec;  // spec/pattern name or "formula"
  int size = 0;      // formula size measure, 0 for explicit automata
  Verdict verdict = Verdict::Unknown;
  long n_msgs = 0;
  long msg_bits = 0;
  int trace_len = 0;  // events actually consumed
  int delay = -1;     // rounds past the centralized detection point; -1 if none
  long mem_bits = 0;  // peak footprint over monitors and rounds
};

struct AggregateRow {
  std::string mode, spec;
  int size = 0;
  int runs = 0;
  double n_msgs = 0, msg_bits = 0, trace_len = 0, mem_bits = 0;
  double delay = -1;  // mean over runs that had one; -1 when none did
  int verdict_top = 0, verdict_bot = 0, verdict_unknown = 0;
};

struct EmptyBatch : std::runtime_error {
  EmptyBatch() : std::runtime_error("no runs to aggregate") {}
};

// Groups by (mode, spec, size) in first-appearance order and averages.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs);

extern const char* kCsvHeader;

std::string to_csv(const std::vector<AggregateRow>& rows);
std::string to_csv_per_run(const std::vector<RunRecord>& runs);

}  // namespace decmon
