#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/monitor.hpp"

namespace decmon {

// One remembered observation: the union of what the listed components saw at
// some instant. Invariant: event ⊆ observed(sources).
struct MemoryEntry {
  Event event = 0;
  ComponentSet sources = 0;
};

inline bool operator==(const MemoryEntry& a, const MemoryEntry& b) {
  return a.event == b.event && a.sources == b.sources;
}

// Observation memory: instant -> entry, ordered by instant.
using LocalMemory = std::map<int, MemoryEntry>;

// Pointwise join: events union, source sets union.
MemoryEntry join(const MemoryEntry& a, const MemoryEntry& b);
LocalMemory merge_memory(const LocalMemory& a, const LocalMemory& b);

// All states reachable from `estimate` by one global event compatible with the
// partial observation `sigma` as seen by `sources`. Pre: estimate and sources
// non-empty, sigma ⊆ observed(sources). Never returns an empty set.
StateSet delta_d(const Monitor& m, const DistributedAlphabet& alphabet,
                 const StateSet& estimate, ComponentSet sources, Event sigma);

// Unanimous verdict of an estimate; mixed estimates are Unknown.
Verdict verdict_d(const Monitor& m, const StateSet& estimate);

struct Message {
  struct StatePart {
    int state;
    int t_new;  // instants covered by the sender's verified prefix
  };
  struct MemoryPart {
    int base;  // instant of the first entry
    std::vector<MemoryEntry> entries;
  };
  std::optional<StatePart> state;
  std::optional<MemoryPart> memory;
  bool empty() const { return !state && !memory; }
};

// One local monitor attached to a component.
struct LocalMonitor {
  int index = 0;  // 0-based component id
  bool leader = false;
  int q = 0;       // last state known to be exact
  int t_last = 0;  // instants covered by the exact prefix ending in q
  int t = -1;      // instant of the latest local observation
  LocalMemory mem;
  bool rcv_state = false;  // heard a state report since the last step
  bool rcv_mem = false;    // heard observations since the last step
  bool halted = false;
  Verdict verdict_out = Verdict::Unknown;
};

LocalMonitor make_local_monitor(int index, bool leader, const Monitor& m);

// Records a fresh local observation: advances t and joins (event, {index})
// into memory (an earlier relayed entry for the same instant may exist).
void ingest_event(LocalMonitor& mon, Event event);

// Applies a received message.
//  - A state part strictly ahead of t_last is adopted. A stale one is dropped,
//    but when it comes from a leader, a non-leader receiver still marks
//    rcv_state so the relay chain behind the leader keeps moving.
//  - A memory part joins in pointwise.
//  - A memory part, or any message from a leader, licenses discarding entries
//    below t_last.
void ingest_message(LocalMonitor& mon, const Message& msg, bool sender_is_leader);

struct StepResult {
  enum class Action { Idle, Send, Return };
  Action action = Action::Idle;
  Message message;           // when Send
  Verdict verdict = Verdict::Unknown;  // when Return
  StateSet estimate;         // estimate the verdict was taken on
  bool updated = false;      // t_last advanced this step
  // State right after the estimate fold (and, on Return, the final discard),
  // before the outgoing message is built and receive-flags reset.
  int snap_t_last = 0, snap_t = -1, snap_q = 0;
  LocalMemory snap_mem;
};

// One monitoring step: fold memory from t_last forward, advancing the exact
// prefix whenever the estimate collapses to a single state (stopping at a
// definitive state); then either return a definitive verdict or build an
// outgoing message. Leaders discard entries below t_last at both step
// boundaries; non-leaders keep them until a message licenses the discard.
StepResult step(LocalMonitor& mon, const Monitor& m, const DistributedAlphabet& alphabet);

// Table-style renderings, UTF-8: "(∅,{3})", "{2 ↦ ({a,b},{1,2})}", "(q0,1)",
// "(q0,2),(({a},{1}),2)".
std::string render_entry(const MemoryEntry& e, const DistributedAlphabet& alphabet);
std::string render_memory(const LocalMemory& mem, const DistributedAlphabet& alphabet);
std::string render_message(const Message& msg, const Monitor& m,
                           const DistributedAlphabet& alphabet);

struct MessageParseError : std::runtime_error {
  explicit MessageParseError(const std::string& what) : std::runtime_error(what) {}
};

// Inverse of render_message for canonical output.
Message parse_message(const std::string& text, const Monitor& m,
                      const DistributedAlphabet& alphabet);

}  // namespace decmon
