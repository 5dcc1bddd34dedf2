#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/verdict.hpp"

namespace decmon {

// Fixed-capacity bitset over monitor states. Never empty in estimate roles.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int n_states)
      : n_(n_states), words_((n_states + 63) / 64, 0) {}
  static StateSet singleton(int n_states, int q) {
    StateSet s(n_states);
    s.insert(q);
    return s;
  }

  int capacity() const { return n_; }
  void insert(int q) { words_[q >> 6] |= (1ull << (q & 63)); }
  bool contains(int q) const { return (words_[q >> 6] >> (q & 63)) & 1; }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  int count() const;
  // If exactly one state is set, returns it.
  std::optional<int> sole_member() const;
  bool subset_of(const StateSet& other) const;
  std::vector<int> members() const;

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Deterministic, complete transition function over Event. Dense table when the
// event space is small, top-down rule list with optional catch-all otherwise.
class TransitionFn {
 public:
  static constexpr int kDenseMaxProps = 16;

  // Placeholder with no states; real tables come from the factories below.
  TransitionFn() = default;

  static TransitionFn dense(int n_states, int n_props);
  static TransitionFn sparse(int n_states, int n_props);

  int n_states() const { return n_states_; }
  int n_props() const { return n_props_; }
  bool is_dense() const { return dense_; }

  void set(int q, Event e, int target);           // dense only
  void add_rule(int q, Event e, int target);      // sparse only, top-down
  void set_catchall(int q, int target);           // sparse only
  // Redirect every outgoing edge of q to itself (definitive-state trap).
  void make_trap(int q);

  // -1 when no rule matches (sparse, incomplete). Dense is always complete
  // once every cell is set.
  int next(int q, Event e) const;

  // True when every (q, e) has a successor. Dense: checks for unset cells.
  bool complete(Event full_mask) const;

  // Distinct successor states of q (for reachability analyses).
  std::vector<int> successors(int q, Event full_mask) const;

 private:
  int n_states_ = 0;
  int n_props_ = 0;
  bool dense_ = true;
  std::vector<int> table_;  // dense: [q * 2^n_props + e]
  std::vector<std::vector<std::pair<Event, int>>> rules_;
  std::vector<int> catchall_;
};

// Finite-trace acceptor: deterministic complete automaton with accepting
// states. The language is the set of finite traces ending in an accepting
// state.
struct Acceptor {
  int n_props = 0;
  int n_states = 0;
  int init = 0;
  std::vector<bool> accepting;
  TransitionFn delta;
  std::vector<std::string> state_names;  // may be empty: q0..qN assumed

  std::string state_name(int q) const {
    return state_names.empty() ? "q" + std::to_string(q) : state_names.at(q);
  }
};

// Moore machine emitting a three-valued verdict per state; definitive states
// are traps.
struct Monitor {
  int n_props = 0;
  int n_states = 0;
  int init = 0;
  TransitionFn delta;
  std::vector<Verdict> verdicts;
  std::vector<std::string> state_names;

  std::string state_name(int q) const {
    return state_names.empty() ? "q" + std::to_string(q) : state_names.at(q);
  }
  int next(int q, Event e) const { return delta.next(q, e); }
  Verdict verdict(int q) const { return verdicts.at(q); }
};

struct MonitorError : std::runtime_error {
  explicit MonitorError(const std::string& what) : std::runtime_error(what) {}
};

struct RunResult {
  std::vector<Verdict> verdicts;  // verdict after each consumed event
  Verdict final_verdict = Verdict::Unknown;
  int final_state = 0;
  // Index of the first event after which the verdict is definitive; -1 if the
  // whole trace stays unknown.
  int first_definitive = -1;
};

// Feeds a trace through a monitor. Throws MonitorError if an event has
// propositions outside the monitor's alphabet width.
RunResult run(const Monitor& m, const std::vector<Event>& trace);

// Builds the verdict monitor of an acceptor: state q is Top when every
// extension from q is accepted, Bottom when none is, Unknown otherwise;
// definitive states become traps. The input acceptor must be complete.
Monitor monitor_from_acceptor(const Acceptor& a);

// Reference verdict for a finite prefix against the raw acceptor, computed by
// reachability analysis only. Kept deliberately independent of
// monitor_from_acceptor: shares no classification code with it.
Verdict good_bad_oracle(const Acceptor& a, const std::vector<Event>& prefix);

}  // namespace decmon
