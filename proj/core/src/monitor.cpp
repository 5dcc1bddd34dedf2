#include "decmon/monitor.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace decmon {

int StateSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::optional<int> StateSet::sole_member() const {
  int found = -1;
  for (size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    if (!w) continue;
    if (found != -1 || std::popcount(w) != 1) return std::nullopt;
    found = static_cast<int>(i) * 64 + std::countr_zero(w);
  }
  if (found == -1) return std::nullopt;
  return found;
}

bool StateSet::subset_of(const StateSet& other) const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<int> StateSet::members() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if (contains(q)) out.push_back(q);
  return out;
}

TransitionFn TransitionFn::dense(int n_states, int n_props) {
  if (n_props > kDenseMaxProps)
    throw MonitorError("dense transition table over " + std::to_string(n_props) +
                       " propositions");
  TransitionFn f;
  f.n_states_ = n_states;
  f.n_props_ = n_props;
  f.dense_ = true;
  f.table_.assign(static_cast<size_t>(n_states) << n_props, -1);
  return f;
}

TransitionFn TransitionFn::sparse(int n_states, int n_props) {
  TransitionFn f;
  f.n_states_ = n_states;
  f.n_props_ = n_props;
  f.dense_ = false;
  f.rules_.resize(n_states);
  f.catchall_.assign(n_states, -1);
  return f;
}

void TransitionFn::set(int q, Event e, int target) {
  table_[(static_cast<size_t>(q) << n_props_) + e] = target;
}

void TransitionFn::add_rule(int q, Event e, int target) {
  rules_[q].emplace_back(e, target);
}

void TransitionFn::set_catchall(int q, int target) { catchall_[q] = target; }

void TransitionFn::make_trap(int q) {
  if (dense_) {
    size_t base = static_cast<size_t>(q) << n_props_;
    std::fill(table_.begin() + base, table_.begin() + base + (1u << n_props_), q);
  } else {
    rules_[q].clear();
    catchall_[q] = q;
  }
}

int TransitionFn::next(int q, Event e) const {
  if (dense_) return table_[(static_cast<size_t>(q) << n_props_) + e];
  for (const auto& [ev, target] : rules_[q])
    if (ev == e) return target;
  return catchall_[q];
}

bool TransitionFn::complete(Event full_mask) const {
  if (dense_) {
    for (int q = 0; q < n_states_; ++q)
      for (Event e = 0;; ++e) {
        if (table_[(static_cast<size_t>(q) << n_props_) + e] < 0) return false;
        if (e == full_mask) break;
      }
    return true;
  }
  for (int q = 0; q < n_states_; ++q) {
    if (catchall_[q] >= 0) continue;
    // No catch-all: every event must be matched by an explicit rule.
    Event covered_count = 0;
    std::vector<bool> seen(static_cast<size_t>(full_mask) + 1, false);
    for (const auto& [ev, target] : rules_[q]) {
      (void)target;
      if (ev <= full_mask && !seen[ev]) {
        seen[ev] = true;
        ++covered_count;
      }
    }
    if (covered_count != full_mask + 1) return false;
  }
  return true;
}

std::vector<int> TransitionFn::successors(int q, Event full_mask) const {
  std::vector<int> out;
  auto push = [&out](int t) {
    if (t >= 0 && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  if (dense_) {
    for (Event e = 0;; ++e) {
      push(table_[(static_cast<size_t>(q) << n_props_) + e]);
      if (e == full_mask) break;
    }
  } else {
    for (const auto& [ev, target] : rules_[q]) {
      (void)ev;
      push(target);
    }
    push(catchall_[q]);
  }
  return out;
}

RunResult run(const Monitor& m, const std::vector<Event>& trace) {
  Event full = m.n_props == 0 ? 0 : static_cast<Event>((1u << m.n_props) - 1);
  RunResult r;
  r.final_state = m.init;
  r.verdicts.reserve(trace.size());
  for (size_t i = 0; i < trace.size(); ++i) {
    if (trace[i] & ~full)
      throw MonitorError("event at index " + std::to_string(i) +
                         " uses propositions outside the alphabet");
    r.final_state = m.next(r.final_state, trace[i]);
    Verdict v = m.verdict(r.final_state);
    r.verdicts.push_back(v);
    if (r.first_definitive < 0 && definitive(v)) r.first_definitive = static_cast<int>(i);
  }
  r.final_verdict = trace.empty() ? m.verdict(m.init) : r.verdicts.back();
  return r;
}

namespace {

// Reachable-state closure from q (inclusive).
std::vector<int> reachable_from(const TransitionFn& delta, int q, Event full_mask) {
  std::vector<bool> seen(delta.n_states(), false);
  std::deque<int> work{q};
  seen[q] = true;
  std::vector<int> out;
  while (!work.empty()) {
    int cur = work.front();
    work.pop_front();
    out.push_back(cur);
    for (int nxt : delta.successors(cur, full_mask))
      if (!seen[nxt]) {
        seen[nxt] = true;
        work.push_back(nxt);
      }
  }
  return out;
}

}  // namespace

Monitor monitor_from_acceptor(const Acceptor& a) {
  Event full = a.n_props == 0 ? 0 : static_cast<Event>((1u << a.n_props) - 1);
  if (!a.delta.complete(full))
    throw MonitorError("acceptor transition function is not complete");

  Monitor m;
  m.n_props = a.n_props;
  m.n_states = a.n_states;
  m.init = a.init;
  m.delta = a.delta;
  m.state_names = a.state_names;
  m.verdicts.assign(a.n_states, Verdict::Unknown);

  for (int q = 0; q < a.n_states; ++q) {
    bool all_accept = true, none_accept = true;
    for (int r : reachable_from(a.delta, q, full)) {
      if (a.accepting[r])
        none_accept = false;
      else
        all_accept = false;
    }
    if (all_accept)
      m.verdicts[q] = Verdict::Top;
    else if (none_accept)
      m.verdicts[q] = Verdict::Bottom;
  }
  for (int q = 0; q < a.n_states; ++q)
    if (definitive(m.verdicts[q])) m.delta.make_trap(q);
  return m;
}

Verdict good_bad_oracle(const Acceptor& a, const std::vector<Event>& prefix) {
  Event full = a.n_props == 0 ? 0 : static_cast<Event>((1u << a.n_props) - 1);
  int q = a.init;
  for (Event e : prefix) {
    int nxt = a.delta.next(q, e & full);
    if (nxt < 0) throw MonitorError("acceptor transition function is not complete");
    q = nxt;
  }
  // Breadth-first walk from q over the raw acceptor; classify the prefix by
  // what the reachable futures look like.
  std::vector<bool> seen(a.n_states, false);
  std::deque<int> work{q};
  seen[q] = true;
  bool found_accepting = false, found_rejecting = false;
  while (!work.empty()) {
    int cur = work.front();
    work.pop_front();
    if (a.accepting[cur])
      found_accepting = true;
    else
      found_rejecting = true;
    if (found_accepting && found_rejecting) return Verdict::Unknown;
    for (int nxt : a.delta.successors(cur, full))
      if (!seen[nxt]) {
        seen[nxt] = true;
        work.push_back(nxt);
      }
  }
  if (!found_rejecting) return Verdict::Top;
  if (!found_accepting) return Verdict::Bottom;
  return Verdict::Unknown;
}

}  // namespace decmon
