#include "decmon/decent.hpp"

#include <algorithm>
#include <cctype>

namespace decmon {

MemoryEntry join(const MemoryEntry& a, const MemoryEntry& b) {
  return MemoryEntry{a.event | b.event, a.sources | b.sources};
}

LocalMemory merge_memory(const LocalMemory& a, const LocalMemory& b) {
  LocalMemory out = a;
  for (const auto& [t, e] : b) {
    auto it = out.find(t);
    if (it == out.end())
      out.emplace(t, e);
    else
      it->second = join(it->second, e);
  }
  return out;
}

StateSet delta_d(const Monitor& m, const DistributedAlphabet& alphabet,
                 const StateSet& estimate, ComponentSet sources, Event sigma) {
  if (sources == 0) throw MonitorError("delta_d: empty source set");
  if (estimate.empty()) throw MonitorError("delta_d: empty estimate");
  Event observed = alphabet.observed_mask(sources);
  if (sigma & ~observed)
    throw MonitorError("delta_d: observation mentions propositions outside its sources");
  Event unobserved = alphabet.full_event_mask() & ~observed;
  StateSet out(m.n_states);
  for (int q : estimate.members()) {
    Event x = unobserved;
    while (true) {
      out.insert(m.next(q, sigma | x));
      if (x == 0) break;
      x = (x - 1) & unobserved;
    }
  }
  return out;
}

Verdict verdict_d(const Monitor& m, const StateSet& estimate) {
  bool any = false;
  Verdict v = Verdict::Unknown;
  for (int q : estimate.members()) {
    Verdict qv = m.verdict(q);
    if (!any) {
      v = qv;
      any = true;
    } else if (qv != v) {
      return Verdict::Unknown;
    }
  }
  return any ? v : Verdict::Unknown;
}

LocalMonitor make_local_monitor(int index, bool leader, const Monitor& m) {
  LocalMonitor mon;
  mon.index = index;
  mon.leader = leader;
  mon.q = m.init;
  return mon;
}

void ingest_event(LocalMonitor& mon, Event event) {
  mon.t += 1;
  MemoryEntry mine{event, static_cast<ComponentSet>(1u << mon.index)};
  auto it = mon.mem.find(mon.t);
  if (it == mon.mem.end())
    mon.mem.emplace(mon.t, mine);
  else
    it->second = join(it->second, mine);
}

namespace {

void prune_below(LocalMemory& mem, int t_last) {
  mem.erase(mem.begin(), mem.lower_bound(t_last));
}

}  // namespace

void ingest_message(LocalMonitor& mon, const Message& msg, bool sender_is_leader) {
  if (msg.state) {
    if (msg.state->t_new > mon.t_last) {
      mon.q = msg.state->state;
      mon.t_last = msg.state->t_new;
      mon.rcv_state = true;
    } else if (sender_is_leader && !mon.leader) {
      // Stale report from a leader: nothing to adopt, but keep relaying.
      mon.rcv_state = true;
    }
  }
  if (msg.memory) {
    int time = msg.memory->base;
    for (const auto& entry : msg.memory->entries) {
      auto it = mon.mem.find(time);
      if (it == mon.mem.end())
        mon.mem.emplace(time, entry);
      else
        it->second = join(it->second, entry);
      ++time;
    }
    mon.rcv_mem = true;
  }
  if (msg.memory || sender_is_leader) prune_below(mon.mem, mon.t_last);
}

StepResult step(LocalMonitor& mon, const Monitor& m, const DistributedAlphabet& alphabet) {
  StepResult r;
  if (mon.halted) return r;

  if (mon.leader) prune_below(mon.mem, mon.t_last);

  // Fold remembered observations onto the exact prefix.
  StateSet estimate = StateSet::singleton(m.n_states, mon.q);
  for (int ti = mon.t_last; ti <= mon.t; ++ti) {
    auto it = mon.mem.find(ti);
    if (it == mon.mem.end()) break;
    estimate = delta_d(m, alphabet, estimate, it->second.sources, it->second.event);
    if (auto sole = estimate.sole_member()) {
      mon.q = *sole;
      mon.t_last = ti + 1;
      r.updated = true;
      if (definitive(m.verdict(*sole))) break;
    }
  }
  r.estimate = estimate;

  Verdict v = verdict_d(m, estimate);
  if (definitive(v)) {
    prune_below(mon.mem, mon.t_last);
    mon.halted = true;
    mon.verdict_out = v;
    r.action = StepResult::Action::Return;
    r.verdict = v;
    r.snap_t_last = mon.t_last;
    r.snap_t = mon.t;
    r.snap_q = mon.q;
    r.snap_mem = mon.mem;
    mon.rcv_state = mon.rcv_mem = false;
    return r;
  }

  r.snap_t_last = mon.t_last;
  r.snap_t = mon.t;
  r.snap_q = mon.q;
  r.snap_mem = mon.mem;

  Message msg;
  if (r.updated || mon.rcv_state)
    msg.state = Message::StatePart{mon.q, mon.t_last};
  if (mon.t_last <= mon.t && (mon.leader || mon.rcv_state || mon.rcv_mem)) {
    Message::MemoryPart part;
    part.base = mon.t_last;
    for (int ti = mon.t_last; ti <= mon.t; ++ti) {
      auto it = mon.mem.find(ti);
      if (it == mon.mem.end()) break;
      part.entries.push_back(it->second);
    }
    if (!part.entries.empty()) msg.memory = std::move(part);
  }
  mon.rcv_state = mon.rcv_mem = false;
  if (mon.leader) prune_below(mon.mem, mon.t_last);

  if (!msg.empty()) {
    r.action = StepResult::Action::Send;
    r.message = std::move(msg);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_entry(const MemoryEntry& e, const DistributedAlphabet& alphabet) {
  return "(" + alphabet.render_event(e.event) + "," +
         DistributedAlphabet::render_components(e.sources) + ")";
}

std::string render_memory(const LocalMemory& mem, const DistributedAlphabet& alphabet) {
  std::string out = "{";
  bool first = true;
  for (const auto& [t, e] : mem) {
    if (!first) out += ", ";
    out += std::to_string(t) + " ↦ " + render_entry(e, alphabet);
    first = false;
  }
  out += "}";
  return out;
}

std::string render_message(const Message& msg, const Monitor& m,
                           const DistributedAlphabet& alphabet) {
  std::string out;
  if (msg.state) {
    out += "(" + m.state_name(msg.state->state) + "," + std::to_string(msg.state->t_new) +
           ")";
  }
  if (msg.memory) {
    if (!out.empty()) out += ",";
    out += "(";
    for (const auto& e : msg.memory->entries) out += render_entry(e, alphabet) + ",";
    out += std::to_string(msg.memory->base) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing (canonical renderings only)

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void expect(char c) {
    if (done() || s[i] != c)
      throw MessageParseError("expected '" + std::string(1, c) + "' at offset " +
                              std::to_string(i) + " in '" + s + "'");
    ++i;
  }
  bool tryc(char c) {
    if (!done() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string until(const std::string& stops) {
    size_t start = i;
    while (!done() && stops.find(s[i]) == std::string::npos) ++i;
    return s.substr(start, i - start);
  }
  // "{...}" inclusive; no nesting inside.
  std::string braced() {
    size_t start = i;
    expect('{');
    while (!done() && s[i] != '}') ++i;
    expect('}');
    return s.substr(start, i - start);
  }
  int integer() {
    size_t start = i;
    while (!done() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw MessageParseError("expected a number at offset " +
                                            std::to_string(start) + " in '" + s + "'");
    return std::stoi(s.substr(start, i - start));
  }
};

ComponentSet parse_components(Cursor& c) {
  c.expect('{');
  ComponentSet s = 0;
  while (!c.tryc('}')) {
    int idx = c.integer();
    if (idx < 1 || idx > 32) throw MessageParseError("component index out of range");
    s |= (1u << (idx - 1));
    c.tryc(',');
  }
  return s;
}

MemoryEntry parse_entry(Cursor& c, const DistributedAlphabet& alphabet) {
  c.expect('(');
  MemoryEntry e;
  std::string ev = c.peek() == '{' ? c.braced() : c.until(",");
  e.event = alphabet.parse_event(ev);
  c.expect(',');
  e.sources = parse_components(c);
  c.expect(')');
  return e;
}

}  // namespace

Message parse_message(const std::string& text, const Monitor& m,
                      const DistributedAlphabet& alphabet) {
  Message msg;
  Cursor c{text};
  while (!c.done()) {
    c.expect('(');
    if (c.peek() == '(') {
      // Memory part: entries then the base instant.
      Message::MemoryPart part;
      while (c.peek() == '(') {
        part.entries.push_back(parse_entry(c, alphabet));
        c.expect(',');
      }
      part.base = c.integer();
      c.expect(')');
      msg.memory = std::move(part);
    } else {
      std::string name = c.until(",");
      int state = -1;
      for (int q = 0; q < m.n_states; ++q)
        if (m.state_name(q) == name) {
          state = q;
          break;
        }
      if (state < 0) throw MessageParseError("unknown state '" + name + "'");
      c.expect(',');
      int t_new = c.integer();
      c.expect(')');
      msg.state = Message::StatePart{state, t_new};
    }
    if (!c.done()) c.expect(',');
  }
  return msg;
}

}  // namespace decmon
