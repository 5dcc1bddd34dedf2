#include "decmon/specfile.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace decmon {

namespace {

std::string trim(const std::string& s) {
  auto l = s.find_first_not_of(" \t\r");
  if (l == std::string::npos) return "";
  auto r = s.find_last_not_of(" \t\r");
  return s.substr(l, r - l + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

struct RawTrans {
  int line;
  std::string from, event, to;  // event "*" for catch-all
};

}  // namespace

SpecFile load_spec(std::istream& in, const std::string& name) {
  std::vector<std::string> aps;
  std::vector<std::vector<std::string>> component_names;
  std::vector<std::string> states;
  std::string init;
  std::vector<std::string> accept;
  std::vector<RawTrans> raw;
  bool saw_aps = false, saw_components = false, saw_states = false, saw_init = false,
       saw_accept = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw LoadError(line_no, "expected 'directive: ...', got '" + line + "'");
    std::string key = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (key == "aps") {
      aps = split_ws(rest);
      saw_aps = true;
    } else if (key == "components") {
      for (const auto& block : split_on(rest, '|')) {
        auto names = split_ws(block);
        if (names.empty()) throw LoadError(line_no, "empty component block");
        component_names.push_back(names);
      }
      saw_components = true;
    } else if (key == "states") {
      states = split_ws(rest);
      saw_states = true;
    } else if (key == "init") {
      init = rest;
      saw_init = true;
    } else if (key == "accept") {
      accept = split_ws(rest);
      saw_accept = true;
    } else if (key == "trans") {
      // "q0 {a,b} -> q1" or "q0 * -> q0"
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw LoadError(line_no, "transition needs '->'");
      std::string lhs = trim(rest.substr(0, arrow));
      std::string to = trim(rest.substr(arrow + 2));
      if (to.empty()) throw LoadError(line_no, "transition needs a target state");
      auto sp = lhs.find_first_of(" \t");
      if (sp == std::string::npos)
        throw LoadError(line_no, "transition needs 'state event -> state'");
      std::string from = trim(lhs.substr(0, sp));
      std::string event = trim(lhs.substr(sp));
      if (event.empty()) throw LoadError(line_no, "transition needs an event or '*'");
      raw.push_back({line_no, from, event, to});
    } else {
      throw LoadError(line_no, "unknown directive '" + key + "'");
    }
  }

  if (!saw_aps) throw LoadError(0, "missing 'aps:' directive");
  if (!saw_states) throw LoadError(0, "missing 'states:' directive");
  if (!saw_init) throw LoadError(0, "missing 'init:' directive");
  if (!saw_accept) throw LoadError(0, "missing 'accept:' directive");
  if (!saw_components) {
    // Default: one component observing everything.
    component_names.push_back(aps);
  }

  // Resolve the partition to proposition ids.
  std::map<std::string, int> ap_id;
  for (size_t i = 0; i < aps.size(); ++i) {
    if (ap_id.count(aps[i])) throw LoadError(0, "duplicate proposition '" + aps[i] + "'");
    ap_id[aps[i]] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> blocks;
  for (const auto& block : component_names) {
    std::vector<int> ids;
    for (const auto& nm : block) {
      auto it = ap_id.find(nm);
      if (it == ap_id.end())
        throw LoadError(0, "component proposition '" + nm + "' not in aps");
      ids.push_back(it->second);
    }
    blocks.push_back(std::move(ids));
  }
  DistributedAlphabet alphabet(aps, blocks);

  std::map<std::string, int> state_id;
  for (size_t i = 0; i < states.size(); ++i) {
    if (state_id.count(states[i]))
      throw LoadError(0, "duplicate state '" + states[i] + "'");
    state_id[states[i]] = static_cast<int>(i);
  }
  auto resolve_state = [&state_id](const std::string& nm, int line_no2) {
    auto it = state_id.find(nm);
    if (it == state_id.end()) throw LoadError(line_no2, "unknown state '" + nm + "'");
    return it->second;
  };

  Acceptor a;
  a.n_props = alphabet.n_props();
  a.n_states = static_cast<int>(states.size());
  a.init = resolve_state(init, 0);
  a.accepting.assign(a.n_states, false);
  for (const auto& nm : accept) a.accepting[resolve_state(nm, 0)] = true;
  a.state_names = states;

  a.delta = TransitionFn::sparse(a.n_states, a.n_props);
  std::vector<bool> has_catchall(a.n_states, false);
  for (const auto& t : raw) {
    int from = resolve_state(t.from, t.line);
    int to = resolve_state(t.to, t.line);
    if (t.event == "*") {
      if (!has_catchall[from]) {
        a.delta.set_catchall(from, to);
        has_catchall[from] = true;
      }
      // A later catch-all for the same state is dead (top-down), ignore it.
    } else {
      Event e;
      try {
        e = alphabet.parse_event(t.event);
      } catch (const EventParseError& err) {
        throw LoadError(t.line, err.what());
      }
      if (!has_catchall[from]) a.delta.add_rule(from, e, to);
      // Rules after a catch-all are dead (top-down), ignore them.
    }
  }

  if (!a.delta.complete(alphabet.full_event_mask()))
    throw LoadError(0,
                    "transition function incomplete: some state lacks a rule for some "
                    "event and has no '*' catch-all");

  return SpecFile{name, std::move(alphabet), std::move(a)};
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(0, "cannot open '" + path + "'");
  auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return load_spec(in, stem);
}

std::string render_spec(const SpecFile& s) {
  std::ostringstream out;
  out << "aps:";
  for (int p = 0; p < s.alphabet.n_props(); ++p) out << ' ' << s.alphabet.prop_name(p);
  out << "\ncomponents:";
  for (int c = 0; c < s.alphabet.n_components(); ++c) {
    if (c) out << " |";
    for (int p = 0; p < s.alphabet.n_props(); ++p)
      if (s.alphabet.component_mask(c) & (1u << p)) out << ' ' << s.alphabet.prop_name(p);
  }
  out << "\nstates:";
  for (int q = 0; q < s.acceptor.n_states; ++q) out << ' ' << s.acceptor.state_name(q);
  out << "\ninit: " << s.acceptor.state_name(s.acceptor.init);
  out << "\naccept:";
  for (int q = 0; q < s.acceptor.n_states; ++q)
    if (s.acceptor.accepting[q]) out << ' ' << s.acceptor.state_name(q);
  out << "\n";
  Event full = s.alphabet.full_event_mask();
  for (int q = 0; q < s.acceptor.n_states; ++q) {
    // Render explicit rules for every event; always complete by construction.
    for (Event e = 0;; ++e) {
      int to = s.acceptor.delta.next(q, e);
      std::string ev = e == 0 ? "{}" : s.alphabet.render_event(e);
      out << "trans: " << s.acceptor.state_name(q) << ' ' << ev << " -> "
          << s.acceptor.state_name(to) << "\n";
      if (e == full) break;
    }
  }
  return out.str();
}

std::vector<std::vector<Event>> read_trace(std::istream& in,
                                           const DistributedAlphabet& alphabet) {
  int n = alphabet.n_components();
  std::vector<std::vector<Event>> locals(n);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fields = split_on(line, '|');
    if (static_cast<int>(fields.size()) != n)
      throw LoadError(line_no, "expected " + std::to_string(n) + " component fields, got " +
                                   std::to_string(fields.size()));
    for (int c = 0; c < n; ++c) {
      std::string f = trim(fields[c]);
      Event e = 0;
      if (f != "-" && !f.empty()) {
        for (const auto& nm : split_on(f, ',')) {
          std::string prop = trim(nm);
          int p = alphabet.prop_id(prop);
          if (p < 0) throw LoadError(line_no, "unknown proposition '" + prop + "'");
          if (!(alphabet.component_mask(c) & (1u << p)))
            throw LoadError(line_no, "proposition '" + prop + "' not observed by component " +
                                         std::to_string(c + 1));
          e |= (1u << p);
        }
      }
      locals[c].push_back(e);
    }
  }
  return locals;
}

std::vector<std::vector<Event>> read_trace_file(const std::string& path,
                                                const DistributedAlphabet& alphabet) {
  std::ifstream in(path);
  if (!in) throw LoadError(0, "cannot open '" + path + "'");
  return read_trace(in, alphabet);
}

std::string render_trace(const DistributedAlphabet& alphabet,
                         const std::vector<std::vector<Event>>& locals) {
  std::ostringstream out;
  size_t len = locals.empty() ? 0 : locals[0].size();
  for (size_t t = 0; t < len; ++t) {
    for (size_t c = 0; c < locals.size(); ++c) {
      if (c) out << '|';
      Event e = locals[c][t];
      if (e == 0) {
        out << '-';
        continue;
      }
      bool first = true;
      for (int p = 0; p < alphabet.n_props(); ++p)
        if (e & (1u << p)) {
          if (!first) out << ',';
          out << alphabet.prop_name(p);
          first = false;
        }
    }
    out << '\n';
  }
  return out.str();
}

std::vector<Event> merge_locals(const DistributedAlphabet& alphabet,
                                const std::vector<std::vector<Event>>& locals) {
  if (static_cast<int>(locals.size()) != alphabet.n_components())
    throw LoadError(0, "trace has " + std::to_string(locals.size()) + " components, alphabet has " +
                           std::to_string(alphabet.n_components()));
  size_t len = locals.empty() ? 0 : locals[0].size();
  for (const auto& lt : locals)
    if (lt.size() != len) throw LoadError(0, "component traces have different lengths");
  std::vector<Event> global(len, 0);
  for (size_t c = 0; c < locals.size(); ++c)
    for (size_t t = 0; t < len; ++t) global[t] |= locals[c][t];
  return global;
}

std::vector<std::vector<Event>> project_trace(const DistributedAlphabet& alphabet,
                                              const std::vector<Event>& global) {
  std::vector<std::vector<Event>> locals(alphabet.n_components());
  for (int c = 0; c < alphabet.n_components(); ++c) {
    locals[c].reserve(global.size());
    for (Event e : global) locals[c].push_back(e & alphabet.component_mask(c));
  }
  return locals;
}

}  // namespace decmon
