#include "decmon/netsim.hpp"

#include <algorithm>

#include "decmon/metrics.hpp"
#include "decmon/specfile.hpp"

namespace decmon {

CommConfig CommConfig::defaults(int n) {
  CommConfig cfg;
  cfg.choose.resize(n);
  for (int i = 0; i < n; ++i) cfg.choose[i] = (i + 1) % n;
  cfg.leaders.assign(n, true);
  return cfg;
}

void validate_config(const CommConfig& cfg, int n) {
  if (static_cast<int>(cfg.choose.size()) != n)
    throw ConfigError(ConfigError::Kind::Routing,
                      "routing covers " + std::to_string(cfg.choose.size()) +
                          " monitors, expected " + std::to_string(n));
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    int t = cfg.choose[i];
    if (t < 0 || t >= n)
      throw ConfigError(ConfigError::Kind::Routing,
                        "monitor " + std::to_string(i + 1) + " addresses " +
                            std::to_string(t + 1) + ", out of range");
    if (hit[t])
      throw ConfigError(ConfigError::Kind::Routing,
                        "two monitors address monitor " + std::to_string(t + 1));
    hit[t] = true;
  }
  // A permutation decomposes into cycles; require exactly one, covering all.
  int len = 0, cur = 0;
  do {
    cur = cfg.choose[cur];
    ++len;
  } while (cur != 0 && len <= n);
  if (len != n)
    throw ConfigError(ConfigError::Kind::Routing,
                      "routing is not a single cycle over all monitors");
  if (static_cast<int>(cfg.leaders.size()) != n)
    throw ConfigError(ConfigError::Kind::Leaders,
                      "leader flags cover " + std::to_string(cfg.leaders.size()) +
                          " monitors, expected " + std::to_string(n));
  if (cfg.event_period < 1 || cfg.comm_period < 1)
    throw ConfigError(ConfigError::Kind::Period, "periods must be at least 1");
  if (cfg.post_cap_factor < 1)
    throw ConfigError(ConfigError::Kind::Period, "round cap factor must be at least 1");
}

namespace {

std::string snap_line(const char* tag, int round, int mon_index, int t_last, int t, int q,
                      const LocalMemory& mem, const Monitor& m,
                      const DistributedAlphabet& alphabet) {
  return "r" + std::to_string(round + 1) + " M" + std::to_string(mon_index + 1) + " " +
         tag + " t_last=" + std::to_string(t_last) + " t=" + std::to_string(t) +
         " q=" + m.state_name(q) + " mem=" + render_memory(mem, alphabet);
}

// Ground truth: exact prefixes must be real prefixes, memory must hold honest
// projections.
void check_invariants(const std::vector<LocalMonitor>& mons, const Monitor& m,
                      const DistributedAlphabet& alphabet,
                      const std::vector<Event>& consumed_global) {
  for (const auto& mon : mons) {
    if (mon.t_last > static_cast<int>(consumed_global.size()))
      throw MonitorError("monitor " + std::to_string(mon.index + 1) +
                         " claims a prefix longer than the trace");
    int q = m.init;
    for (int i = 0; i < mon.t_last; ++i) q = m.next(q, consumed_global[i]);
    if (q != mon.q)
      throw MonitorError("monitor " + std::to_string(mon.index + 1) +
                         " diverged from the real prefix state");
    for (const auto& [ti, entry] : mon.mem) {
      if (ti >= static_cast<int>(consumed_global.size())) continue;
      Event expect = alphabet.project(entry.sources, consumed_global[ti]);
      if (entry.event != expect)
        throw MonitorError("monitor " + std::to_string(mon.index + 1) +
                           " holds a corrupt entry for instant " + std::to_string(ti));
    }
  }
}

}  // namespace

SimResult simulate(const Monitor& m, const DistributedAlphabet& alphabet,
                   const std::vector<std::vector<Event>>& locals, const CommConfig& cfg,
                   const SimOptions& opt) {
  int n = alphabet.n_components();
  validate_config(cfg, n);
  if (static_cast<int>(locals.size()) != n)
    throw ConfigError(ConfigError::Kind::Trace,
                      "trace has " + std::to_string(locals.size()) +
                          " component streams, expected " + std::to_string(n));
  size_t len = locals.empty() ? 0 : locals[0].size();
  for (const auto& lt : locals)
    if (lt.size() != len)
      throw ConfigError(ConfigError::Kind::Trace, "component streams differ in length");

  SizeModel model = size_model(m, alphabet);
  std::vector<LocalMonitor> mons;
  mons.reserve(n);
  for (int i = 0; i < n; ++i) mons.push_back(make_local_monitor(i, cfg.leaders[i], m));

  SimResult res;
  res.verdicts.assign(n, Verdict::Unknown);
  std::vector<Event> consumed_global;

  int event_idx = 0;
  int post_rounds = 0;
  const int cap = cfg.post_cap_factor * n;

  for (int r = 0;; ++r) {
    bool all_halted = std::all_of(mons.begin(), mons.end(),
                                  [](const LocalMonitor& mo) { return mo.halted; });
    if (all_halted) break;

    bool in_trace = event_idx < static_cast<int>(len);
    if (!in_trace) {
      if (post_rounds >= cap) throw CapExceeded(cap);
      ++post_rounds;
    }
    bool event_round = in_trace && (r % cfg.event_period == 0);
    bool comm_round = in_trace ? (r % cfg.comm_period == 0) : true;
    if (!event_round && !comm_round) continue;
    res.rounds = r + 1;

    std::vector<int> live_at_start;
    for (const auto& mon : mons)
      if (!mon.halted) live_at_start.push_back(mon.index);

    if (event_round) {
      Event global = 0;
      for (int i = 0; i < n; ++i) global |= locals[i][event_idx];
      consumed_global.push_back(global);
      for (auto& mon : mons) {
        if (mon.halted) continue;
        ingest_event(mon, locals[mon.index][event_idx]);
        if (opt.log_rounds)
          res.log.push_back("r" + std::to_string(r + 1) + " M" +
                            std::to_string(mon.index + 1) + " read " +
                            alphabet.render_event(locals[mon.index][event_idx]));
      }
      ++event_idx;
      ++res.events_consumed;
    }

    if (comm_round) {
      struct Outgoing {
        int from, to;
        Message msg;
      };
      std::vector<Outgoing> wire;
      std::vector<int> returners;

      for (auto& mon : mons) {
        if (mon.halted) continue;
        StepResult sr = step(mon, m, alphabet);
        if (opt.log_rounds)
          res.log.push_back(snap_line("state", r, mon.index, sr.snap_t_last, sr.snap_t,
                                      sr.snap_q, sr.snap_mem, m, alphabet));
        switch (sr.action) {
          case StepResult::Action::Return:
            returners.push_back(mon.index);
            res.returns.push_back({r, mon.index, sr.verdict});
            res.verdicts[mon.index] = sr.verdict;
            if (res.first_return_round < 0) res.first_return_round = r;
            if (opt.log_rounds)
              res.log.push_back("r" + std::to_string(r + 1) + " M" +
                                std::to_string(mon.index + 1) + " return verdict(" +
                                m.state_name(mon.q) + ")=" + verdict_symbol(sr.verdict));
            break;
          case StepResult::Action::Send: {
            int to = cfg.choose[mon.index];
            if (to != mon.index) {
              res.n_messages += 1;
              res.message_bits += message_bits(sr.message, model);
              if (opt.log_rounds)
                res.log.push_back("r" + std::to_string(r + 1) + " M" +
                                  std::to_string(mon.index + 1) + " send M" +
                                  std::to_string(to + 1) + " " +
                                  render_message(sr.message, m, alphabet));
              wire.push_back({mon.index, to, std::move(sr.message)});
            } else if (opt.log_rounds) {
              res.log.push_back("r" + std::to_string(r + 1) + " M" +
                                std::to_string(mon.index + 1) + " idle");
            }
            break;
          }
          case StepResult::Action::Idle:
            if (opt.log_rounds)
              res.log.push_back("r" + std::to_string(r + 1) + " M" +
                                std::to_string(mon.index + 1) + " idle");
            break;
        }
      }

      // End of round: regular deliveries first, then halt notices.
      for (auto& out : wire)
        if (!mons[out.to].halted)
          ingest_message(mons[out.to], out.msg, cfg.leaders[out.from]);
      for (int who : returners) {
        for (auto& other : mons) {
          if (other.index == who || other.halted) continue;
          other.halted = true;
          other.verdict_out = mons[who].verdict_out;
          res.verdicts[other.index] = mons[who].verdict_out;
          res.halt_messages += 1;
          res.halt_bits += halt_message_bits(mons[who].t_last);
        }
      }
      if (!in_trace && wire.empty() && returners.empty()) {
        res.quiesced = true;
        if (opt.log_rounds) res.log.push_back("r" + std::to_string(r + 1) + " quiescent");
        break;
      }
    }

    if (opt.log_rounds)
      for (int i : live_at_start)
        res.log.push_back(snap_line("after", r, i, mons[i].t_last, mons[i].t, mons[i].q,
                                    mons[i].mem, m, alphabet));

    for (int i : live_at_start)
      res.peak_memory_bits =
          std::max(res.peak_memory_bits, memory_bits(mons[i].mem, mons[i].t, model));

    if (opt.check_invariants) check_invariants(mons, m, alphabet, consumed_global);
  }

  if (cfg.count_halt) {
    res.n_messages += res.halt_messages;
    res.message_bits += res.halt_bits;
  }
  return res;
}

CentralResult run_centralized(const Monitor& m, const DistributedAlphabet& alphabet,
                              const std::vector<std::vector<Event>>& locals) {
  std::vector<Event> global = merge_locals(alphabet, locals);
  SizeModel model = size_model(m, alphabet);
  CentralResult res;
  res.peak_memory_bits = state_bits(model);

  int q = m.init;
  res.verdict = m.verdict(q);
  if (definitive(res.verdict)) return res;  // nothing to observe

  std::vector<Event> prev(alphabet.n_components(), 0);
  for (size_t idx = 0; idx < global.size(); ++idx) {
    for (int c = 0; c < alphabet.n_components(); ++c) {
      Event obs = locals[c][idx];
      if (idx == 0 || obs != prev[c]) {
        res.n_messages += 1;
        res.message_bits += event_bits(model);
      }
      prev[c] = obs;
    }
    q = m.next(q, global[idx]);
    ++res.events_consumed;
    res.verdict = m.verdict(q);
    if (definitive(res.verdict)) {
      res.verdict_index = static_cast<int>(idx);
      break;
    }
  }
  return res;
}

int detection_delay(const SimResult& decent, const CentralResult& central) {
  if (decent.first_return_round < 0 || !definitive(central.verdict)) return -1;
  return decent.first_return_round - std::max(central.verdict_index, 0);
}

}  // namespace decmon
