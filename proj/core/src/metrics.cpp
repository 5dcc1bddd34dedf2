#include "decmon/metrics.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <map>

namespace decmon {

namespace {

// Smallest k with 2^k >= n, i.e. ceil(log2(n)) for n >= 1.
int ceil_log2(unsigned n) {
  if (n <= 1) return 0;
  return std::bit_width(n - 1);
}

// The operator/punctuation vocabulary of the formula syntax: true false ! & |
// -> <-> X Xw F G U R W ( ) plus an end marker.
constexpr int kOperatorSymbols = 17;

}  // namespace

SizeModel size_model(const Monitor& m, const DistributedAlphabet& alphabet) {
  return SizeModel{alphabet.n_props(), m.n_states, alphabet.n_components()};
}

int event_bits(const SizeModel& model) { return model.n_props; }

int state_bits(const SizeModel& model) {
  return ceil_log2(static_cast<unsigned>(model.n_states));
}

int time_bits(int t) {
  if (t < 0) t = 0;
  int bits = ceil_log2(static_cast<unsigned>(t) + 1);
  return bits < 1 ? 1 : bits;
}

long message_bits(const Message& msg, const SizeModel& model) {
  long bits = 0;
  if (msg.state) bits += state_bits(model) + time_bits(msg.state->t_new);
  if (msg.memory) {
    bits += static_cast<long>(msg.memory->entries.size()) *
            (event_bits(model) + model.n_components);
    bits += time_bits(msg.memory->base);
  }
  return bits;
}

long memory_bits(const LocalMemory& mem, int t, const SizeModel& model) {
  long bits = static_cast<long>(mem.size()) * (event_bits(model) + model.n_components);
  return bits + state_bits(model) + 2L * time_bits(t);
}

long halt_message_bits(int t_last) { return 1 + time_bits(t_last); }

int formula_bits(const FormulaPtr& f, const DistributedAlphabet& alphabet) {
  int per_symbol = ceil_log2(static_cast<unsigned>(alphabet.n_props() + kOperatorSymbols));
  return symbol_count(f, alphabet) * per_symbol;
}

// ---------------------------------------------------------------------------

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs) {
  if (runs.empty()) throw EmptyBatch();
  std::vector<AggregateRow> rows;
  std::map<std::string, size_t> index;
  std::vector<int> delay_counts;
  for (const auto& r : runs) {
    std::string key = r.mode + "\x1f" + r.spec + "\x1f" + std::to_string(r.size);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      AggregateRow row;
      row.mode = r.mode;
      row.spec = r.spec;
      row.size = r.size;
      rows.push_back(row);
      delay_counts.push_back(0);
    }
    AggregateRow& row = rows[it->second];
    row.runs += 1;
    row.n_msgs += r.n_msgs;
    row.msg_bits += r.msg_bits;
    row.trace_len += r.trace_len;
    row.mem_bits += r.mem_bits;
    if (r.delay >= 0) {
      if (delay_counts[it->second] == 0) row.delay = 0;
      row.delay += r.delay;
      delay_counts[it->second] += 1;
    }
    switch (r.verdict) {
      case Verdict::Top: row.verdict_top += 1; break;
      case Verdict::Bottom: row.verdict_bot += 1; break;
      default: row.verdict_unknown += 1; break;
    }
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    AggregateRow& row = rows[i];
    row.n_msgs /= row.runs;
    row.msg_bits /= row.runs;
    row.trace_len /= row.runs;
    row.mem_bits /= row.runs;
    if (delay_counts[i] > 0) row.delay /= delay_counts[i];
  }
  return rows;
}

const char* kCsvHeader =
    "mode,spec,size,runs,n_msgs,msg_bits,trace_len,delay,mem_bits,verdict_top,"
    "verdict_bot,verdict_unknown";

namespace {

// Stable numeric rendering: integers stay integral, otherwise four decimals
// with trailing zeros trimmed.
std::string num(double v) {
  if (v == static_cast<long long>(v))
    return std::to_string(static_cast<long long>(v));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::string to_csv(const std::vector<AggregateRow>& rows) {
  std::string out = kCsvHeader;
  out += "\n";
  for (const auto& r : rows) {
    out += r.mode + "," + r.spec + "," + std::to_string(r.size) + "," +
           std::to_string(r.runs) + "," + num(r.n_msgs) + "," + num(r.msg_bits) + "," +
           num(r.trace_len) + "," + num(r.delay) + "," + num(r.mem_bits) + "," +
           std::to_string(r.verdict_top) + "," + std::to_string(r.verdict_bot) + "," +
           std::to_string(r.verdict_unknown) + "\n";
  }
  return out;
}

std::string to_csv_per_run(const std::vector<RunRecord>& runs) {
  std::string out = kCsvHeader;
  out += "\n";
  for (const auto& r : runs) {
    out += r.mode + "," + r.spec + "," + std::to_string(r.size) + ",1," +
           std::to_string(r.n_msgs) + "," + std::to_string(r.msg_bits) + "," +
           std::to_string(r.trace_len) + "," + std::to_string(r.delay) + "," +
           std::to_string(r.mem_bits) + ",";
    out += r.verdict == Verdict::Top ? "1,0,0" : r.verdict == Verdict::Bottom ? "0,1,0"
                                                                              : "0,0,1";
    out += "\n";
  }
  return out;
}

}  // namespace decmon
