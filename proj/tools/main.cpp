// decmon: decentralized monitoring of regular properties.
//
// Subcommands:
//   run     monitor one specification over one or more traces
//   golden  replay the reference scenario and compare transcripts
//   bench   sweep formulas or patterns and aggregate cost metrics

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "decmon/alphabet.hpp"
#include "decmon/decent.hpp"
#include "decmon/generators.hpp"
#include "decmon/golden.hpp"
#include "decmon/ltl.hpp"
#include "decmon/metrics.hpp"
#include "decmon/monitor.hpp"
#include "decmon/netsim.hpp"
#include "decmon/specfile.hpp"
#include "decmon/verdict.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr std::uint64_t kDefaultSeed = 12345;

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DECMON_SEED")) {
    try {
      size_t used = 0;
      std::string text(env);
      std::uint64_t v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw UsageError("DECMON_SEED is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

// Identifiers in first-appearance order, reserved words skipped; used to
// derive an alphabet when --components is not given.
std::vector<std::string> collect_idents(const std::string& text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_'))
        ++j;
      std::string word = text.substr(i, j - i);
      i = j;
      static const char* reserved[] = {"true", "false", "X", "Xw", "F", "G", "U", "R", "W"};
      bool skip = false;
      for (const char* r : reserved)
        if (word == r) skip = true;
      if (!skip && std::find(out.begin(), out.end(), word) == out.end())
        out.push_back(word);
    } else {
      ++i;
    }
  }
  return out;
}

decmon::DistributedAlphabet alphabet_from_components(const std::string& components) {
  std::vector<std::string> aps;
  std::vector<std::vector<int>> blocks;
  std::stringstream in(components);
  std::string block;
  while (std::getline(in, block, '|')) {
    for (auto& ch : block)
      if (ch == ',') ch = ' ';
    std::istringstream bin(block);
    std::vector<int> ids;
    std::string name;
    while (bin >> name) {
      if (std::find(aps.begin(), aps.end(), name) == aps.end())
        aps.push_back(name);
      ids.push_back(static_cast<int>(
          std::find(aps.begin(), aps.end(), name) - aps.begin()));
    }
    blocks.push_back(std::move(ids));
  }
  return decmon::DistributedAlphabet(aps, blocks);
}

struct LoadedSpec {
  std::string name;
  int size = 0;  // formula size measure; 0 for explicit automata
  decmon::DistributedAlphabet alphabet{{}, {}};
  decmon::Monitor monitor;
};

LoadedSpec load_from_spec_file(const std::string& path) {
  decmon::SpecFile sf = decmon::load_spec_file(path);
  LoadedSpec out{sf.name, 0, sf.alphabet, decmon::monitor_from_acceptor(sf.acceptor)};
  return out;
}

LoadedSpec load_from_formula(const std::string& formula_arg, const std::string& components,
                             const std::string& size_measure) {
  std::string text = formula_arg;
  if (std::filesystem::exists(formula_arg)) {
    std::ifstream in(formula_arg);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    // A formula file is a single line (trailing whitespace tolerated).
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' ||
                             text.back() == ' ' || text.back() == '\t'))
      text.pop_back();
  }
  decmon::DistributedAlphabet alphabet =
      components.empty()
          ? decmon::DistributedAlphabet::centralized(collect_idents(text))
          : alphabet_from_components(components);
  decmon::FormulaPtr f = decmon::parse_ltl(text, alphabet);
  decmon::CompiledMonitor cm = decmon::compile_ltl(f, alphabet);
  int size = size_measure == "count" ? decmon::temporal_op_count(f)
                                     : decmon::entailment_size(f);
  return LoadedSpec{"formula", size, alphabet, std::move(cm.monitor)};
}

decmon::CommConfig build_config(int n, const std::string& leaders,
                                const std::string& choose, int event_period,
                                int comm_period, bool count_halt) {
  decmon::CommConfig cfg = decmon::CommConfig::defaults(n);
  cfg.event_period = event_period;
  cfg.comm_period = comm_period;
  cfg.count_halt = count_halt;
  if (leaders != "all") {
    cfg.leaders.assign(n, false);
    std::stringstream in(leaders);
    std::string tok;
    bool any = false;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      try {
        size_t used = 0;
        int idx = std::stoi(tok, &used);
        if (used != tok.size() || idx < 1 || idx > n)
          throw std::invalid_argument(tok);
        cfg.leaders[idx - 1] = true;
        any = true;
      } catch (const std::exception&) {
        throw UsageError("--leaders wants 'all' or 1-based monitor indices, got '" +
                         tok + "'");
      }
    }
    if (!any) throw UsageError("--leaders selected no monitor");
  }
  if (!choose.empty()) {
    std::vector<int> targets;
    std::stringstream in(choose);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        size_t used = 0;
        int idx = std::stoi(tok, &used);
        if (used != tok.size() || idx < 1 || idx > n)
          throw std::invalid_argument(tok);
        targets.push_back(idx - 1);
      } catch (const std::exception&) {
        throw UsageError("--choose-mon wants 1-based monitor indices, got '" + tok + "'");
      }
    }
    if (static_cast<int>(targets.size()) != n)
      throw UsageError("--choose-mon needs exactly one target per monitor");
    cfg.choose = targets;
  }
  return cfg;
}

void write_output(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) return;
  if (out_path == "-") {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << csv;
}

std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void print_summary(const std::vector<decmon::RunRecord>& records) {
  auto rows = decmon::aggregate(records);
  std::printf("%-8s %-20s %5s %5s %10s %12s %10s %8s %10s %9s\n", "mode", "spec", "size",
              "runs", "n_msgs", "msg_bits", "trace_len", "delay", "mem_bits",
              "verdicts");
  for (const auto& r : rows) {
    std::string verdicts = std::to_string(r.verdict_top) + "/" +
                           std::to_string(r.verdict_bot) + "/" +
                           std::to_string(r.verdict_unknown);
    std::printf("%-8s %-20s %5d %5d %10.2f %12.2f %10.2f %8.2f %10.2f %9s\n",
                r.mode.c_str(), r.spec.c_str(), r.size, r.runs, r.n_msgs, r.msg_bits,
                r.trace_len, r.delay, r.mem_bits, verdicts.c_str());
  }
  // Cost ratios for groups that ran both ways.
  for (const auto& d : rows) {
    if (d.mode != "decent") continue;
    for (const auto& c : rows) {
      if (c.mode != "central" || c.spec != d.spec || c.size != d.size) continue;
      std::printf("ratio %s size %d: msgs decent/central=%s central/decent=%s "
                  "bits decent/central=%s central/decent=%s\n",
                  d.spec.c_str(), d.size,
                  c.n_msgs > 0 ? fmt4(d.n_msgs / c.n_msgs).c_str() : "inf",
                  d.n_msgs > 0 ? fmt4(c.n_msgs / d.n_msgs).c_str() : "inf",
                  c.msg_bits > 0 ? fmt4(d.msg_bits / c.msg_bits).c_str() : "inf",
                  d.msg_bits > 0 ? fmt4(c.msg_bits / d.msg_bits).c_str() : "inf");
    }
  }
}

// One decentralized/centralized evaluation of a monitor over one trace.
void run_once(const LoadedSpec& spec, const std::vector<std::vector<decmon::Event>>& trace,
              const decmon::CommConfig& cfg, const std::string& mode, bool log_rounds,
              bool check_invariants, std::vector<decmon::RunRecord>& records) {
  decmon::SizeModel model = decmon::size_model(spec.monitor, spec.alphabet);
  decmon::CentralResult central;
  bool have_central = mode == "central" || mode == "both";
  if (have_central) central = decmon::run_centralized(spec.monitor, spec.alphabet, trace);

  if (mode == "decent" || mode == "both") {
    decmon::SimOptions opt;
    opt.log_rounds = log_rounds;
    opt.check_invariants = check_invariants;
    decmon::SimResult sim = decmon::simulate(spec.monitor, spec.alphabet, trace, cfg, opt);
    if (log_rounds)
      for (const auto& line : sim.log) std::printf("%s\n", line.c_str());
    decmon::RunRecord rec;
    rec.mode = "decent";
    rec.spec = spec.name;
    rec.size = spec.size;
    rec.verdict = sim.returns.empty() ? decmon::Verdict::Unknown : sim.returns[0].verdict;
    rec.n_msgs = sim.n_messages;
    rec.msg_bits = sim.message_bits;
    rec.trace_len = sim.events_consumed;
    rec.delay = have_central ? decmon::detection_delay(sim, central) : -1;
    rec.mem_bits = sim.peak_memory_bits;
    records.push_back(rec);
    if (log_rounds) {
      for (const auto& ret : sim.returns)
        std::printf("verdict M%d %s round %d\n", ret.monitor + 1,
                    decmon::verdict_symbol(ret.verdict), ret.round + 1);
      if (sim.returns.empty()) std::printf("verdict ? (no monitor returned)\n");
    }
  }

  if (have_central) {
    decmon::RunRecord rec;
    rec.mode = "central";
    rec.spec = spec.name;
    rec.size = spec.size;
    rec.verdict = central.verdict;
    rec.n_msgs = central.n_messages;
    rec.msg_bits = central.message_bits;
    rec.trace_len = central.events_consumed;
    rec.delay = decmon::definitive(central.verdict) ? 0 : -1;
    rec.mem_bits = central.peak_memory_bits;
    records.push_back(rec);
  }
  (void)model;
}

// ---------------------------------------------------------------------------

int cmd_run(const std::string& spec_path, const std::string& formula,
            const std::string& components, const std::string& trace_path, int trace_len,
            double prob, const std::string& mode, const std::string& leaders,
            const std::string& choose, int event_period, int comm_period,
            std::optional<std::uint64_t> seed_flag, int runs, const std::string& out,
            bool per_run, bool count_halt, bool log_rounds, bool check_invariants,
            const std::string& size_measure) {
  if (spec_path.empty() == formula.empty())
    throw UsageError("give exactly one of --spec or --formula");
  if (trace_path.empty() == (trace_len < 0))
    throw UsageError("give exactly one of --trace or --trace-len");
  if (!trace_path.empty() && runs != 1)
    throw UsageError("--trace is a fixed input; --runs needs random traces");
  if (log_rounds && runs != 1) throw UsageError("--log-rounds needs --runs 1");
  if (runs < 1) throw UsageError("--runs must be at least 1");

  std::uint64_t seed = resolve_seed(seed_flag);
  LoadedSpec spec = spec_path.empty()
                        ? load_from_formula(formula, components, size_measure)
                        : load_from_spec_file(spec_path);
  if (!spec_path.empty() && !components.empty())
    throw UsageError("--components comes from the spec file; drop the flag");

  decmon::CommConfig cfg = build_config(spec.alphabet.n_components(), leaders, choose,
                                        event_period, comm_period, count_halt);

  std::vector<decmon::RunRecord> records;
  for (int run = 0; run < runs; ++run) {
    std::vector<std::vector<decmon::Event>> trace;
    if (!trace_path.empty()) {
      trace = decmon::read_trace_file(trace_path, spec.alphabet);
    } else {
      auto rng = decmon::make_rng(seed, static_cast<std::uint64_t>(run));
      trace = decmon::gen_trace(spec.alphabet, trace_len, prob, rng);
    }
    run_once(spec, trace, cfg, mode, log_rounds, check_invariants, records);
  }

  print_summary(records);
  write_output(per_run ? decmon::to_csv_per_run(records)
                       : decmon::to_csv(decmon::aggregate(records)),
               out);
  return 0;
}

int cmd_golden(bool emit, const std::string& fixture_path) {
  if (emit) {
    std::printf("%s", decmon::golden_transcript().c_str());
    return 0;
  }
  std::string fixture;
  if (fixture_path.empty()) {
    fixture = decmon::golden_fixture();
  } else {
    std::ifstream in(fixture_path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + fixture_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    fixture = buf.str();
  }
  auto diff = decmon::golden_check(fixture);
  if (!diff) {
    std::printf("golden transcript matches\n");
    return 0;
  }
  std::printf("golden transcript diverges at line %d\n", diff->line_no);
  std::printf("  expected: %s\n", diff->expected.c_str());
  std::printf("  actual:   %s\n", diff->actual.c_str());
  return 1;
}

int cmd_bench(const std::string& patterns, const std::string& sizes, int per_size,
              const std::string& components, int trace_len, double prob, int runs,
              const std::string& leaders, const std::string& choose, int event_period,
              int comm_period, std::optional<std::uint64_t> seed_flag,
              const std::string& out, bool per_run, bool count_halt,
              const std::string& size_measure) {
  if (patterns.empty() == sizes.empty())
    throw UsageError("give exactly one of --patterns or --sizes");
  if (trace_len < 1) throw UsageError("--trace-len must be positive");
  if (per_size < 1) throw UsageError("--per-size must be positive");
  if (runs < 1) throw UsageError("--runs must be at least 1");

  std::uint64_t seed = resolve_seed(seed_flag);
  decmon::DistributedAlphabet alphabet = alphabet_from_components(components);
  decmon::CommConfig cfg = build_config(alphabet.n_components(), leaders, choose,
                                        event_period, comm_period, count_halt);

  struct Workload {
    std::string name;
    int size;
    decmon::FormulaPtr formula;
  };
  std::vector<Workload> work;
  long attempts = 0, rejected = 0;
  std::uint64_t stream = 0;

  if (!patterns.empty()) {
    std::stringstream in(patterns == "all" ? [] {
      std::string all;
      for (const auto& n : decmon::pattern_names()) {
        if (!all.empty()) all += ",";
        all += n;
      }
      return all;
    }() : patterns);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      auto p = decmon::pattern_by_name(tok);
      if (!p) throw UsageError("unknown pattern '" + tok + "'");
      for (int k = 0; k < per_size; ++k) {
        auto rng = decmon::make_rng(seed, 0x70000000ull + stream++);
        decmon::FormulaPtr f = decmon::pattern_formula(*p, alphabet, rng);
        ++attempts;
        try {
          decmon::compile_ltl(f, alphabet);
        } catch (const decmon::StateExplosion&) {
          ++rejected;
          continue;
        }
        int size = size_measure == "count" ? decmon::temporal_op_count(f)
                                           : decmon::entailment_size(f);
        work.push_back({decmon::pattern_name(*p), size, f});
      }
    }
  } else {
    std::stringstream in(sizes);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      int size = 0;
      try {
        size_t used = 0;
        size = std::stoi(tok, &used);
        if (used != tok.size() || size < 0) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw UsageError("--sizes wants non-negative integers, got '" + tok + "'");
      }
      for (int k = 0; k < per_size; ++k) {
        auto rng = decmon::make_rng(seed, 0x60000000ull + stream++);
        ++attempts;
        decmon::FormulaPtr f;
        try {
          f = decmon::gen_formula(alphabet, size, rng);
          decmon::compile_ltl(f, alphabet);
        } catch (const decmon::StateExplosion&) {
          ++rejected;
          continue;
        } catch (const decmon::GeneratorError&) {
          ++rejected;
          continue;
        }
        int labeled = size_measure == "count" ? decmon::temporal_op_count(f) : size;
        work.push_back({"rand", labeled, f});
      }
    }
  }

  if (attempts > 0 && rejected * 2 > attempts) {
    std::fprintf(stderr, "bench: %ld of %ld formulas rejected (state explosion)\n",
                 rejected, attempts);
    return kExitCapacity;
  }

  std::vector<decmon::RunRecord> records;
  std::uint64_t run_stream = 0x10000000ull;
  for (const auto& w : work) {
    decmon::CompiledMonitor cm = decmon::compile_ltl(w.formula, alphabet);
    LoadedSpec spec{w.name, w.size, alphabet, std::move(cm.monitor)};
    for (int run = 0; run < runs; ++run) {
      auto rng = decmon::make_rng(seed, run_stream++);
      auto trace = decmon::gen_trace(alphabet, trace_len, prob, rng);
      run_once(spec, trace, cfg, "both", false, false, records);
    }
  }

  if (records.empty()) {
    std::fprintf(stderr, "bench: nothing to run\n");
    return kExitCapacity;
  }
  print_summary(records);
  write_output(per_run ? decmon::to_csv_per_run(records)
                       : decmon::to_csv(decmon::aggregate(records)),
               out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized monitoring of regular properties"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "monitor a specification over traces");
  std::string spec_path, formula, components, trace_path, mode = "both";
  std::string leaders = "all", choose, out, size_measure = "entail";
  int trace_len = -1, event_period = 1, comm_period = 1, runs = 1;
  double prob = 0.5;
  std::optional<std::uint64_t> seed_flag;
  bool per_run = false, count_halt = false, log_rounds = false, check_inv = false;
  run->add_option("--spec", spec_path, "automaton spec file");
  run->add_option("--formula", formula, "LTL formula text or file");
  run->add_option("--components", components, "proposition partition, e.g. 'a|b c|d'");
  run->add_option("--trace", trace_path, "trace file");
  run->add_option("--trace-len", trace_len, "random trace length");
  run->add_option("--prob", prob, "per-proposition probability for random traces");
  run->add_option("--mode", mode, "central, decent, or both")
      ->check(CLI::IsMember({"central", "decent", "both"}));
  run->add_option("--leaders", leaders, "'all' or 1-based indices, e.g. '1,3'");
  run->add_option("--choose-mon", choose, "1-based routing targets, e.g. '2,3,1'");
  run->add_option("--event-period", event_period, "rounds per event");
  run->add_option("--comm-period", comm_period, "rounds per monitor step");
  run->add_option("--seed", seed_flag, "root seed (else env DECMON_SEED, else 12345)");
  run->add_option("--runs", runs, "number of random traces");
  run->add_option("--out", out, "CSV output path ('-' for stdout)");
  run->add_flag("--per-run", per_run, "CSV row per run instead of aggregate");
  run->add_flag("--count-halt", count_halt, "include halt notices in message costs");
  run->add_flag("--log-rounds", log_rounds, "print the round transcript");
  run->add_flag("--check-invariants", check_inv, "verify ground truth every round");
  run->add_option("--size-measure", size_measure, "formula size label: entail or count")
      ->check(CLI::IsMember({"entail", "count"}));

  // --- golden ---
  auto* golden = app.add_subcommand("golden", "replay the reference scenario");
  bool emit = false;
  std::string fixture_path;
  golden->add_flag("--emit-transcript", emit, "print the engine transcript and exit");
  golden->add_option("--fixture", fixture_path, "compare against this file instead");

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "sweep formulas and aggregate metrics");
  std::string patterns, sizes, bench_components = "a|b|c", bench_out;
  std::string bench_leaders = "all", bench_choose, bench_sizemeasure = "entail";
  int per_size = 100, bench_trace_len = 200, bench_runs = 1;
  int bench_event_period = 1, bench_comm_period = 1;
  double bench_prob = 0.5;
  std::optional<std::uint64_t> bench_seed;
  bool bench_perrun = false, bench_counthalt = false;
  bench->add_option("--patterns", patterns, "'all' or names/aliases, comma separated");
  bench->add_option("--sizes", sizes, "formula sizes, comma separated");
  bench->add_option("--per-size", per_size, "formulas per pattern/size");
  bench->add_option("--components", bench_components, "proposition partition");
  bench->add_option("--trace-len", bench_trace_len, "random trace length");
  bench->add_option("--prob", bench_prob, "per-proposition probability");
  bench->add_option("--runs", bench_runs, "traces per formula");
  bench->add_option("--leaders", bench_leaders, "'all' or 1-based indices");
  bench->add_option("--choose-mon", bench_choose, "1-based routing targets");
  bench->add_option("--event-period", bench_event_period, "rounds per event");
  bench->add_option("--comm-period", bench_comm_period, "rounds per monitor step");
  bench->add_option("--seed", bench_seed, "root seed (else env DECMON_SEED, else 12345)");
  bench->add_option("--out", bench_out, "CSV output path ('-' for stdout)");
  bench->add_flag("--per-run", bench_perrun, "CSV row per run instead of aggregate");
  bench->add_flag("--count-halt", bench_counthalt, "include halt notices in costs");
  bench->add_option("--size-measure", bench_sizemeasure, "entail or count")
      ->check(CLI::IsMember({"entail", "count"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed())
      return cmd_run(spec_path, formula, components, trace_path, trace_len, prob, mode,
                     leaders, choose, event_period, comm_period, seed_flag, runs, out,
                     per_run, count_halt, log_rounds, check_inv, size_measure);
    if (golden->parsed()) return cmd_golden(emit, fixture_path);
    if (bench->parsed())
      return cmd_bench(patterns, sizes, per_size, bench_components, bench_trace_len,
                       bench_prob, bench_runs, bench_leaders, bench_choose,
                       bench_event_period, bench_comm_period, bench_seed, bench_out,
                       bench_perrun, bench_counthalt, bench_sizemeasure);
  } catch (const decmon::CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCapacity;
  } catch (const decmon::StateExplosion& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCapacity;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}
