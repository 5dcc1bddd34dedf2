#include <benchmark/benchmark.h>

#include "decmon/decent.hpp"
#include "decmon/generators.hpp"
#include "decmon/golden.hpp"
#include "decmon/ltl.hpp"
#include "decmon/netsim.hpp"

using namespace decmon;

namespace {

const DistributedAlphabet& bench_alphabet() {
  static DistributedAlphabet a({"a", "b", "c"}, {{0}, {1}, {2}});
  return a;
}

Monitor bench_monitor() {
  FormulaPtr f = parse_ltl("G (a -> F (b & F c))", bench_alphabet());
  return compile_ltl(f, bench_alphabet()).monitor;
}

}  // namespace

static void BM_EstimateStep(benchmark::State& state) {
  const auto& a = bench_alphabet();
  Monitor m = bench_monitor();
  StateSet est(m.n_states);
  for (int q = 0; q < m.n_states; ++q) est.insert(q);
  for (auto _ : state) {
    StateSet next = delta_d(m, a, est, 0b001, 0b001);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_EstimateStep);

static void BM_Progression(benchmark::State& state) {
  const auto& a = bench_alphabet();
  FormulaPtr f = simplify(parse_ltl("G (a -> F (b & F c))", a));
  for (auto _ : state) {
    FormulaPtr g = progress(f, 0b001, a);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_Progression);

static void BM_CompileFormula(benchmark::State& state) {
  const auto& a = bench_alphabet();
  auto rng = make_rng(7, 0);
  FormulaPtr f = pattern_formula(Pattern::ResponseChain, a, rng);
  for (auto _ : state) {
    CompiledMonitor cm = compile_ltl(f, a);
    benchmark::DoNotOptimize(cm.monitor.n_states);
  }
}
BENCHMARK(BM_CompileFormula);

static void BM_Simulate(benchmark::State& state) {
  const auto& a = bench_alphabet();
  Monitor m = bench_monitor();
  auto rng = make_rng(11, 0);
  auto locals = gen_trace(a, static_cast<int>(state.range(0)), 0.5, rng);
  CommConfig cfg = CommConfig::defaults(3);
  cfg.leaders = {true, false, false};
  for (auto _ : state) {
    SimResult r = simulate(m, a, locals, cfg);
    benchmark::DoNotOptimize(r.message_bits);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(50)->Arg(200);

static void BM_CentralRun(benchmark::State& state) {
  const auto& a = bench_alphabet();
  Monitor m = bench_monitor();
  auto rng = make_rng(13, 0);
  auto locals = gen_trace(a, 200, 0.5, rng);
  for (auto _ : state) {
    CentralResult c = run_centralized(m, a, locals);
    benchmark::DoNotOptimize(c.message_bits);
  }
}
BENCHMARK(BM_CentralRun);

BENCHMARK_MAIN();
