// Parallel versus serial parameter sweeps.

#include <benchmark/benchmark.h>

#include "visco/sweep.hpp"

namespace {

visco::SweepSpec spec_for(const std::string& model, std::size_t steps) {
  visco::SweepSpec s;
  s.model = model;
  s.steps = steps;
  if (model == "sls") {
    s.param = "Lambda";
    s.lo = 0.05;
    s.hi = 4.0;
    s.fixed["rho"] = 0.3;
  } else {
    s.param = model == "kv" ? "eta" : "zeta";
    s.lo = 0.05;
    s.hi = 0.95;
  }
  return s;
}

void BM_SweepSerial(benchmark::State& state, const std::string& model) {
  const auto spec = spec_for(model, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(visco::run_sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state, const std::string& model) {
  const auto spec = spec_for(model, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(visco::run_sweep(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_SweepSerial, kv, std::string("kv"))->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_SweepParallel, kv, std::string("kv"))->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_SweepSerial, sls, std::string("sls"))->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepParallel, sls, std::string("sls"))->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
