#include <benchmark/benchmark.h>

#include <offsim/engine.hpp>
#include <offsim/profiles.hpp>
#include <offsim/strategy.hpp>
#include <offsim/worker.hpp>

namespace {

using namespace offsim;

DecisionView six_host_view() {
  DecisionView v;
  v.origin = 0;
  double te[] = {5.0, 4.0, 2.0, 14.0, 6.0, 1.4};
  double pc[] = {2.0, 2.0, 4.1, 0.4, 1.0, 54.0};
  for (HostId h = 0; h < 6; ++h) {
    v.snapshots.push_back({h, h % 3, te[h], pc[h], 2.0, 1.5, 0.0, std::nullopt});
    v.links.push_back({8.0 / 110e6, 8.0 / 210e6});
    v.executor_role.push_back(true);
  }
  return v;
}

JobSpec reference_job() {
  JobSpec j;
  j.origin = 0;
  j.deadline = 9.0;
  j.input_bytes = 2.2e6;
  j.output_bytes = 4096.0;
  return j;
}

void BM_FullEstimate(benchmark::State& state) {
  DecisionView v = six_host_view();
  JobSpec job = reference_job();
  HostId h = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_estimate(job, v, h, true));
    h = (h + 1) % 6;
  }
}
BENCHMARK(BM_FullEstimate);

void BM_DecideHybrid(benchmark::State& state) {
  DecisionView v = six_host_view();
  JobSpec job = reference_job();
  Strategy s;
  s.kind = StrategyKind::Hybrid;
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(decide(s, job, v, rng));
}
BENCHMARK(BM_DecideHybrid);

void BM_WorkerCycle(benchmark::State& state) {
  Worker w;
  double t = 0.0;
  JobId id = 0;
  for (auto _ : state) {
    w.enqueue(id++, t);
    w.enqueue(id++, t + 0.1);
    w.complete_current(t + 1.0);
    w.complete_current(t + 2.0);
    t += 2.0;
  }
}
BENCHMARK(BM_WorkerCycle);

void BM_FleetRun(benchmark::State& state) {
  Scenario sc;
  for (const char* n : {"nexus9", "pixel4", "s7e", "tab_s5e", "mi9t"}) {
    DeviceProfile p = *find_profile(n);
    sc.hosts.push_back({p.name, p, Role::Both});
  }
  sc.strategy.kind = StrategyKind::Hybrid;
  sc.lambda_mean = 12.0;
  sc.deadline = 9.0;
  sc.duration = 600.0;
  int rep = 0;
  for (auto _ : state) {
    RunResult r = run_simulation(sc, rep++ % 6);
    benchmark::DoNotOptimize(r.completed);
  }
}
BENCHMARK(BM_FleetRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
