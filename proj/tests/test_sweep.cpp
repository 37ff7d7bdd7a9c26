#include "doctest.h"

#include <cstdlib>
#include <set>

#include "offsim/sweep.hpp"

using namespace offsim;

namespace {

Scenario two_host_base() {
  Scenario sc;
  sc.name = "grid";
  DeviceProfile gen;
  gen.name = "gen";
  gen.exec_time_mean = 3.0;
  gen.exec_time_jitter = 0.1;
  gen.p_idle = 1.0;
  gen.p_compute = 2.0;
  gen.p_upload = 2.1;
  gen.p_download = 1.4;
  gen.uplink_bps = 110e6;
  gen.downlink_bps = 110e6;
  DeviceProfile wrk = gen;
  wrk.name = "wrk";
  wrk.exec_time_mean = 4.0;
  sc.hosts.push_back({"gen", gen, Role::Both});
  sc.hosts.push_back({"wrk", wrk, Role::Both});
  sc.strategy.kind = StrategyKind::TMin;
  sc.duration = 60.0;
  sc.repetitions = 2;
  sc.seed = 5;
  return sc;
}

}  // namespace

TEST_CASE("the grid is triangular and ordered cell major") {
  SweepSpec spec;
  spec.base = two_host_base();
  spec.lambdas = {3.0, 6.0, 9.0, 12.0};
  spec.deadlines = {3.0, 6.0, 9.0, 12.0};
  Strategy tmin;
  tmin.kind = StrategyKind::TMin;
  Strategy local;
  local.kind = StrategyKind::Local;
  spec.strategies = {local, tmin};
  spec.repetitions = 2;

  SweepResult res = run_sweep(spec);
  // deadlines <= lambda: l3:{d3} l6:{d3,d6} l9:{d3,d6,d9} l12: all four = 10 cells
  CHECK(res.rows.size() == 10 * 2 * 2);
  CHECK(res.host_count == 2);
  REQUIRE(res.host_names.size() == 2);
  CHECK(res.host_names[0] == "gen");

  std::set<std::string> ids;
  for (const SweepRow& row : res.rows) {
    CHECK(row.deadline <= row.lambda_mean);
    CHECK(ids.insert(row.run_id).second);  // unique
    CHECK(row.metrics.released > 0);
  }
  // reps of one cell sit next to each other
  CHECK(res.rows[0].repetition == 0);
  CHECK(res.rows[1].repetition == 1);
  CHECK(res.rows[0].strategy == res.rows[1].strategy);
  CHECK(res.rows[0].lambda_mean == res.rows[1].lambda_mean);
  CHECK(res.rows[0].run_id.find("grid/local/") == 0);

  SweepSpec square = spec;
  square.skip_deadline_over_lambda = false;
  CHECK(run_sweep(square).rows.size() == 16 * 2 * 2);
}

TEST_CASE("a single cell sweep equals a direct run") {
  SweepSpec spec;
  spec.base = two_host_base();
  spec.repetitions = 2;
  SweepResult res = run_sweep(spec);
  REQUIRE(res.rows.size() == 2);

  RunResult direct = run_simulation(spec.base, 0);
  RunMetrics dm = compute_metrics(direct, 2);
  CHECK(res.rows[0].metrics.released == dm.released);
  CHECK(res.rows[0].metrics.completed == dm.completed);
  CHECK(res.rows[0].metrics.energy_mwh_per_job.value() ==
        doctest::Approx(dm.energy_mwh_per_job.value()).epsilon(1e-15));
  CHECK(res.rows[0].metrics.qos.value() ==
        doctest::Approx(dm.qos.value()).epsilon(1e-15));
  CHECK(res.rows[0].seed == workload_seed(spec.base, 0));
}

TEST_CASE("thread count never changes the bytes") {
  SweepSpec spec;
  spec.base = two_host_base();
  spec.lambdas = {6.0, 12.0};
  spec.deadlines = {3.0, 6.0};
  spec.repetitions = 2;

  SweepResult seq = run_sweep(spec, 1);
  SweepResult par = run_sweep(spec, 8);
  CHECK(runs_csv(seq) == runs_csv(par));
  CHECK(flows_csv(seq) == flows_csv(par));
  CHECK(shares_csv(seq) == shares_csv(par));
}

TEST_CASE("csv output carries a header and one line per row") {
  SweepSpec spec;
  spec.base = two_host_base();
  spec.repetitions = 2;
  SweepResult res = run_sweep(spec);
  std::string runs = runs_csv(res);
  std::size_t lines = 0;
  for (char c : runs)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + res.rows.size());
  CHECK(runs.find("run_id") == 0);
  CHECK(runs.find("qos") != std::string::npos);
  std::string shares = shares_csv(res);
  CHECK(shares.find("host") != std::string::npos);

  // flows.csv only reports pairs that actually moved jobs
  std::string flows = flows_csv(res);
  std::size_t flow_lines = 0;
  for (char c : flows)
    if (c == '\n') ++flow_lines;
  std::size_t nonzero = 0;
  for (const SweepRow& row : res.rows)
    for (const auto& per_origin : row.metrics.flows)
      for (std::size_t count : per_origin)
        if (count > 0) ++nonzero;
  CHECK(flow_lines == 1 + nonzero);
}

TEST_CASE("thread resolution: explicit beats environment beats hardware") {
  CHECK(resolve_threads(0) >= 1);
  CHECK(resolve_threads(3) == 3);
  setenv("OFFLOAD_SIM_THREADS", "2", 1);
  CHECK(resolve_threads(0) == 2);
  CHECK(resolve_threads(5) == 5);
  setenv("OFFLOAD_SIM_THREADS", "junk", 1);
  CHECK(resolve_threads(0) >= 1);
  unsetenv("OFFLOAD_SIM_THREADS");
  CHECK(resolve_threads(7) == 7);
}
