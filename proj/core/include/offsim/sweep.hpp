#pragma once

#include <string>
#include <vector>

#include <offsim/engine.hpp>
#include <offsim/metrics.hpp>

namespace offsim {

struct SweepSpec {
  Scenario base;
  std::vector<double> lambdas;      // empty = base.lambda_mean
  std::vector<double> deadlines;    // empty = base.deadline
  std::vector<Strategy> strategies; // empty = base.strategy
  int repetitions = 0;              // 0 = base.repetitions
  // The grid is triangular: cells with deadline > lambda are skipped, the
  // deadline never exceeds the mean inter-arrival gap in the study design.
  bool skip_deadline_over_lambda = true;
};

struct SweepRow {
  std::string run_id;  // <scenario>/<strategy>/l<lambda>/d<deadline>/r<rep>
  std::string strategy;
  double lambda_mean = 0.0;
  double deadline = 0.0;
  int repetition = 0;
  std::uint64_t seed = 0;  // workload seed actually used
  RunMetrics metrics;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // deterministic order: cell-major, rep-minor
  std::size_t host_count = 0;
  std::vector<std::string> host_names;
};

// Runs cells in parallel (OFFLOAD_SIM_THREADS caps the pool); results and CSV
// bytes do not depend on the thread count.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

unsigned resolve_threads(unsigned requested = 0);

// runs.csv, flows.csv, shares.csv under out_dir (created if missing).
void write_csvs(const SweepResult& result, const std::string& out_dir);

std::string runs_csv(const SweepResult& result);
std::string flows_csv(const SweepResult& result);
std::string shares_csv(const SweepResult& result);

}  // namespace offsim
