#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <offsim/engine.hpp>

namespace offsim {

struct RunMetrics {
  std::size_t released = 0;
  std::size_t completed = 0;
  std::size_t cancelled = 0;

  // Totals divide by completed jobs; idle consumption is part of the bill.
  std::optional<double> energy_mwh_per_job;
  std::optional<double> compute_mwh_per_job;  // compute regime only
  std::optional<double> mean_time;            // release -> completion, s
  std::optional<double> mean_exec_time;       // exec_start -> exec_end, s
  std::optional<double> qos;                  // on-time completed / released
  std::optional<double> offload_ratio;        // executor != origin, of completed
  // Mean of (actual - estimated) / actual over completed jobs; negative means
  // the decision-time estimates ran high (queue billed at full per-job time).
  std::optional<double> est_error;

  std::vector<std::vector<std::size_t>> flows;  // [origin][executor], completed
  std::vector<double> shares;                   // executed fraction per host
};

RunMetrics compute_metrics(const RunResult& result, std::size_t host_count);

// mean +/- 1.96 * sd / sqrt(n), sample standard deviation (n - 1).
// n == 1 yields half_width 0.
struct Aggregate {
  double mean = 0.0;
  double half_width = 0.0;
  std::size_t n = 0;
};

Aggregate aggregate(const std::vector<double>& xs);

// Fixed 6-significant-digit float formatting used in every CSV.
std::string csv_double(double v);

}  // namespace offsim
