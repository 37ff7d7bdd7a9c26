#include <offsim/metrics.hpp>

#include <cassert>
#include <cmath>
#include <cstdio>

namespace offsim {

RunMetrics compute_metrics(const RunResult& result, std::size_t host_count) {
  RunMetrics m;
  m.released = result.released;
  m.completed = result.completed;
  m.cancelled = result.cancelled;
  m.flows.assign(host_count, std::vector<std::size_t>(host_count, 0));
  m.shares.assign(host_count, 0.0);

  std::size_t on_time = 0;
  std::size_t offloaded = 0;
  double sum_span = 0.0, sum_exec = 0.0, sum_err = 0.0;
  for (const JobRecord& r : result.records) {
    if (r.outcome != JobOutcome::Completed) continue;
    assert(r.executor && r.completion && r.exec_start && r.exec_end);
    m.flows[r.spec.origin][*r.executor] += 1;
    if (deadline_met(r)) ++on_time;
    if (*r.executor != r.spec.origin) ++offloaded;
    double span = *r.completion - r.spec.release;
    sum_span += span;
    sum_exec += *r.exec_end - *r.exec_start;
    assert(r.estimate);
    sum_err += (span - r.estimate->total_time()) / span;
  }

  if (m.released > 0)
    m.qos = static_cast<double>(on_time) / static_cast<double>(m.released);
  if (m.completed > 0) {
    auto n = static_cast<double>(m.completed);
    m.energy_mwh_per_job = joules_to_mwh(result.ledger.total_joules()) / n;
    m.compute_mwh_per_job = joules_to_mwh(result.ledger.compute_joules()) / n;
    m.mean_time = sum_span / n;
    m.mean_exec_time = sum_exec / n;
    m.offload_ratio = static_cast<double>(offloaded) / n;
    m.est_error = sum_err / n;
    for (std::size_t e = 0; e < host_count; ++e) {
      std::size_t count = 0;
      for (std::size_t o = 0; o < host_count; ++o) count += m.flows[o][e];
      m.shares[e] = static_cast<double>(count) / n;
    }
  }
  return m;
}

Aggregate aggregate(const std::vector<double>& xs) {
  Aggregate a;
  a.n = xs.size();
  if (xs.empty()) return a;
  double sum = 0.0;
  for (double x : xs) sum += x;
  a.mean = sum / static_cast<double>(a.n);
  if (a.n < 2) return a;
  double ss = 0.0;
  for (double x : xs) ss += (x - a.mean) * (x - a.mean);
  double sd = std::sqrt(ss / static_cast<double>(a.n - 1));
  a.half_width = 1.96 * sd / std::sqrt(static_cast<double>(a.n));
  return a;
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace offsim
