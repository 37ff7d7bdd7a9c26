#include <offsim/sweep.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace offsim {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OFFLOAD_SIM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  std::vector<double> lambdas =
      spec.lambdas.empty() ? std::vector<double>{spec.base.lambda_mean} : spec.lambdas;
  std::vector<double> deadlines =
      spec.deadlines.empty() ? std::vector<double>{spec.base.deadline} : spec.deadlines;
  std::vector<Strategy> strategies =
      spec.strategies.empty() ? std::vector<Strategy>{spec.base.strategy} : spec.strategies;
  int reps = spec.repetitions > 0 ? spec.repetitions : spec.base.repetitions;

  struct Task {
    Scenario scenario;
    int repetition;
  };
  std::vector<Task> tasks;
  SweepResult result;
  for (const Strategy& strat : strategies) {
    for (double lambda : lambdas) {
      for (double deadline : deadlines) {
        if (spec.skip_deadline_over_lambda && deadline > lambda) continue;
        Scenario sc = spec.base;
        sc.strategy = strat;
        sc.lambda_mean = lambda;
        sc.deadline = deadline;
        for (int r = 0; r < reps; ++r) {
          SweepRow row;
          row.strategy = to_string(strat);
          row.lambda_mean = lambda;
          row.deadline = deadline;
          row.repetition = r;
          row.seed = workload_seed(sc, r);
          std::ostringstream id;
          id << spec.base.name << "/" << row.strategy << "/l" << csv_double(lambda)
             << "/d" << csv_double(deadline) << "/r" << r;
          row.run_id = id.str();
          result.rows.push_back(std::move(row));
          tasks.push_back({sc, r});
        }
      }
    }
  }

  result.host_count = spec.base.hosts.size();
  for (const HostSetup& h : spec.base.hosts) result.host_names.push_back(h.name);

  unsigned pool = std::min<unsigned>(resolve_threads(threads),
                                     std::max<std::size_t>(tasks.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      RunResult rr = run_simulation(tasks[i].scenario, tasks[i].repetition);
      result.rows[i].metrics = compute_metrics(rr, result.host_count);
    }
  };
  if (pool <= 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(pool);
    for (unsigned t = 0; t < pool; ++t) workers.emplace_back(work);
    for (std::thread& t : workers) t.join();
  }
  return result;
}

namespace {

std::string opt(const std::optional<double>& v) {
  return v ? csv_double(*v) : std::string();
}

}  // namespace

std::string runs_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "run_id,strategy,lambda,deadline,repetition,seed,"
        "released,completed,cancelled,"
        "energy_mwh_per_job,compute_mwh_per_job,mean_time_s,mean_exec_time_s,"
        "qos,offload_ratio,est_error\n";
  for (const SweepRow& r : result.rows) {
    os << r.run_id << ',' << r.strategy << ',' << csv_double(r.lambda_mean)
       << ',' << csv_double(r.deadline) << ',' << r.repetition << ',' << r.seed
       << ',' << r.metrics.released << ',' << r.metrics.completed << ','
       << r.metrics.cancelled << ',' << opt(r.metrics.energy_mwh_per_job) << ','
       << opt(r.metrics.compute_mwh_per_job) << ',' << opt(r.metrics.mean_time)
       << ',' << opt(r.metrics.mean_exec_time) << ',' << opt(r.metrics.qos)
       << ',' << opt(r.metrics.offload_ratio) << ',' << opt(r.metrics.est_error)
       << '\n';
  }
  return os.str();
}

std::string flows_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "run_id,origin,executor,count\n";
  for (const SweepRow& r : result.rows) {
    for (std::size_t o = 0; o < r.metrics.flows.size(); ++o) {
      for (std::size_t e = 0; e < r.metrics.flows[o].size(); ++e) {
        std::size_t n = r.metrics.flows[o][e];
        if (n == 0) continue;
        os << r.run_id << ',' << result.host_names[o] << ','
           << result.host_names[e] << ',' << n << '\n';
      }
    }
  }
  return os.str();
}

std::string shares_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "run_id,host,fraction\n";
  for (const SweepRow& r : result.rows) {
    for (std::size_t h = 0; h < r.metrics.shares.size(); ++h) {
      os << r.run_id << ',' << result.host_names[h] << ','
         << csv_double(r.metrics.shares[h]) << '\n';
    }
  }
  return os.str();
}

void write_csvs(const SweepResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto dump = [&](const char* name, const std::string& content) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    f << content;
  };
  dump("runs.csv", runs_csv(result));
  dump("flows.csv", flows_csv(result));
  dump("shares.csv", shares_csv(result));
}

}  // namespace offsim
