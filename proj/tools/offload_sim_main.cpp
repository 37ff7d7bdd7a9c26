#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <offsim/config.hpp>
#include <offsim/metrics.hpp>
#include <offsim/profiles.hpp>
#include <offsim/sweep.hpp>

namespace {

using namespace offsim;

constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 1;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
};

LoadedScenario load_or_exit(const std::string& path) {
  try {
    LoadedScenario ls = load_scenario(path);
    for (const std::string& w : ls.warnings)
      std::cerr << "warning: " << w << "\n";
    return ls;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    std::exit(kExitInvalid);
  }
}

// One aggregate line per metric over the repetitions of a cell.
void print_cell_summary(const std::vector<const SweepRow*>& rows) {
  auto collect = [&](auto getter) {
    std::vector<double> xs;
    for (const SweepRow* r : rows) {
      auto v = getter(r->metrics);
      if (v) xs.push_back(*v);
    }
    return aggregate(xs);
  };
  auto line = [](const char* label, const Aggregate& a, const char* unit) {
    if (a.n == 0) {
      std::printf("  %-12s n/a\n", label);
      return;
    }
    std::printf("  %-12s %10.4g +/- %-8.3g %s (n=%zu)\n", label, a.mean,
                a.half_width, unit, a.n);
  };
  line("energy", collect([](const RunMetrics& m) { return m.energy_mwh_per_job; }),
       "mWh/job");
  line("time", collect([](const RunMetrics& m) { return m.mean_time; }), "s");
  line("qos", collect([](const RunMetrics& m) { return m.qos; }), "");
  line("offload", collect([](const RunMetrics& m) { return m.offload_ratio; }), "");
  line("est_error", collect([](const RunMetrics& m) { return m.est_error; }), "");
  std::size_t released = 0, completed = 0, cancelled = 0;
  for (const SweepRow* r : rows) {
    released += r->metrics.released;
    completed += r->metrics.completed;
    cancelled += r->metrics.cancelled;
  }
  std::printf("  %-12s %zu released, %zu completed, %zu cancelled\n", "jobs",
              released, completed, cancelled);
}

void print_summary(const SweepResult& result) {
  std::map<std::string, std::vector<const SweepRow*>> cells;
  std::vector<std::string> order;
  for (const SweepRow& r : result.rows) {
    std::string key = r.strategy + " lambda=" + csv_double(r.lambda_mean) +
                      " deadline=" + csv_double(r.deadline);
    if (!cells.count(key)) order.push_back(key);
    cells[key].push_back(&r);
  }
  for (const std::string& key : order) {
    std::printf("%s\n", key.c_str());
    print_cell_summary(cells[key]);
  }
}

void write_trace(const Scenario& sc, const std::string& path) {
  RunResult rr = run_simulation(sc, 0, /*trace=*/true);
  std::ofstream f(path, std::ios::binary);
  for (const TraceRecord& t : rr.trace) {
    f << "{\"t\":" << csv_double(t.time) << ",\"kind\":\"" << to_string(t.kind)
      << "\",\"host\":" << t.host << ",\"job\":" << t.job << "}\n";
  }
  std::fprintf(stderr, "trace (repetition 0) written to %s\n", path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge offloading simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string trace_path;

  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("config", opts.config_path, "scenario file (json)")
        ->required();
    cmd->add_option("--seed", opts.seed, "override the scenario seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
    if (with_out)
      cmd->add_option("--out", opts.out_dir, "output directory for CSV files");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one scenario cell");
  add_common(run_cmd, true);
  run_cmd->add_option("--trace", trace_path,
                      "write an event trace (ndjson) for repetition 0");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid");
  add_common(sweep_cmd, true);
  std::vector<double> lambdas, deadlines;
  std::vector<std::string> strategy_names;
  int reps = 0;
  sweep_cmd->add_option("--lambda", lambdas, "mean inter-arrival gaps, s")
      ->delimiter(',');
  sweep_cmd->add_option("--deadline", deadlines, "relative deadlines, s")
      ->delimiter(',');
  sweep_cmd->add_option("--strategy", strategy_names, "strategies to compare")
      ->delimiter(',');
  sweep_cmd->add_option("--reps", reps, "repetitions per cell");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check a scenario file");
  add_common(validate_cmd, false);

  app.add_subcommand("profiles", "list built-in device profiles");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("profiles")) {
    std::printf("%-12s %-10s %8s %8s %8s %8s %8s %10s %10s\n", "name", "role",
                "exec_s", "idle_w", "comp_w", "up_w", "down_w", "up_mbps",
                "down_mbps");
    for (const DeviceProfile& p : builtin_profiles()) {
      std::printf("%-12s %-10s %8.2f %8.2f %8.2f %8.2f %8.2f %10.0f %10.0f%s\n",
                  p.name.c_str(), to_string(p.default_role), p.exec_time_mean,
                  p.p_idle, p.p_compute, p.p_upload, p.p_download,
                  p.uplink_bps / 1e6, p.downlink_bps / 1e6,
                  p.wall_powered ? "  (wall)" : "");
    }
    return 0;
  }

  if (app.got_subcommand("validate")) {
    LoadedScenario ls = load_or_exit(opts.config_path);
    std::printf("OK: %s (%zu hosts, strategy %s)\n", ls.scenario.name.c_str(),
                ls.scenario.hosts.size(), to_string(ls.scenario.strategy).c_str());
    return 0;
  }

  LoadedScenario ls = load_or_exit(opts.config_path);
  if (opts.seed_set) ls.scenario.seed = opts.seed;

  SweepSpec spec;
  spec.base = ls.scenario;
  if (app.got_subcommand("sweep")) {
    spec.lambdas = lambdas;
    spec.deadlines = deadlines;
    for (const std::string& name : strategy_names) {
      auto s = parse_strategy(name);
      if (!s) {
        std::cerr << "unknown strategy '" << name << "'\n";
        return kExitUsage;
      }
      if (s->kind == StrategyKind::Server) s->server = ls.scenario.strategy.server;
      s->fallback = ls.scenario.strategy.fallback;
      Scenario probe = ls.scenario;
      probe.strategy = *s;
      try {
        validate_scenario(probe);
      } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalid;
      }
      spec.strategies.push_back(*s);
    }
    spec.repetitions = reps;
  }

  SweepResult result = run_sweep(spec);
  write_csvs(result, opts.out_dir);
  print_summary(result);
  std::printf("CSV written to %s (runs.csv, flows.csv, shares.csv)\n",
              opts.out_dir.c_str());

  if (!trace_path.empty()) write_trace(ls.scenario, trace_path);
  return 0;
}
