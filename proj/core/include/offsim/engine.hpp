#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <offsim/energy.hpp>
#include <offsim/strategy.hpp>
#include <offsim/types.hpp>

namespace offsim {

enum class ContentionMode { FixedRate, FairShare };

struct HostSetup {
  std::string name;  // unique; defaults to the profile name
  DeviceProfile profile;
  Role role = Role::Both;
};

struct Scenario {
  std::string name = "scenario";
  std::vector<HostSetup> hosts;
  Strategy strategy;
  double lambda_mean = 12.0;  // mean inter-arrival gap per generator, s
  double deadline = 9.0;      // relative deadline, s
  double duration = 600.0;    // release window, s; started jobs drain to completion
  int repetitions = 6;
  std::uint64_t seed = 1;
  double dissemination_period = 1.0;  // 0 = every decision sees fresh state
  ContentionMode contention = ContentionMode::FixedRate;
  bool corrected_tc = false;
  std::size_t ma_window = 10;
  double input_bytes = 2.2e6;
  double output_bytes = 4096.0;
};

enum class EventKind : std::uint8_t {
  JobRelease,
  TransferInDone,
  ExecEnd,
  TransferOutDone,
  DisseminationTick,
};

const char* to_string(EventKind k);

struct TraceRecord {
  double time = 0.0;
  EventKind kind = EventKind::JobRelease;
  HostId host = 0;
  JobId job = 0;
};

struct RunResult {
  std::vector<JobRecord> records;  // indexed by job id
  EnergyLedger ledger;
  double horizon = 0.0;
  std::size_t released = 0;
  std::size_t completed = 0;
  std::size_t cancelled = 0;
  std::vector<TraceRecord> trace;  // filled only when tracing is on
};

// One deterministic run of the scenario's (lambda, deadline, strategy) cell.
// The workload seed depends on (seed, lambda, deadline, repetition) only, so
// runs that differ in strategy alone replay identical job sequences.
RunResult run_simulation(const Scenario& scenario, int repetition,
                         bool trace = false);

std::uint64_t workload_seed(const Scenario& scenario, int repetition);

}  // namespace offsim
