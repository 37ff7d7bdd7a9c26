#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace offsim {

using HostId = std::uint32_t;
using JobId = std::uint64_t;

// Times are seconds, energies joules, bandwidths bit/s. Reports convert to mWh.
inline constexpr double kJoulesPerMwh = 3.6;

inline double joules_to_mwh(double joules) { return joules / kJoulesPerMwh; }

enum class Role { Generator, Worker, Both };

inline bool can_generate(Role r) { return r != Role::Worker; }
inline bool can_execute(Role r) { return r != Role::Generator; }

const char* to_string(Role r);

struct JobSpec {
  JobId id = 0;
  HostId origin = 0;
  double release = 0.0;      // absolute, s
  double deadline = 0.0;     // relative to release, s
  double input_bytes = 0.0;
  double output_bytes = 0.0;
};

// Decision-time cost breakdown for one candidate executor.
// t_compute covers queue wait plus one execution; e_compute is the energy of
// one execution only, queued work is billed to the jobs that queued it.
struct CostEstimate {
  double t_in = 0.0;
  double t_compute = 0.0;
  double t_out = 0.0;
  double e_in = 0.0;
  double e_compute = 0.0;
  double e_out = 0.0;

  double total_time() const { return t_in + t_compute + t_out; }
  double total_energy() const { return e_in + e_compute + e_out; }
};

enum class JobOutcome { Completed, Cancelled };

struct JobRecord {
  JobSpec spec;
  JobOutcome outcome = JobOutcome::Completed;
  std::optional<HostId> executor;  // empty iff cancelled
  double decision_time = 0.0;
  std::optional<CostEstimate> estimate;  // for the chosen executor
  std::optional<double> transfer_in_done;
  std::optional<double> exec_start;
  std::optional<double> exec_end;
  std::optional<double> completion;
};

// Completing exactly at release + deadline still counts.
inline bool deadline_met(const JobSpec& spec, double completion) {
  return completion <= spec.release + spec.deadline;
}

bool deadline_met(const JobRecord& rec);

struct DeviceProfile {
  std::string name;
  Role default_role = Role::Both;
  double exec_time_mean = 0.0;    // s per job
  double exec_time_jitter = 0.0;  // draw uniform in mean * (1 +/- jitter)
  double p_idle = 0.0;            // W
  double p_compute = 0.0;
  double p_upload = 0.0;
  double p_download = 0.0;
  double uplink_bps = 0.0;
  double downlink_bps = 0.0;
  bool wall_powered = false;  // informational; consumption is counted either way
};

// What a host knows about a peer (or itself) when deciding. Remote snapshots
// go stale between dissemination rounds; snapshot_time says how stale.
struct HostSnapshot {
  HostId host = 0;
  std::uint32_t queue_length = 0;  // pending + running
  double te_avg = 0.0;
  double pc_avg = 0.0;
  double pu_avg = 0.0;
  double pd_avg = 0.0;
  double snapshot_time = 0.0;
  // elapsed execution of the running job at snapshot_time, if one was running
  std::optional<double> running_elapsed;
};

// Locally maintained estimate of the path between this host and a peer.
struct LinkEstimate {
  double ul_time_per_byte = 0.0;  // origin -> peer
  double dl_time_per_byte = 0.0;  // peer -> origin
};

}  // namespace offsim
