#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <offsim/moving_average.hpp>
#include <offsim/types.hpp>

namespace offsim {

struct NoEstimate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PowerFlags {
  bool computing = false;
  bool uploading = false;
  bool downloading = false;

  bool exactly_one() const {
    return (computing ? 1 : 0) + (uploading ? 1 : 0) + (downloading ? 1 : 0) == 1;
  }
};

// Everything a decision gets to see: one snapshot per host (own host fresh,
// peers as of their last dissemination), plus the origin's own link table.
struct DecisionView {
  double now = 0.0;
  HostId origin = 0;
  std::vector<HostSnapshot> snapshots;   // indexed by HostId
  std::vector<LinkEstimate> links;       // origin -> h; links[origin] unused
  std::vector<bool> executor_role;       // indexed by HostId
};

// Queue wait plus one execution, with the running job billed at full te_avg.
inline double estimate_compute_time(const HostSnapshot& s) {
  return (static_cast<double>(s.queue_length) + 1.0) * s.te_avg;
}

// {t_in, t_out} for shipping the job to a remote candidate and back.
inline std::pair<double, double> estimate_transfer_times(const LinkEstimate& link,
                                                         const JobSpec& spec) {
  return {link.ul_time_per_byte * spec.input_bytes,
          link.dl_time_per_byte * spec.output_bytes};
}

struct EnergyTriple {
  double e_in = 0.0;
  double e_compute = 0.0;
  double e_out = 0.0;
};

// Transfer energy is two-sided: the origin radio and the candidate radio are
// both on for the duration. t_exec is one execution, not the queue estimate.
inline EnergyTriple estimate_energy(double t_in, double t_exec, double t_out,
                                    const HostSnapshot& origin,
                                    const HostSnapshot& candidate) {
  EnergyTriple e;
  e.e_in = t_in * (origin.pu_avg + candidate.pd_avg);
  e.e_compute = t_exec * candidate.pc_avg;
  e.e_out = t_out * (origin.pd_avg + candidate.pu_avg);
  return e;
}

// corrected_tc subtracts the running job's elapsed execution (extrapolated to
// view.now, capped at one te_avg) instead of billing it at full cost.
CostEstimate full_estimate(const JobSpec& spec, const DecisionView& view,
                           HostId candidate, bool corrected_tc = false);

// Per-host estimator state: windowed means for execution time, regime powers
// and link throughput, plus a mirror of the local queue length.
class Profiler {
 public:
  Profiler(HostId self, const DeviceProfile& own, std::size_t window,
           const std::vector<DeviceProfile>& all);

  void on_queued();
  void on_started();
  void on_ended(double exec_start, double exec_end);

  // Samples taken while more than one regime is active are discarded; they
  // cannot be attributed to a single per-regime average.
  void on_power_sample(double watts, PowerFlags flags);

  // upload=true: this host pushed bytes to peer; false: pulled from peer.
  void on_transfer_observed(HostId peer, bool upload, double bytes, double seconds);

  HostSnapshot snapshot(double now, std::optional<double> running_elapsed) const;
  LinkEstimate link(HostId peer) const;

  std::uint32_t queue_length() const { return queue_length_; }
  HostId self() const { return self_; }

 private:
  HostId self_;
  std::uint32_t queue_length_ = 0;
  MovingAverage te_;
  MovingAverage pc_;
  MovingAverage pu_;
  MovingAverage pd_;
  struct LinkAvg {
    MovingAverage ul;
    MovingAverage dl;
  };
  std::vector<LinkAvg> links_;  // by peer id; entry for self_ unused
};

}  // namespace offsim
