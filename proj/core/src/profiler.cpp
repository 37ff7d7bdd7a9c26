#include <offsim/profiler.hpp>

#include <algorithm>
#include <cassert>

namespace offsim {

namespace {

double require(std::optional<double> v, const char* what) {
  if (!v) throw NoEstimate(what);
  return *v;
}

// Effective path rate is capped by both radio ends.
double path_seconds_per_byte(double sender_up_bps, double receiver_down_bps) {
  double bps = std::min(sender_up_bps, receiver_down_bps);
  if (bps <= 0.0) throw NoEstimate("link with no capacity");
  return 8.0 / bps;
}

}  // namespace

CostEstimate full_estimate(const JobSpec& spec, const DecisionView& view,
                           HostId candidate, bool corrected_tc) {
  const HostSnapshot& cand = view.snapshots.at(candidate);
  const HostSnapshot& origin = view.snapshots.at(view.origin);

  CostEstimate est;
  est.t_compute = estimate_compute_time(cand);
  if (corrected_tc && cand.running_elapsed) {
    // Credit the running job with the time it has already spent, assuming it
    // kept running since the snapshot was taken.
    double elapsed = *cand.running_elapsed + (view.now - cand.snapshot_time);
    est.t_compute -= std::clamp(elapsed, 0.0, cand.te_avg);
  }

  if (candidate != view.origin) {
    auto [t_in, t_out] = estimate_transfer_times(view.links.at(candidate), spec);
    est.t_in = t_in;
    est.t_out = t_out;
  }

  EnergyTriple e = estimate_energy(est.t_in, cand.te_avg, est.t_out, origin, cand);
  est.e_in = e.e_in;
  est.e_compute = e.e_compute;
  est.e_out = e.e_out;
  return est;
}

Profiler::Profiler(HostId self, const DeviceProfile& own, std::size_t window,
                   const std::vector<DeviceProfile>& all)
    : self_(self),
      te_(window),
      pc_(window),
      pu_(window),
      pd_(window) {
  // Cold start: one calibration sample per average, from the device profile.
  // Real observations displace these as the window fills.
  te_.push(own.exec_time_mean);
  pc_.push(own.p_compute);
  pu_.push(own.p_upload);
  pd_.push(own.p_download);
  links_.reserve(all.size());
  for (HostId peer = 0; peer < all.size(); ++peer) {
    LinkAvg l{MovingAverage(window), MovingAverage(window)};
    if (peer != self_) {
      l.ul.push(path_seconds_per_byte(own.uplink_bps, all[peer].downlink_bps));
      l.dl.push(path_seconds_per_byte(all[peer].uplink_bps, own.downlink_bps));
    }
    links_.push_back(std::move(l));
  }
}

void Profiler::on_queued() { ++queue_length_; }

void Profiler::on_started() {
  // Queued -> running transition; the job was already counted on arrival.
}

void Profiler::on_ended(double exec_start, double exec_end) {
  assert(queue_length_ > 0);
  --queue_length_;
  te_.push(exec_end - exec_start);
}

void Profiler::on_power_sample(double watts, PowerFlags flags) {
  if (!flags.exactly_one()) return;
  if (flags.computing) pc_.push(watts);
  else if (flags.uploading) pu_.push(watts);
  else pd_.push(watts);
}

void Profiler::on_transfer_observed(HostId peer, bool upload, double bytes,
                                    double seconds) {
  assert(peer != self_);
  if (bytes <= 0.0 || seconds <= 0.0) return;
  if (upload) links_[peer].ul.push(seconds / bytes);
  else links_[peer].dl.push(seconds / bytes);
}

HostSnapshot Profiler::snapshot(double now,
                                std::optional<double> running_elapsed) const {
  HostSnapshot s;
  s.host = self_;
  s.queue_length = queue_length_;
  s.te_avg = require(te_.value(), "execution time average undefined");
  s.pc_avg = require(pc_.value(), "compute power average undefined");
  s.pu_avg = require(pu_.value(), "upload power average undefined");
  s.pd_avg = require(pd_.value(), "download power average undefined");
  s.snapshot_time = now;
  s.running_elapsed = running_elapsed;
  return s;
}

LinkEstimate Profiler::link(HostId peer) const {
  assert(peer != self_);
  const LinkAvg& l = links_.at(peer);
  return {require(l.ul.value(), "uplink estimate undefined"),
          require(l.dl.value(), "downlink estimate undefined")};
}

}  // namespace offsim
