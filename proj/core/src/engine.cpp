#include <offsim/engine.hpp>

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <memory>
#include <queue>
#include <unordered_map>
#include <vector>

#include <offsim/profiler.hpp>
#include <offsim/rng.hpp>
#include <offsim/worker.hpp>
#include <offsim/workload.hpp>

namespace offsim {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::JobRelease: return "release";
    case EventKind::TransferInDone: return "transfer_in";
    case EventKind::ExecEnd: return "exec_end";
    case EventKind::TransferOutDone: return "transfer_out";
    case EventKind::DisseminationTick: return "tick";
  }
  return "?";
}

std::uint64_t workload_seed(const Scenario& sc, int repetition) {
  return derive_seed(sc.seed, std::bit_cast<std::uint64_t>(sc.lambda_mean),
                     std::bit_cast<std::uint64_t>(sc.deadline),
                     static_cast<std::uint64_t>(repetition));
}

namespace {

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;  // FIFO among simultaneous events
  EventKind kind = EventKind::JobRelease;
  JobId job = 0;
  HostId host = 0;
  std::uint64_t version = 0;  // transfer reschedule guard
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct Transfer {
  HostId from = 0;
  HostId to = 0;
  bool inbound = false;  // input shipment vs result return
  double total_bytes = 0.0;
  double remaining = 0.0;
  double rate = 0.0;  // bytes/s currently granted
  double started = 0.0;
  double last_update = 0.0;
  std::uint64_t version = 0;
};

struct HostRuntime {
  DeviceProfile profile;
  Role role = Role::Both;
  Worker worker;
  std::unique_ptr<Profiler> profiler;
  Rng exec_rng;
};

class Simulation {
 public:
  Simulation(const Scenario& sc, int repetition, bool trace)
      : sc_(sc),
        trace_on_(trace),
        ledger_(profiles_of(sc)),
        wseed_(workload_seed(sc, repetition)),
        decide_rng_(derive_seed(wseed_, 0xdec1de)) {
    std::vector<DeviceProfile> all = profiles_of(sc);
    std::vector<HostId> generators;
    hosts_.reserve(sc.hosts.size());
    for (HostId h = 0; h < sc.hosts.size(); ++h) {
      HostRuntime rt;
      rt.profile = sc.hosts[h].profile;
      rt.role = sc.hosts[h].role;
      rt.profiler = std::make_unique<Profiler>(h, rt.profile, sc.ma_window, all);
      rt.exec_rng.seed(derive_seed(wseed_, 0xe8ec, h));
      if (can_generate(rt.role)) generators.push_back(h);
      hosts_.push_back(std::move(rt));
    }
    jobs_ = generate_workload(generators, sc.lambda_mean, sc.deadline,
                              sc.duration, sc.input_bytes, sc.output_bytes,
                              wseed_);
    records_.reserve(jobs_.size());
    for (const JobSpec& j : jobs_) {
      JobRecord r;
      r.spec = j;
      records_.push_back(r);
    }
  }

  RunResult run() {
    publish_all();
    for (const JobSpec& j : jobs_)
      push({j.release, seq_++, EventKind::JobRelease, j.id});
    if (sc_.dissemination_period > 0.0 &&
        sc_.dissemination_period < sc_.duration)
      push({sc_.dissemination_period, seq_++, EventKind::DisseminationTick});

    outstanding_ = jobs_.size();
    double last_time = 0.0;
    while (!queue_.empty()) {
      Event ev = queue_.top();
      queue_.pop();
      assert(ev.time + 1e-12 >= now_ && "event scheduled into the past");
      now_ = std::max(now_, ev.time);
      if (is_stale(ev)) continue;
      last_time = now_;
      dispatch(ev);
    }

    assert(outstanding_ == 0 && "jobs left unresolved at drain");
    double horizon = std::max(sc_.duration, last_time);
    ledger_.finalize(horizon);

    RunResult res{std::move(records_), std::move(ledger_), horizon,
                  jobs_.size(),        0,                   0,
                  std::move(trace_)};
    for (const JobRecord& r : res.records) {
      if (r.outcome == JobOutcome::Cancelled) ++res.cancelled;
      else ++res.completed;
    }
    assert(res.completed + res.cancelled == res.released);
    return res;
  }

 private:
  static std::vector<DeviceProfile> profiles_of(const Scenario& sc) {
    std::vector<DeviceProfile> out;
    out.reserve(sc.hosts.size());
    for (const HostSetup& h : sc.hosts) out.push_back(h.profile);
    return out;
  }

  void push(Event ev) { queue_.push(ev); }

  bool is_stale(const Event& ev) const {
    if (ev.kind != EventKind::TransferInDone &&
        ev.kind != EventKind::TransferOutDone)
      return false;
    auto it = transfers_.find(ev.job);
    if (it == transfers_.end()) return true;
    // A job's input and output transfers both start at version 0, so an
    // abandoned event must also be matched by direction.
    bool inbound = ev.kind == EventKind::TransferInDone;
    return it->second.inbound != inbound || it->second.version != ev.version;
  }

  void trace(const Event& ev) {
    if (trace_on_) trace_.push_back({ev.time, ev.kind, ev.host, ev.job});
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case EventKind::JobRelease: on_release(ev); break;
      case EventKind::TransferInDone: on_transfer_in(ev); break;
      case EventKind::ExecEnd: on_exec_end(ev); break;
      case EventKind::TransferOutDone: on_transfer_out(ev); break;
      case EventKind::DisseminationTick: on_tick(ev); break;
    }
  }

  HostSnapshot live_snapshot(HostId h) const {
    const HostRuntime& rt = hosts_[h];
    std::optional<double> elapsed;
    if (rt.worker.busy()) elapsed = now_ - rt.worker.running_since();
    return rt.profiler->snapshot(now_, elapsed);
  }

  DecisionView make_view(HostId origin) const {
    DecisionView v;
    v.now = now_;
    v.origin = origin;
    v.snapshots.resize(hosts_.size());
    v.links.resize(hosts_.size());
    v.executor_role.resize(hosts_.size());
    bool live_all = sc_.dissemination_period <= 0.0;
    for (HostId h = 0; h < hosts_.size(); ++h) {
      v.snapshots[h] = (h == origin || live_all) ? live_snapshot(h) : published_[h];
      v.executor_role[h] = can_execute(hosts_[h].role);
      if (h != origin) v.links[h] = hosts_[origin].profiler->link(h);
    }
    return v;
  }

  void sample_power(HostId h) {
    PowerFlags f{ledger_.computing(h), ledger_.uploading(h),
                 ledger_.downloading(h)};
    hosts_[h].profiler->on_power_sample(ledger_.regime_power(h), f);
  }

  void publish_all() {
    if (published_.empty()) published_.resize(hosts_.size());
    for (HostId h = 0; h < hosts_.size(); ++h) published_[h] = live_snapshot(h);
  }

  void on_release(const Event& ev) {
    trace(ev);
    const JobSpec& spec = jobs_[ev.job];
    JobRecord& rec = records_[ev.job];
    rec.decision_time = now_;
    DecisionView view = make_view(spec.origin);
    Decision d =
        decide(sc_.strategy, spec, view, decide_rng_, sc_.corrected_tc);
    rec.estimate = d.estimate;
    if (!d.executor) {
      rec.outcome = JobOutcome::Cancelled;
      --outstanding_;
      sample_power(spec.origin);
      return;
    }
    rec.executor = *d.executor;
    if (*d.executor == spec.origin) {
      rec.transfer_in_done = now_;
      enqueue_at(spec.origin, ev.job);
      sample_power(spec.origin);
    } else {
      start_transfer(ev.job, spec.origin, *d.executor, spec.input_bytes, true);
      sample_power(spec.origin);
      sample_power(*d.executor);
    }
  }

  void enqueue_at(HostId h, JobId job) {
    HostRuntime& rt = hosts_[h];
    rt.profiler->on_queued();
    if (auto started = rt.worker.enqueue(job, now_)) start_exec(h, *started);
  }

  void start_exec(HostId h, JobId job) {
    HostRuntime& rt = hosts_[h];
    records_[job].exec_start = now_;
    rt.profiler->on_started();
    if (!ledger_.computing(h)) ledger_.set_computing(h, true, now_);
    double jitter = rt.profile.exec_time_jitter;
    double factor = 1.0 + jitter * (2.0 * uniform01(rt.exec_rng) - 1.0);
    double dt = rt.profile.exec_time_mean * factor;
    push({now_ + dt, seq_++, EventKind::ExecEnd, job, h});
  }

  void on_exec_end(const Event& ev) {
    trace(ev);
    HostId h = ev.host;
    HostRuntime& rt = hosts_[h];
    Worker::Completion c = rt.worker.complete_current(now_);
    assert(c.finished == ev.job);
    JobRecord& rec = records_[c.finished];
    rec.exec_end = now_;
    rt.profiler->on_ended(*rec.exec_start, now_);
    if (c.started) {
      start_exec(h, *c.started);  // regime stays compute, no ledger toggle
    } else {
      ledger_.set_computing(h, false, now_);
    }
    const JobSpec& spec = rec.spec;
    if (*rec.executor == spec.origin) {
      rec.completion = now_;
      --outstanding_;
      sample_power(h);
    } else {
      start_transfer(c.finished, h, spec.origin, spec.output_bytes, false);
      sample_power(h);
      sample_power(spec.origin);
    }
  }

  // One active transfer per job at a time, so transfers are keyed by job.
  void start_transfer(JobId job, HostId from, HostId to, double bytes,
                      bool inbound) {
    ledger_.upload_begin(from, now_);
    ledger_.download_begin(to, now_);
    Transfer t;
    t.from = from;
    t.to = to;
    t.inbound = inbound;
    t.total_bytes = bytes;
    t.remaining = bytes;
    t.started = now_;
    t.last_update = now_;
    auto [it, fresh] = transfers_.emplace(job, t);
    assert(fresh);
    if (sc_.contention == ContentionMode::FairShare) {
      reshare();
    } else {
      Transfer& tr = it->second;
      tr.rate = fixed_rate(from, to);
      schedule_done(job, tr);
    }
  }

  double fixed_rate(HostId from, HostId to) const {
    double bps = std::min(hosts_[from].profile.uplink_bps,
                          hosts_[to].profile.downlink_bps);
    assert(bps > 0.0);
    return bps / 8.0;
  }

  void schedule_done(JobId job, Transfer& t) {
    double dt = t.rate > 0.0 ? t.remaining / t.rate : 0.0;
    push({now_ + dt, seq_++,
          t.inbound ? EventKind::TransferInDone : EventKind::TransferOutDone,
          job, t.to, t.version});
  }

  // Fair share: a host's uplink is split evenly over its active uploads, the
  // downlink over its active downloads; each transfer runs at the tighter end.
  void reshare() {
    std::vector<int> ups(hosts_.size(), 0), downs(hosts_.size(), 0);
    for (auto& [job, t] : transfers_) {
      if (t.rate > 0.0) {
        t.remaining = std::max(0.0, t.remaining - (now_ - t.last_update) * t.rate);
      }
      t.last_update = now_;
      ++ups[t.from];
      ++downs[t.to];
    }
    for (auto& [job, t] : transfers_) {
      double up = hosts_[t.from].profile.uplink_bps / 8.0 / ups[t.from];
      double down = hosts_[t.to].profile.downlink_bps / 8.0 / downs[t.to];
      double rate = std::min(up, down);
      if (rate != t.rate) {
        t.rate = rate;
        ++t.version;
        schedule_done(job, t);
      }
    }
  }

  void finish_transfer(JobId job) {
    auto it = transfers_.find(job);
    assert(it != transfers_.end());
    Transfer t = it->second;
    transfers_.erase(it);
    ledger_.upload_end(t.from, now_);
    ledger_.download_end(t.to, now_);
    double dur = now_ - t.started;
    if (dur > 0.0) {
      hosts_[t.from].profiler->on_transfer_observed(t.to, true, t.total_bytes, dur);
      hosts_[t.to].profiler->on_transfer_observed(t.from, false, t.total_bytes, dur);
    }
    if (sc_.contention == ContentionMode::FairShare) reshare();
  }

  void on_transfer_in(const Event& ev) {
    trace(ev);
    JobId job = ev.job;
    HostId from = transfers_.at(job).from, to = transfers_.at(job).to;
    finish_transfer(job);
    records_[job].transfer_in_done = now_;
    enqueue_at(to, job);
    sample_power(from);
    sample_power(to);
  }

  void on_transfer_out(const Event& ev) {
    trace(ev);
    JobId job = ev.job;
    HostId from = transfers_.at(job).from, to = transfers_.at(job).to;
    finish_transfer(job);
    records_[job].completion = now_;
    --outstanding_;
    sample_power(from);
    sample_power(to);
  }

  void on_tick(const Event& ev) {
    trace(ev);
    publish_all();
    for (HostId h = 0; h < hosts_.size(); ++h) sample_power(h);
    double next = now_ + sc_.dissemination_period;
    if (next < sc_.duration)
      push({next, seq_++, EventKind::DisseminationTick});
  }

  const Scenario& sc_;
  bool trace_on_;
  std::vector<HostRuntime> hosts_;
  std::vector<HostSnapshot> published_;
  EnergyLedger ledger_;
  std::uint64_t wseed_;
  Rng decide_rng_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t seq_ = 0;
  std::vector<JobSpec> jobs_;
  std::vector<JobRecord> records_;
  std::unordered_map<JobId, Transfer> transfers_;
  double now_ = 0.0;
  std::size_t outstanding_ = 0;
  std::vector<TraceRecord> trace_;
};

}  // namespace

RunResult run_simulation(const Scenario& scenario, int repetition, bool trace) {
  Simulation sim(scenario, repetition, trace);
  return sim.run();
}

}  // namespace offsim
