#include <offsim/energy.hpp>

#include <cassert>
#include <utility>

namespace offsim {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Idle: return "idle";
    case Regime::Compute: return "compute";
    case Regime::Upload: return "upload";
    case Regime::Download: return "download";
  }
  return "?";
}

EnergyLedger::EnergyLedger(std::vector<DeviceProfile> profiles)
    : profiles_(std::move(profiles)), states_(profiles_.size()) {}

Regime EnergyLedger::regime(HostId h) const {
  const State& s = states_[h];
  if (s.computing) return Regime::Compute;
  if (s.uploads > 0) return Regime::Upload;
  if (s.downloads > 0) return Regime::Download;
  return Regime::Idle;
}

double EnergyLedger::power_of(HostId h, Regime r) const {
  const DeviceProfile& p = profiles_[h];
  switch (r) {
    case Regime::Idle: return p.p_idle;
    case Regime::Compute: return p.p_compute;
    case Regime::Upload: return p.p_upload;
    case Regime::Download: return p.p_download;
  }
  return 0.0;
}

double EnergyLedger::regime_power(HostId h) const { return power_of(h, regime(h)); }

void EnergyLedger::accrue(HostId h, double now) {
  State& s = states_[h];
  assert(now + 1e-12 >= s.last_t && "ledger time went backwards");
  double dt = now - s.last_t;
  if (dt > 0.0) {
    auto r = static_cast<std::size_t>(regime(h));
    s.seconds[r] += dt;
    s.joules[r] += dt * power_of(h, regime(h));
  }
  s.last_t = now;
}

void EnergyLedger::set_computing(HostId h, bool on, double now) {
  accrue(h, now);
  states_[h].computing = on;
}

void EnergyLedger::upload_begin(HostId h, double now) {
  accrue(h, now);
  ++states_[h].uploads;
}

void EnergyLedger::upload_end(HostId h, double now) {
  accrue(h, now);
  --states_[h].uploads;
  assert(states_[h].uploads >= 0);
}

void EnergyLedger::download_begin(HostId h, double now) {
  accrue(h, now);
  ++states_[h].downloads;
}

void EnergyLedger::download_end(HostId h, double now) {
  accrue(h, now);
  --states_[h].downloads;
  assert(states_[h].downloads >= 0);
}

void EnergyLedger::finalize(double horizon) {
  assert(!finalized_);
  for (HostId h = 0; h < states_.size(); ++h) accrue(h, horizon);
  horizon_ = horizon;
  finalized_ = true;
}

double EnergyLedger::joules(HostId h) const {
  double t = 0.0;
  for (double j : states_[h].joules) t += j;
  return t;
}

double EnergyLedger::joules(HostId h, Regime r) const {
  return states_[h].joules[static_cast<std::size_t>(r)];
}

double EnergyLedger::seconds(HostId h, Regime r) const {
  return states_[h].seconds[static_cast<std::size_t>(r)];
}

double EnergyLedger::total_joules() const {
  double t = 0.0;
  for (HostId h = 0; h < states_.size(); ++h) t += joules(h);
  return t;
}

double EnergyLedger::compute_joules() const {
  double t = 0.0;
  for (HostId h = 0; h < states_.size(); ++h) t += joules(h, Regime::Compute);
  return t;
}

}  // namespace offsim
